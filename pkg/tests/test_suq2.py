import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgroups.bialgebra import (check_antipode, check_coassociativity, check_counit, check_invariance,
                               convolve, multiplicativity_failures)
from qgroups.graded import DegreeOverflow
from qgroups.scalars import I, ONE, ZERO, ExactScalar
from qgroups.suq2 import (SUq2Element, SUq2View, algebra, antipode, character, comultiply, counit, format_terms,
                          haar, letter_action_normal_form, monomials_upto, parse_element, rewrite, spectral_witness,
                          truncated_rep)
from qgroups.suq2.rep import c_coefficients
from qgroups.suq2.rewriting import format_word, parse_terms, random_words, word_key

Q = Fraction(1, 2)


def mono(k, m, n, q=Q, c=ONE):
    return SUq2Element.monomial(q, k, m, n, c)


def nf(word, q=Q):
    return letter_action_normal_form(word, q)


# -- normal form ---------------------------------------------------------------


def test_alpha_gamma_orderings():
    # a_{110} is αγ itself; γα picks up q⁻¹ from αγ = qγα
    assert nf("ag") == {(1, 1, 0): ONE}
    assert nf("ga") == {(1, 1, 0): ExactScalar(2)}
    assert nf("aG") == {(1, 0, 1): ONE}
    assert nf("Ga") == {(1, 0, 1): ExactScalar(2)}


def test_alpha_star_alpha():
    assert nf("Aa") == {(0, 0, 0): ONE, (0, 1, 1): -ONE}
    assert nf("aA") == {(0, 0, 0): ONE, (0, 1, 1): -ONE * Q * Q}


def test_unit_word():
    assert nf("") == {(0, 0, 0): ONE}
    assert parse_element("1", Q) == {(0, 0, 0): ONE}


def test_gamma_commutes_with_its_adjoint():
    assert nf("Gg") == nf("gG") == {(0, 1, 1): ONE}


def test_rewriting_matches_letter_action_on_examples():
    for w in ["ag", "ga", "Aa", "aA", "GA", "gAaG", "AAaagG"]:
        for strategy in ("leftmost", "rightmost"):
            assert rewrite({w: ONE}, Q, strategy) == nf(w)


def test_word_key():
    assert word_key("aagG") == (2, 1, 1)
    assert word_key("AGG") == (-1, 0, 2)
    with pytest.raises(ValueError):
        word_key("ga")


def test_random_words_deterministic():
    assert random_words(5, 10, seed=3) == random_words(5, 10, seed=3)
    assert all(len(w) <= 10 for w in random_words(200, 10, seed=1))


def test_unknown_strategy():
    with pytest.raises(ValueError):
        rewrite({"a": ONE}, Q, "random")


# -- representation oracle -----------------------------------------------------------


def _rep_agrees(word, q, rep, exact_q):
    """φ(word) and φ(normal form) agree on basis vectors far from the truncation edge."""
    L = len(word)
    prod = np.eye(rep.dim)
    for c in word:
        prod = prod @ rep.letter(c).toarray()
    terms = letter_action_normal_form(word, exact_q)
    M2 = rep.element(terms).toarray()
    cols = [rep.index(n, k) for n in range(rep.n_max - L + 1)
            for k in range(-rep.k_window + L, rep.k_window - L + 1)]
    return np.allclose(prod[:, cols], M2[:, cols], atol=1e-12)


@pytest.fixture(scope="module")
def rep_half():
    return truncated_rep(0.5, 14, 7)


def test_alpha_gamma_relation_in_rep(rep_half):
    a, g = rep_half.alpha.toarray(), rep_half.gamma.toarray()
    assert np.allclose(a @ g, 0.5 * g @ a)
    assert _rep_agrees("ag", 0.5, rep_half, Q)
    assert _rep_agrees("Aa", 0.5, rep_half, Q)


@settings(max_examples=60, deadline=None)
@given(word=st.text(alphabet="aAgG", max_size=6))
def test_normal_form_matches_rep(word, rep_half):
    assert _rep_agrees(word, 0.5, rep_half, Q)


def test_truncated_rep_examples():
    r = truncated_rep(0.5, 3, 0)
    A = r.alpha.toarray()
    c = [math.sqrt(3 / 4), math.sqrt(15 / 16), math.sqrt(63 / 64)]
    assert A.shape == (4, 4)
    for n in range(1, 4):
        assert A[n - 1, n] == pytest.approx(c[n - 1], abs=1e-15)
    assert np.count_nonzero(A) == 3
    assert r.gamma.nnz == 0


def test_relation_residuals(rep_half):
    res = rep_half.relation_residuals()
    assert set(res) == {"α*α+γ*γ=1", "αα*+q²γγ*=1", "γγ*=γ*γ", "αγ=qγα", "αγ*=qγ*α"}
    assert max(res.values()) <= 1e-12


def test_truncated_rep_rejects_bad_bounds():
    with pytest.raises(ValueError):
        truncated_rep(0.5, 0, 1)
    with pytest.raises(ValueError):
        truncated_rep(1.5, 3, 1)


def test_norm_bounds(rep_half):
    assert np.linalg.norm(rep_half.alpha.toarray(), 2) <= 1 + 1e-12
    assert np.linalg.norm(rep_half.gamma.toarray(), 2) <= 1 + 1e-12


# -- Hopf structure ---------------------------------------------------------------------


def test_comultiply_examples():
    q = Q
    assert comultiply(mono(1, 0, 0), 1) == {((1, 0, 0), (1, 0, 0)): ONE, ((0, 0, 1), (0, 1, 0)): -ONE * q}
    assert comultiply(mono(0, 1, 0), 1) == {((0, 1, 0), (1, 0, 0)): ONE, ((-1, 0, 0), (0, 1, 0)): ONE}
    assert comultiply(mono(0, 0, 0), 0) == {((0, 0, 0), (0, 0, 0)): ONE}
    with pytest.raises(DegreeOverflow):
        comultiply(mono(2, 1, 0), 2)


def test_counit_examples():
    assert counit(mono(3, 0, 0)) == ONE
    assert counit(mono(0, 1, 1)) == ZERO
    assert counit(mono(0, 0, 0)) == ONE
    assert counit(mono(-2, 0, 0)) == ONE


def test_antipode_examples():
    assert antipode(mono(1, 0, 0), 1) == mono(-1, 0, 0)
    assert antipode(mono(0, 1, 0), 1) == mono(0, 1, 0, c=-ONE * Q)
    assert antipode(mono(0, 0, 1), 1) == mono(0, 0, 1, c=ExactScalar(-2))
    assert antipode(mono(0, 0, 0), 0) == mono(0, 0, 0)
    with pytest.raises(DegreeOverflow):
        antipode(mono(1, 1, 1), 2)


def test_haar_examples():
    assert haar(mono(0, 0, 0)) == ONE
    assert haar(mono(2, 1, 1)) == ZERO
    assert haar(mono(0, 1, 1)) == ExactScalar(Fraction(4, 5))
    assert haar(mono(0, 2, 1)) == ZERO
    assert haar(mono(0, 2, 2)) == ExactScalar((1 - Q ** 2) / (1 - Q ** 6))


def test_haar_matches_weighted_series():
    r = truncated_rep(0.5, 200, 3)
    for key in [(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 0), (0, 1, 0)]:
        exact = complex(algebra(Q).haar_key(key))
        assert abs(r.haar_partial_sum({key: ONE}) - exact) < 1e-12


def test_haar_of_star_alpha_alpha():
    # h(α*α) = 1 - h(γ*γ) = 1 - 4/5
    x = SUq2Element(Q, parse_element("a* a", Q))
    assert haar(x) == ExactScalar(Fraction(1, 5))


@pytest.mark.parametrize("q", [Fraction(1, 2), Fraction(-1, 2), Fraction(2, 3)])
def test_hopf_axioms_at_degree_four(q):
    view = SUq2View(q, 4)
    assert check_coassociativity(view).passed
    assert check_counit(view).passed
    assert check_antipode(view).passed


@pytest.mark.parametrize("q", [Fraction(-1, 2), Fraction(1, 3)])
def test_haar_invariance_other_q(q):
    view = SUq2View(q, 4)
    assert check_invariance(view, view.haar()).passed


def test_haar_value_is_forced():
    view = SUq2View(Q, 3)
    wrong = view.haar()
    # any other value of h(γ*γ) breaks invariance
    alt = type(wrong)(wrong.basis_id, wrong.keys, tuple(
        ExactScalar(Fraction(3, 4)) if k == (0, 1, 1) else c for k, c in zip(wrong.keys, wrong.coeffs)))
    assert not check_invariance(view, alt).passed


def test_q_validation():
    for bad in (0, 1, -1, Fraction(3, 2)):
        with pytest.raises(ValueError):
            algebra(bad)
    with pytest.raises(ValueError):
        SUq2Element(Q, {(0, -1, 0): ONE})


def test_element_arithmetic():
    a = SUq2Element(Q, parse_element("a", Q))
    A = a.star()
    g = SUq2Element(Q, parse_element("g", Q))
    G = g.star()
    one = mono(0, 0, 0)
    assert A * a + G * g == one
    assert a * A + (Q * Q) * (g * G) == one
    assert (a * g).degree == 2
    with pytest.raises(ValueError):
        a + mono(1, 0, 0, q=Fraction(1, 3))


# -- characters ------------------------------------------------------------------------


def test_character_one_is_counit():
    view = SUq2View(Q, 4)
    assert character(ExactScalar(1), view).same_values(view.counit())


def test_character_values():
    view = SUq2View(Q, 4)
    lam = ExactScalar(Fraction(3, 5), Fraction(-4, 5))
    tau = character(lam, view)
    assert tau.value((0, 1, 0)) == ZERO
    assert tau.value((2, 0, 0)) == lam * lam
    assert tau.value((-1, 0, 0)) == lam.conj()
    assert multiplicativity_failures(tau, view) == []


def test_character_rejects_off_circle():
    view = SUq2View(Q, 2)
    with pytest.raises(ValueError):
        character(ExactScalar(2), view)
    with pytest.raises(ValueError):
        character(0.9, view)


def test_float_characters_convolve_to_product():
    view = SUq2View(Q, 2)
    lam, mu = complex(math.cos(0.3), math.sin(0.3)), complex(math.cos(1.1), -math.sin(1.1))
    prod = convolve(character(lam, view), character(mu, view), view)
    assert abs(prod.value((1, 0, 0)) - lam * mu) < 1e-14


def test_exact_characters_convolve_on_alpha():
    view = SUq2View(Q, 3)
    lam = ExactScalar(Fraction(3, 5), Fraction(4, 5))
    mu = ExactScalar(Fraction(-5, 13), Fraction(12, 13))
    assert convolve(character(lam, view), character(mu, view), view).value((1, 0, 0)) == lam * mu


# -- witness ----------------------------------------------------------------------------


def test_witness_small_case_against_numpy():
    c1, c2 = math.sqrt(3 / 4), math.sqrt(15 / 16)
    M = np.array([[0, c1, 0], [c1, 0, c2], [0, c2, 0]])
    # a 3x3 tridiagonal with zero diagonal has eigenvalues 0, ±sqrt(c1² + c2²)
    assert spectral_witness(0.5, 2) == pytest.approx(math.sqrt(c1 ** 2 + c2 ** 2), abs=1e-14)
    assert spectral_witness(0.5, 2) == pytest.approx(np.linalg.eigvalsh(M)[-1], abs=1e-14)


def test_witness_large_and_bounded():
    w = spectral_witness(0.5, 500)
    assert w >= 1.999
    # D_k = 1 + compact: the value approaches the pure-shift value 2cos(π/(n+2))
    assert abs(w - 2 * math.cos(math.pi / 502)) < 1e-3
    for q in (0.1, -0.5, 0.9):
        assert spectral_witness(q, 300) <= 2 + 1e-9


def test_witness_rejects_small_n():
    with pytest.raises(ValueError):
        spectral_witness(0.5, 1)


def test_c_coefficients():
    assert np.allclose(c_coefficients(0.5, 3), [math.sqrt(3 / 4), math.sqrt(15 / 16), math.sqrt(63 / 64)])


# -- text syntax -----------------------------------------------------------------------


def test_parse_terms():
    terms = parse_terms("a g - 2 a* + (1/2+i) g g* + 3")
    assert terms == [(ONE, "ag"), (ExactScalar(-2), "A"), (ExactScalar(Fraction(1, 2), 1), "gG"),
                     (ExactScalar(3), "")]
    for bad in ("", "a b", "a g g* a* +", "2 3"):
        with pytest.raises(ValueError):
            parse_terms(bad)


def test_format_terms():
    text = format_terms(parse_element("a* a", Q))
    assert text == "(0,0,0): 1+0·i\n(0,1,1): -1+0·i"
    assert format_terms({(1, 0, 0): I * -1}) == "(1,0,0): 0-1·i"


def test_format_word():
    assert format_word("aAgG") == "a a* g g*"
    assert format_word("") == "1"


# -- algebraic properties on random monomials ---------------------------------------------

monomial_keys = st.tuples(st.integers(-2, 2), st.integers(0, 2), st.integers(0, 2))
Q_HALF = algebra(Fraction(1, 2))


def _tensor_product(A, s, t):
    out = {}
    for (a1, a2), c in s.items():
        for (b1, b2), d in t.items():
            for k1, e1 in A.multiply_keys(a1, b1).items():
                for k2, e2 in A.multiply_keys(a2, b2).items():
                    key = (k1, k2)
                    out[key] = out.get(key, ZERO) + c * d * e1 * e2
    return {k: v for k, v in out.items() if v}


@settings(max_examples=40, deadline=None)
@given(a=monomial_keys, b=monomial_keys, c=monomial_keys)
def test_multiplication_associative(a, b, c):
    A = Q_HALF
    x, y, z = {a: ONE}, {b: ONE}, {c: ONE}
    assert A.multiply(A.multiply(x, y), z) == A.multiply(x, A.multiply(y, z))


@settings(max_examples=40, deadline=None)
@given(a=monomial_keys, b=monomial_keys)
def test_star_is_antimultiplicative(a, b):
    A = Q_HALF
    x, y = {a: ONE}, {b: ONE}
    assert A.star(A.multiply(x, y)) == A.multiply(A.star(y), A.star(x))
    assert A.star(A.star(x)) == x


@settings(max_examples=25, deadline=None)
@given(a=monomial_keys, b=monomial_keys)
def test_comultiplication_multiplicative(a, b):
    A = Q_HALF
    x, y = {a: ONE}, {b: ONE}
    assert A.comultiply(A.multiply(x, y)) == _tensor_product(A, A.comultiply(x), A.comultiply(y))
    assert A.counit(A.multiply(x, y)) == A.counit(x) * A.counit(y)
