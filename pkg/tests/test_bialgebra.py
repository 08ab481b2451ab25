from fractions import Fraction

import pytest

from qgroups.bialgebra import (BasisMismatch, LinearFunctional, NotMultiplicative, Unsupported, check_antipode,
                               check_coassociativity, check_counit, check_density_spans, check_invariance,
                               convolution_inverse, convolve)
from qgroups.finite import cyclic_group, function_algebra, symmetric_group
from qgroups.fixtures import corrupted
from qgroups.graded import DiscSemigroup
from qgroups.scalars import I, ONE, ZERO, ExactScalar
from qgroups.suq2 import SUq2View


def ev(A, g):
    return A.functional([ONE if i == g else ZERO for i in range(A.dim)])


def test_counit_is_convolution_unit(c_z2):
    eps = c_z2.counit()
    tau = c_z2.functional([ExactScalar(3), ExactScalar(Fraction(-1, 2), 2)])
    assert convolve(eps, tau, c_z2).same_values(tau)
    assert convolve(tau, eps, c_z2).same_values(tau)


def test_evaluations_convolve_like_the_group(c_z2):
    # Δ(δ_a) = Σ_b δ_b ⊗ δ_{a-b}, so (ev1 ⊗ ev1)Δ(δ_a) = [a = 0]
    brute = [ONE if (a - 1 - 1) % 2 == 0 else ZERO for a in range(2)]
    assert list(convolve(ev(c_z2, 1), ev(c_z2, 1), c_z2).coeffs) == brute
    assert convolve(ev(c_z2, 1), ev(c_z2, 1), c_z2).same_values(ev(c_z2, 0))


def test_convolution_inverse_examples(c_z3):
    eps = c_z3.counit()
    assert convolution_inverse(eps, c_z3).same_values(eps)
    assert convolution_inverse(ev(c_z3, 1), c_z3).same_values(ev(c_z3, 2))


def test_convolution_inverse_rejects(c_z2):
    with pytest.raises(NotMultiplicative):
        convolution_inverse(c_z2.functional([ONE, ONE]), c_z2)
    D = DiscSemigroup(3)
    with pytest.raises(Unsupported):
        convolution_inverse(D.counit(), D)
    other = function_algebra(cyclic_group(3))
    with pytest.raises(BasisMismatch):
        convolve(c_z2.counit(), other.counit(), c_z2)


def test_functional_length_checked():
    with pytest.raises(ValueError):
        LinearFunctional("x", (0, 1), (ONE,))


def test_coassociativity(c_s3):
    assert check_coassociativity(c_s3).passed
    bad = check_coassociativity(corrupted(c_s3))
    assert not bad.passed
    assert all(f.startswith("(Δ⊗id)Δ != (id⊗Δ)Δ on d[") for f in bad.failures)
    assert check_coassociativity(DiscSemigroup(6)).passed


def test_counit_checks(cg_z2):
    assert check_counit(cg_z2, cg_z2.functional([ONE, ONE])).passed
    D = DiscSemigroup(6)
    assert check_counit(D, D.evaluation(ONE)).passed
    bad = check_counit(D, D.evaluation(ZERO))
    assert not bad.passed
    assert "(ε⊗id)Δ(z) != z" in bad.failures


def test_antipode_checks(c_z2, c_z3):
    kappa = lambda a: {(-a) % 2: ONE}  # noqa: E731
    assert check_antipode(c_z2, kappa).passed
    assert not check_antipode(c_z3, lambda a: {a: ONE}).passed
    view = SUq2View(Fraction(1, 2), 3)
    assert check_antipode(view).passed


def test_density_spans(c_s3, cg_z2):
    rep = check_density_spans(c_s3)
    assert rep.passed and rep.details["rank_left"] == 36
    rep = check_density_spans(cg_z2)
    assert rep.passed and rep.details["rank_left"] == rep.details["rank_right"] == 4
    disc = check_density_spans(DiscSemigroup(4), 4)
    assert not disc.passed
    assert "span (A⊗1)ΔA misses 1⊗z at degree 4" in disc.failures


def test_disc_semigroup_functionals():
    D = DiscSemigroup(6)
    assert check_invariance(D, D.haar_candidate()).passed
    # δ1 is not invariant, δ0 is not a counit
    assert not check_invariance(D, D.counit()).passed
    p = ExactScalar(Fraction(1, 2), Fraction(1, 2))
    f = D.evaluation(p)
    assert f.value((1, 1)) == p * p.conj()
    assert f.value((2, 0)) == p * p
    assert D.label((2, 1)) == "z^2z̄"


def test_check_report_dict(c_z2):
    d = check_counit(c_z2).to_dict()
    assert d["check"] == "counit" and d["passed"] and d["checked"] == 2 and d["failures"] == []


def test_suq2_inverse_character_is_conjugate():
    view = SUq2View(Fraction(1, 2), 4)
    lam = ExactScalar(Fraction(3, 5), Fraction(4, 5))
    tau = view.character(lam)
    inv = convolution_inverse(tau, view)
    assert inv.same_values(view.character(lam.conj()))
    assert convolve(tau, inv, view).same_values(view.counit())
    assert convolve(view.character(I), view.character(-I), view).value((1, 0, 0)) == ONE
