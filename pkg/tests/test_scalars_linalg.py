from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qgroups.linalg import SparseEchelon, inverse, is_identity, matmul, nullspace, psd_rank, rank, rref
from qgroups.scalars import I, ONE, ZERO, ExactScalar, as_scalar, parse_rational, parse_scalar

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(ExactScalar, fractions, fractions)


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    for bad in ("0.5", "1e3", "1/0", "", "x"):
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(ValueError):
        parse_rational(0.5)


@pytest.mark.parametrize("text, re, im", [
    ("1/2", Fraction(1, 2), 0),
    ("i", 0, 1),
    ("-i", 0, -1),
    ("3i", 0, 3),
    ("1/2+3/4i", Fraction(1, 2), Fraction(3, 4)),
    ("2-i", 2, -1),
])
def test_parse_scalar(text, re, im):
    assert parse_scalar(text) == ExactScalar(re, im)


def test_json_round_trip_and_float_rejection():
    z = ExactScalar(Fraction(-3, 7), Fraction(5, 2))
    assert ExactScalar.from_json(z.to_json()) == z
    assert ExactScalar.from_json("2/3") == ExactScalar(Fraction(2, 3))
    with pytest.raises(ValueError):
        ExactScalar.from_json(0.25)
    with pytest.raises(ValueError):
        ExactScalar.from_json(["0.5", "0"])


def test_basic_arithmetic():
    assert I * I == -ONE
    assert (ONE + I) * (ONE - I) == 2
    assert (ONE + I) / (ONE - I) == I
    assert ExactScalar(3) ** -2 == ExactScalar(Fraction(1, 9))
    assert as_scalar("1+i").abs2() == 2
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


@given(scalars, scalars)
def test_conjugation(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * a.conj()).is_real()


def _to_sympy(M):
    return sympy.Matrix([[sympy.Rational(c.re.numerator, c.re.denominator)
                          + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator) for c in row] for row in M])


matrices = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda m: st.lists(st.lists(st.builds(ExactScalar, st.integers(-2, 2), st.integers(-1, 1)),
                                    min_size=m, max_size=m), min_size=n, max_size=n)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_and_nullspace_against_sympy(M):
    ncols = len(M[0])
    assert rank(M, ncols) == _to_sympy(M).rank()
    null = nullspace(M, ncols)
    assert len(null) == ncols - rank(M, ncols)
    for v in null:
        assert all(sum((r * x for r, x in zip(row, v)), ZERO) == 0 for row in M)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rref_is_reduced(M):
    R, pivots = rref(M, len(M[0]))
    for i, p in enumerate(pivots):
        assert R[i][p] == ONE
        assert all(R[j][p] == ZERO for j in range(len(R)) if j != i)
        assert all(c == ZERO for c in R[i][:p])
    # same row space
    assert rank(R + [list(r) for r in M], len(M[0])) == len(pivots)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_psd_rank_on_gram_matrices(M):
    # B^H B is PSD with rank = rank(B)
    n = len(M[0])
    G = [[sum((M[k][i].conj() * M[k][j] for k in range(len(M))), ZERO) for j in range(n)] for i in range(n)]
    ok, rk = psd_rank(G)
    assert ok
    assert rk == rank(M, n)


def test_psd_rejects_indefinite_and_non_hermitian():
    assert psd_rank([[ONE, ZERO], [ZERO, -ONE]]) == (False, -1)
    assert psd_rank([[ONE, ONE * 2], [ONE * 2, ONE]])[0] is False
    assert psd_rank([[ONE, I], [I, ONE]])[0] is False
    assert psd_rank([[ZERO, ONE], [ONE, ZERO]])[0] is False
    assert psd_rank([[ONE, I], [-I, ONE]]) == (True, 1)


def test_inverse():
    A = [[ExactScalar(2), ONE], [I, ExactScalar(3)]]
    assert is_identity(matmul(A, inverse(A)))


def test_sparse_echelon():
    ech = SparseEchelon()
    assert ech.add({0: ONE, 1: ONE})
    assert ech.add({1: ONE})
    assert not ech.add({0: ExactScalar(3), 1: ExactScalar(5)})
    assert ech.contains({0: ONE})
    assert ech.rank == 2
