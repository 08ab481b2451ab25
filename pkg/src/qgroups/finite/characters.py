"""Characters (unital multiplicative *-functionals) and translation maps."""

from __future__ import annotations

from fractions import Fraction

import sympy

from ..bialgebra import LinearFunctional, add_into, convolve, multiplicativity_failures
from ..linalg import Matrix, SparseEchelon, matmul, nullspace, rank, rref
from ..scalars import ONE, ZERO, ExactScalar
from .core import FiniteQuantumGroup, check_morphism
from .haar import Quotient


class NotExactlyRepresentable(ValueError):
    """Some character takes values outside the Gaussian rationals."""


class NotACharacter(ValueError):
    pass


def commutator_ideal(A: FiniteQuantumGroup) -> Matrix:
    """RREF basis of the two-sided ideal generated by all commutators."""
    ech = SparseEchelon()
    frontier = []
    for a in range(A.dim):
        for b in range(a + 1, A.dim):
            c = add_into(dict(A.multiply_keys(a, b)), A.multiply_keys(b, a), -ONE)
            if c and ech.add(c):
                frontier.append(c)
    while frontier:
        x = frontier.pop()
        for k in range(A.dim):
            for y in (A.multiply({k: ONE}, x), A.multiply(x, {k: ONE})):
                if y and ech.add(y):
                    frontier.append(y)
    rows = [A.vector(v) for v in ech.rows.values()]
    if not rows:
        return []
    return rref(rows, A.dim)[0]


def _to_sympy(c: ExactScalar):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)


def _from_sympy(v) -> ExactScalar:
    re, im = sympy.re(v), sympy.im(v)
    if not (re.is_Rational and im.is_Rational):
        raise NotExactlyRepresentable(f"eigenvalue {v} is not a Gaussian rational")
    return ExactScalar(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _gaussian_rational_roots(M: Matrix) -> list[ExactScalar]:
    """Distinct eigenvalues of M; every one must lie in Q(i)."""
    x = sympy.Symbol("x")
    poly = sympy.Matrix([[_to_sympy(c) for c in row] for row in M]).charpoly(x).as_expr()
    _, factors = sympy.factor_list(poly, x, gaussian=True)
    roots = []
    for f, _mult in factors:
        p = sympy.Poly(f, x)
        if p.degree() != 1:
            raise NotExactlyRepresentable(f"characteristic polynomial factor {f} has no Gaussian-rational root")
        a, b = p.all_coeffs()
        roots.append(_from_sympy(-b / a))
    return sorted(set(roots), key=ExactScalar.sort_key)


def _restrict(action: Matrix, space: Matrix) -> Matrix:
    """Matrix of a row-vector action v ↦ v·action on the invariant row space ``space``.

    ``space`` is in RREF; coordinates are read off at its pivot columns.
    """
    pivots = [next(i for i, c in enumerate(row) if c) for row in space]
    images = matmul(space, action)
    return [[img[p] for p in pivots] for img in images]


def characters(A: FiniteQuantumGroup) -> list[LinearFunctional]:
    """All unital multiplicative *-preserving functionals, canonically ordered.

    Characters vanish on commutators, so they factor through the commutative
    quotient B = A/[A, A].  There they are the joint left eigenvectors of the
    multiplication operators, found by exact joint eigenspace splitting.
    """
    q = Quotient.build(A, commutator_ideal(A))
    B = q.algebra(with_comult=False, name=f"{A.name}/[A,A]")
    m = B.dim
    # row vector tau with tau·L_x = tau(x) tau, where L_x[i][j] = coefficient of x_i in x x_j
    ops = []
    for x in range(m):
        L = [[ZERO] * m for _ in range(m)]
        for j in range(m):
            for i, c in B.multiply_keys(x, j).items():
                L[i][j] = c
        ops.append(L)
    spaces = [[[ONE if i == j else ZERO for i in range(m)] for j in range(m)]]
    for L in ops:
        refined = []
        for V in spaces:
            R = _restrict(L, V)
            for lam in _gaussian_rational_roots(R):
                shifted = [[R[i][j] - (lam if i == j else ZERO) for j in range(len(R))] for i in range(len(R))]
                # left eigenvectors of R: w with w R = lam w, i.e. (R - lam)^T w^T = 0
                transpose = [list(col) for col in zip(*shifted)]
                w = nullspace(transpose, len(R))
                if w:
                    refined.append(rref(matmul(w, V), m)[0])
        spaces = refined
    unit_b = B.vector(B.unit())
    result = []
    for V in spaces:
        for v in V:
            norm = sum((a * b for a, b in zip(v, unit_b)), ZERO)
            if not norm:
                continue
            tau_b = [c / norm for c in v]
            # pull back along θ : A -> B
            values = []
            for a in range(A.dim):
                coords = q.project({a: ONE})
                values.append(sum((c * t for c, t in zip(coords, tau_b)), ZERO))
            tau = A.functional(values)
            if is_star_character(A, tau):
                result.append(tau)
    result.sort(key=lambda t: tuple(c.sort_key() for c in t.coeffs))
    return result


def is_star_character(A: FiniteQuantumGroup, tau: LinearFunctional) -> bool:
    if multiplicativity_failures(tau, A, limit=1):
        return False
    return all(tau(A.star_key(a)) == tau.value(a).conj() for a in range(A.dim))


def convolution_table(A: FiniteQuantumGroup, chars: list[LinearFunctional]) -> list[list[int]]:
    """table[i][j] = index of chars[i] * chars[j] in ``chars``."""
    table = []
    for t in chars:
        row = []
        for s in chars:
            prod = convolve(t, s, A)
            idx = [k for k, c in enumerate(chars) if c.same_values(prod)]
            if len(idx) != 1:
                raise ValueError("characters are not closed under convolution")
            row.append(idx[0])
        table.append(row)
    return table


def translate(A: FiniteQuantumGroup, tau: LinearFunctional) -> Matrix:
    """Matrix of a ↦ (id⊗tau)Δ(a); verified to be a bijective unital *-homomorphism."""
    if tau.basis_id != A.basis_id or not is_star_character(A, tau):
        raise NotACharacter("translate needs a character of " + A.name)
    n = A.dim
    T = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for (x, y), c in A.comultiply_key(a).items():
            T[x][a] = T[x][a] + c * tau.value(y)
    report = check_morphism(A, A, T, intertwine=False)
    if not report.passed:
        raise AssertionError("translation map is not a *-homomorphism: " + "; ".join(report.failures))
    if rank(T, n) != n:
        raise AssertionError("translation map is not bijective")
    return T


__all__ = ["characters", "commutator_ideal", "convolution_table", "translate", "is_star_character",
           "NotExactlyRepresentable", "NotACharacter"]
