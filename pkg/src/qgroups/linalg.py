"""Exact linear algebra over :class:`~qgroups.scalars.ExactScalar`.

Dense matrices are lists of rows.  Pivoting always takes the first nonzero
entry in canonical column order, so every routine here is deterministic.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .scalars import ONE, ZERO, ExactScalar

Matrix = list[list[ExactScalar]]
SparseVec = dict


def zeros(n: int, m: int) -> Matrix:
    return [[ZERO] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * m
        for k in range(inner):
            a = row[k]
            if not a:
                continue
            brow = B[k]
            for j in range(m):
                b = brow[j]
                if b:
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def matvec(A: Matrix, v: Sequence[ExactScalar]) -> list[ExactScalar]:
    out = []
    for row in A:
        acc = ZERO
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def conj_transpose(A: Matrix) -> Matrix:
    if not A:
        return []
    return [[A[i][j].conj() for i in range(len(A))] for j in range(len(A[0]))]


def kron(A: Matrix, B: Matrix) -> Matrix:
    out = []
    for arow in A:
        for brow in B:
            out.append([a * b for a in arow for b in brow])
    return out


def is_identity(A: Matrix) -> bool:
    return all(A[i][j] == (ONE if i == j else ZERO) for i in range(len(A)) for j in range(len(A[i])))


def rref(rows: Sequence[Sequence[ExactScalar]], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[r]`` is the pivot column of row ``r``.
    """
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = ONE / M[r][c]
        M[r] = [x * inv if x else x for x in M[r]]
        prow = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * p if p else x for x, p in zip(M[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence[ExactScalar]], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[ExactScalar]], ncols: int) -> Matrix:
    """Basis of ``{x : A x = 0}``, one vector per free column (in column order)."""
    R, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for r, p in enumerate(pivots):
            if R[r][free]:
                v[p] = -R[r][free]
        basis.append(v)
    return basis


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + e for row, e in zip(A, identity(n))]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R[:n]]


def psd_rank(G: Matrix) -> tuple[bool, int]:
    """Decide whether a Hermitian matrix is positive semidefinite, exactly.

    Symmetric Gaussian elimination (an LDL* factorisation with diagonal
    pivoting).  Returns ``(is_psd, rank)``; the rank is only meaningful when
    ``is_psd`` is true.
    """
    n = len(G)
    M = [list(row) for row in G]
    for i in range(n):
        for j in range(i, n):
            if M[i][j] != M[j][i].conj():
                return False, -1
    active = list(range(n))
    rk = 0
    while active:
        piv = None
        for i in active:
            d = M[i][i]
            if d.re < 0:
                return False, -1
            if d:
                piv = i
                break
        if piv is None:
            # every remaining diagonal entry vanishes; PSD forces the block to vanish
            ok = all(not M[i][j] for i in active for j in active)
            return ok, (rk if ok else -1)
        d = M[piv][piv]
        active.remove(piv)
        col = {i: M[i][piv] for i in active if M[i][piv]}
        for i, ci in col.items():
            f = ci / d
            row = M[i]
            for j, cj in col.items():
                row[j] = row[j] - f * cj.conj()
        rk += 1
    return True, rk


class SparseEchelon:
    """Incremental row-echelon basis for sparse vectors (``dict`` key -> scalar).

    Each stored row is normalised so that its pivot entry is one; the pivot
    is the smallest key under ``order``.
    """

    def __init__(self, order=None):
        self._order = order
        self.rows: dict[Hashable, SparseVec] = {}

    def _pivot(self, vec: SparseVec):
        return min(vec, key=self._order) if self._order else min(vec)

    def reduce(self, vec: SparseVec) -> SparseVec:
        v = {k: c for k, c in vec.items() if c}
        while v:
            # eliminate pivots present in v, cheapest-first
            hits = [k for k in v if k in self.rows]
            if not hits:
                break
            for k in hits:
                c = v.get(k)
                if not c:
                    continue
                for kk, cc in self.rows[k].items():
                    nv = v.get(kk, ZERO) - c * cc
                    if nv:
                        v[kk] = nv
                    else:
                        v.pop(kk, None)
        return v

    def add(self, vec: SparseVec) -> bool:
        """Insert ``vec``; return whether it was independent of the stored rows."""
        v = self.reduce(vec)
        if not v:
            return False
        p = self._pivot(v)
        inv = ONE / v[p]
        v = {k: c * inv for k, c in v.items()}
        # keep stored rows reduced against the new pivot
        for row in self.rows.values():
            c = row.get(p)
            if c:
                for kk, cc in v.items():
                    nv = row.get(kk, ZERO) - c * cc
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
        self.rows[p] = v
        return True

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    @property
    def rank(self) -> int:
        return len(self.rows)


def solve_sparse(equations: Iterable[tuple[SparseVec, ExactScalar]], variables: Sequence[Hashable]):
    """Solve a sparse linear system exactly.

    ``equations`` yields ``(coeffs, rhs)`` with ``coeffs`` a dict variable ->
    scalar.  Returns ``(solution, nullity)`` where ``solution`` maps every
    variable to a value (free variables set to zero) or is ``None`` when the
    system is inconsistent.
    """
    rhs_key = object()
    position = {v: i for i, v in enumerate(variables)}
    position[rhs_key] = len(variables)
    ech = SparseEchelon(order=position.__getitem__)
    for coeffs, rhs in equations:
        row = {k: c for k, c in coeffs.items() if c}
        if rhs:
            row[rhs_key] = -rhs
        ech.add(row)
    if rhs_key in ech.rows:
        return None, None
    solution = {v: ZERO for v in variables}
    for p, row in ech.rows.items():
        solution[p] = -row.get(rhs_key, ZERO)
    return solution, len(variables) - ech.rank
