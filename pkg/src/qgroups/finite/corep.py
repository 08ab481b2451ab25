"""Extraction of a finite corepresentation whose entries span a given element.

Given x, write Δ(x) = Σ x_i ⊗ y_i with independent y_i, take a basis e of
span{x_i}, read off Δ(e_j) = Σ_k e_k ⊗ w_kj, and recover
x = Σ_ij ε(z_i e_j) w_ji where Δ(x) = Σ_i e_i ⊗ z_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..bialgebra import add_into, clean
from ..linalg import Matrix, rref
from ..scalars import ONE, ZERO, ExactScalar
from .core import FiniteQuantumGroup, InvalidQuantumGroup


class CorepError(ValueError):
    pass


def _tensor_matrix(A: FiniteQuantumGroup, t: dict) -> Matrix:
    M = [[ZERO] * A.dim for _ in range(A.dim)]
    for (a, b), c in t.items():
        M[a][b] = c
    return M


def _elem(vec) -> dict:
    return {i: c for i, c in enumerate(vec) if c}


def _first_pivot(row) -> int:
    return next(i for i, c in enumerate(row) if c)


@dataclass
class Corepresentation:
    """Square matrix of algebra elements (sparse coefficient dicts)."""

    entries: list

    @property
    def size(self) -> int:
        return len(self.entries)

    def failures(self, A: FiniteQuantumGroup) -> list[str]:
        """Where Δ(w_ij) = Σ_k w_ik ⊗ w_kj fails."""
        out = []
        n = self.size
        for i in range(n):
            for j in range(n):
                rhs: dict = {}
                for k in range(n):
                    for a, ca in self.entries[i][k].items():
                        for b, cb in self.entries[k][j].items():
                            add_into(rhs, {(a, b): ca * cb})
                if A.comultiply(self.entries[i][j]) != clean(rhs):
                    out.append(f"Δ(w[{i}][{j}]) != Σ_k w[{i}][k] ⊗ w[k][{j}]")
        return out

    def to_json(self, A: FiniteQuantumGroup) -> list:
        return [[[c.to_json() for c in A.vector(e)] for e in row] for row in self.entries]

    @classmethod
    def from_json(cls, data: list) -> "Corepresentation":
        return cls([[_elem([ExactScalar.from_json(c) for c in e]) for e in row] for row in data])


@dataclass
class CorepDecomposition:
    algebra: FiniteQuantumGroup
    x: dict
    flag_basis: list            # the e_j, as elements
    w: Corepresentation
    coefficients: Matrix        # coefficients[i][j] = ε(z_i e_j), multiplying w_ji
    v: Corepresentation
    checks: dict = field(default_factory=dict)

    def reconstruct(self) -> dict:
        out: dict = {}
        n = self.w.size
        for i in range(n):
            for j in range(n):
                c = self.coefficients[i][j]
                if c:
                    add_into(out, self.w.entries[j][i], c)
        return clean(out)

    def verify(self) -> list[str]:
        A = self.algebra
        fails = self.w.failures(A)
        fails += ["v: " + f for f in self.v.failures(A)]
        if self.reconstruct() != clean(dict(self.x)):
            fails.append("x != Σ ε(z_i e_j) w_ji")
        eps = A.counit()
        if eps is None:
            fails.append("no counit")
        else:
            for i in range(self.v.size):
                for j in range(self.v.size):
                    if eps(self.v.entries[i][j]) != (ONE if i == j else ZERO):
                        fails.append(f"ε(v[{i}][{j}]) != δ_ij")
        return fails

    def to_json(self) -> dict:
        A = self.algebra
        return {
            "algebra": A.to_json(),
            "x": [c.to_json() for c in A.vector(self.x)],
            "size": self.w.size,
            "flag_basis": [[c.to_json() for c in A.vector(e)] for e in self.flag_basis],
            "w": self.w.to_json(A),
            "coefficients": [[c.to_json() for c in row] for row in self.coefficients],
            "v": self.v.to_json(A),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CorepDecomposition":
        """Load and re-verify; raises CorepError if any identity fails."""
        try:
            A = FiniteQuantumGroup.from_json(data["algebra"])
            x = _elem([ExactScalar.from_json(c) for c in data["x"]])
            flag = [_elem([ExactScalar.from_json(c) for c in e]) for e in data["flag_basis"]]
            w = Corepresentation.from_json(data["w"])
            v = Corepresentation.from_json(data["v"])
            coeffs = [[ExactScalar.from_json(c) for c in row] for row in data["coefficients"]]
        except (KeyError, TypeError) as exc:
            raise InvalidQuantumGroup(f"malformed corepresentation JSON: {exc!r}") from None
        if any(len(row) != w.size for row in w.entries + v.entries + coeffs) or v.size != w.size:
            raise InvalidQuantumGroup("corepresentation JSON has inconsistent sizes")
        dec = cls(A, x, flag, w, coeffs, v)
        fails = dec.verify()
        if fails:
            raise CorepError("; ".join(fails))
        return dec

    @classmethod
    def load(cls, path) -> "CorepDecomposition":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def corep_decompose(A: FiniteQuantumGroup, x: dict) -> CorepDecomposition:
    """Run the extraction on x and verify every identity exactly."""
    x = clean(dict(x))
    if not x:
        raise CorepError("x must be nonzero")
    C = _tensor_matrix(A, A.comultiply(x))
    # rank factorization C = X Y with Y in RREF: y_i are rows of Y, x_i columns of C at pivots
    Y, pivots = rref(C, A.dim)
    xs = [[C[a][p] for a in range(A.dim)] for p in pivots]
    E, _ = rref(xs, A.dim)
    epiv = [_first_pivot(row) for row in E]
    flag = [_elem(row) for row in E]
    n = len(E)
    z = [_elem(C[q]) for q in epiv]
    # check Δ(x) = Σ e_i ⊗ z_i
    lhs: dict = {}
    for e, zi in zip(flag, z):
        for a, ca in e.items():
            for b, cb in zi.items():
                add_into(lhs, {(a, b): ca * cb})
    if clean(lhs) != A.comultiply(x):
        raise AssertionError("Δ(x) is not Σ e_i ⊗ z_i")
    w_entries = [[None] * n for _ in range(n)]
    for j, e in enumerate(flag):
        D = _tensor_matrix(A, A.comultiply(e))
        for k, q in enumerate(epiv):
            w_entries[k][j] = _elem(D[q])
        back: dict = {}
        for k in range(n):
            for a, ca in flag[k].items():
                for b, cb in w_entries[k][j].items():
                    add_into(back, {(a, b): ca * cb})
        if clean(back) != A.comultiply(e):
            raise AssertionError("left leg of Δ(e_j) leaves span{e}")
    w = Corepresentation(w_entries)
    eps = A.counit()
    if eps is None:
        raise InvalidQuantumGroup(f"{A.name} has no counit")
    coeffs = [[eps(A.multiply(z[i], flag[j])) for j in range(n)] for i in range(n)]
    unit = A.unit()
    v_entries = []
    for i in range(n):
        row = []
        for j in range(n):
            shift = (ONE if i == j else ZERO) - eps(w_entries[i][j])
            row.append(clean(add_into(dict(w_entries[i][j]), unit, shift)) if shift else dict(w_entries[i][j]))
        v_entries.append(row)
    dec = CorepDecomposition(A, x, flag, w, coeffs, Corepresentation(v_entries))
    fails = dec.verify()
    dec.checks = {"corepresentation": not dec.w.failures(A), "reconstruction": dec.reconstruct() == x,
                  "failures": fails}
    if fails:
        raise AssertionError("; ".join(fails))
    return dec


__all__ = ["Corepresentation", "CorepDecomposition", "corep_decompose", "CorepError"]
