"""Degree-truncated views of graded bialgebras, and the disc semigroup."""

from __future__ import annotations

from abc import abstractmethod

from .bialgebra import Bialgebra, LinearFunctional
from .scalars import ONE, ZERO


class DegreeOverflow(ValueError):
    pass


class GradedBialgebra(Bialgebra):
    """A filtered bialgebra seen through the span of basis keys of degree <= ``degree_bound``."""

    def __init__(self, degree_bound: int):
        if degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        self.degree_bound = degree_bound

    @property
    def basis_id(self) -> str:
        return f"{self.name}|deg<={self.degree_bound}"

    @abstractmethod
    def basis_upto(self, d: int) -> list:
        ...

    def basis(self) -> list:
        return self.basis_upto(self.degree_bound)


class DiscSemigroup(GradedBialgebra):
    """Polynomial functions z^m z̄^n on the closed unit disc with Δ(f)(s, t) = f(st).

    Keys are pairs ``(m, n)``; Δ(z^m z̄^n) = z^m z̄^n ⊗ z^m z̄^n.  Evaluation
    at 0 is invariant and evaluation at 1 is a counit, yet the density
    conditions fail, so this is a compact quantum semigroup only.
    """

    name = "disc-semigroup"

    def basis_upto(self, d: int) -> list:
        return [(m, t - m) for t in range(d + 1) for m in range(t, -1, -1)]

    def degree(self, key) -> int:
        return key[0] + key[1]

    def label(self, key) -> str:
        m, n = key
        parts = []
        if m:
            parts.append("z" if m == 1 else f"z^{m}")
        if n:
            parts.append("z̄" if n == 1 else f"z̄^{n}")
        return "".join(parts) or "1"

    def unit(self):
        return {(0, 0): ONE}

    def multiply_keys(self, a, b):
        return {(a[0] + b[0], a[1] + b[1]): ONE}

    def star_key(self, a):
        return {(a[1], a[0]): ONE}

    def comultiply_key(self, a):
        return {(a, a): ONE}

    def evaluation(self, point) -> LinearFunctional:
        """Point evaluation f ↦ f(point) for an exact point of the disc."""
        p = point
        pc = p.conj() if hasattr(p, "conj") else p

        def value(key):
            m, n = key
            v = ONE
            for _ in range(m):
                v = v * p
            for _ in range(n):
                v = v * pc
            return v

        return LinearFunctional.from_values(self, value)

    def haar_candidate(self) -> LinearFunctional:
        return self.evaluation(ZERO)

    def counit(self) -> LinearFunctional:
        return self.evaluation(ONE)
