"""Discrete groups with decidable normal forms and a symmetric generating set."""

from __future__ import annotations

import math
import re
from abc import ABC, abstractmethod
from typing import Hashable, Sequence

from ..finite.core import GroupTable, cyclic_group, symmetric_group


class GroupSpecError(ValueError):
    pass


class DiscreteGroup(ABC):
    """Elements are hashable normal forms; equality of normal forms is equality in the group."""

    name: str = "group"
    amenable: bool | None = None
    order: int | None = None      # None for infinite groups

    @abstractmethod
    def identity(self) -> Hashable:
        ...

    @abstractmethod
    def multiply(self, g, h) -> Hashable:
        ...

    @abstractmethod
    def invert(self, g) -> Hashable:
        ...

    @abstractmethod
    def generators(self) -> list:
        ...

    def generator_labels(self) -> list[str]:
        return [self.format(s) for s in self.generators()]

    def format(self, g) -> str:
        return str(g)

    def oracle_norm(self) -> float | None:
        """Closed-form norm of Σ_s λ(s) in the regular representation, if known."""
        return None

    def check_generators(self):
        """S must be a set closed under inversion and must avoid the identity."""
        gens = self.generators()
        if len(set(gens)) != len(gens):
            raise GroupSpecError(f"generating set of {self.name} has repeats")
        if self.identity() in gens:
            raise GroupSpecError(f"generating set of {self.name} contains the identity")
        missing = [self.format(s) for s in gens if self.invert(s) not in set(gens)]
        if missing:
            raise GroupSpecError(f"generating set of {self.name} is not symmetric: no inverse for {missing}")

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class ZdGroup(DiscreteGroup):
    """Z^d with generators +e1, -e1, +e2, -e2, ..."""

    def __init__(self, d: int):
        if d < 0:
            raise GroupSpecError("Z^d needs d >= 0")
        self.d = d
        self.name = "Z" if d == 1 else f"Z^{d}"
        self.amenable = True
        self.order = 1 if d == 0 else None

    def identity(self):
        return (0,) * self.d

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(-a for a in g)

    def generators(self):
        out = []
        for i in range(self.d):
            for s in (1, -1):
                out.append(tuple(s if j == i else 0 for j in range(self.d)))
        return out

    def format(self, g):
        if self.d == 1:
            return str(g[0])
        return "(" + ",".join(map(str, g)) + ")"

    def generator_labels(self):
        return [f"{'+' if s > 0 else '-'}e{i + 1}" for i in range(self.d) for s in (1, -1)]

    def oracle_norm(self):
        return float(2 * self.d)


class FreeGroup(DiscreteGroup):
    """F_k on reduced words; letter 2j is x_j and 2j+1 its inverse."""

    def __init__(self, k: int):
        if k < 0:
            raise GroupSpecError("F_k needs k >= 0")
        self.k = k
        self.name = f"F_{k}"
        self.amenable = k <= 1
        self.order = 1 if k == 0 else None

    @staticmethod
    def inverse_letter(s: int) -> int:
        return s ^ 1

    def identity(self):
        return ()

    def multiply(self, g, h):
        g = list(g)
        i = 0
        while g and i < len(h) and g[-1] == h[i] ^ 1:
            g.pop()
            i += 1
        return tuple(g) + tuple(h[i:])

    def invert(self, g):
        return tuple(s ^ 1 for s in reversed(g))

    def generators(self):
        return [(s,) for s in range(2 * self.k)]

    def letter_name(self, s: int) -> str:
        base = chr(ord("a") + s // 2) if self.k <= 26 else f"x{s // 2}"
        return base if s % 2 == 0 else base + "^-1"

    def format(self, g):
        return "".join(self.letter_name(s) for s in g) or "e"

    def oracle_norm(self):
        if self.k == 0:
            return 0.0
        return 2.0 * math.sqrt(2 * self.k - 1)


class FiniteTableGroup(DiscreteGroup):
    """A finite group given by its multiplication table."""

    def __init__(self, table: GroupTable, generators: Sequence[int] | None = None, name: str | None = None):
        self.table = table
        self.name = name or table.name
        self.amenable = True
        self.order = table.order
        if generators is None:
            generators = [g for g in range(table.order) if g != table.identity]
        self._gens = list(generators)
        for g in self._gens:
            if not (isinstance(g, int) and 0 <= g < table.order):
                raise GroupSpecError(f"generator {g!r} is not an element index of {self.name}")

    def identity(self):
        return self.table.identity

    def multiply(self, g, h):
        return self.table.mul(g, h)

    def invert(self, g):
        return self.table.inverse[g]

    def generators(self):
        return list(self._gens)

    def format(self, g):
        return self.table.labels[g]

    def oracle_norm(self):
        return float(len(self._gens))

    @classmethod
    def from_json(cls, data: dict) -> "FiniteTableGroup":
        gens = data.get("generators")
        return cls(GroupTable.from_json(data), gens, name=data.get("name"))


class ProductGroup(DiscreteGroup):
    """G × H with generators (s, e) for s in S_G, then (e, t) for t in S_H."""

    def __init__(self, G: DiscreteGroup, H: DiscreteGroup):
        self.G, self.H = G, H
        self.name = f"{G.name} x {H.name}"
        if G.amenable is False or H.amenable is False:
            self.amenable = False
        elif G.amenable and H.amenable:
            self.amenable = True
        else:
            self.amenable = None
        self.order = G.order * H.order if G.order is not None and H.order is not None else None

    def identity(self):
        return (self.G.identity(), self.H.identity())

    def multiply(self, g, h):
        return (self.G.multiply(g[0], h[0]), self.H.multiply(g[1], h[1]))

    def invert(self, g):
        return (self.G.invert(g[0]), self.H.invert(g[1]))

    def generators(self):
        eG, eH = self.G.identity(), self.H.identity()
        return [(s, eH) for s in self.G.generators()] + [(eG, t) for t in self.H.generators()]

    def generator_labels(self):
        return [f"({a},e)" for a in self.G.generator_labels()] + [f"(e,{b})" for b in self.H.generator_labels()]

    def format(self, g):
        return f"({self.G.format(g[0])},{self.H.format(g[1])})"

    def oracle_norm(self):
        # L_G ⊗ 1 and 1 ⊗ L_H commute; both norms sit at the top of their spectra
        a, b = self.G.oracle_norm(), self.H.oracle_norm()
        if a is None or b is None:
            return None
        return a + b


def adjacent_transpositions(n: int) -> tuple[GroupTable, list[int]]:
    G = symmetric_group(n)
    gens = []
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(G.labels.index("".join(map(str, perm))))
    return G, gens


_ATOM = re.compile(r"^(?:(Z)(?:\^(\d+))?|F_(\d+)|S_(\d+)|Z_(\d+))$")


def builtin_group(name: str) -> DiscreteGroup:
    """Look up "Z", "Z^d", "F_k", "S_n", "Z_n" or products "A x B" (left associative)."""
    parts = [p.strip() for p in re.split(r"\s+x\s+|×", name.strip())]
    if not parts or any(not p for p in parts):
        raise GroupSpecError(f"cannot parse group name {name!r}")
    groups = [_atom(p) for p in parts]
    out = groups[0]
    for g in groups[1:]:
        out = ProductGroup(out, g)
    return out


def _atom(text: str) -> DiscreteGroup:
    m = _ATOM.match(text)
    if m is None:
        raise GroupSpecError(f"unknown group {text!r}; try Z, Z^d, F_k, S_n, Z_n or products 'A x B'")
    if m.group(1):
        return ZdGroup(int(m.group(2)) if m.group(2) is not None else 1)
    if m.group(3):
        return FreeGroup(int(m.group(3)))
    if m.group(4):
        n = int(m.group(4))
        if not 1 <= n <= 7:
            raise GroupSpecError("S_n is bundled for 1 <= n <= 7")
        table, gens = adjacent_transpositions(n)
        return FiniteTableGroup(table, gens, name=f"S_{n}")
    n = int(m.group(5))
    if n < 1:
        raise GroupSpecError("Z_n needs n >= 1")
    table = cyclic_group(n)
    gens = sorted({1 % n, (n - 1) % n} - {0})
    return FiniteTableGroup(table, gens, name=f"Z_{n}")


def builtin_groups() -> dict:
    """Representative catalog entries with their amenability tags."""
    names = ["Z", "Z^2", "Z^3", "Z^0", "F_2", "F_3", "S_3", "Z_5", "Z x F_2", "Z^2 x S_3"]
    return {n: {"group": builtin_group(n), "amenable": builtin_group(n).amenable} for n in names}


__all__ = ["DiscreteGroup", "ZdGroup", "FreeGroup", "FiniteTableGroup", "ProductGroup", "builtin_group",
           "builtin_groups", "GroupSpecError", "adjacent_transpositions"]
