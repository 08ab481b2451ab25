"""Finite-dimensional quantum groups given by exact structure constants."""

from __future__ import annotations

import json
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Sequence

from ..bialgebra import (
    Bialgebra,
    CheckReport,
    LinearFunctional,
    Unsupported,
    add_into,
    clean,
)
from ..jsonio import dumps
from ..linalg import Matrix, solve_sparse
from ..scalars import ONE, ZERO, ExactScalar


class InvalidQuantumGroup(ValueError):
    pass


class FiniteQuantumGroup(Bialgebra):
    """A finite-dimensional *-algebra with comultiplication.

    ``mult[(i, j)]`` is the product x_i x_j as a sparse element,
    ``invol[i]`` is x_i^*, ``comult[i]`` is Δ(x_i) as a sparse tensor.
    The counit and antipode are solved for when not supplied.
    """

    def __init__(self, labels: Sequence[str], unit, mult: dict, invol: dict, comult: dict,
                 name: str = "A", counit: Sequence | None = None, antipode: dict | None = None):
        self.dim = len(labels)
        if self.dim < 1:
            raise InvalidQuantumGroup("dimension must be positive")
        self.labels = list(labels)
        self.name = name
        self._unit = clean(dict(enumerate(unit)) if not isinstance(unit, dict) else unit)
        self.mult = {k: clean(v) for k, v in mult.items()}
        self.invol = {k: clean(v) for k, v in invol.items()}
        self.comult = {k: clean(v) for k, v in comult.items()}
        self._given_counit = tuple(counit) if counit is not None else None
        self._given_antipode = antipode

    # -- Bialgebra interface ---------------------------------------------
    def basis(self):
        return list(range(self.dim))

    def label(self, key):
        return self.labels[key]

    def unit(self):
        return dict(self._unit)

    def multiply_keys(self, a, b):
        return self.mult.get((a, b), {})

    def star_key(self, a):
        return self.invol.get(a, {})

    def comultiply_key(self, a):
        return self.comult.get(a, {})

    @cached_property
    def _counit(self) -> LinearFunctional | None:
        if self._given_counit is not None:
            return LinearFunctional(self.basis_id, tuple(self.basis()), self._given_counit)
        return solve_counit(self)

    def counit(self):
        return self._counit

    @cached_property
    def _antipode(self) -> dict | None:
        if self._given_antipode is not None:
            return self._given_antipode
        return solve_antipode(self)

    def antipode_key(self, a):
        if self._antipode is None:
            raise Unsupported(f"{self.name} admits no antipode")
        return self._antipode.get(a, {})

    def has_antipode(self):
        return self._antipode is not None

    # -- helpers ----------------------------------------------------------
    def vector(self, x: dict) -> list[ExactScalar]:
        return [x.get(i, ZERO) for i in range(self.dim)]

    def element(self, vec: Sequence[ExactScalar]) -> dict:
        return {i: c for i, c in enumerate(vec) if c}

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name} has no basis element {label!r}") from None

    def functional(self, values: Sequence) -> LinearFunctional:
        return LinearFunctional(self.basis_id, tuple(self.basis()), tuple(values))

    def evaluate_tensor(self, phi, psi, t: dict):
        total = ZERO
        for (a, b), c in t.items():
            total = total + c * phi.value(a) * psi.value(b)
        return total

    def is_cocommutative(self) -> bool:
        return all(d == {(b, a): c for (a, b), c in d.items()} for d in self.comult.values())

    def is_commutative(self) -> bool:
        return all(self.multiply_keys(a, b) == self.multiply_keys(b, a)
                   for a in range(self.dim) for b in range(self.dim))

    def replace(self, **changes) -> "FiniteQuantumGroup":
        fields = dict(labels=self.labels, unit=self._unit, mult=self.mult, invol=self.invol,
                      comult=self.comult, name=self.name, counit=self._given_counit,
                      antipode=self._given_antipode)
        fields.update(changes)
        return FiniteQuantumGroup(**fields)

    # -- validation ------------------------------------------------------
    def validate(self) -> CheckReport:
        """Algebra axioms: associativity, unit, involution, Δ a unital *-homomorphism."""
        rep = CheckReport("structure")
        n = self.dim
        keys = range(n)
        unit = self.unit()
        for a in keys:
            if self.multiply(unit, {a: ONE}) != {a: ONE} or self.multiply({a: ONE}, unit) != {a: ONE}:
                rep.failures.append(f"unit fails on {self.labels[a]}")
        for a, b, c in product(keys, repeat=3):
            lhs = self.multiply(self.multiply_keys(a, b), {c: ONE})
            rhs = self.multiply({a: ONE}, self.multiply_keys(b, c))
            if lhs != rhs:
                rep.failures.append(
                    f"multiplication not associative on ({self.labels[a]},{self.labels[b]},{self.labels[c]})")
                break
        rep.checked += n ** 3
        for a in keys:
            if self.star(self.star_key(a)) != {a: ONE}:
                rep.failures.append(f"involution not involutive on {self.labels[a]}")
        for a, b in product(keys, repeat=2):
            lhs = self.star(self.multiply_keys(a, b))
            rhs = self.multiply(self.star_key(b), self.star_key(a))
            if lhs != rhs:
                rep.failures.append(
                    f"involution not antimultiplicative on ({self.labels[a]},{self.labels[b]})")
                break
        for a, b in product(keys, repeat=2):
            lhs = self.comultiply(self.multiply_keys(a, b))
            rhs = self.multiply_tensors(self.comultiply_key(a), self.comultiply_key(b))
            if lhs != rhs:
                rep.failures.append(
                    f"Δ not multiplicative on ({self.labels[a]},{self.labels[b]})")
                break
        for a in keys:
            lhs = self.comultiply(self.star_key(a))
            rhs: dict = {}
            for (x, y), c in self.comultiply_key(a).items():
                for u, cu in self.star_key(x).items():
                    for v, cv in self.star_key(y).items():
                        add_into(rhs, {(u, v): cu * cv}, c.conj())
            if lhs != rhs:
                rep.failures.append(f"Δ does not commute with * on {self.labels[a]}")
        unit_t = {(u, v): cu * cv for u, cu in unit.items() for v, cv in unit.items()}
        if self.comultiply(unit) != clean(unit_t):
            rep.failures.append("Δ(1) != 1⊗1")
        return rep

    # -- JSON ----------------------------------------------------------------
    def to_json(self) -> dict:
        def s(c):
            return [str(c.re), str(c.im)]

        return {
            "name": self.name,
            "dim": self.dim,
            "labels": list(self.labels),
            "unit": [s(self._unit.get(i, ZERO)) for i in range(self.dim)],
            "mult": [[i, j, k, *s(c)] for (i, j), v in sorted(self.mult.items()) for k, c in sorted(v.items())],
            "invol": [[i, j, *s(c)] for i, v in sorted(self.invol.items()) for j, c in sorted(v.items())],
            "comult": [[i, j, k, *s(c)] for i, v in sorted(self.comult.items())
                       for (j, k), c in sorted(v.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteQuantumGroup":
        try:
            dim = data["dim"]
            if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
                raise InvalidQuantumGroup(f"dim must be a positive integer, got {dim!r}")
            labels = data.get("labels") or [f"x{i}" for i in range(dim)]
            if len(labels) != dim:
                raise InvalidQuantumGroup("labels length differs from dim")
            unit_raw = data["unit"]
            if len(unit_raw) != dim:
                raise InvalidQuantumGroup("unit length differs from dim")
            unit = [ExactScalar.from_json(u) for u in unit_raw]

            def idx(v):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < dim:
                    raise InvalidQuantumGroup(f"basis index {v!r} out of range")
                return v

            mult: dict = {}
            for entry in data.get("mult", []):
                i, j, k, re, im = entry
                add_into(mult.setdefault((idx(i), idx(j)), {}), {idx(k): ExactScalar.from_json([re, im])})
            invol: dict = {}
            for entry in data.get("invol", []):
                i, j, re, im = entry
                add_into(invol.setdefault(idx(i), {}), {idx(j): ExactScalar.from_json([re, im])})
            comult: dict = {}
            for entry in data.get("comult", []):
                i, j, k, re, im = entry
                add_into(comult.setdefault(idx(i), {}), {(idx(j), idx(k)): ExactScalar.from_json([re, im])})
        except (KeyError, TypeError) as exc:
            raise InvalidQuantumGroup(f"malformed quantum group JSON: {exc!r}") from None
        except ValueError as exc:
            if isinstance(exc, InvalidQuantumGroup):
                raise
            raise InvalidQuantumGroup(str(exc)) from None
        return cls(labels, unit, mult, invol, comult, name=data.get("name", "A"))

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def load(cls, path) -> "FiniteQuantumGroup":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))

    def __repr__(self):
        return f"<FiniteQuantumGroup {self.name} dim={self.dim}>"


# -- counit and antipode by exact linear solve --------------------------


def solve_counit(A: FiniteQuantumGroup) -> LinearFunctional | None:
    """The unique ε with (ε⊗id)Δ = (id⊗ε)Δ = id, or None."""
    n = A.dim
    eqs = []
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for (j, k), c in A.comultiply_key(i).items():
            add_into(left.setdefault(k, {}), {j: c})
            add_into(right.setdefault(j, {}), {k: c})
        for out in range(n):
            target = ONE if out == i else ZERO
            eqs.append((left.get(out, {}), target))
            eqs.append((right.get(out, {}), target))
    sol, nullity = solve_sparse(eqs, list(range(n)))
    if sol is None or nullity:
        return None
    return A.functional([sol[i] for i in range(n)])


def solve_antipode(A: FiniteQuantumGroup) -> dict | None:
    """Solve m(κ⊗id)Δ = m(id⊗κ)Δ = ε(·)1 for a linear κ; None if impossible."""
    eps = A.counit()
    if eps is None:
        return None
    n = A.dim
    unit = A.unit()
    variables = [(i, j) for i in range(n) for j in range(n)]  # κ(x_i) has coefficient K_ij on x_j
    eqs = []
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for (a, b), c in A.comultiply_key(i).items():
            for l in range(n):
                for m, cm in A.multiply_keys(l, b).items():
                    add_into(left.setdefault(m, {}), {(a, l): c * cm})
                for m, cm in A.multiply_keys(a, l).items():
                    add_into(right.setdefault(m, {}), {(b, l): c * cm})
        e = eps.value(i)
        for m in range(n):
            target = unit.get(m, ZERO) * e
            eqs.append((left.get(m, {}), target))
            eqs.append((right.get(m, {}), target))
    sol, nullity = solve_sparse(eqs, variables)
    if sol is None:
        return None
    return {i: clean({j: sol[(i, j)] for j in range(n)}) for i in range(n)}


# -- finite groups ---------------------------------------------------------


class GroupTable:
    """A finite group given by its multiplication table on 0..n-1."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 name: str = "G"):
        n = len(table)
        if n < 1 or any(len(row) != n for row in table):
            raise InvalidQuantumGroup("group table must be a nonempty square array")
        if any(not isinstance(v, int) or not 0 <= v < n for row in table for v in row):
            raise InvalidQuantumGroup("group table entries must be indices 0..n-1")
        self.table = [list(row) for row in table]
        self.order = n
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        ident = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
        if not ident:
            raise InvalidQuantumGroup("group table has no identity")
        self.identity = ident[0]
        for a, b, c in product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InvalidQuantumGroup(f"group table is not associative at ({a},{b},{c})")
        self.inverse = []
        for g in range(n):
            inv = [h for h in range(n) if table[g][h] == self.identity]
            if len(inv) != 1 or table[inv[0]][g] != self.identity:
                raise InvalidQuantumGroup(f"element {g} has no two-sided inverse")
            self.inverse.append(inv[0])

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @classmethod
    def from_json(cls, data: dict) -> "GroupTable":
        if "table" not in data:
            raise InvalidQuantumGroup("group JSON needs a 'table'")
        t = cls(data["table"], data.get("labels"), data.get("name", "G"))
        if "order" in data and data["order"] != t.order:
            raise InvalidQuantumGroup("'order' disagrees with table size")
        return t

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "table": self.table, "labels": self.labels}


def cyclic_group(n: int) -> GroupTable:
    return GroupTable([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}")


def symmetric_group(n: int) -> GroupTable:
    from itertools import permutations

    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (gh)(x) = g(h(x))
    table = [[index[tuple(g[h[x]] for x in range(n))] for h in perms] for g in perms]
    return GroupTable(table, ["".join(map(str, p)) for p in perms], name=f"S{n}")


def direct_product_table(G: GroupTable, H: GroupTable) -> GroupTable:
    n, m = G.order, H.order
    table = [[G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(n * m)] for a in range(n * m)]
    labels = [f"({G.labels[a]},{H.labels[b]})" for a in range(n) for b in range(m)]
    return GroupTable(table, labels, name=f"{G.name}x{H.name}")


def function_algebra(G: GroupTable) -> FiniteQuantumGroup:
    """C(G): delta functions with pointwise product and Δ dual to the group law."""
    n = G.order
    mult = {(g, g): {g: ONE} for g in range(n)}
    invol = {g: {g: ONE} for g in range(n)}
    comult: dict = {g: {} for g in range(n)}
    for a in range(n):
        for b in range(n):
            comult[G.mul(a, b)][(a, b)] = ONE
    counit = [ONE if g == G.identity else ZERO for g in range(n)]
    antipode = {g: {G.inverse[g]: ONE} for g in range(n)}
    return FiniteQuantumGroup([f"d[{l}]" for l in G.labels], [ONE] * n, mult, invol, comult,
                              name=f"C({G.name})", counit=counit, antipode=antipode)


def group_algebra(G: GroupTable) -> FiniteQuantumGroup:
    """C[G]: group-like basis u_g with u_g u_h = u_gh and u_g^* = u_{g^-1}."""
    n = G.order
    mult = {(g, h): {G.mul(g, h): ONE} for g in range(n) for h in range(n)}
    invol = {g: {G.inverse[g]: ONE} for g in range(n)}
    comult = {g: {(g, g): ONE} for g in range(n)}
    unit = [ONE if g == G.identity else ZERO for g in range(n)]
    antipode = {g: {G.inverse[g]: ONE} for g in range(n)}
    return FiniteQuantumGroup([f"u[{l}]" for l in G.labels], unit, mult, invol, comult,
                              name=f"C[{G.name}]", counit=[ONE] * n, antipode=antipode)


def trivial_quantum_group() -> FiniteQuantumGroup:
    """The one-dimensional quantum group ℂ."""
    return function_algebra(GroupTable([[0]], ["e"], name="1")).replace(name="C")


def tensor_product(A1: FiniteQuantumGroup, A2: FiniteQuantumGroup) -> FiniteQuantumGroup:
    """A1 ⊗ A2 with comultiplication (id⊗flip⊗id)(Δ1⊗Δ2)."""
    d2 = A2.dim

    def pair(i, j):
        return i * d2 + j

    labels = [f"{l1}⊗{l2}" for l1 in A1.labels for l2 in A2.labels]
    unit = {pair(i, j): ci * cj for i, ci in A1.unit().items() for j, cj in A2.unit().items()}
    mult: dict = {}
    for (a, b), x in A1.mult.items():
        for (c, d), y in A2.mult.items():
            mult[(pair(a, c), pair(b, d))] = {pair(i, j): ci * cj for i, ci in x.items() for j, cj in y.items()}
    invol = {pair(a, c): {pair(i, j): ci * cj for i, ci in A1.star_key(a).items() for j, cj in A2.star_key(c).items()}
             for a in range(A1.dim) for c in range(d2)}
    comult: dict = {}
    for a in range(A1.dim):
        for c in range(d2):
            out: dict = {}
            for (a1, a2), x in A1.comultiply_key(a).items():
                for (c1, c2), y in A2.comultiply_key(c).items():
                    add_into(out, {(pair(a1, c1), pair(a2, c2)): x * y})
            comult[pair(a, c)] = out
    e1, e2 = A1.counit(), A2.counit()
    counit = None
    if e1 is not None and e2 is not None:
        counit = [e1.value(i) * e2.value(j) for i in range(A1.dim) for j in range(d2)]
    antipode = None
    if A1.has_antipode() and A2.has_antipode():
        antipode = {pair(a, c): {pair(i, j): ci * cj for i, ci in A1.antipode_key(a).items()
                                 for j, cj in A2.antipode_key(c).items()}
                    for a in range(A1.dim) for c in range(d2)}
    return FiniteQuantumGroup(labels, unit, mult, invol, comult, name=f"{A1.name}⊗{A2.name}",
                              counit=counit, antipode=antipode)


def tensor_functional(A: FiniteQuantumGroup, f1: LinearFunctional, f2: LinearFunctional) -> LinearFunctional:
    return A.functional([a * b for a in f1.coeffs for b in f2.coeffs])


def check_morphism(A: FiniteQuantumGroup, B: FiniteQuantumGroup, T: Matrix,
                   intertwine: bool = True) -> CheckReport:
    """Is the linear map with matrix ``T`` (columns = images of A's basis) a
    unital *-homomorphism A → B, intertwining the comultiplications when
    ``intertwine`` is set?"""
    rep = CheckReport("morphism")

    def image(x: dict) -> dict:
        out: dict = {}
        for a, c in x.items():
            add_into(out, {r: T[r][a] for r in range(B.dim) if T[r][a]}, c)
        return out

    if image(A.unit()) != B.unit():
        rep.failures.append("not unital")
    for a in range(A.dim):
        if image(A.star_key(a)) != B.star(image({a: ONE})):
            rep.failures.append(f"does not commute with * on {A.labels[a]}")
        for b in range(A.dim):
            if image(A.multiply_keys(a, b)) != B.multiply(image({a: ONE}), image({b: ONE})):
                rep.failures.append(f"not multiplicative on ({A.labels[a]},{A.labels[b]})")
        rep.checked += 1
        if not intertwine:
            continue
        lhs = B.comultiply(image({a: ONE}))
        rhs: dict = {}
        for (x, y), c in A.comultiply_key(a).items():
            for u, cu in image({x: ONE}).items():
                for v, cv in image({y: ONE}).items():
                    add_into(rhs, {(u, v): cu * cv}, c)
        if lhs != rhs:
            rep.failures.append(f"does not intertwine Δ on {A.labels[a]}")
    return rep
