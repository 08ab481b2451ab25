"""Generic bialgebra machinery shared by every algebra backend.

Elements are sparse dicts ``key -> ExactScalar`` without zero entries;
tensors use tuple keys ``(k1, k2)`` (or ``(k1, k2, k3)``).  A backend
subclasses :class:`Bialgebra` and supplies the basis-level structure maps;
everything else is derived here by linear extension.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .linalg import SparseEchelon
from .scalars import ONE, ZERO, ExactScalar

Key = Hashable
Element = dict
Tensor = dict


class BasisMismatch(ValueError):
    pass


class Unsupported(NotImplementedError):
    pass


class NotMultiplicative(ValueError):
    pass


# -- sparse element helpers ---------------------------------------------


def add_into(acc: dict, other: dict, factor=ONE) -> dict:
    for k, c in other.items():
        v = acc.get(k, ZERO) + c * factor
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


def scale(x: dict, factor) -> dict:
    if not factor:
        return {}
    return {k: c * factor for k, c in x.items()}


def clean(x: dict) -> dict:
    return {k: c for k, c in x.items() if c}


def elements_equal(x: dict, y: dict) -> bool:
    return clean(x) == clean(y)


def tensor_of(x: Element, y: Element) -> Tensor:
    return {(a, b): ca * cb for a, ca in x.items() for b, cb in y.items()}


# -- linear functionals ---------------------------------------------------


@dataclass(frozen=True)
class LinearFunctional:
    """Values of a functional on the basis identified by ``basis_id``."""

    basis_id: str
    keys: tuple
    coeffs: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.keys) != len(self.coeffs):
            raise ValueError(
                f"functional on {self.basis_id!r}: {len(self.coeffs)} values for {len(self.keys)} basis elements"
            )
        object.__setattr__(self, "_index", {k: i for i, k in enumerate(self.keys)})

    @classmethod
    def from_values(cls, A: "Bialgebra", values: Callable[[Key], object]) -> "LinearFunctional":
        keys = tuple(A.basis())
        return cls(A.basis_id, keys, tuple(values(k) for k in keys))

    def value(self, key: Key):
        try:
            return self.coeffs[self._index[key]]
        except KeyError:
            raise BasisMismatch(f"{key!r} lies outside the basis of {self.basis_id!r}") from None

    def __call__(self, x: Element):
        total = ZERO
        for k, c in x.items():
            total = total + c * self.value(k)
        return total

    def same_values(self, other: "LinearFunctional") -> bool:
        return self.basis_id == other.basis_id and self.keys == other.keys and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )


# -- the abstract view ----------------------------------------------------


class Bialgebra(ABC):
    """A *-algebra with comultiplication, exposed through a finite basis.

    For graded infinite-dimensional algebras the basis is a degree
    truncation; :meth:`degree` reports the filtration degree of a key.
    """

    name: str = "bialgebra"

    @property
    def basis_id(self) -> str:
        return self.name

    @abstractmethod
    def basis(self) -> list:
        ...

    def degree(self, key: Key) -> int:
        return 0

    def label(self, key: Key) -> str:
        return str(key)

    @abstractmethod
    def unit(self) -> Element:
        ...

    @abstractmethod
    def multiply_keys(self, a: Key, b: Key) -> Element:
        ...

    @abstractmethod
    def star_key(self, a: Key) -> Element:
        ...

    @abstractmethod
    def comultiply_key(self, a: Key) -> Tensor:
        ...

    def counit(self) -> LinearFunctional | None:
        return None

    def antipode_key(self, a: Key) -> Element:
        raise Unsupported(f"{self.name} exposes no antipode")

    def has_antipode(self) -> bool:
        try:
            keys = self.basis()
            if keys:
                self.antipode_key(keys[0])
            return True
        except Unsupported:
            return False

    # linear extensions
    def multiply(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                add_into(out, self.multiply_keys(a, b), ca * cb)
        return out

    def star(self, x: Element) -> Element:
        out: dict = {}
        for a, ca in x.items():
            add_into(out, self.star_key(a), ca.conj())
        return out

    def comultiply(self, x: Element) -> Tensor:
        out: dict = {}
        for a, ca in x.items():
            add_into(out, self.comultiply_key(a), ca)
        return out

    def antipode(self, x: Element) -> Element:
        out: dict = {}
        for a, ca in x.items():
            add_into(out, self.antipode_key(a), ca)
        return out

    def multiply_tensors(self, s: Tensor, t: Tensor) -> Tensor:
        out: dict = {}
        for (a1, a2), ca in s.items():
            for (b1, b2), cb in t.items():
                left = self.multiply_keys(a1, b1)
                if not left:
                    continue
                right = self.multiply_keys(a2, b2)
                c = ca * cb
                for l, cl in left.items():
                    for r, cr in right.items():
                        add_into(out, {(l, r): cl * cr}, c)
        return out

    def basis_element(self, key: Key) -> Element:
        return {key: ONE}


def slice_left(phi, t: Tensor) -> Element:
    """(phi ⊗ id)(t)."""
    out: dict = {}
    for (a, b), c in t.items():
        add_into(out, {b: ONE}, c * phi(a))
    return out


def slice_right(phi, t: Tensor) -> Element:
    """(id ⊗ phi)(t)."""
    out: dict = {}
    for (a, b), c in t.items():
        add_into(out, {a: ONE}, c * phi(b))
    return out


def _as_key_function(phi) -> Callable[[Key], object]:
    if isinstance(phi, LinearFunctional):
        return phi.value
    return phi


# -- convolution ----------------------------------------------------------


def convolve(tau: LinearFunctional, sigma: LinearFunctional, A: Bialgebra) -> LinearFunctional:
    """``(tau ⊗ sigma) ∘ Δ`` evaluated on every basis element of ``A``."""
    for f in (tau, sigma):
        if f.basis_id != A.basis_id:
            raise BasisMismatch(f"functional on {f.basis_id!r} cannot act on {A.basis_id!r}")
    values = []
    for k in A.basis():
        total = ZERO
        for (a, b), c in A.comultiply_key(k).items():
            total = total + c * tau.value(a) * sigma.value(b)
        values.append(total)
    return LinearFunctional(A.basis_id, tuple(A.basis()), tuple(values))


def multiplicativity_failures(tau: LinearFunctional, A: Bialgebra, limit: int = 5) -> list[str]:
    """Exhaustive pairwise test of tau(xy) = tau(x)tau(y) and tau(1) = 1.

    On a degree truncation only pairs whose product stays inside the
    truncation are tested.
    """
    failures = []
    if tau(A.unit()) != ONE:
        failures.append("tau(1) != 1")
    keys = A.basis()
    top = max((A.degree(k) for k in keys), default=0)
    for a in keys:
        for b in keys:
            if A.degree(a) + A.degree(b) > top:
                continue
            if tau(A.multiply_keys(a, b)) != tau.value(a) * tau.value(b):
                failures.append(f"tau({A.label(a)}·{A.label(b)}) != tau({A.label(a)})tau({A.label(b)})")
                if len(failures) >= limit:
                    return failures
    return failures


def convolution_inverse(tau: LinearFunctional, A: Bialgebra) -> LinearFunctional:
    """The inverse ``tau ∘ κ`` of a multiplicative functional."""
    if tau.basis_id != A.basis_id:
        raise BasisMismatch(f"functional on {tau.basis_id!r} cannot act on {A.basis_id!r}")
    if not A.has_antipode():
        raise Unsupported(f"{A.name} exposes no antipode")
    bad = multiplicativity_failures(tau, A)
    if bad:
        raise NotMultiplicative("; ".join(bad))
    return LinearFunctional.from_values(A, lambda k: tau(A.antipode_key(k)))


# -- axiom checkers ---------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": list(self.failures),
            **self.details,
        }


def _sample(A: Bialgebra, sample) -> list:
    return list(A.basis()) if sample is None else list(sample)


def check_coassociativity(A: Bialgebra, sample: Iterable[Key] | None = None) -> CheckReport:
    report = CheckReport("coassociativity")
    for k in _sample(A, sample):
        d = A.comultiply_key(k)
        left: dict = {}
        right: dict = {}
        for (a, b), c in d.items():
            for (a1, a2), c1 in A.comultiply_key(a).items():
                add_into(left, {(a1, a2, b): c1}, c)
            for (b1, b2), c2 in A.comultiply_key(b).items():
                add_into(right, {(a, b1, b2): c2}, c)
        report.checked += 1
        if left != right:
            report.failures.append(f"(Δ⊗id)Δ != (id⊗Δ)Δ on {A.label(k)}")
    return report


def check_counit(A: Bialgebra, eps: LinearFunctional | None = None, sample=None) -> CheckReport:
    report = CheckReport("counit")
    eps = eps if eps is not None else A.counit()
    if eps is None:
        report.failures.append("no counit candidate")
        return report
    phi = _as_key_function(eps)
    for k in _sample(A, sample):
        d = A.comultiply_key(k)
        report.checked += 1
        target = {k: ONE}
        if slice_left(phi, d) != target:
            report.failures.append(f"(ε⊗id)Δ({A.label(k)}) != {A.label(k)}")
        if slice_right(phi, d) != target:
            report.failures.append(f"(id⊗ε)Δ({A.label(k)}) != {A.label(k)}")
    return report


def check_antipode(A: Bialgebra, kappa: Callable[[Key], Element] | None = None,
                   eps: LinearFunctional | None = None, sample=None) -> CheckReport:
    report = CheckReport("antipode")
    eps = eps if eps is not None else A.counit()
    if eps is None:
        report.failures.append("no counit candidate")
        return report
    if kappa is None:
        if not A.has_antipode():
            report.failures.append("no antipode candidate")
            return report
        kappa = A.antipode_key
    phi = _as_key_function(eps)
    unit = A.unit()
    for k in _sample(A, sample):
        d = A.comultiply_key(k)
        lhs1: dict = {}
        lhs2: dict = {}
        for (a, b), c in d.items():
            add_into(lhs1, A.multiply(kappa(a), {b: ONE}), c)
            add_into(lhs2, A.multiply({a: ONE}, kappa(b)), c)
        target = clean({u: cu * phi(k) for u, cu in unit.items()})
        report.checked += 1
        if lhs1 != target:
            report.failures.append(f"m(κ⊗id)Δ({A.label(k)}) != ε({A.label(k)})1")
        if lhs2 != target:
            report.failures.append(f"m(id⊗κ)Δ({A.label(k)}) != ε({A.label(k)})1")
    return report


def check_invariance(A: Bialgebra, h, sample=None) -> CheckReport:
    """Two-sided invariance (h⊗id)Δ = (id⊗h)Δ = h(·)1."""
    report = CheckReport("haar-invariance")
    phi = _as_key_function(h)
    unit = A.unit()
    for k in _sample(A, sample):
        d = A.comultiply_key(k)
        target = clean({u: cu * phi(k) for u, cu in unit.items()})
        report.checked += 1
        if slice_left(phi, d) != target:
            report.failures.append(f"(h⊗id)Δ({A.label(k)}) != h({A.label(k)})1")
        if slice_right(phi, d) != target:
            report.failures.append(f"(id⊗h)Δ({A.label(k)}) != h({A.label(k)})1")
    return report


def check_density_spans(A: Bialgebra, degree: int | None = None) -> CheckReport:
    """Rank of the spans of (a⊗1)Δ(b) and (1⊗a)Δ(b).

    Finite basis: both spans must have rank dim(A)^2.  Graded truncation at
    ``degree`` d: with deg a <= 2d and deg b <= d, both spans must contain
    every basis tensor of degree <= d in each leg; the first missing tensor
    is named.
    """
    report = CheckReport("density-spans")
    if degree is None:
        keys_b = list(A.basis())
        keys_a = keys_b
        targets = None
        report.details["target_dim"] = len(keys_b) ** 2
    else:
        keys_b = [k for k in A.basis_upto(degree)]
        keys_a = [k for k in A.basis_upto(2 * degree)]
        targets = [(x, y) for x in keys_b for y in keys_b]
        report.details["degree"] = degree
        report.details["target_dim"] = len(targets)
    for side in ("left", "right"):
        ech = SparseEchelon(order=repr)
        deltas = {b: A.comultiply_key(b) for b in keys_b}
        for a in keys_a:
            for b in keys_b:
                vec: dict = {}
                for (x, y), c in deltas[b].items():
                    if side == "left":
                        for z, cz in A.multiply_keys(a, x).items():
                            add_into(vec, {(z, y): cz}, c)
                    else:
                        for z, cz in A.multiply_keys(a, y).items():
                            add_into(vec, {(x, z): cz}, c)
                ech.add(vec)
        report.checked += len(keys_a) * len(keys_b)
        tag = "(A⊗1)ΔA" if side == "left" else "(1⊗A)ΔA"
        report.details[f"rank_{side}"] = ech.rank
        if targets is None:
            if ech.rank != len(keys_b) ** 2:
                report.failures.append(f"span {tag} has rank {ech.rank} < {len(keys_b) ** 2}")
        else:
            for x, y in targets:
                if not ech.contains({(x, y): ONE}):
                    report.failures.append(
                        f"span {tag} misses {A.label(x)}⊗{A.label(y)} at degree {degree}"
                    )
                    break
    return report
