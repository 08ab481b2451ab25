"""Exact Hopf *-algebra of SU_q(2) on the PBW basis a_{kmn} = α^(k) γ^m γ*^n.

α^(k) is α^k for k >= 0 and α*^(-k) for k < 0.  Relations (the convention of
the Hilbert space representation on e_{n,k}):

    α*α + γ*γ = 1,   αα* + q²γγ* = 1,   γγ* = γ*γ,   αγ = qγα,   αγ* = qγ*α.

Products are computed by right multiplication with single letters, which has
a closed form on basis monomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from ..bialgebra import LinearFunctional, add_into, clean
from ..graded import DegreeOverflow, GradedBialgebra
from ..scalars import ONE, ZERO, ExactScalar, as_scalar, parse_rational

# letters: a = α, A = α*, g = γ, G = γ*
LETTERS = ("a", "A", "g", "G")
STAR_LETTER = {"a": "A", "A": "a", "g": "G", "G": "g"}
UNIT_KEY = (0, 0, 0)


def check_q(q) -> Fraction:
    q = parse_rational(q) if not isinstance(q, Fraction) else q
    if not (0 < abs(q) < 1):
        raise ValueError(f"q must satisfy 0 < |q| < 1, got {q}")
    return q


def degree(key) -> int:
    k, m, n = key
    return abs(k) + m + n


def key_word(key) -> tuple:
    """Letters of the monomial a_{kmn}, left to right."""
    k, m, n = key
    return ("a",) * k + ("A",) * (-k) + ("g",) * m + ("G",) * n


def key_label(key) -> str:
    if key == UNIT_KEY:
        return "1"
    k, m, n = key
    parts = []
    for sym, e in (("α" if k > 0 else "α*", abs(k)), ("γ", m), ("γ*", n)):
        if e:
            parts.append(sym if e == 1 else f"{sym}^{e}")
    return "·".join(parts)


def monomials_upto(d: int) -> list:
    """Basis keys of total degree <= d, ordered by degree then (k, m, n)."""
    out = []
    for t in range(d + 1):
        block = []
        for k in range(-t, t + 1):
            rest = t - abs(k)
            for m in range(rest + 1):
                block.append((k, m, rest - m))
        out.extend(sorted(block))
    return out


class SUq2Algebra:
    """Structure maps of SU_q(2) for one rational q."""

    def __init__(self, q):
        self.q = check_q(q)

    @lru_cache(maxsize=None)
    def _qpow(self, e: int) -> Fraction:
        return self.q ** e

    # -- products ------------------------------------------------------------
    @lru_cache(maxsize=None)
    def times_letter(self, key, letter) -> tuple:
        """a_{kmn}·letter as a tuple of (key, coefficient) pairs."""
        k, m, n = key
        q = self.q
        if letter == "g":
            return (((k, m + 1, n), Fraction(1)),)
        if letter == "G":
            return (((k, m, n + 1), Fraction(1)),)
        if letter == "a":
            c = self._qpow(-(m + n))
            if k >= 0:
                return (((k + 1, m, n), c),)
            return (((k + 1, m, n), c), ((k + 1, m + 1, n + 1), -c))
        if letter == "A":
            c = self._qpow(m + n)
            if k <= 0:
                return (((k - 1, m, n), c),)
            return (((k - 1, m, n), c), ((k - 1, m + 1, n + 1), -c * q * q))
        raise ValueError(f"unknown letter {letter!r}")

    def times_word(self, x: dict, word: Iterable[str]) -> dict:
        for letter in word:
            out: dict = {}
            for key, c in x.items():
                for k2, f in self.times_letter(key, letter):
                    add_into(out, {k2: c * f})
            x = out
        return x

    @lru_cache(maxsize=None)
    def _mul_keys(self, a, b) -> tuple:
        return tuple(self.times_word({a: ONE}, key_word(b)).items())

    def multiply_keys(self, a, b) -> dict:
        return dict(self._mul_keys(a, b))

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                add_into(out, dict(self._mul_keys(a, b)), ca * cb)
        return out

    def word(self, word: Iterable[str], coeff=ONE) -> dict:
        """Normal form of a product of letters."""
        return self.times_word({UNIT_KEY: as_scalar(coeff)}, word)

    # -- involution -----------------------------------------------------------
    @lru_cache(maxsize=None)
    def _star_key(self, key) -> tuple:
        w = tuple(STAR_LETTER[c] for c in reversed(key_word(key)))
        return tuple(self.word(w).items())

    def star_key(self, key) -> dict:
        return dict(self._star_key(key))

    def star(self, x: dict) -> dict:
        out: dict = {}
        for key, c in x.items():
            add_into(out, self.star_key(key), c.conj())
        return out

    # -- coalgebra ------------------------------------------------------------
    def _delta_letter(self, letter) -> dict:
        q = self.q
        one = ONE
        t = {
            "a": {((1, 0, 0), (1, 0, 0)): one, ((0, 0, 1), (0, 1, 0)): -one * q},
            "A": {((-1, 0, 0), (-1, 0, 0)): one, ((0, 1, 0), (0, 0, 1)): -one * q},
            "g": {((0, 1, 0), (1, 0, 0)): one, ((-1, 0, 0), (0, 1, 0)): one},
            "G": {((0, 0, 1), (-1, 0, 0)): one, ((1, 0, 0), (0, 0, 1)): one},
        }
        return t[letter]

    def tensor_times_letter(self, t: dict, letter) -> dict:
        """t·Δ(letter) for a tensor t."""
        out: dict = {}
        for (x, y), c in t.items():
            for (l1, l2), f in self._delta_letter(letter).items():
                left = self.multiply_keys(x, l1)
                right = self.multiply_keys(y, l2)
                for u, cu in left.items():
                    for v, cv in right.items():
                        add_into(out, {(u, v): cu * cv}, c * f)
        return out

    @lru_cache(maxsize=None)
    def _comult_key(self, key) -> tuple:
        w = key_word(key)
        if not w:
            return (((UNIT_KEY, UNIT_KEY), ONE),)
        # reuse the coproduct of the monomial with its last letter removed
        prefix = self._prefix(key)
        t = dict(self._comult_key(prefix))
        return tuple(self.tensor_times_letter(t, w[-1]).items())

    @staticmethod
    def _prefix(key):
        k, m, n = key
        if n:
            return (k, m, n - 1)
        if m:
            return (k, m - 1, 0)
        return (k - 1, 0, 0) if k > 0 else (k + 1, 0, 0)

    def comultiply_key(self, key) -> dict:
        return dict(self._comult_key(key))

    def comultiply(self, x: dict) -> dict:
        out: dict = {}
        for key, c in x.items():
            add_into(out, self.comultiply_key(key), c)
        return out

    def counit_key(self, key) -> ExactScalar:
        return ONE if key[1] == 0 and key[2] == 0 else ZERO

    def counit(self, x: dict) -> ExactScalar:
        return sum((c * self.counit_key(k) for k, c in x.items()), ZERO)

    @lru_cache(maxsize=None)
    def _antipode_key(self, key) -> tuple:
        q = self.q
        images = {
            "a": {(-1, 0, 0): ONE},
            "A": {(1, 0, 0): ONE},
            "g": {(0, 1, 0): -ONE * q},
            "G": {(0, 0, 1): -ONE / q},
        }
        out = {UNIT_KEY: ONE}
        for letter in reversed(key_word(key)):
            out = self.multiply(out, images[letter])
        return tuple(out.items())

    def antipode_key(self, key) -> dict:
        return dict(self._antipode_key(key))

    def antipode(self, x: dict) -> dict:
        out: dict = {}
        for key, c in x.items():
            add_into(out, self.antipode_key(key), c)
        return out

    # -- Haar state -----------------------------------------------------------
    def haar_key(self, key) -> ExactScalar:
        k, m, n = key
        if k != 0 or m != n:
            return ZERO
        q2 = self.q * self.q
        return ExactScalar((1 - q2) / (1 - q2 ** (m + 1)))

    def haar(self, x: dict) -> ExactScalar:
        return sum((c * self.haar_key(k) for k, c in x.items()), ZERO)


class SUq2Element:
    """Finite linear combination of PBW monomials for a fixed q."""

    __slots__ = ("q", "terms")

    def __init__(self, q, terms: dict | None = None):
        self.q = check_q(q)
        self.terms = clean({tuple(k): as_scalar(c) for k, c in (terms or {}).items()})
        for k, m, n in self.terms:
            if m < 0 or n < 0:
                raise ValueError(f"negative γ exponent in {(k, m, n)}")

    @classmethod
    def monomial(cls, q, k: int, m: int, n: int, coeff=ONE) -> "SUq2Element":
        return cls(q, {(k, m, n): coeff})

    @property
    def degree(self) -> int:
        return max((degree(k) for k in self.terms), default=0)

    def _same(self, other: "SUq2Element"):
        if self.q != other.q:
            raise ValueError(f"elements for different q: {self.q} and {other.q}")

    def __add__(self, other):
        self._same(other)
        return SUq2Element(self.q, add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._same(other)
        return SUq2Element(self.q, add_into(dict(self.terms), other.terms, -ONE))

    def __mul__(self, other):
        if isinstance(other, SUq2Element):
            self._same(other)
            return SUq2Element(self.q, algebra(self.q).multiply(self.terms, other.terms))
        c = as_scalar(other)
        return SUq2Element(self.q, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = as_scalar(other)
        return SUq2Element(self.q, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, SUq2Element) and self.q == other.q and self.terms == other.terms

    def __hash__(self):
        return hash((self.q, frozenset(self.terms.items())))

    def star(self) -> "SUq2Element":
        return SUq2Element(self.q, algebra(self.q).star(self.terms))

    def __repr__(self):
        return f"SUq2Element(q={self.q}, {format_terms(self.terms)!r})"


@lru_cache(maxsize=16)
def algebra(q) -> SUq2Algebra:
    return SUq2Algebra(check_q(q))


def format_scalar(c: ExactScalar) -> str:
    im = c.im
    sign = "-" if im < 0 else "+"
    return f"{c.re}{sign}{abs(im)}·i"


def format_terms(terms: dict) -> str:
    """One "(k,m,n): re+im·i" line per monomial, sorted by (k, m, n)."""
    return "\n".join(f"({k},{m},{n}): {format_scalar(c)}" for (k, m, n), c in sorted(terms.items()))


# -- module-level operations on SUq2Element --------------------------------


def _check_bound(x: SUq2Element, degree_bound: int):
    if x.degree > degree_bound:
        raise DegreeOverflow(f"element of degree {x.degree} exceeds degree bound {degree_bound}")


def comultiply(x: SUq2Element, degree_bound: int) -> dict:
    """Δ(x) as {(key1, key2): coefficient}."""
    _check_bound(x, degree_bound)
    return algebra(x.q).comultiply(x.terms)


def counit(x: SUq2Element) -> ExactScalar:
    return algebra(x.q).counit(x.terms)


def antipode(x: SUq2Element, degree_bound: int) -> SUq2Element:
    _check_bound(x, degree_bound)
    return SUq2Element(x.q, algebra(x.q).antipode(x.terms))


def haar(x: SUq2Element) -> ExactScalar:
    return algebra(x.q).haar(x.terms)


class SUq2View(GradedBialgebra):
    """SU_q(2) seen through monomials of total degree <= ``degree_bound``.

    Products and coproducts of in-range monomials are exact; anything asked
    of a monomial beyond the bound raises :class:`DegreeOverflow`.
    """

    def __init__(self, q, degree_bound: int):
        super().__init__(degree_bound)
        self.alg = algebra(q)
        self.q = self.alg.q
        self.name = f"SU_q(2)[q={self.q}]"

    def _guard(self, key):
        if degree(key) > self.degree_bound:
            raise DegreeOverflow(f"monomial {key} has degree {degree(key)} > bound {self.degree_bound}")

    def basis_upto(self, d: int) -> list:
        return monomials_upto(d)

    def degree(self, key) -> int:
        return degree(key)

    def label(self, key) -> str:
        return key_label(key)

    def unit(self):
        return {UNIT_KEY: ONE}

    def multiply_keys(self, a, b):
        return self.alg.multiply_keys(a, b)

    def star_key(self, a):
        return self.alg.star_key(a)

    def comultiply_key(self, a):
        self._guard(a)
        return self.alg.comultiply_key(a)

    def counit(self) -> LinearFunctional:
        return LinearFunctional.from_values(self, self.alg.counit_key)

    def antipode_key(self, a):
        self._guard(a)
        return self.alg.antipode_key(a)

    def has_antipode(self) -> bool:
        return True

    def haar(self) -> LinearFunctional:
        return LinearFunctional.from_values(self, self.alg.haar_key)

    def character(self, lam) -> LinearFunctional:
        return character(lam, self)


def _conj(x):
    return x.conj() if hasattr(x, "conj") else complex(x).conjugate()


def character(lam, view: SUq2View) -> LinearFunctional:
    """τ_λ(a_{kmn}) = λ^(k)[m = n = 0] for |λ| = 1.

    Exact for an exact λ; a float or complex λ gives float values, accepted
    if |λ| = 1 to within 1e-12.
    """
    if isinstance(lam, (float, complex)):
        if abs(abs(lam) - 1) > 1e-12:
            raise ValueError(f"|λ| must be 1, got |{lam}| = {abs(lam)}")
        lam = complex(lam)
    else:
        lam = as_scalar(lam)
        if lam.abs2() != 1:
            raise ValueError(f"|λ| must be 1, got λ = {lam}")

    def value(key):
        k, m, n = key
        if m or n:
            return ZERO if isinstance(lam, ExactScalar) else 0j
        base = lam if k >= 0 else _conj(lam)
        return base ** abs(k) if k else (ONE if isinstance(lam, ExactScalar) else 1 + 0j)

    return LinearFunctional.from_values(view, value)


__all__ = [
    "SUq2Algebra", "SUq2Element", "SUq2View", "algebra", "antipode", "character", "check_q",
    "comultiply", "counit", "degree", "format_scalar", "format_terms", "haar", "key_label",
    "key_word", "monomials_upto", "DegreeOverflow", "LETTERS", "UNIT_KEY",
]
