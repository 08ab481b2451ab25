"""Exact complex rationals.

Every coefficient in the algebraic layer is an :class:`ExactScalar`: a pair of
:class:`fractions.Fraction` giving the real and imaginary part.  Nothing here
ever rounds.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["ExactScalar", "ZERO", "ONE", "I", "as_scalar", "parse_rational", "parse_scalar"]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``.  Decimal points and exponents are refused."""
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string 'p/q', got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not an exact rational: {text!r} (use 'p/q', no decimals)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


class ExactScalar:
    """Complex number with exact rational parts.  Treat instances as immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "ExactScalar":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if type(other) is ExactScalar:
            return ExactScalar._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return ExactScalar._raw(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is ExactScalar:
            return ExactScalar._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return ExactScalar._raw(self.re - other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is ExactScalar:
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return ExactScalar._raw(a * c, b)
            return ExactScalar._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return ExactScalar._raw(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            other = ExactScalar(other)
        if type(other) is ExactScalar:
            n = other.re * other.re + other.im * other.im
            if not n:
                raise ZeroDivisionError("division by exact zero")
            return self * ExactScalar._raw(other.re / n, -other.im / n)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "ExactScalar":
        return ExactScalar._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- comparisons ----------------------------------------------------
    def __eq__(self, other):
        if type(other) is ExactScalar:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.re == other and not self.im
        if isinstance(other, complex):
            return complex(self) == other
        if isinstance(other, float):
            return not self.im and float(self.re) == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise TypeError(f"{self} is not real")
        return float(self.re)

    # -- text -----------------------------------------------------------
    def __repr__(self):
        return f"ExactScalar({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> list[str]:
        return [str(self.re), str(self.im)]

    @classmethod
    def from_json(cls, value) -> "ExactScalar":
        """Accept ``"p/q"`` (real) or ``["re", "im"]``.  Floats are rejected."""
        if isinstance(value, float):
            raise ValueError(f"floating-point value {value!r} in exact data")
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError(f"complex scalar must be [re, im], got {value!r}")
            return cls(parse_rational(value[0]), parse_rational(value[1]))
        return cls(parse_rational(value))


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)


def as_scalar(x) -> ExactScalar:
    if type(x) is ExactScalar:
        return x
    if isinstance(x, (int, Rational)):
        return ExactScalar(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {x!r} to an exact scalar")


_COMPLEX_RE = re.compile(
    r"^\s*(?:(?P<re>[+-]?\d+(?:/\d+)?)\s*)?"
    r"(?:(?P<sign>[+-])?\s*(?P<im>\d+(?:/\d+)?)?\s*i)?\s*$"
)


def parse_scalar(text: str) -> ExactScalar:
    """Parse ``"p/q"``, ``"p/q+r/si"``, ``"-i"`` and the like."""
    m = _COMPLEX_RE.match(text)
    if m is None or not text.strip():
        raise ValueError(f"not an exact complex rational: {text!r}")
    re_part = parse_rational(m.group("re")) if m.group("re") else Fraction(0)
    has_i = text.strip().endswith("i")
    im_part = Fraction(0)
    if has_i:
        im_part = parse_rational(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im_part = -im_part
        elif m.group("sign") is None and m.group("re"):
            # "3i" parses with re="3" and no imaginary digits
            im_part, re_part = re_part, Fraction(0)
    return ExactScalar(re_part, im_part)
