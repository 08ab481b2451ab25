"""String rewriting to the PBW normal form, and the textual element syntax.

Rules (letters a = α, A = α*, g = γ, G = γ*):

    Aa -> 1 - Gg        aA -> 1 - q²gG      Gg -> gG
    ga -> q⁻¹ag         Ga -> q⁻¹aG         gA -> qAg       GA -> qAG

Irreducible words are exactly a^k or A^k followed by g^m G^n.  Rewriting
terminates: every rule either shortens the word or moves an α-letter left
past a γ-letter or sorts g before G, without increasing length.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction

from ..bialgebra import add_into
from ..scalars import ONE, ExactScalar, as_scalar, parse_scalar
from .algebra import UNIT_KEY, algebra, check_q


def _rules(q: Fraction) -> dict:
    return {
        "Aa": [("", Fraction(1)), ("Gg", Fraction(-1))],
        "aA": [("", Fraction(1)), ("gG", -q * q)],
        "Gg": [("gG", Fraction(1))],
        "ga": [("ag", 1 / q)],
        "Ga": [("aG", 1 / q)],
        "gA": [("Ag", q)],
        "GA": [("AG", q)],
    }


def _redex(word: str, leftmost: bool):
    rng = range(len(word) - 1) if leftmost else range(len(word) - 2, -1, -1)
    for i in rng:
        if word[i:i + 2] in _RULE_KEYS:
            return i
    return None


_RULE_KEYS = frozenset(["Aa", "aA", "Gg", "ga", "Ga", "gA", "GA"])


def word_key(word: str):
    """(k, m, n) of an irreducible word."""
    m = re.fullmatch(r"(a*|A*)(g*)(G*)", word)
    if m is None:
        raise ValueError(f"{word!r} is not in normal form")
    head = m.group(1)
    k = len(head) if head.startswith("a") else -len(head)
    return (k, len(m.group(2)), len(m.group(3)))


def rewrite(terms: dict, q, strategy: str = "leftmost") -> dict:
    """Normal form of a combination {word: coefficient} by repeated single steps.

    ``strategy`` picks the redex: "leftmost" rewrites the first reducible
    pair of a word, "rightmost" the last one.
    """
    q = check_q(q)
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rules = _rules(q)
    leftmost = strategy == "leftmost"
    pending = {w: as_scalar(c) for w, c in terms.items() if c}
    done: dict = {}
    while pending:
        word, c = pending.popitem()
        i = _redex(word, leftmost)
        if i is None:
            add_into(done, {word_key(word): c})
            continue
        for rhs, f in rules[word[i:i + 2]]:
            w2 = word[:i] + rhs + word[i + 2:]
            v = pending.get(w2, 0) + c * f
            if v:
                pending[w2] = v
            else:
                pending.pop(w2, None)
    return done


def letter_action_normal_form(word: str, q, coeff=ONE) -> dict:
    """Normal form via the closed-form right action of single letters."""
    return algebra(check_q(q)).times_word({UNIT_KEY: as_scalar(coeff)}, word)


def random_words(count: int, max_len: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    return ["".join(rng.choice("aAgG") for _ in range(rng.randint(0, max_len))) for _ in range(count)]


# -- textual syntax ------------------------------------------------------------

_TOKEN_LETTER = {"a": "a", "a*": "A", "g": "g", "g*": "G"}
_TERM_RE = re.compile(r"\s*([+-])?\s*(\([^()]*\)|[0-9/]+(?:\s*[*·])?|i(?=\s|$|[*·]))?\s*((?:(?:a\*|g\*|a|g|1)\s*)*)")


def parse_terms(text: str) -> list[tuple[ExactScalar, str]]:
    """Split e.g. ``"a g - 2 a* + (1/2+i) g g* + 3"`` into (coefficient, word) pairs.

    Tokens are a, a*, g, g* (α, α*, γ, γ*) and 1; a term may start with a
    rational or a parenthesized complex coefficient.
    """
    src = text.strip()
    if not src:
        raise ValueError("empty element")
    pos = 0
    out = []
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse element at {src[pos:]!r}")
        sign, coeff, body = m.group(1), m.group(2), m.group(3)
        if sign is None and out:
            raise ValueError(f"missing '+' or '-' before {src[pos:]!r}")
        if coeff is None and not body.strip():
            raise ValueError(f"empty term at {src[pos:]!r}")
        c = parse_scalar(coeff.strip().rstrip("*·").strip().strip("()")) if coeff else ONE
        if sign == "-":
            c = -c
        word = "".join(_TOKEN_LETTER[t] for t in re.findall(r"a\*|g\*|a|g|1", body) if t != "1")
        out.append((c, word))
        pos = m.end()
    return out


def parse_element(text: str, q, strategy: str = "letter") -> dict:
    """Parse the textual syntax and normal-form it.

    ``strategy`` is "letter" (closed-form letter action), "leftmost" or
    "rightmost" (string rewriting).
    """
    q = check_q(q)
    out: dict = {}
    for c, word in parse_terms(text):
        if strategy == "letter":
            add_into(out, letter_action_normal_form(word, q, c))
        else:
            add_into(out, rewrite({word: c}, q, strategy))
    return out


def format_word(word: str) -> str:
    inv = {v: k for k, v in _TOKEN_LETTER.items()}
    return " ".join(inv[c] for c in word) or "1"


__all__ = ["parse_terms", "rewrite", "letter_action_normal_form", "random_words", "parse_element", "word_key", "format_word"]
