"""Gassner matrices for pure braid generators and evaluation of braid words.

The pure braid group on n strands is generated by elements A(r,s) for
1 <= r < s <= n.  Its Gassner matrix is the n x n block matrix over
Z[t_1^{±1}, ..., t_n^{±1}] with

    (r,r) = 1 - t_r + t_r*t_s        (r,s) = t_r*(1 - t_r)
    (s,r) = 1 - t_s                  (s,s) = t_r
    (k,r) = (1 - t_k)*(1 - t_s)      (k,s) = (1 - t_k)*(t_r - 1)

for r < k < s, and identity elsewhere.  Every generator specializes to the
identity at t = 1, and its determinant is the unit monomial t_r*t_s, so
exact inverses come from the adjugate with an exponent shift.

Words in the free subgroup generated by x_j = A(j,n) (the strands linking
the last one) are the main objects of study; ``parse_word`` accepts both
A(r,s) letters and the x_j aliases, plus bracket expressions expanded with
the commutator convention [a, b] = a b a^-1 b^-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .laurent import (
    LaurentPoly,
    SquareMatrix,
    TruncatedSeries,
    UsageError,
    laurent_matrix_inverse,
    series_matrix_inverse,
    specialize,
)


class BraidLetter(NamedTuple):
    r: int
    s: int
    exponent: int  # +1 or -1

    def inverse(self) -> "BraidLetter":
        return BraidLetter(self.r, self.s, -self.exponent)


def _check_letter(letter: BraidLetter, n: int) -> None:
    if not (1 <= letter.r < letter.s <= n):
        raise UsageError(
            f"letter A({letter.r},{letter.s}) violates 1 <= r < s <= {n}"
        )
    if letter.exponent not in (1, -1):
        raise UsageError(f"letter exponent must be ±1, got {letter.exponent}")


@dataclass(frozen=True)
class BraidWord:
    """A word in the pure braid generators on ``n`` strands."""

    n: int
    letters: tuple[BraidLetter, ...]

    def __post_init__(self):
        for letter in self.letters:
            _check_letter(letter, self.n)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise UsageError(f"strand count mismatch: {self.n} vs {other.n}")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(
            self.n, tuple(l.inverse() for l in reversed(self.letters))
        )

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.n, self.letters * k)

    @property
    def is_free_subgroup_word(self) -> bool:
        """True when every letter is some x_j = A(j, n)."""
        return all(l.s == self.n for l in self.letters)

    @classmethod
    def identity(cls, n: int) -> "BraidWord":
        return cls(n, ())

    def __str__(self) -> str:
        if not self.letters:
            return "<empty>"
        parts = []
        for l in self.letters:
            atom = f"A({l.r},{l.s})"
            parts.append(atom if l.exponent == 1 else atom + "^-1")
        return " ".join(parts)


# ---------------------------------------------------------------------------
# Generator matrices


@lru_cache(maxsize=None)
def gassner_generator(n: int, r: int, s: int) -> SquareMatrix:
    """The Gassner matrix of A(r,s) on n strands."""
    if not (1 <= r < s <= n):
        raise UsageError(f"generator indices must satisfy 1 <= r < s <= n, got ({r},{s})")
    one = LaurentPoly.one(n)
    tr = LaurentPoly.var(n, r)
    ts = LaurentPoly.var(n, s)
    rows = [
        [
            one if i == j else LaurentPoly.zero(n)
            for j in range(1, n + 1)
        ]
        for i in range(1, n + 1)
    ]
    rows[r - 1][r - 1] = one - tr + tr * ts
    rows[r - 1][s - 1] = tr * (one - tr)
    rows[s - 1][r - 1] = one - ts
    rows[s - 1][s - 1] = tr
    for k in range(r + 1, s):
        tk = LaurentPoly.var(n, k)
        rows[k - 1][r - 1] = (one - tk) * (one - ts)
        rows[k - 1][s - 1] = (one - tk) * (tr - one)
    return SquareMatrix(rows)


@lru_cache(maxsize=None)
def gassner_generator_inverse(n: int, r: int, s: int) -> SquareMatrix:
    """Exact inverse of the Gassner matrix of A(r,s)."""
    gen = gassner_generator(n, r, s)
    hint = LaurentPoly.var(n, r) * LaurentPoly.var(n, s)
    return laurent_matrix_inverse(gen, det_hint=hint)


@lru_cache(maxsize=None)
def _letter_matrix(n: int, r: int, s: int, exponent: int) -> SquareMatrix:
    if exponent == 1:
        return gassner_generator(n, r, s)
    return gassner_generator_inverse(n, r, s)


@lru_cache(maxsize=None)
def _letter_matrix_truncated(
    n: int, r: int, s: int, exponent: int, max_deg: int
) -> SquareMatrix:
    gen = gassner_generator(n, r, s).map_entries(
        lambda e: TruncatedSeries.from_laurent(e, max_deg)
    )
    if exponent == 1:
        return gen
    return series_matrix_inverse(gen)


# ---------------------------------------------------------------------------
# Word evaluation


def evaluate_exact(word: BraidWord) -> SquareMatrix:
    """Ordered product of exact generator matrices; empty word gives I_n."""
    acc = SquareMatrix.identity_laurent(word.n, word.n)
    for l in word.letters:
        acc = acc * _letter_matrix(word.n, l.r, l.s, l.exponent)
    return acc


def evaluate_truncated(word: BraidWord, max_deg: int) -> SquareMatrix:
    """Product of the word's letters in the truncated ring.

    Equals ``series_from_laurent`` applied entrywise to the exact
    evaluation, but never leaves the truncated ring: inverse letters use
    the geometric-series matrix inverse.
    """
    acc = SquareMatrix.identity_series(word.n, word.n, max_deg)
    for l in word.letters:
        acc = acc * _letter_matrix_truncated(word.n, l.r, l.s, l.exponent, max_deg)
    return acc


def delete_strand_reduction(m: SquareMatrix, n: int) -> SquareMatrix:
    """Project an n x n Gassner image to n-1 strands.

    Sets t_n = 1 and deletes the last row and column (and the now-unused
    last variable).  Images of words avoiding the last strand commute with
    this projection, and free-subgroup words collapse to the identity.
    """
    if m.size != n:
        raise UsageError(f"expected a {n}x{n} matrix, got size {m.size}")
    reduced = specialize(m, n)
    rows = [
        [reduced.rows[i][j].drop_var(n) for j in range(n - 1)]
        for i in range(n - 1)
    ]
    return SquareMatrix(rows)


# ---------------------------------------------------------------------------
# Word grammar
#
#   word := term+
#   term := atom ("^" signed-int)?
#   atom := "A(" int "," int ")" | "x" int | "[" word "," word "]"
#
# Exponents other than ±1 expand by repetition; brackets expand with the
# convention [a, b] = a b a^-1 b^-1.


class WordSyntaxError(UsageError):
    """Raised for malformed word text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"""
    (?P<letter>A\(\s*(?P<lr>\d+)\s*,\s*(?P<ls>\d+)\s*\))
  | (?P<alias>x(?P<xj>\d+))
  | (?P<open>\[)
  | (?P<close>\])
  | (?P<comma>,)
  | (?P<caret>\^(?P<exp>[+-]?\d+))
  | (?P<space>\s+)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "letter":
            tokens.append(("letter", (int(m.group("lr")), int(m.group("ls"))), pos))
        elif kind == "alias":
            tokens.append(("alias", int(m.group("xj")), pos))
        elif kind == "caret":
            tokens.append(("caret", int(m.group("exp")), pos))
        elif kind != "space":
            tokens.append((kind, None, pos))
        pos = m.end()
    return tokens


class _WordParser:
    def __init__(self, tokens: list[tuple[str, object, int]], n: int, length: int):
        self.tokens = tokens
        self.n = n
        self.i = 0
        self.length = length

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][2] if self.i < len(self.tokens) else self.length

    def parse_word(self) -> tuple[BraidLetter, ...]:
        letters: list[BraidLetter] = []
        while self.peek() in ("letter", "alias", "open"):
            letters.extend(self.parse_term())
        return tuple(letters)

    def parse_term(self) -> tuple[BraidLetter, ...]:
        atom = self.parse_atom()
        if self.peek() == "caret":
            _, exp, _ = self.tokens[self.i]
            self.i += 1
            return _power(atom, exp)
        return atom

    def parse_atom(self) -> tuple[BraidLetter, ...]:
        kind = self.peek()
        if kind == "letter":
            _, (r, s), pos = self.tokens[self.i]
            self.i += 1
            letter = BraidLetter(r, s, 1)
            if not (1 <= r < s <= self.n):
                raise WordSyntaxError(
                    f"A({r},{s}) violates 1 <= r < s <= {self.n}", pos
                )
            return (letter,)
        if kind == "alias":
            _, j, pos = self.tokens[self.i]
            self.i += 1
            if not (1 <= j <= self.n - 1):
                raise WordSyntaxError(
                    f"x{j} out of range 1..{self.n - 1}", pos
                )
            return (BraidLetter(j, self.n, 1),)
        if kind == "open":
            self.i += 1
            left = self.parse_word()
            if self.peek() != "comma":
                raise WordSyntaxError("expected ',' in bracket", self.pos())
            self.i += 1
            right = self.parse_word()
            if self.peek() != "close":
                raise WordSyntaxError("expected ']'", self.pos())
            self.i += 1
            return left + right + _invert(left) + _invert(right)
        raise WordSyntaxError("expected a letter, alias, or bracket", self.pos())


def _invert(letters: tuple[BraidLetter, ...]) -> tuple[BraidLetter, ...]:
    return tuple(l.inverse() for l in reversed(letters))


def _power(letters: tuple[BraidLetter, ...], k: int) -> tuple[BraidLetter, ...]:
    if k < 0:
        return _invert(letters) * (-k)
    return letters * k


def parse_word(text: str, n: int) -> BraidWord:
    """Parse word text over n strands; see the module grammar."""
    if n < 2:
        raise UsageError("strand count must be at least 2")
    parser = _WordParser(_tokenize(text), n, len(text))
    letters = parser.parse_word()
    if parser.i != len(parser.tokens):
        raise WordSyntaxError("trailing input", parser.pos())
    return BraidWord(n, letters)
