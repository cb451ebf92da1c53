"""Basic (Hall) commutators of the free group on m generators.

A commutator term is a binary bracket tree over the generators x_1..x_m.
The basic commutators of weight w, defined recursively by the admissibility
conditions

    (1) [c, d] with c, d basic and weight(c) + weight(d) = w,
    (2) c > d, and if c = [a, b] then d >= b,

form a basis of the weight-w quotient of the lower central series, with the
number of them given by the Witt formula.  The total order used in (2)
compares weight first and then the left and right components recursively,
with generators ordered x_m > ... > x_1; this reproduces the usual ordering
of weights one and two.  Bases are returned as ascending sequences (least
element first) and generation is deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .braid import BraidLetter, BraidWord
from .laurent import UsageError

MAX_GENERATORS = 6
MAX_WEIGHT = 8


@dataclass(frozen=True)
class CommutatorTerm:
    """A leaf generator x_j or a bracket of two commutator terms."""

    gen: int | None = None
    left: "CommutatorTerm | None" = None
    right: "CommutatorTerm | None" = None

    @classmethod
    def leaf(cls, j: int) -> "CommutatorTerm":
        if j < 1:
            raise UsageError(f"generator index must be positive, got {j}")
        return cls(gen=j)

    @classmethod
    def bracket(cls, left: "CommutatorTerm", right: "CommutatorTerm") -> "CommutatorTerm":
        return cls(left=left, right=right)

    @property
    def is_leaf(self) -> bool:
        return self.gen is not None

    @property
    def weight(self) -> int:
        return weight(self)

    def __lt__(self, other: "CommutatorTerm") -> bool:
        return sort_key(self) < sort_key(other)

    def __le__(self, other: "CommutatorTerm") -> bool:
        return sort_key(self) <= sort_key(other)

    def __gt__(self, other: "CommutatorTerm") -> bool:
        return sort_key(self) > sort_key(other)

    def __ge__(self, other: "CommutatorTerm") -> bool:
        return sort_key(self) >= sort_key(other)

    def to_json(self):
        """Nested-array form: a leaf is an int, a bracket a two-element list."""
        if self.is_leaf:
            return self.gen
        return [self.left.to_json(), self.right.to_json()]

    @classmethod
    def from_json(cls, data) -> "CommutatorTerm":
        if isinstance(data, int):
            return cls.leaf(data)
        left, right = data
        return cls.bracket(cls.from_json(left), cls.from_json(right))

    def __str__(self) -> str:
        if self.is_leaf:
            return f"x{self.gen}"
        return f"[{self.left},{self.right}]"

    def __repr__(self) -> str:
        return f"CommutatorTerm({self})"


@lru_cache(maxsize=None)
def weight(term: CommutatorTerm) -> int:
    if term.is_leaf:
        return 1
    return weight(term.left) + weight(term.right)


@lru_cache(maxsize=None)
def sort_key(term: CommutatorTerm):
    """Recursive comparison key: weight, then left key, then right key."""
    if term.is_leaf:
        return (1, term.gen)
    return (weight(term), sort_key(term.left), sort_key(term.right))


def leaf_sequence(term: CommutatorTerm) -> tuple[int, ...]:
    """Generator indices in left-to-right order; identifies a basic term."""
    if term.is_leaf:
        return (term.gen,)
    return leaf_sequence(term.left) + leaf_sequence(term.right)


def is_left_normed(term: CommutatorTerm) -> bool:
    """True for [...[[x_a, x_b], x_c], ..., x_z] shapes (including leaves)."""
    if term.is_leaf:
        return True
    return term.right.is_leaf and is_left_normed(term.left)


def is_basic(term: CommutatorTerm, m: int) -> bool:
    """Check the admissibility conditions over generators x_1..x_m."""
    if term.is_leaf:
        return 1 <= term.gen <= m
    left, right = term.left, term.right
    if not (is_basic(left, m) and is_basic(right, m)):
        return False
    if not left > right:
        return False
    if not left.is_leaf and not right >= left.right:
        return False
    return True


def _check_caps(m: int, w: int) -> None:
    if m < 1 or w < 1:
        raise UsageError("generator count and weight must be positive")
    if m > MAX_GENERATORS or w > MAX_WEIGHT:
        raise UsageError(
            f"basis generation is capped at m <= {MAX_GENERATORS}, "
            f"w <= {MAX_WEIGHT} (got m={m}, w={w})"
        )


@lru_cache(maxsize=None)
def _basic_commutators(m: int, w: int) -> tuple[CommutatorTerm, ...]:
    if w == 1:
        return tuple(CommutatorTerm.leaf(j) for j in range(1, m + 1))
    found = []
    for left_weight in range((w + 1) // 2, w):
        for left in _basic_commutators(m, left_weight):
            for right in _basic_commutators(m, w - left_weight):
                if not left > right:
                    continue
                if not left.is_leaf and not right >= left.right:
                    continue
                found.append(CommutatorTerm.bracket(left, right))
    found.sort(key=sort_key)
    return tuple(found)


def basic_commutators(m: int, w: int) -> tuple[CommutatorTerm, ...]:
    """All basic commutators of weight w on m generators, ascending."""
    _check_caps(m, w)
    return _basic_commutators(m, w)


def witt_rank(m: int, w: int) -> int:
    """Rank of the weight-w lower-central quotient of a free group of rank m.

    Moebius sum (1/w) * sum over divisors d of w of mu(d) * m^(w/d); used as
    an independent count oracle for the generated bases.
    """
    if m < 1 or w < 1:
        raise UsageError("generator count and weight must be positive")
    total = sum(_mobius(d) * m ** (w // d) for d in _divisors(w))
    assert total % w == 0
    return total // w


def _divisors(n: int) -> list[int]:
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    count = 0
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            count += 1
        else:
            d += 1
    if n > 1:
        count += 1
    return -1 if count % 2 else 1


# ---------------------------------------------------------------------------
# Commutator words


def commutator_to_word(term: CommutatorTerm, n: int) -> BraidWord:
    """Expand a commutator tree into a word over n strands.

    A leaf x_j becomes the letter A(j, n); a bracket [a, b] expands to
    a b a^-1 b^-1.  Every leaf index must be at most n-1.
    """
    for j in leaf_sequence(term):
        if j > n - 1:
            raise UsageError(f"leaf x{j} exceeds the free rank {n - 1}")
    return BraidWord(n, _expand(term, n))


@lru_cache(maxsize=None)
def _expand(term: CommutatorTerm, n: int) -> tuple[BraidLetter, ...]:
    if term.is_leaf:
        return (BraidLetter(term.gen, n, 1),)
    a = _expand(term.left, n)
    b = _expand(term.right, n)
    a_inv = tuple(l.inverse() for l in reversed(a))
    b_inv = tuple(l.inverse() for l in reversed(b))
    return a + b + a_inv + b_inv


# ---------------------------------------------------------------------------
# Commutator grammar:  c := "x" int | "[" c "," c "]"


def parse_commutator(text: str) -> CommutatorTerm:
    term, end = _parse_commutator(text, _skip_ws(text, 0))
    end = _skip_ws(text, end)
    if end != len(text):
        raise UsageError(f"trailing input in commutator (at position {end})")
    return term


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_commutator(text: str, pos: int) -> tuple[CommutatorTerm, int]:
    if pos >= len(text):
        raise UsageError(f"unexpected end of commutator (at position {pos})")
    if text[pos] == "x":
        m = re.match(r"x(\d+)", text[pos:])
        if m is None:
            raise UsageError(f"expected generator index (at position {pos})")
        return CommutatorTerm.leaf(int(m.group(1))), pos + m.end()
    if text[pos] == "[":
        left, pos = _parse_commutator(text, _skip_ws(text, pos + 1))
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != ",":
            raise UsageError(f"expected ',' in commutator (at position {pos})")
        right, pos = _parse_commutator(text, _skip_ws(text, pos + 1))
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != "]":
            raise UsageError(f"expected ']' in commutator (at position {pos})")
        return CommutatorTerm.bracket(left, right), pos + 1
    raise UsageError(f"unexpected character {text[pos]!r} (at position {pos})")
