"""Exact sparse arithmetic in two rings of multivariate polynomials.

* ``LaurentPoly`` is an element of Z[t_1^{±1}, ..., t_n^{±1}]: a sparse map
  from exponent vectors (negative entries allowed) to arbitrary-precision
  integer coefficients.
* ``TruncatedSeries`` is a polynomial in the shifted variables u_i = t_i - 1
  with every term of total degree greater than ``max_deg`` discarded.  This
  is the ring of residues modulo the (max_deg+1)-th power of the ideal
  generated by all the u_i.

``SquareMatrix`` holds an n x n grid over either ring and provides the matrix
operations the representation needs: products, exact adjugate inverses for
matrices whose determinant is a signed monomial, and geometric-series
inverses for matrices congruent to the identity.

All values are immutable after construction and every operation is a pure
function, so instances may be shared freely between threads or processes.
Coefficients are Python ints throughout: word evaluation multiplies many
matrices and coefficient growth is unbounded, so fixed-width arithmetic
would silently corrupt downstream rank computations.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Callable, Iterable, Union


class UsageError(ValueError):
    """An argument violates an interface precondition (caller bug)."""


class DomainError(ArithmeticError):
    """The input lies outside the mathematical domain of the operation."""


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients.

    Terms map exponent tuples of length ``n_vars`` to nonzero integers.
    Zero coefficients are never stored, and iteration for display or
    serialization is always in sorted exponent order, so equal polynomials
    have identical external representations.

    >>> t1, t2 = LaurentPoly.var(2, 1), LaurentPoly.var(2, 2)
    >>> print((t1 - 1) * (t1 + 1))
    t1^2 - 1
    """

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: dict[tuple[int, ...], int] | None = None):
        if n_vars < 0:
            raise UsageError("variable count must be nonnegative")
        clean: dict[tuple[int, ...], int] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != n_vars:
                raise UsageError(
                    f"exponent vector {exps} has length {len(exps)}, expected {n_vars}"
                )
            if coeff:
                clean[tuple(exps)] = coeff
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors

    @classmethod
    def zero(cls, n_vars: int) -> "LaurentPoly":
        return cls(n_vars, {})

    @classmethod
    def one(cls, n_vars: int) -> "LaurentPoly":
        return cls(n_vars, {(0,) * n_vars: 1})

    @classmethod
    def constant(cls, n_vars: int, c: int) -> "LaurentPoly":
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def var(cls, n_vars: int, i: int, power: int = 1) -> "LaurentPoly":
        """The monomial t_i^power; ``i`` is 1-based."""
        if not 1 <= i <= n_vars:
            raise UsageError(f"variable index {i} out of range 1..{n_vars}")
        exps = [0] * n_vars
        exps[i - 1] = power
        return cls(n_vars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, n_vars: int, exps: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        return cls(n_vars, {tuple(exps): coeff})

    # -- ring structure

    def zero_like(self) -> "LaurentPoly":
        return LaurentPoly.zero(self.n_vars)

    def one_like(self) -> "LaurentPoly":
        return LaurentPoly.one(self.n_vars)

    def _check_compat(self, other: "LaurentPoly") -> None:
        if not isinstance(other, LaurentPoly):
            raise UsageError(f"cannot combine LaurentPoly with {type(other).__name__}")
        if self.n_vars != other.n_vars:
            raise UsageError(
                f"mismatched variable counts: {self.n_vars} vs {other.n_vars}"
            )

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compat(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = out.get(exps, 0) + coeff
            if new:
                out[exps] = new
            else:
                out.pop(exps, None)
        return _raw_laurent(self.n_vars, out)

    def __neg__(self) -> "LaurentPoly":
        return _raw_laurent(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compat(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                new = out.get(key, 0) + c1 * c2
                if new:
                    out[key] = new
                else:
                    del out[key]
        return _raw_laurent(self.n_vars, out)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise UsageError("negative powers are only defined for unit monomials")
        result = LaurentPoly.one(self.n_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return self.zero_like()
        return _raw_laurent(self.n_vars, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.n_vars == other.n_vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.n_vars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.n_vars: 1}

    # -- queries and transforms

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items())

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.n_vars, 0)

    def is_signed_monomial(self) -> bool:
        """True when the polynomial is ±t^e for a single exponent vector."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def specialize(self, var: int, value: int = 1) -> "LaurentPoly":
        """Substitute t_var = 1 (``var`` is 1-based; only 1 is supported)."""
        if value != 1:
            raise UsageError("only specialization at 1 is supported")
        if not 1 <= var <= self.n_vars:
            raise UsageError(f"variable index {var} out of range 1..{self.n_vars}")
        i = var - 1
        out: dict[tuple[int, ...], int] = {}
        for exps, coeff in self.terms.items():
            key = exps[:i] + (0,) + exps[i + 1 :]
            new = out.get(key, 0) + coeff
            if new:
                out[key] = new
            else:
                del out[key]
        return _raw_laurent(self.n_vars, out)

    def drop_var(self, var: int) -> "LaurentPoly":
        """Remove variable ``var`` (1-based); it must not occur in any term."""
        i = var - 1
        out = {}
        for exps, coeff in self.terms.items():
            if exps[i] != 0:
                raise UsageError(f"variable t{var} still occurs in {self}")
            out[exps[:i] + exps[i + 1 :]] = coeff
        return _raw_laurent(self.n_vars - 1, out)

    # -- serialization and display

    def to_dict(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "terms": [
                {"e": list(e), "c": str(c)} for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LaurentPoly":
        return cls(
            data["n_vars"],
            {tuple(t["e"]): int(t["c"]) for t in data["terms"]},
        )

    def __str__(self) -> str:
        return _format_poly(self.sorted_terms(), _format_t_monomial)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.n_vars}, {self})"


def _raw_laurent(n_vars: int, terms: dict) -> LaurentPoly:
    # Internal fast path: terms are already validated and pruned.
    p = object.__new__(LaurentPoly)
    object.__setattr__(p, "n_vars", n_vars)
    object.__setattr__(p, "terms", terms)
    return p


def _format_t_monomial(exps: tuple[int, ...]) -> str:
    parts = [
        f"t{i + 1}" + (f"^{e}" if e != 1 else "")
        for i, e in enumerate(exps)
        if e != 0
    ]
    return "*".join(parts)


def _format_u_monomial(exps: tuple[int, ...]) -> str:
    parts = [
        f"(t{i + 1}-1)" + (f"^{e}" if e != 1 else "")
        for i, e in enumerate(exps)
        if e != 0
    ]
    return "*".join(parts)


def _format_poly(sorted_terms, mono_fmt) -> str:
    if not sorted_terms:
        return "0"
    chunks: list[str] = []
    for exps, coeff in sorted_terms:
        mono = mono_fmt(exps)
        if not mono:
            body = str(abs(coeff))
        elif abs(coeff) == 1:
            body = mono
        else:
            body = f"{abs(coeff)}*{mono}"
        if not chunks:
            chunks.append(body if coeff > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(chunks)


# ---------------------------------------------------------------------------
# Truncated power series in u_i = t_i - 1
#
# A term's key packs the exponent vector into a single integer, one byte per
# variable, with the total degree stored above the exponent bytes.  Keys of
# two terms then add componentwise under plain integer addition, and the
# truncation test "total degree > max_deg" is one comparison against
# (max_deg+1) << (8*n_vars).  The comparison is checked before the sum is
# used, so byte carries inside discarded keys are harmless; kept keys have
# total degree <= max_deg <= 255 and therefore never carry.

_MAX_TRUNC_DEG = 255


def _pack(exps: tuple[int, ...], n_vars: int) -> int:
    key = 0
    deg = 0
    for i, e in enumerate(exps):
        if e < 0:
            raise UsageError(f"negative exponent {e} in series term {exps}")
        key |= e << (8 * i)
        deg += e
    return key | (deg << (8 * n_vars))


def _unpack(key: int, n_vars: int) -> tuple[int, ...]:
    return tuple((key >> (8 * i)) & 0xFF for i in range(n_vars))


class TruncatedSeries:
    """Polynomial in u_i = t_i - 1 truncated past total degree ``max_deg``.

    Arithmetic is exact followed by truncation, i.e. computation in the
    quotient by the (max_deg+1)-th power of the ideal (u_1, ..., u_n).
    Operands must agree in both ``n_vars`` and ``max_deg``.
    """

    __slots__ = ("n_vars", "max_deg", "_terms")

    def __init__(
        self,
        n_vars: int,
        max_deg: int,
        terms: dict[tuple[int, ...], int] | None = None,
    ):
        if n_vars < 0:
            raise UsageError("variable count must be nonnegative")
        if not 0 <= max_deg <= _MAX_TRUNC_DEG:
            raise UsageError(f"truncation degree must be in 0..{_MAX_TRUNC_DEG}")
        packed: dict[int, int] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != n_vars:
                raise UsageError(
                    f"exponent vector {exps} has length {len(exps)}, expected {n_vars}"
                )
            if sum(exps) > max_deg:
                raise UsageError(
                    f"term {exps} exceeds truncation degree {max_deg}"
                )
            if coeff:
                packed[_pack(tuple(exps), n_vars)] = coeff
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "max_deg", max_deg)
        object.__setattr__(self, "_terms", packed)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors

    @classmethod
    def zero(cls, n_vars: int, max_deg: int) -> "TruncatedSeries":
        return cls(n_vars, max_deg, {})

    @classmethod
    def one(cls, n_vars: int, max_deg: int) -> "TruncatedSeries":
        return cls(n_vars, max_deg, {(0,) * n_vars: 1})

    @classmethod
    def constant(cls, n_vars: int, max_deg: int, c: int) -> "TruncatedSeries":
        return cls(n_vars, max_deg, {(0,) * n_vars: c})

    @classmethod
    def var(cls, n_vars: int, max_deg: int, i: int) -> "TruncatedSeries":
        """The series u_i = t_i - 1 (``i`` is 1-based)."""
        if not 1 <= i <= n_vars:
            raise UsageError(f"variable index {i} out of range 1..{n_vars}")
        if max_deg < 1:
            return cls.zero(n_vars, max_deg)
        exps = [0] * n_vars
        exps[i - 1] = 1
        return cls(n_vars, max_deg, {tuple(exps): 1})

    @classmethod
    def from_laurent(cls, p: LaurentPoly, max_deg: int) -> "TruncatedSeries":
        """Expand a Laurent polynomial in powers of u_i = t_i - 1.

        Negative exponents expand through the binomial series of
        (1+u)^e, which for e < 0 has the integer coefficients
        binom(e, k) = (-1)^k * binom(-e+k-1, k); truncation makes the
        expansion finite.  The map is a ring homomorphism onto the
        truncated ring.
        """
        n = p.n_vars
        shift = 8 * n
        cutoff = (max_deg + 1) << shift
        acc: dict[int, int] = {}
        for exps, coeff in p.terms.items():
            term: dict[int, int] = {0: coeff}
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                expansion = _binomial_expansion(e, max_deg)
                step = 1 << (8 * i)
                new: dict[int, int] = {}
                for key, val in term.items():
                    for k, b in expansion:
                        nk = key + k * (step + (1 << shift))
                        if nk >= cutoff:
                            break
                        cur = new.get(nk, 0) + val * b
                        if cur:
                            new[nk] = cur
                        else:
                            del new[nk]
                    # expansion is ordered by k, so later k only increase nk
                term = new
                if not term:
                    break
            for key, val in term.items():
                cur = acc.get(key, 0) + val
                if cur:
                    acc[key] = cur
                else:
                    del acc[key]
        return _raw_series(n, max_deg, acc)

    # -- ring structure

    def zero_like(self) -> "TruncatedSeries":
        return TruncatedSeries.zero(self.n_vars, self.max_deg)

    def one_like(self) -> "TruncatedSeries":
        return TruncatedSeries.one(self.n_vars, self.max_deg)

    def _check_compat(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise UsageError(
                f"cannot combine TruncatedSeries with {type(other).__name__}"
            )
        if self.n_vars != other.n_vars or self.max_deg != other.max_deg:
            raise UsageError(
                "mismatched series parameters: "
                f"({self.n_vars}, D={self.max_deg}) vs "
                f"({other.n_vars}, D={other.max_deg})"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compat(other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            new = out.get(key, 0) + coeff
            if new:
                out[key] = new
            else:
                del out[key]
        return _raw_series(self.n_vars, self.max_deg, out)

    def __neg__(self) -> "TruncatedSeries":
        return _raw_series(
            self.n_vars, self.max_deg, {k: -c for k, c in self._terms.items()}
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compat(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        cutoff = (self.max_deg + 1) << (8 * self.n_vars)
        items_b = sorted(b.items())
        out: dict[int, int] = {}
        for k1, v1 in a.items():
            limit = cutoff - k1
            for k2, v2 in items_b:
                if k2 >= limit:
                    break
                key = k1 + k2
                new = out.get(key, 0) + v1 * v2
                if new:
                    out[key] = new
                else:
                    del out[key]
        return _raw_series(self.n_vars, self.max_deg, out)

    def scale(self, c: int) -> "TruncatedSeries":
        if c == 0:
            return self.zero_like()
        return _raw_series(
            self.n_vars, self.max_deg, {k: c * v for k, v in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.n_vars == other.n_vars
            and self.max_deg == other.max_deg
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.n_vars, self.max_deg, frozenset(self._terms.items())))

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    # -- queries

    def terms(self) -> dict[tuple[int, ...], int]:
        n = self.n_vars
        return {_unpack(k, n): c for k, c in self._terms.items()}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms().items())

    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def min_degree(self) -> int | None:
        """Smallest total degree carrying a nonzero term, or None if zero."""
        if not self._terms:
            return None
        shift = 8 * self.n_vars
        return min(k >> shift for k in self._terms)

    def homogeneous_part(self, degree: int) -> dict[tuple[int, ...], int]:
        shift = 8 * self.n_vars
        return {
            _unpack(k, self.n_vars): c
            for k, c in self._terms.items()
            if (k >> shift) == degree
        }

    # -- serialization and display

    def to_dict(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "max_deg": self.max_deg,
            "terms": [
                {"e": list(e), "c": str(c)} for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedSeries":
        return cls(
            data["n_vars"],
            data["max_deg"],
            {tuple(t["e"]): int(t["c"]) for t in data["terms"]},
        )

    def __str__(self) -> str:
        return _format_poly(self.sorted_terms(), _format_u_monomial)

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.n_vars}, D={self.max_deg}, {self})"


def _raw_series(n_vars: int, max_deg: int, packed: dict) -> TruncatedSeries:
    s = object.__new__(TruncatedSeries)
    object.__setattr__(s, "n_vars", n_vars)
    object.__setattr__(s, "max_deg", max_deg)
    object.__setattr__(s, "_terms", packed)
    return s


def _binomial_expansion(e: int, max_deg: int) -> list[tuple[int, int]]:
    """Coefficients [(k, binom(e, k))] of (1+u)^e up to degree max_deg."""
    if e >= 0:
        top = min(e, max_deg)
        return [(k, math.comb(e, k)) for k in range(top + 1)]
    return [
        (k, (-1) ** k * math.comb(-e + k - 1, k)) for k in range(max_deg + 1)
    ]


def series_from_laurent(p: LaurentPoly, max_deg: int) -> TruncatedSeries:
    """Module-level alias for ``TruncatedSeries.from_laurent``."""
    return TruncatedSeries.from_laurent(p, max_deg)


RingElement = Union[LaurentPoly, TruncatedSeries]


# ---------------------------------------------------------------------------
# Square matrices over either ring


class SquareMatrix:
    """Immutable n x n matrix whose entries all live in one ring.

    Entries are either all ``LaurentPoly`` over a common variable count or
    all ``TruncatedSeries`` over a common variable count and truncation
    degree; the constructor enforces this.
    """

    __slots__ = ("size", "rows")

    def __init__(self, rows: Iterable[Iterable[RingElement]]):
        grid = tuple(tuple(row) for row in rows)
        n = len(grid)
        if any(len(row) != n for row in grid):
            raise UsageError("matrix rows must all have length equal to the size")
        if n == 0:
            raise UsageError("empty matrix")
        sample = grid[0][0]
        for row in grid:
            for e in row:
                if type(e) is not type(sample):
                    raise UsageError("mixed entry types in matrix")
                sample._check_compat(e)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "rows", grid)

    def __setattr__(self, name, value):
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def identity_laurent(cls, size: int, n_vars: int) -> "SquareMatrix":
        one = LaurentPoly.one(n_vars)
        zero = LaurentPoly.zero(n_vars)
        return cls(
            [[one if i == j else zero for j in range(size)] for i in range(size)]
        )

    @classmethod
    def identity_series(cls, size: int, n_vars: int, max_deg: int) -> "SquareMatrix":
        one = TruncatedSeries.one(n_vars, max_deg)
        zero = TruncatedSeries.zero(n_vars, max_deg)
        return cls(
            [[one if i == j else zero for j in range(size)] for i in range(size)]
        )

    def identity_like(self) -> "SquareMatrix":
        sample = self.rows[0][0]
        one, zero = sample.one_like(), sample.zero_like()
        n = self.size
        return SquareMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    def _check_compat(self, other: "SquareMatrix") -> None:
        if not isinstance(other, SquareMatrix):
            raise UsageError(f"cannot combine matrix with {type(other).__name__}")
        if self.size != other.size:
            raise UsageError(f"size mismatch: {self.size} vs {other.size}")
        self.rows[0][0]._check_compat(other.rows[0][0])

    def __mul__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check_compat(other)
        n = self.size
        zero = self.rows[0][0].zero_like()
        out = []
        for i in range(n):
            arow = self.rows[i]
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = arow[k]
                    if a.is_zero():
                        continue
                    b = other.rows[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SquareMatrix(out)

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check_compat(other)
        return SquareMatrix(
            [
                [a + b for a, b in zip(arow, brow)]
                for arow, brow in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check_compat(other)
        return SquareMatrix(
            [
                [a - b for a, b in zip(arow, brow)]
                for arow, brow in zip(self.rows, other.rows)
            ]
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SquareMatrix)
            and self.size == other.size
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash(self.rows)

    def is_identity(self) -> bool:
        return all(
            e.is_one() if i == j else e.is_zero()
            for i, row in enumerate(self.rows)
            for j, e in enumerate(row)
        )

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def map_entries(self, fn: Callable[[RingElement], RingElement]) -> "SquareMatrix":
        return SquareMatrix([[fn(e) for e in row] for row in self.rows])

    def entry(self, i: int, j: int) -> RingElement:
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def to_dict(self) -> dict:
        ring = "laurent" if isinstance(self.rows[0][0], LaurentPoly) else "series"
        return {
            "size": self.size,
            "ring": ring,
            "entries": [[e.to_dict() for e in row] for row in self.rows],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SquareMatrix":
        elem = LaurentPoly if data["ring"] == "laurent" else TruncatedSeries
        return cls(
            [[elem.from_dict(e) for e in row] for row in data["entries"]]
        )

    def __str__(self) -> str:
        cells = [[str(e) for e in row] for row in self.rows]
        widths = [
            max(len(cells[i][j]) for i in range(self.size))
            for j in range(self.size)
        ]
        return "\n".join(
            "[ " + " | ".join(c.ljust(w) for c, w in zip(row, widths)) + " ]"
            for row in cells
        )

    def __repr__(self) -> str:
        return f"SquareMatrix(size={self.size})"


# ---------------------------------------------------------------------------
# Matrix-level operations


def specialize(m: SquareMatrix, var: int, value: int = 1) -> SquareMatrix:
    """Substitute t_var = 1 in every entry of a Laurent matrix."""
    if not isinstance(m.rows[0][0], LaurentPoly):
        raise UsageError("specialization is defined for Laurent matrices")
    return m.map_entries(lambda e: e.specialize(var, value))


def laurent_determinant(m: SquareMatrix) -> LaurentPoly:
    """Exact determinant by Laplace expansion with subset memoization.

    Minors are computed bottom-up over column subsets, so the cost is
    O(2^n * n) polynomial multiplications; intended for the small sizes
    (n <= 8) this workbench uses.
    """
    return _det_rows(m.rows, m.rows[0][0].n_vars)


def _det_rows(rows, n_vars: int) -> LaurentPoly:
    n = len(rows)
    one = LaurentPoly.one(n_vars)
    zero = LaurentPoly.zero(n_vars)
    minors: dict[tuple[int, ...], LaurentPoly] = {(): one}
    for k in range(1, n + 1):
        row = rows[n - k]
        new: dict[tuple[int, ...], LaurentPoly] = {}
        for cols in combinations(range(n), k):
            acc = zero
            for idx, c in enumerate(cols):
                e = row[c]
                if e.is_zero():
                    continue
                sub = minors[cols[:idx] + cols[idx + 1 :]]
                if sub.is_zero():
                    continue
                prod = e * sub
                acc = acc - prod if idx % 2 else acc + prod
            new[cols] = acc
        minors = new
    return minors[tuple(range(n))]


def laurent_matrix_inverse(
    m: SquareMatrix, det_hint: LaurentPoly | None = None
) -> SquareMatrix:
    """Exact inverse of a Laurent matrix whose determinant is ±t^e.

    The inverse is the adjugate divided by the determinant; because the
    determinant is a signed monomial the division is an exponent shift and
    a sign, so the result is again an exact Laurent matrix.
    """
    n = m.size
    n_vars = m.rows[0][0].n_vars
    det = laurent_determinant(m)
    if det_hint is not None and det != det_hint:
        raise UsageError(f"determinant hint {det_hint} does not match {det}")
    if not det.is_signed_monomial():
        raise DomainError(f"determinant {det} is not a signed monomial")
    ((det_exps, det_sign),) = det.terms.items()

    inverse_rows = [[None] * n for _ in range(n)]
    for i in range(n):
        reduced = [m.rows[r] for r in range(n) if r != i]
        minors = _all_maximal_minors(reduced, n, n_vars)
        for j in range(n):
            sign = -1 if (i + j) % 2 else 1
            cof = minors[j]
            # adjugate is the transposed cofactor matrix; dividing by the
            # monomial determinant shifts exponents and applies the sign
            entry = _raw_laurent(
                n_vars,
                {
                    tuple(x - y for x, y in zip(exps, det_exps)): sign
                    * det_sign
                    * c
                    for exps, c in cof.terms.items()
                },
            )
            inverse_rows[j][i] = entry
    return SquareMatrix(inverse_rows)


def _all_maximal_minors(rows, n: int, n_vars: int) -> list[LaurentPoly]:
    """Determinants of an (n-1) x n grid with each single column deleted."""
    one = LaurentPoly.one(n_vars)
    zero = LaurentPoly.zero(n_vars)
    k_rows = len(rows)
    minors: dict[tuple[int, ...], LaurentPoly] = {(): one}
    for k in range(1, k_rows + 1):
        row = rows[k_rows - k]
        new: dict[tuple[int, ...], LaurentPoly] = {}
        for cols in combinations(range(n), k):
            acc = zero
            for idx, c in enumerate(cols):
                e = row[c]
                if e.is_zero():
                    continue
                sub = minors[cols[:idx] + cols[idx + 1 :]]
                if sub.is_zero():
                    continue
                prod = e * sub
                acc = acc - prod if idx % 2 else acc + prod
            new[cols] = acc
        minors = new
    out = []
    all_cols = tuple(range(n))
    for j in range(n):
        out.append(minors[all_cols[:j] + all_cols[j + 1 :]])
    return out


def series_matrix_inverse(m: SquareMatrix) -> SquareMatrix:
    """Inverse of a truncated-series matrix congruent to the identity.

    With N = I - M nilpotent modulo the truncation, the inverse is the
    finite geometric series I + N + N^2 + ...; the loop stops as soon as a
    power truncates to zero.
    """
    sample = m.rows[0][0]
    if not isinstance(sample, TruncatedSeries):
        raise UsageError("series_matrix_inverse expects a series matrix")
    for i, row in enumerate(m.rows):
        for j, e in enumerate(row):
            expected = 1 if i == j else 0
            if e.constant_term() != expected:
                raise DomainError(
                    "matrix is not congruent to the identity: entry "
                    f"({i + 1},{j + 1}) has constant term {e.constant_term()}"
                )
    identity = m.identity_like()
    n_mat = identity - m
    acc = identity
    power = identity
    for _ in range(m.rows[0][0].max_deg):
        power = power * n_mat
        if power.is_zero():
            break
        acc = acc + power
    return acc
