"""Graded coefficient data of matrices congruent to the identity.

A matrix M over the truncated ring with M = I mod J^i (J the ideal generated
by all u_k = t_k - 1) determines, for each monomial u_{l_1}...u_{l_i} with
l_1 <= ... <= l_i, an integer matrix of degree-i coefficients of M - I.
``pi`` extracts that data as a ``GradedClass``; ``phi`` composes it with the
evaluation of a commutator word, giving the induced map from the weight-i
lower-central quotient of the free subgroup into the degree-i graded piece
of the congruence filtration.

``assemble_phi_matrix`` stacks the classes of all weight-w basic commutators
into one integer matrix; exact fraction-free elimination then answers the
linear-independence questions (``integer_rank``) and produces primitive
integer bases of the left kernel (``integer_kernel``).  ``verify_tables``
and ``sfold_property_check`` compare computed classes against the embedded
reference tables and the left-normed contribution law.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .braid import _letter_matrix_truncated
from .hall import (
    CommutatorTerm,
    basic_commutators,
    is_left_normed,
    leaf_sequence,
    weight,
    witt_rank,
)
from .laurent import DomainError, SquareMatrix, TruncatedSeries, UsageError

Coord = tuple[tuple[int, ...], int, int]  # (monomial, row, col), all 1-based


class GradedClass:
    """Degree-i element of the direct sum of matrix blocks over monomials.

    ``coords`` maps (monomial, row, col) to a nonzero integer, where the
    monomial is the sorted tuple (l_1 <= ... <= l_i) of variable indices.
    """

    __slots__ = ("n", "degree", "coords")

    def __init__(self, n: int, degree: int, coords: dict[Coord, int] | None = None):
        clean: dict[Coord, int] = {}
        for (mono, row, col), value in (coords or {}).items():
            mono = tuple(mono)
            if len(mono) != degree or any(not 1 <= l <= n for l in mono):
                raise UsageError(f"bad monomial {mono} for degree {degree}, n={n}")
            if tuple(sorted(mono)) != mono:
                raise UsageError(f"monomial {mono} is not sorted")
            if not (1 <= row <= n and 1 <= col <= n):
                raise UsageError(f"position ({row},{col}) out of range 1..{n}")
            if value:
                clean[(mono, row, col)] = value
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coords", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GradedClass is immutable")

    def _check_compat(self, other: "GradedClass") -> None:
        if self.n != other.n or self.degree != other.degree:
            raise UsageError(
                f"mismatched classes: (n={self.n}, i={self.degree}) vs "
                f"(n={other.n}, i={other.degree})"
            )

    def __add__(self, other: "GradedClass") -> "GradedClass":
        self._check_compat(other)
        out = dict(self.coords)
        for key, value in other.coords.items():
            new = out.get(key, 0) + value
            if new:
                out[key] = new
            else:
                del out[key]
        return GradedClass(self.n, self.degree, out)

    def __neg__(self) -> "GradedClass":
        return GradedClass(
            self.n, self.degree, {k: -v for k, v in self.coords.items()}
        )

    def __sub__(self, other: "GradedClass") -> "GradedClass":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedClass)
            and self.n == other.n
            and self.degree == other.degree
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.n, self.degree, frozenset(self.coords.items())))

    def is_zero(self) -> bool:
        return not self.coords

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted({mono for mono, _, _ in self.coords})

    def matrix_at(self, mono: tuple[int, ...]) -> dict[tuple[int, int], int]:
        """The integer matrix attached to one monomial, as a sparse dict."""
        return {
            (row, col): v
            for (m, row, col), v in self.coords.items()
            if m == tuple(mono)
        }

    def sorted_coords(self) -> list[tuple[Coord, int]]:
        return sorted(self.coords.items())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "coords": [
                {"mono": list(mono), "row": row, "col": col, "c": str(v)}
                for (mono, row, col), v in self.sorted_coords()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GradedClass":
        return cls(
            data["n"],
            data["degree"],
            {
                (tuple(c["mono"]), c["row"], c["col"]): int(c["c"])
                for c in data["coords"]
            },
        )

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for mono in self.monomials():
            cells = ", ".join(
                f"e[{row},{col}]({v})"
                for (m, row, col), v in self.sorted_coords()
                if m == mono
            )
            label = "*".join(f"t{l}" for l in mono)
            parts.append(f"{label}: {cells}")
        return "; ".join(parts)

    def __repr__(self) -> str:
        return f"GradedClass(n={self.n}, degree={self.degree}, {len(self.coords)} coords)"


def _monomial_of(exps: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(i + 1 for i, e in enumerate(exps) for _ in range(e))


def pi(m: SquareMatrix, i: int) -> GradedClass:
    """Degree-i coefficient data of M - I for M = I mod J^i.

    Raises ``DomainError`` naming the first offending term when the matrix
    carries a nonzero coefficient in some degree below i (i.e. the matrix
    is not congruent to the identity modulo J^i).
    """
    if i < 1:
        raise UsageError("degree must be positive")
    sample = m.rows[0][0]
    if not isinstance(sample, TruncatedSeries):
        raise UsageError("coefficient extraction expects a series matrix")
    if sample.max_deg < i:
        raise UsageError(
            f"matrix truncation degree {sample.max_deg} is below {i}"
        )
    n = m.size
    diff = m - m.identity_like()
    coords: dict[Coord, int] = {}
    offender: tuple | None = None
    for row in range(n):
        for col in range(n):
            for exps, coeff in diff.rows[row][col].sorted_terms():
                d = sum(exps)
                if d < i:
                    cand = (d, row + 1, col + 1, exps)
                    if offender is None or cand < offender:
                        offender = cand
                elif d == i:
                    coords[(_monomial_of(exps), row + 1, col + 1)] = coeff
    if offender is not None:
        d, row, col, exps = offender
        raise DomainError(
            f"matrix is not congruent to I mod J^{i}: entry ({row},{col}) "
            f"has a degree-{d} term at monomial {_monomial_of(exps)}"
        )
    return GradedClass(n, i, coords)


def bracket(x: GradedClass, y: GradedClass) -> GradedClass:
    """Graded commutator [x, y]: matrix brackets with monomials multiplied.

    Induced by the group commutator: for matrices A = I mod J^i and
    B = I mod J^j, the class of A B A^-1 B^-1 in degree i+j is the bracket
    of the classes of A and B.
    """
    if x.n != y.n:
        raise UsageError(f"mismatched sizes: {x.n} vs {y.n}")
    coords: dict[Coord, int] = {}
    for (m1, r1, c1), v1 in x.coords.items():
        for (m2, r2, c2), v2 in y.coords.items():
            mono = tuple(sorted(m1 + m2))
            if c1 == r2:
                key = (mono, r1, c2)
                new = coords.get(key, 0) + v1 * v2
                if new:
                    coords[key] = new
                else:
                    del coords[key]
            if c2 == r1:
                key = (mono, r2, c1)
                new = coords.get(key, 0) - v1 * v2
                if new:
                    coords[key] = new
                else:
                    del coords[key]
    return GradedClass(x.n, x.degree + y.degree, coords)


# ---------------------------------------------------------------------------
# The induced map on basic commutators


@lru_cache(maxsize=None)
def _commutator_matrix(term: CommutatorTerm, n: int, max_deg: int) -> SquareMatrix:
    # Bracket-tree evaluation: associativity of the truncated ring makes
    # this equal to the flat left-to-right product of the word's letters,
    # but recursive inverses are near-identity and their geometric series
    # terminate quickly.
    from .laurent import series_matrix_inverse

    if term.is_leaf:
        return _letter_matrix_truncated(n, term.gen, n, 1, max_deg)
    a = _commutator_matrix(term.left, n, max_deg)
    b = _commutator_matrix(term.right, n, max_deg)
    return a * b * series_matrix_inverse(a) * series_matrix_inverse(b)


def phi(term: CommutatorTerm, n: int) -> GradedClass:
    """Class of a weight-i basic commutator in the degree-i graded piece.

    Evaluates the commutator word in the ring truncated at the weight and
    extracts the top coefficient data; the congruence check inside ``pi``
    doubles as a verification that commutators of weight i land in the
    i-th congruence subgroup.
    """
    w = weight(term)
    for j in leaf_sequence(term):
        if j > n - 1:
            raise UsageError(f"leaf x{j} exceeds the free rank {n - 1}")
    return pi(_commutator_matrix(term, n, w), w)


# ---------------------------------------------------------------------------
# Integer matrices over the commutator basis


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix with commutator row labels and coordinate columns."""

    row_labels: tuple[CommutatorTerm, ...]
    col_labels: tuple[Coord, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @property
    def col_count(self) -> int:
        return len(self.col_labels)


def assemble_phi_matrix(n: int, w: int, jobs: int = 1) -> IntMatrix:
    """Stack the classes of all weight-w basic commutators on n strands.

    Rows follow the basis order; columns are the (monomial, row, col)
    coordinates that actually occur, sorted.
    """
    basis = basic_commutators(n - 1, w)
    classes = _phi_classes(basis, n, jobs)
    col_set: set[Coord] = set()
    for cls in classes:
        col_set.update(cls.coords)
    col_labels = tuple(sorted(col_set))
    index = {key: k for k, key in enumerate(col_labels)}
    rows = []
    for cls in classes:
        row = [0] * len(col_labels)
        for key, value in cls.coords.items():
            row[index[key]] = value
        rows.append(tuple(row))
    return IntMatrix(tuple(basis), col_labels, tuple(rows))


def _phi_worker(args: tuple[str, int]) -> dict:
    from .hall import parse_commutator

    text, n = args
    return phi(parse_commutator(text), n).to_dict()


def _phi_classes(
    basis: tuple[CommutatorTerm, ...], n: int, jobs: int
) -> list[GradedClass]:
    if jobs <= 1 or len(basis) < 4:
        return [phi(term, n) for term in basis]
    from concurrent.futures import ProcessPoolExecutor

    args = [(str(term), n) for term in basis]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        dicts = list(pool.map(_phi_worker, args))
    return [GradedClass.from_dict(d) for d in dicts]


def integer_rank(m: IntMatrix | list) -> int:
    """Rank over the rationals by exact fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in (m.rows if isinstance(m, IntMatrix) else m)]
    if not rows:
        return 0
    return _bareiss(rows)


def _bareiss(rows: list[list[int]]) -> int:
    n_rows = len(rows)
    n_cols = len(rows[0])
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        for i in range(r + 1, n_rows):
            factor = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, n_cols):
                row_i[j] = (pivot * row_i[j] - factor * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        r += 1
    return r


def integer_kernel(m: IntMatrix) -> list[tuple[int, ...]]:
    """Primitive integer basis of the left kernel (vectors v with v·M = 0).

    Fraction-free elimination runs on the matrix augmented with the
    identity; rows whose matrix part vanishes yield integer kernel vectors,
    normalized to content 1 with positive leading entry.
    """
    n_rows = m.row_count
    n_cols = m.col_count
    rows = [list(r) + [0] * n_rows for r in m.rows]
    for i in range(n_rows):
        rows[i][n_cols + i] = 1
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        width = n_cols + n_rows
        for i in range(r + 1, n_rows):
            factor = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, width):
                row_i[j] = (pivot * row_i[j] - factor * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        r += 1
    kernel = []
    for i in range(r, n_rows):
        assert all(v == 0 for v in rows[i][:n_cols])
        kernel.append(_primitive(rows[i][n_cols:]))
    return kernel


def _primitive(vector: list[int]) -> tuple[int, ...]:
    content = 0
    for v in vector:
        content = gcd(content, v)
    if content == 0:
        raise UsageError("zero vector has no primitive form")
    leading = next(v for v in vector if v)
    sign = 1 if leading > 0 else -1
    return tuple(sign * v // content for v in vector)


@dataclass
class KernelReport:
    """Rank/kernel summary of the weight-w class matrix."""

    n: int
    weight: int
    rank: int
    expected: int
    row_labels: tuple[CommutatorTerm, ...]
    kernel: list[tuple[int, ...]]

    @property
    def injective(self) -> bool:
        return self.rank == len(self.row_labels)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "weight": self.weight,
            "rank": self.rank,
            "expected": self.expected,
            "injective": self.injective,
            "kernel": [
                [
                    {"commutator": str(label), "m": str(v)}
                    for label, v in zip(self.row_labels, vec)
                    if v
                ]
                for vec in self.kernel
            ],
        }


def kernel_report(n: int, w: int, jobs: int = 1) -> KernelReport:
    matrix = assemble_phi_matrix(n, w, jobs=jobs)
    rank = integer_rank(matrix)
    kernel = integer_kernel(matrix) if rank < matrix.row_count else []
    assert rank + len(kernel) == matrix.row_count
    return KernelReport(
        n=n,
        weight=w,
        rank=rank,
        expected=witt_rank(n - 1, w),
        row_labels=matrix.row_labels,
        kernel=kernel,
    )


# ---------------------------------------------------------------------------
# Reference-table verification


@dataclass(frozen=True)
class CellMismatch:
    commutator: str
    mono: tuple[int, ...]
    row: int
    col: int
    expected: int
    computed: int


@dataclass
class TableCheck:
    """Comparison of computed classes against one reference table."""

    shape: str
    commutators_checked: int
    cells_checked: int
    # keyed by fixture variant name
    mismatches: dict[str, list[CellMismatch]] = field(default_factory=dict)

    def ok(self, variant: str) -> bool:
        return not self.mismatches.get(variant)


@dataclass
class TablesReport:
    n: int
    checks: list[TableCheck]

    def ok(self, variant: str = "corrected") -> bool:
        return all(c.ok(variant) for c in self.checks)

    def duplicate_resolution(self) -> str:
        """Which reading of the once-repeated table term the computation matches.

        The weight-4 left-normed table repeats one term: summing it as
        printed means coefficient -2, reading the repetition as an erratum
        means -1.  With the other repairs applied, exactly one of the two
        variants should match every cell; returns "-1", "-2", or
        "ambiguous" when neither (or both) fully match.
        """
        for check in self.checks:
            if check.shape != "weight4_left_normed":
                continue
            single = not check.mismatches["corrected"]
            double = not check.mismatches["corrected_dup2"]
            if single and not double:
                return "-1"
            if double and not single:
                return "-2"
            return "ambiguous"
        return "not checked"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "duplicate_resolution": self.duplicate_resolution(),
            "checks": [
                {
                    "shape": c.shape,
                    "commutators_checked": c.commutators_checked,
                    "cells_checked": c.cells_checked,
                    "mismatches": {
                        variant: [
                            {
                                "commutator": mm.commutator,
                                "mono": list(mm.mono),
                                "row": mm.row,
                                "col": mm.col,
                                "expected": mm.expected,
                                "computed": mm.computed,
                            }
                            for mm in items
                        ]
                        for variant, items in c.mismatches.items()
                    },
                }
                for c in self.checks
            ],
        }


def verify_tables(n: int, weights: tuple[int, ...] = (1, 2, 3, 4)) -> TablesReport:
    """Compare computed classes of weights 1..4 against the reference tables.

    Every listed factor is instantiated with its Kronecker deltas evaluated
    (rows whose concrete monomials collide are summed), and factors absent
    from a table must carry zero.  Mismatches are collected per fixture
    variant, never raised.
    """
    from . import tables

    if n not in (4, 5):
        raise UsageError("table verification is defined for n in {4, 5}")
    checks = []
    for w in weights:
        for shape in tables.shapes_for_weight(w):
            commutators = [
                c for c in basic_commutators(n - 1, w) if tables.shape_of(c) == shape
            ]
            mismatches: dict[str, list[CellMismatch]] = {
                v: [] for v in tables.VARIANTS
            }
            cells = 0
            for term in commutators:
                computed = phi(term, n)
                for variant in tables.VARIANTS:
                    expected = tables.instantiate(shape, term, n, variant)
                    keys = set(expected) | set(computed.coords)
                    if variant == tables.VARIANTS[0]:
                        cells += len(keys)
                    for key in sorted(keys):
                        want = expected.get(key, 0)
                        got = computed.coords.get(key, 0)
                        if want != got:
                            mono, row, col = key
                            mismatches[variant].append(
                                CellMismatch(str(term), mono, row, col, want, got)
                            )
            checks.append(
                TableCheck(
                    shape=shape,
                    commutators_checked=len(commutators),
                    cells_checked=cells,
                    mismatches=mismatches,
                )
            )
    return TablesReport(n=n, checks=checks)


# ---------------------------------------------------------------------------
# Left-normed (s-fold) contribution law


@dataclass
class SFoldReport:
    """Checks of the left-normed contribution law at one weight.

    (a) each left-normed basic commutator with leaf sequence l_1..l_s has,
        at the n-free factor t_{l_1}...t_{l_s}, exactly the matrix
        e[l_1, n](-1) + e[l_2, n](+1);
    (b) every other basic commutator vanishes at all n-free factors;
    (c) the left-normed rows of the class matrix are linearly independent.
    """

    n: int
    s: int
    left_normed_count: int
    other_count: int
    failures_a: list[str]
    failures_b: list[str]
    submatrix_rank: int

    @property
    def full_rank(self) -> bool:
        return self.submatrix_rank == self.left_normed_count

    @property
    def ok(self) -> bool:
        return not self.failures_a and not self.failures_b and self.full_rank

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "weight": self.s,
            "left_normed_count": self.left_normed_count,
            "other_count": self.other_count,
            "failures_a": self.failures_a,
            "failures_b": self.failures_b,
            "submatrix_rank": self.submatrix_rank,
            "full_rank": self.full_rank,
            "ok": self.ok,
        }


def sfold_property_check(n: int, s: int, jobs: int = 1) -> SFoldReport:
    if s < 3:
        raise UsageError("the left-normed law is checked for weights >= 3")
    basis = basic_commutators(n - 1, s)
    classes = _phi_classes(basis, n, jobs)
    failures_a: list[str] = []
    failures_b: list[str] = []
    left_rows = []
    for term, cls in zip(basis, classes):
        if is_left_normed(term):
            leaves = leaf_sequence(term)
            mono = tuple(sorted(leaves))
            expected = {(leaves[0], n): -1, (leaves[1], n): 1}
            if cls.matrix_at(mono) != expected:
                failures_a.append(str(term))
            left_rows.append(cls)
        else:
            if any(n not in mono for mono in cls.monomials()):
                failures_b.append(str(term))
    col_labels = sorted({key for cls in left_rows for key in cls.coords})
    index = {key: k for k, key in enumerate(col_labels)}
    rows = []
    for cls in left_rows:
        row = [0] * len(col_labels)
        for key, value in cls.coords.items():
            row[index[key]] = value
        rows.append(row)
    rank = _bareiss(rows) if rows else 0
    return SFoldReport(
        n=n,
        s=s,
        left_normed_count=len(left_rows),
        other_count=len(basis) - len(left_rows),
        failures_a=failures_a,
        failures_b=failures_b,
        submatrix_rank=rank,
    )
