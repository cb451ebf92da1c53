"""Bounded search for exact-kernel elements among graded-kernel classes.

The weight-w class matrix has a left kernel: integer combinations of basic
commutators whose degree-w data vanishes.  Words representing those
combinations are the only candidates that can evaluate to the identity, so
the harness enumerates bounded integer combinations of the kernel basis,
builds a representative word for each, and tests it.

A candidate's image is computed in the truncated ring first (a product of
cached per-commutator matrices, so each candidate costs a couple of matrix
multiplications).  A nonzero truncation certifies non-identity exactly,
because truncation is a ring homomorphism; only candidates that are trivial
to the probed degree escalate to integer specializations of the variables
and finally to full exact evaluation.  Every reported conclusion is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import gcd
from typing import Iterator

from .braid import BraidWord, evaluate_exact, gassner_generator
from .graded import GradedClass, _commutator_matrix, kernel_report, pi
from .hall import CommutatorTerm, basic_commutators, commutator_to_word
from .laurent import SquareMatrix, UsageError, series_matrix_inverse

_SPECIALIZATION_PRIME = 2**61 - 1
_SPECIALIZATION_COUNT = 3


@dataclass(frozen=True)
class SearchConfig:
    n: int = 4
    weight: int = 5
    coeff_bound: int = 2
    support_bound: int = 3
    degree_probe: int = 8
    budget: int = 10_000
    seed: int = 20041101

    def __post_init__(self):
        if min(self.coeff_bound, self.support_bound, self.degree_probe) < 1:
            raise UsageError("search bounds must be positive")
        if self.budget < 0:
            raise UsageError("budget must be nonnegative")


@dataclass
class CandidateResult:
    """Outcome of testing one kernel combination."""

    coefficients: tuple[tuple[str, int], ...]  # (commutator text, multiplicity)
    word_length: int
    is_identity: bool
    first_nonvanishing_degree: int | None  # None: trivial up to the probe depth

    def to_dict(self) -> dict:
        return {
            "coefficients": [
                {"commutator": c, "m": str(m)} for c, m in self.coefficients
            ],
            "word_length": self.word_length,
            "is_identity": self.is_identity,
            "first_nonvanishing_degree": self.first_nonvanishing_degree,
        }


def kernel_candidates(
    cfg: SearchConfig, kernel_basis: list[tuple[int, ...]]
) -> Iterator[tuple[int, ...]]:
    """Enumerate integer combinations of kernel basis vectors.

    Coefficients range over [-coeff_bound, coeff_bound] with at most
    ``support_bound`` of them nonzero.  Each emitted vector has content 1;
    sign duplicates are avoided by forcing the first nonzero coefficient
    positive, and coefficient tuples with a common factor are skipped since
    their normalization appears earlier.  Enumeration order is by support
    size, then support positions, then coefficient tuples, so identical
    configurations yield identical streams.  The budget caps the count.
    """
    if not kernel_basis:
        return
    emitted = 0
    dim = len(kernel_basis)
    bound = cfg.coeff_bound
    nonzero = [c for c in range(-bound, bound + 1) if c]
    positive = list(range(1, bound + 1))
    for size in range(1, min(cfg.support_bound, dim) + 1):
        for support in combinations(range(dim), size):
            for coeffs in product(positive, *([nonzero] * (size - 1))):
                if emitted >= cfg.budget:
                    return
                g = 0
                for c in coeffs:
                    g = gcd(g, c)
                if g != 1:
                    continue
                vector = [0] * len(kernel_basis[0])
                for index, c in zip(support, coeffs):
                    basis_vec = kernel_basis[index]
                    for k, v in enumerate(basis_vec):
                        vector[k] += c * v
                content = 0
                for v in vector:
                    content = gcd(content, v)
                leading = next(v for v in vector if v)
                sign = 1 if leading > 0 else -1
                yield tuple(sign * v // content for v in vector)
                emitted += 1


def vector_to_word(vector: tuple[int, ...], n: int, w: int) -> BraidWord:
    """Concatenate commutator words in basis order with their multiplicities."""
    basis = basic_commutators(n - 1, w)
    if len(vector) != len(basis):
        raise UsageError(
            f"vector length {len(vector)} does not match basis size {len(basis)}"
        )
    word = BraidWord.identity(n)
    for term, m in zip(basis, vector):
        if m:
            word = word * commutator_to_word(term, n) ** m
    return word


# ---------------------------------------------------------------------------
# Candidate testing


@lru_cache(maxsize=None)
def _commutator_power(
    term: CommutatorTerm, n: int, max_deg: int, m: int
) -> SquareMatrix:
    if m == 1:
        return _commutator_matrix(term, n, max_deg)
    if m < 0:
        return series_matrix_inverse(_commutator_power(term, n, max_deg, -m))
    return _commutator_power(term, n, max_deg, m - 1) * _commutator_matrix(
        term, n, max_deg
    )


def _candidate_matrix(
    vector: tuple[int, ...], n: int, w: int, max_deg: int
) -> SquareMatrix:
    basis = basic_commutators(n - 1, w)
    acc = SquareMatrix.identity_series(n, n, max_deg)
    for term, m in zip(basis, vector):
        if m:
            acc = acc * _commutator_power(term, n, max_deg, m)
    return acc


@lru_cache(maxsize=None)
def _specialization_points(n: int, seed: int) -> tuple[tuple[int, ...], ...]:
    rng = random.Random(seed)
    return tuple(
        tuple(rng.randrange(2, _SPECIALIZATION_PRIME - 1) for _ in range(n))
        for _ in range(_SPECIALIZATION_COUNT)
    )


def _specialize_matrix(
    mat: SquareMatrix, point: tuple[int, ...], p: int
) -> tuple[tuple[int, ...], ...]:
    out = []
    for row in mat.rows:
        out_row = []
        for e in row:
            total = 0
            for exps, c in e.terms.items():
                v = c % p
                for t, k in zip(point, exps):
                    if k:
                        v = v * pow(t, k, p) % p
                total = (total + v) % p
            out_row.append(total)
        out.append(tuple(out_row))
    return tuple(out)


def _mod_matmul(a, b, p):
    size = len(a)
    return tuple(
        tuple(
            sum(a[i][k] * b[k][j] for k in range(size)) % p for j in range(size)
        )
        for i in range(size)
    )


def _mod_identity(size):
    return tuple(
        tuple(1 if i == j else 0 for j in range(size)) for i in range(size)
    )


def _mod_det(rows, p):
    if len(rows) == 1:
        return rows[0][0] % p
    total = 0
    for j, entry in enumerate(rows[0]):
        if entry == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = entry * _mod_det(minor, p) % p
        total = (total - term if j % 2 else total + term) % p
    return total


def _mod_inverse_matrix(a, p):
    # adjugate / det for the small sizes used here
    size = len(a)
    d_inv = pow(_mod_det(list(a), p), -1, p)
    out = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            minor = [
                tuple(a[r][c] for c in range(size) if c != j)
                for r in range(size)
                if r != i
            ]
            sign = -1 if (i + j) % 2 else 1
            out[j][i] = sign * _mod_det(minor, p) * d_inv % p
    return tuple(tuple(row) for row in out)


@lru_cache(maxsize=None)
def _specialized_commutator(
    term: CommutatorTerm, n: int, point_index: int, seed: int
):
    point = _specialization_points(n, seed)[point_index]
    p = _SPECIALIZATION_PRIME
    acc = _mod_identity(n)
    cache: dict[tuple[int, int, int], tuple] = {}
    for letter in commutator_to_word(term, n).letters:
        key = (letter.r, letter.s, letter.exponent)
        if key not in cache:
            gen = _specialize_matrix(
                gassner_generator(n, letter.r, letter.s), point, p
            )
            cache[(letter.r, letter.s, 1)] = gen
            cache[(letter.r, letter.s, -1)] = _mod_inverse_matrix(gen, p)
        acc = _mod_matmul(acc, cache[key], p)
    return acc


def _specialized_candidate_is_identity(
    vector: tuple[int, ...], n: int, w: int, seed: int
) -> bool:
    """True when every specialization of the candidate gives the identity."""
    basis = basic_commutators(n - 1, w)
    p = _SPECIALIZATION_PRIME
    for point_index in range(_SPECIALIZATION_COUNT):
        acc = _mod_identity(n)
        for term, m in zip(basis, vector):
            if not m:
                continue
            mat = _specialized_commutator(term, n, point_index, seed)
            if m < 0:
                mat = _mod_inverse_matrix(mat, p)
            for _ in range(abs(m)):
                acc = _mod_matmul(acc, mat, p)
        if acc != _mod_identity(n):
            return False
    return True


def test_candidate(word: BraidWord, cfg: SearchConfig) -> CandidateResult:
    """Exact identity test of a word, locating the first nonvanishing degree.

    Truncations are probed at increasing depth up to ``cfg.degree_probe``;
    a non-identity truncation certifies exact non-identity (truncation is a
    ring homomorphism) and pins the first total degree at which the image
    minus the identity carries a nonzero coefficient.  Only a word trivial
    to the probe depth falls through to full exact evaluation, so the
    ``is_identity`` verdict is always an exact statement.
    """
    from .braid import evaluate_truncated

    for depth in range(1, cfg.degree_probe + 1):
        truncated = evaluate_truncated(word, depth)
        diff = truncated - truncated.identity_like()
        degrees = [
            e.min_degree() for row in diff.rows for e in row if not e.is_zero()
        ]
        if degrees:
            return CandidateResult((), len(word), False, min(degrees))
    exact = evaluate_exact(word)
    return CandidateResult((), len(word), exact.is_identity(), None)


def _labeled(vector: tuple[int, ...], basis) -> tuple[tuple[str, int], ...]:
    return tuple((str(t), m) for t, m in zip(basis, vector) if m)


@dataclass
class SearchReport:
    config: SearchConfig
    kernel_dimension: int
    candidates: list[CandidateResult] = field(default_factory=list)
    identities_found: int = 0
    notice: str | None = None

    def to_json_lines(self) -> Iterator[str]:
        import json

        yield json.dumps(
            {
                "config": {
                    "n": self.config.n,
                    "weight": self.config.weight,
                    "coeff_bound": self.config.coeff_bound,
                    "support_bound": self.config.support_bound,
                    "degree_probe": self.config.degree_probe,
                    "budget": self.config.budget,
                    "seed": self.config.seed,
                },
                "kernel_dimension": self.kernel_dimension,
                **({"notice": self.notice} if self.notice else {}),
            },
            sort_keys=True,
        )
        for result in self.candidates:
            yield json.dumps(result.to_dict(), sort_keys=True)
        yield json.dumps(
            {
                "candidates_tested": len(self.candidates),
                "identities_found": self.identities_found,
            },
            sort_keys=True,
        )


def run_search(cfg: SearchConfig, progress=None) -> SearchReport:
    """Enumerate and test kernel candidates under the configured bounds.

    Each candidate's truncated image certifies non-identity whenever it is
    nontrivial below the probe depth; candidates trivial to that depth are
    retested under integer specializations and, if still unresolved, by
    full exact evaluation, so ``is_identity`` is always an exact statement.
    """
    n, w = cfg.n, cfg.weight
    report = kernel_report(n, w)
    basis = report.row_labels
    result = SearchReport(config=cfg, kernel_dimension=len(report.kernel))
    if not report.kernel:
        result.notice = (
            f"the weight-{w} classes on {n} strands are linearly independent; "
            "there are no kernel directions to search"
        )
        return result
    word_lengths = [len(commutator_to_word(t, n)) for t in basis]
    for vector in kernel_candidates(cfg, report.kernel):
        matrix = _candidate_matrix(vector, n, w, cfg.degree_probe)
        diff = matrix - matrix.identity_like()
        degrees = [
            e.min_degree() for row in diff.rows for e in row if not e.is_zero()
        ]
        if degrees:
            is_identity = False
            first = min(degrees)
        else:
            first = None
            if _specialized_candidate_is_identity(vector, n, w, cfg.seed):
                word = vector_to_word(vector, n, w)
                is_identity = evaluate_exact(word).is_identity()
            else:
                is_identity = False
        length = sum(
            abs(m) * word_lengths[k] for k, m in enumerate(vector) if m
        )
        outcome = CandidateResult(
            coefficients=_labeled(vector, basis),
            word_length=length,
            is_identity=is_identity,
            first_nonvanishing_degree=first,
        )
        result.candidates.append(outcome)
        if is_identity:
            result.identities_found += 1
        if progress is not None:
            progress(outcome)
    return result


# ---------------------------------------------------------------------------
# Built-in regression: the weight-5 pair whose truncations collide


BREAKDOWN_WORD_TEXTS = (
    "[[[A(2,4),A(1,4)],A(1,4)],[A(3,4),A(1,4)]]",
    "[[[A(3,4),A(1,4)],A(1,4)],[A(2,4),A(1,4)]]",
)
BREAKDOWN_COMMUTATORS = ("[[[x2,x1],x1],[x3,x1]]", "[[[x3,x1],x1],[x2,x1]]")

# First total degree at which the two words' images differ; established by
# direct computation and pinned as a regression value.
EXPECTED_FIRST_DIFFERENCE_DEGREE = 6


class RegressionError(AssertionError):
    """A pinned breakdown fact failed to reproduce."""


@dataclass
class BreakdownReport:
    truncations_equal: bool
    exact_equal: bool
    classes_equal: bool
    first_difference_degree: int
    difference_class: GradedClass

    def to_dict(self) -> dict:
        return {
            "truncations_equal_at_weight": self.truncations_equal,
            "exact_matrices_equal": self.exact_equal,
            "graded_classes_equal": self.classes_equal,
            "first_difference_degree": self.first_difference_degree,
            "difference_class": self.difference_class.to_dict(),
        }


def breakdown_regression(n: int = 4) -> BreakdownReport:
    """Reproduce the weight-5 collision: equal truncations, unequal matrices.

    Asserts that the two fixed commutator words agree modulo degree 5,
    disagree exactly, have identical weight-5 classes, and first differ in
    degree 6; any failure raises ``RegressionError``.  Returns the report
    with the degree-6 difference class of the first word times the inverse
    of the second.
    """
    from .braid import evaluate_truncated, parse_word
    from .hall import parse_commutator

    if n != 4:
        raise UsageError("the breakdown regression is specific to 4 strands")
    w1 = parse_word(BREAKDOWN_WORD_TEXTS[0], n)
    w2 = parse_word(BREAKDOWN_WORD_TEXTS[1], n)
    truncations_equal = evaluate_truncated(w1, 5) == evaluate_truncated(w2, 5)
    exact_equal = evaluate_exact(w1) == evaluate_exact(w2)

    from .graded import phi

    c1 = parse_commutator(BREAKDOWN_COMMUTATORS[0])
    c2 = parse_commutator(BREAKDOWN_COMMUTATORS[1])
    classes_equal = phi(c1, n) == phi(c2, n)

    probe = max(EXPECTED_FIRST_DIFFERENCE_DEGREE + 2, 8)
    b1 = _commutator_matrix(c1, n, probe)
    b2 = _commutator_matrix(c2, n, probe)
    quotient = b1 * series_matrix_inverse(b2)
    diff = quotient - quotient.identity_like()
    degrees = [
        e.min_degree() for row in diff.rows for e in row if not e.is_zero()
    ]
    first = min(degrees) if degrees else None

    if not truncations_equal:
        raise RegressionError("weight-5 truncations no longer agree")
    if exact_equal:
        raise RegressionError("exact matrices unexpectedly agree")
    if not classes_equal:
        raise RegressionError("weight-5 classes no longer agree")
    if first != EXPECTED_FIRST_DIFFERENCE_DEGREE:
        raise RegressionError(
            f"first difference degree {first} != {EXPECTED_FIRST_DIFFERENCE_DEGREE}"
        )
    difference_class = pi(quotient, first)
    return BreakdownReport(
        truncations_equal=truncations_equal,
        exact_equal=exact_equal,
        classes_equal=classes_equal,
        first_difference_degree=first,
        difference_class=difference_class,
    )
