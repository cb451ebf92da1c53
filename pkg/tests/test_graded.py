"""Coefficient extraction, graded classes, and exact rank/kernel."""

import random

import pytest

from gassner.braid import evaluate_truncated, parse_word
from gassner.graded import (
    GradedClass,
    assemble_phi_matrix,
    bracket,
    integer_kernel,
    integer_rank,
    kernel_report,
    phi,
    pi,
)
from gassner.hall import basic_commutators, commutator_to_word, parse_commutator
from gassner.laurent import (
    DomainError,
    SquareMatrix,
    TruncatedSeries,
    UsageError,
)


def series_matrix(entries, n, d):
    return SquareMatrix(
        [[TruncatedSeries(n, d, e) for e in row] for row in entries]
    )


class TestPi:
    def test_single_off_diagonal_term(self):
        # I + e[1,2]((t1-1)(t3-1)) at degree 2
        one, zero = {(0, 0, 0): 1}, {}
        m = series_matrix(
            [
                [one, {(1, 0, 1): 1}, zero],
                [zero, one, zero],
                [zero, zero, one],
            ],
            3,
            2,
        )
        cls = pi(m, 2)
        assert cls.coords == {((1, 3), 1, 2): 1}

    def test_rank_one_perturbation_block(self):
        # the 2x2 block [[1+q, -q], [q, 1-q]] with q = (t1-1)(t2-1)
        q = (1, 1)
        one, zero = {(0, 0): 1}, {}
        m = series_matrix(
            [
                [{(0, 0): 1, q: 1}, {q: -1}],
                [{q: 1}, {(0, 0): 1, q: -1}],
            ],
            2,
            2,
        )
        cls = pi(m, 2)
        assert cls.coords == {
            ((1, 2), 1, 1): 1,
            ((1, 2), 2, 2): -1,
            ((1, 2), 2, 1): 1,
            ((1, 2), 1, 2): -1,
        }

    def test_identity_gives_empty_class(self):
        m = SquareMatrix.identity_series(4, 4, 3)
        for i in (1, 2, 3):
            assert pi(m, i).is_zero()

    def test_congruence_violation_names_offender(self):
        one, zero = {(0, 0): 1}, {}
        m = series_matrix([[one, {(1, 0): 1}], [zero, one]], 2, 3)
        with pytest.raises(DomainError) as err:
            pi(m, 2)
        assert "(1,2)" in str(err.value)
        assert "degree-1" in str(err.value)

    def test_truncation_below_degree_rejected(self):
        m = SquareMatrix.identity_series(2, 2, 1)
        with pytest.raises(UsageError):
            pi(m, 2)

    def test_independent_of_truncation_depth(self):
        word = parse_word("[x2,x1]", 4)
        classes = [pi(evaluate_truncated(word, d), 2) for d in (2, 3, 4, 5)]
        assert all(c == classes[0] for c in classes)


class TestPhi:
    def test_weight_one(self):
        n = 4
        for r in (1, 2, 3):
            cls = phi(parse_commutator(f"x{r}"), n)
            assert cls.coords == {
                ((n,), r, r): 1,
                ((n,), n, r): -1,
                ((r,), r, n): -1,
                ((r,), n, n): 1,
            }

    def test_weight_two(self):
        n = 4
        for r in (2, 3):
            for s in range(1, r):
                cls = phi(parse_commutator(f"[x{r},x{s}]"), n)
                assert cls.coords == {
                    (tuple(sorted((s, n))), s, r): -1,
                    (tuple(sorted((s, n))), n, r): 1,
                    (tuple(sorted((r, n))), r, s): 1,
                    (tuple(sorted((r, n))), n, s): -1,
                    (tuple(sorted((r, s))), r, n): -1,
                    (tuple(sorted((r, s))), s, n): 1,
                }

    def test_leaf_out_of_range(self):
        with pytest.raises(UsageError):
            phi(parse_commutator("x4"), 4)

    def test_additivity_of_concatenation(self):
        rng = random.Random(0x5EED)
        for _ in range(100):
            w = rng.choice((2, 3, 4))
            basis = basic_commutators(3, w)
            c1, c2 = rng.choice(basis), rng.choice(basis)
            word = commutator_to_word(c1, 4) * commutator_to_word(c2, 4)
            cls = pi(evaluate_truncated(word, w), w)
            assert cls == phi(c1, 4) + phi(c2, 4)

    def test_inversion_negates(self):
        rng = random.Random(0xD1CE)
        for _ in range(100):
            w = rng.choice((2, 3, 4))
            c = rng.choice(basic_commutators(3, w))
            word = commutator_to_word(c, 4).inverse()
            cls = pi(evaluate_truncated(word, w), w)
            assert cls == -phi(c, 4)

    def test_trace_zero_above_weight_one(self):
        for w in (2, 3, 4):
            for c in basic_commutators(3, w):
                cls = phi(c, 4)
                for mono in cls.monomials():
                    entries = cls.matrix_at(mono)
                    trace = sum(
                        v for (row, col), v in entries.items() if row == col
                    )
                    assert trace == 0

    def test_bracket_consistency(self):
        # the class of [a, b] is the graded bracket of the classes
        rng = random.Random(0xB00C)
        for _ in range(30):
            wa = rng.choice((1, 2, 3))
            wb = rng.choice((1, 2))
            a = rng.choice(basic_commutators(3, wa))
            b = rng.choice(basic_commutators(3, wb))
            word = (
                commutator_to_word(a, 4)
                * commutator_to_word(b, 4)
                * commutator_to_word(a, 4).inverse()
                * commutator_to_word(b, 4).inverse()
            )
            cls = pi(evaluate_truncated(word, wa + wb), wa + wb)
            assert cls == bracket(phi(a, 4), phi(b, 4))

    def test_filtration_products_stay_congruent(self):
        # products of weight-w commutator words are I modulo degree w
        rng = random.Random(0xFADE)
        for _ in range(30):
            w = rng.choice((2, 3, 4))
            word = parse_word("", 4)
            for _ in range(rng.randint(1, 3)):
                word = word * commutator_to_word(
                    rng.choice(basic_commutators(3, w)), 4
                )
            m = evaluate_truncated(word, w)
            pi(m, w)  # raises DomainError if a lower degree survives


class TestGradedClass:
    def test_zero_coefficients_pruned(self):
        cls = GradedClass(3, 1, {((1,), 1, 1): 1}) - GradedClass(
            3, 1, {((1,), 1, 1): 1}
        )
        assert cls.is_zero()

    def test_validation(self):
        with pytest.raises(UsageError):
            GradedClass(3, 2, {((2, 1), 1, 1): 1})  # unsorted monomial
        with pytest.raises(UsageError):
            GradedClass(3, 2, {((1, 4), 1, 1): 1})  # index out of range
        with pytest.raises(UsageError):
            GradedClass(3, 1, {((1,), 0, 1): 1})  # bad position

    def test_mismatch_rejected(self):
        with pytest.raises(UsageError):
            GradedClass(3, 1) + GradedClass(3, 2)

    def test_json_round_trip(self):
        cls = phi(parse_commutator("[[x2,x1],x1]"), 4)
        assert GradedClass.from_dict(cls.to_dict()) == cls


class TestIntMatrix:
    def test_weight_two_row_support(self):
        m = assemble_phi_matrix(4, 2)
        assert m.row_count == 3
        for row in m.rows:
            assert sum(1 for v in row if v) == 6

    def test_row_counts(self):
        assert assemble_phi_matrix(4, 3).row_count == 8
        assert assemble_phi_matrix(4, 5).row_count == 48

    def test_rank_zero_matrix(self):
        assert integer_rank([[0, 0], [0, 0]]) == 0
        assert integer_rank([]) == 0

    def test_rank_small_fixtures(self):
        assert integer_rank([[1, 0], [0, 1]]) == 2
        assert integer_rank([[1, 2], [2, 4]]) == 1
        assert integer_rank(assemble_phi_matrix(4, 3)) == 8
        assert integer_rank(assemble_phi_matrix(4, 4)) == 18

    def test_rank_against_sympy(self):
        import sympy

        rng = random.Random(3)
        for _ in range(25):
            rows = rng.randint(1, 6)
            cols = rng.randint(1, 6)
            m = [
                [rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)
            ]
            assert integer_rank([r[:] for r in m]) == sympy.Matrix(m).rank()

    def test_kernel_empty_when_full_rank(self):
        assert integer_kernel(assemble_phi_matrix(4, 4)) == []

    def test_kernel_vectors_are_primitive_and_annihilate(self):
        m = assemble_phi_matrix(4, 5)
        kernel = integer_kernel(m)
        assert kernel
        from math import gcd

        for vec in kernel:
            content = 0
            for v in vec:
                content = gcd(content, v)
            assert content == 1
            leading = next(v for v in vec if v)
            assert leading > 0
            for c in range(m.col_count):
                assert sum(vec[r] * m.rows[r][c] for r in range(48)) == 0

    def test_kernel_contains_known_relation(self):
        m = assemble_phi_matrix(4, 5)
        labels = list(m.row_labels)
        i1 = labels.index(parse_commutator("[[[x2,x1],x1],[x3,x1]]"))
        i2 = labels.index(parse_commutator("[[[x3,x1],x1],[x2,x1]]"))
        vec = [0] * 48
        vec[i1], vec[i2] = 1, -1
        for c in range(m.col_count):
            assert sum(vec[r] * m.rows[r][c] for r in range(48)) == 0

    def test_kernel_report_consistency(self):
        report = kernel_report(4, 5)
        assert report.rank + len(report.kernel) == 48
        assert report.rank < report.expected == 48
        assert not report.injective

    def test_kernel_report_sanity_weight_three(self):
        report = kernel_report(4, 3)
        assert report.injective and report.kernel == []


class TestLeftNormedLaw:
    @pytest.mark.parametrize("n", [4, 5])
    @pytest.mark.parametrize("s", [3, 4])
    def test_lower_weights(self, n, s):
        from gassner.graded import sfold_property_check

        report = sfold_property_check(n, s)
        assert report.ok
        # weight three admits only left-normed basic commutators
        if s == 3:
            assert report.other_count == 0

    def test_weight_below_three_rejected(self):
        from gassner.graded import sfold_property_check

        with pytest.raises(UsageError):
            sfold_property_check(4, 2)


class TestParallel:
    def test_jobs_do_not_change_result(self):
        serial = assemble_phi_matrix(4, 3, jobs=1)
        parallel = assemble_phi_matrix(4, 3, jobs=2)
        assert serial == parallel
