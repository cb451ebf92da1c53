"""Kernel-candidate enumeration, testing, and the breakdown regression."""

import random

import pytest

from gassner.braid import BraidWord, evaluate_truncated, parse_word
from gassner.graded import integer_rank, kernel_report, phi, pi
from gassner.hall import basic_commutators, commutator_to_word, parse_commutator
from gassner.search import (
    BREAKDOWN_COMMUTATORS,
    BREAKDOWN_WORD_TEXTS,
    EXPECTED_FIRST_DIFFERENCE_DEGREE,
    SearchConfig,
    breakdown_regression,
    kernel_candidates,
    run_search,
    vector_to_word,
)
from gassner.search import test_candidate as check_candidate


@pytest.fixture(scope="module")
def kernel5():
    return kernel_report(4, 5)


class TestEnumeration:
    def test_support_one_returns_basis(self, kernel5):
        cfg = SearchConfig(coeff_bound=1, support_bound=1, budget=100)
        got = list(kernel_candidates(cfg, kernel5.kernel))
        assert got == list(kernel5.kernel)

    def test_zero_vector_never_emitted(self, kernel5):
        cfg = SearchConfig(coeff_bound=2, support_bound=3, budget=1000)
        for vec in kernel_candidates(cfg, kernel5.kernel):
            assert any(vec)

    def test_content_one_and_sign_canonical(self, kernel5):
        from math import gcd

        cfg = SearchConfig(coeff_bound=2, support_bound=3, budget=1000)
        seen = set()
        for vec in kernel_candidates(cfg, kernel5.kernel):
            content = 0
            for v in vec:
                content = gcd(content, v)
            assert content == 1
            assert next(v for v in vec if v) > 0
            assert vec not in seen
            seen.add(vec)

    def test_budget_respected(self, kernel5):
        cfg = SearchConfig(coeff_bound=2, support_bound=3, budget=7)
        assert len(list(kernel_candidates(cfg, kernel5.kernel))) == 7

    def test_empty_kernel_yields_nothing(self):
        cfg = SearchConfig()
        assert list(kernel_candidates(cfg, [])) == []

    def test_deterministic(self, kernel5):
        cfg = SearchConfig(coeff_bound=2, support_bound=2, budget=200)
        a = list(kernel_candidates(cfg, kernel5.kernel))
        b = list(kernel_candidates(cfg, kernel5.kernel))
        assert a == b

    def test_known_relation_in_span_of_candidates(self, kernel5):
        # the direction pairing the two breakdown commutators +1/-1 lies in
        # the span of the emitted candidates
        cfg = SearchConfig(coeff_bound=1, support_bound=2, budget=1000)
        emitted = list(kernel_candidates(cfg, kernel5.kernel))
        labels = list(kernel5.row_labels)
        i1 = labels.index(parse_commutator(BREAKDOWN_COMMUTATORS[0]))
        i2 = labels.index(parse_commutator(BREAKDOWN_COMMUTATORS[1]))
        target = [0] * 48
        target[i1], target[i2] = 1, -1
        base_rank = integer_rank([list(v) for v in emitted])
        joined = integer_rank([list(v) for v in emitted] + [target])
        assert joined == base_rank
        assert tuple(target) in emitted


class TestVectorToWord:
    def test_single_label(self, kernel5):
        basis = basic_commutators(3, 5)
        vec = [0] * 48
        vec[5] = 1
        word = vector_to_word(tuple(vec), 4, 5)
        assert word == commutator_to_word(basis[5], 4)

    def test_negative_multiplicity_reverses(self, kernel5):
        basis = basic_commutators(3, 5)
        vec = [0] * 48
        vec[5] = -1
        word = vector_to_word(tuple(vec), 4, 5)
        assert word == commutator_to_word(basis[5], 4).inverse()

    def test_breakdown_pair_gives_w1_w2_inverse(self):
        labels = list(basic_commutators(3, 5))
        i1 = labels.index(parse_commutator(BREAKDOWN_COMMUTATORS[0]))
        i2 = labels.index(parse_commutator(BREAKDOWN_COMMUTATORS[1]))
        assert i1 < i2  # basis order puts the first word first
        vec = [0] * 48
        vec[i1], vec[i2] = 1, -1
        word = vector_to_word(tuple(vec), 4, 5)
        w1 = parse_word(BREAKDOWN_WORD_TEXTS[0], 4)
        w2 = parse_word(BREAKDOWN_WORD_TEXTS[1], 4)
        assert word == w1 * w2.inverse()

    def test_length_mismatch_rejected(self):
        from gassner.laurent import UsageError

        with pytest.raises(UsageError):
            vector_to_word((1, 0), 4, 5)


class TestCandidateTesting:
    def test_empty_word_is_identity(self):
        result = check_candidate(BraidWord.identity(4), SearchConfig())
        assert result.is_identity
        assert result.first_nonvanishing_degree is None

    def test_breakdown_quotient_is_not_identity(self):
        w1 = parse_word(BREAKDOWN_WORD_TEXTS[0], 4)
        w2 = parse_word(BREAKDOWN_WORD_TEXTS[1], 4)
        result = check_candidate(w1 * w2.inverse(), SearchConfig())
        assert not result.is_identity
        assert (
            result.first_nonvanishing_degree == EXPECTED_FIRST_DIFFERENCE_DEGREE
        )

    def test_cancelling_word_is_identity(self):
        result = check_candidate(parse_word("x1 x2 x2^-1 x1^-1", 4), SearchConfig())
        assert result.is_identity

    def test_single_generator_first_degree_one(self):
        result = check_candidate(parse_word("x1", 4), SearchConfig())
        assert not result.is_identity
        assert result.first_nonvanishing_degree == 1


class TestDriverConsistency:
    def test_candidate_matrix_matches_word_evaluation(self, kernel5):
        # the driver's cached-product route equals the flat evaluation of
        # the representative word, and both agree with test_candidate
        from gassner.search import _candidate_matrix

        cfg = SearchConfig(coeff_bound=1, support_bound=2, budget=3)
        for vec in kernel_candidates(cfg, kernel5.kernel):
            word = vector_to_word(vec, 4, 5)
            product = _candidate_matrix(vec, 4, 5, 6)
            assert product == evaluate_truncated(word, 6)
            verdict = check_candidate(word, SearchConfig(degree_probe=6))
            report = run_search(SearchConfig(coeff_bound=1, support_bound=2, budget=3))
            by_coeffs = {r.coefficients: r for r in report.candidates}
            labeled = tuple(
                (str(t), m) for t, m in zip(kernel5.row_labels, vec) if m
            )
            assert by_coeffs[labeled].is_identity == verdict.is_identity
            assert (
                by_coeffs[labeled].first_nonvanishing_degree
                == verdict.first_nonvanishing_degree
            )


class TestSpecialization:
    def test_specialized_fold_matches_specialized_exact(self):
        # folding specialized letters equals specializing the exact product
        from gassner.braid import evaluate_exact
        from gassner.search import (
            _SPECIALIZATION_PRIME,
            _specialization_points,
            _specialize_matrix,
            _specialized_commutator,
        )

        term = parse_commutator("[[x2,x1],x1]")
        point = _specialization_points(4, 20041101)[0]
        exact = evaluate_exact(commutator_to_word(term, 4))
        direct = _specialize_matrix(exact, point, _SPECIALIZATION_PRIME)
        folded = _specialized_commutator(term, 4, 0, 20041101)
        assert direct == folded

    def test_modular_inverse(self):
        from gassner.search import (
            _SPECIALIZATION_PRIME,
            _mod_identity,
            _mod_inverse_matrix,
            _mod_matmul,
        )

        rng = random.Random(5)
        p = _SPECIALIZATION_PRIME
        for _ in range(10):
            m = tuple(
                tuple(rng.randrange(p) for _ in range(4)) for _ in range(4)
            )
            try:
                inv = _mod_inverse_matrix(m, p)
            except ValueError:
                continue  # singular draw
            assert _mod_matmul(m, inv, p) == _mod_identity(4)

    def test_specialized_identity_detector(self):
        from gassner.search import _specialized_candidate_is_identity

        # the zero combination is the identity word; a basis direction is not
        zero = (0,) * 48
        assert _specialized_candidate_is_identity(zero, 4, 5, 20041101)
        report = kernel_report(4, 5)
        assert not _specialized_candidate_is_identity(
            report.kernel[0], 4, 5, 20041101
        )


class TestSearch:
    def test_emitted_candidates_lie_in_graded_kernel(self, kernel5):
        # sample candidates evaluate to I modulo degree 5: their weight-5
        # class vanishes; checked through the flat word evaluation
        cfg = SearchConfig(coeff_bound=1, support_bound=2, budget=4)
        rng = random.Random(11)
        vectors = list(kernel_candidates(cfg, kernel5.kernel))
        for vec in rng.sample(vectors, 2):
            word = vector_to_word(vec, 4, 5)
            m = evaluate_truncated(word, 5)
            cls = pi(m, 5)  # DomainError if degrees below 5 survive
            assert cls.is_zero()

    def test_run_search_small(self):
        cfg = SearchConfig(coeff_bound=1, support_bound=1, budget=10)
        report = run_search(cfg)
        assert report.kernel_dimension == 4
        assert len(report.candidates) == 4
        assert report.identities_found == 0
        for result in report.candidates:
            assert not result.is_identity
            assert result.first_nonvanishing_degree == 6

    def test_run_search_empty_kernel_notice(self):
        report = run_search(SearchConfig(weight=4, budget=10))
        assert report.candidates == []
        assert report.notice is not None

    def test_reports_byte_identical(self):
        cfg = SearchConfig(coeff_bound=1, support_bound=2, budget=30)
        lines_a = list(run_search(cfg).to_json_lines())
        lines_b = list(run_search(cfg).to_json_lines())
        assert lines_a == lines_b

    def test_zero_budget(self):
        report = run_search(SearchConfig(budget=0))
        assert report.candidates == []


class TestBreakdownRegression:
    def test_regression_passes(self):
        report = breakdown_regression()
        assert report.truncations_equal
        assert not report.exact_equal
        assert report.classes_equal
        assert report.first_difference_degree == 6
        assert not report.difference_class.is_zero()
        assert report.difference_class.degree == 6

    def test_degree_six_difference_matches_exact_route(self):
        # independent oracle: convert the exact evaluations and compare the
        # leading parts of W1 - W2, which equal those of W1*W2^-1 - I
        from gassner.braid import evaluate_exact
        from gassner.laurent import series_from_laurent

        report = breakdown_regression()
        w1 = parse_word(BREAKDOWN_WORD_TEXTS[0], 4)
        w2 = parse_word(BREAKDOWN_WORD_TEXTS[1], 4)
        s1 = evaluate_exact(w1).map_entries(lambda e: series_from_laurent(e, 6))
        s2 = evaluate_exact(w2).map_entries(lambda e: series_from_laurent(e, 6))
        diff = s1 - s2
        degrees = [
            e.min_degree() for row in diff.rows for e in row if not e.is_zero()
        ]
        assert min(degrees) == 6
        got = {}
        for i, row in enumerate(diff.rows):
            for j, e in enumerate(row):
                for exps, c in e.homogeneous_part(6).items():
                    mono = tuple(
                        k + 1 for k, x in enumerate(exps) for _ in range(x)
                    )
                    got[(mono, i + 1, j + 1)] = c
        assert got == report.difference_class.coords

    def test_phi_classes_of_breakdown_pair_agree(self):
        c1 = parse_commutator(BREAKDOWN_COMMUTATORS[0])
        c2 = parse_commutator(BREAKDOWN_COMMUTATORS[1])
        assert phi(c1, 4) == phi(c2, 4)
