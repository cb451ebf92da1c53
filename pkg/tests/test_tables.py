"""Computed classes against the embedded reference tables."""

import pytest

from gassner import tables
from gassner.graded import phi, verify_tables
from gassner.hall import basic_commutators, parse_commutator


class TestInstantiation:
    def test_weight_three_collisions_are_summed(self):
        # with u = s the factors t_r*t_u*t_n and t_r*t_s*t_n coincide, so
        # their rows accumulate into a single concrete monomial
        term = parse_commutator("[[x2,x1],x1]")
        expected = tables.instantiate("weight3", term, 4)
        computed = phi(term, 4)
        assert computed.coords == expected

    def test_weight_three_delta_activation(self):
        # r = u activates the e[s,n] delta term in the t_s*t_u*t_n row
        term = parse_commutator("[[x2,x1],x2]")
        expected = tables.instantiate("weight3", term, 4)
        mono = tuple(sorted((1, 2, 4)))
        assert expected[(mono, 1, 4)] == 1  # e[s,n](delta_ru)
        assert phi(term, 4).coords == expected

    def test_double_commutator_n_free_factor_vanishes(self):
        term = parse_commutator("[[x3,x2],[x2,x1]]")
        cls = phi(term, 4)
        assert all(4 in mono for mono in cls.monomials())

    def test_unknown_variant_rejected(self):
        from gassner.laurent import UsageError

        term = parse_commutator("x1")
        with pytest.raises(UsageError):
            tables.instantiate("weight1", term, 4, variant="nope")


@pytest.fixture(scope="module")
def reports():
    return {n: verify_tables(n) for n in (4, 5)}


class TestVerification:

    @pytest.mark.parametrize("n", [4, 5])
    def test_low_weights_match_as_printed(self, reports, n):
        for check in reports[n].checks:
            if check.shape in ("weight1", "weight2", "weight3", "weight4_double"):
                assert not check.mismatches["printed"], check.shape
                assert not check.mismatches["corrected"], check.shape

    @pytest.mark.parametrize("n", [4, 5])
    def test_weight_four_left_normed_matches_corrected(self, reports, n):
        check = next(
            c for c in reports[n].checks if c.shape == "weight4_left_normed"
        )
        assert not check.mismatches["corrected"]

    @pytest.mark.parametrize("n", [4, 5])
    def test_repeated_term_reads_once(self, reports, n):
        assert reports[n].duplicate_resolution() == "-1"

    @pytest.mark.parametrize("n", [4, 5])
    def test_printed_mismatches_confined_to_documented_cells(self, reports, n):
        # every cell where the printed table disagrees must be explained by
        # one of the documented repairs; cells fixed by a repair live in the
        # factor rows named by PHI4_LEFT_CORRECTIONS
        check = next(
            c for c in reports[n].checks if c.shape == "weight4_left_normed"
        )
        assert check.mismatches["printed"]
        repaired_rows = {
            tables.PHI4_LEFT_PRINTED[row_index][0]
            for row_index, _, _ in tables.PHI4_LEFT_CORRECTIONS
        }
        for mismatch in check.mismatches["printed"]:
            term = parse_commutator(mismatch.commutator)
            explained = False
            for factor in repaired_rows:
                assignment = tables._assignment(
                    "weight4_left_normed", term, n
                )
                mono = tuple(sorted(assignment[sym] for sym in factor))
                if mono == mismatch.mono:
                    explained = True
            assert explained, mismatch

    def test_shape_classification(self):
        for w in (1, 2, 3, 4):
            for term in basic_commutators(3, w):
                shape = tables.shape_of(term)
                assert shape in tables.shapes_for_weight(w)

    def test_invalid_n_rejected(self):
        from gassner.laurent import UsageError

        with pytest.raises(UsageError):
            verify_tables(3)
