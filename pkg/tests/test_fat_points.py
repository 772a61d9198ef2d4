import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from error_handler import ConfigError, DomainError, StructuralError
from fat_points import (
    FatPointSystem,
    ProjectivePoint,
    ah_exceptional,
    ah_sweep,
    condition_matrix,
    condition_rows,
    dual_points,
    expected_dimension,
    general_points,
    linear_system_dimension,
    load_points_file,
    quintic_triple_probe,
    vanishes_to_order,
)
from field_linalg import PrimeFieldConfig
from poly_ring import DegreeSlice, LinearForm

FIELD = PrimeFieldConfig()


def system(n, d, count, m, seed=0, field=FIELD):
    return FatPointSystem.uniform(n, d, general_points(count, n, seed, field), m, field)


class TestExpectedDimension:
    @pytest.mark.parametrize("n, d, mults, value, raw", [
        (5, 4, [2] * 8, 78, 78),
        (2, 4, [2] * 5, 0, 0),
        (5, 3, [2] * 9, 2, 2),
        (5, 6, [4] * 8, 14, 14),
        (5, 6, [4] * 9, 0, -42),
        (5, 5, [3] * 8, 84, 84),
        (3, 2, [], 10, 10),
    ])
    def test_examples(self, n, d, mults, value, raw):
        expected = expected_dimension(n, d, mults)
        assert (expected.value, expected.raw) == (value, raw)

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            expected_dimension(0, 2, [2])
        with pytest.raises(DomainError):
            expected_dimension(2, -1, [2])


class TestPoints:
    def test_zero_point_rejected(self):
        with pytest.raises(DomainError):
            ProjectivePoint((0, 0, 0), FIELD)

    def test_coordinates_reduced(self):
        assert ProjectivePoint((-1, FIELD.modulus + 2), FIELD).coordinates == (FIELD.modulus - 1, 2)

    def test_dual_points_keep_order(self):
        forms = [LinearForm((1, 2, 3), FIELD), LinearForm((0, 0, 5), FIELD)]
        assert [p.coordinates for p in dual_points(forms)] == [(1, 2, 3), (0, 0, 5)]

    def test_point_in_wrong_space(self):
        with pytest.raises(StructuralError):
            FatPointSystem(3, 2, ((ProjectivePoint((1, 2), FIELD), 2),), FIELD)

    def test_zero_multiplicity(self):
        with pytest.raises(DomainError):
            FatPointSystem(1, 2, ((ProjectivePoint((1, 2), FIELD), 0),), FIELD)


class TestConditionMatrix:
    def test_row_counts(self):
        point = general_points(1, 5, 0, FIELD)[0]
        assert condition_rows(point, 2, 4).shape == (6, 126)
        assert condition_rows(point, 1, 4).shape == (1, 126)

    def test_quadruple_points_on_sextics(self):
        assert condition_matrix(system(5, 6, 8, 4)).shape == (448, 462)

    def test_order_capped_by_degree(self):
        # a 4-fold point on lines only asks for the first derivatives
        point = general_points(1, 2, 0, FIELD)[0]
        assert condition_rows(point, 4, 1).shape == (3, 3)

    def test_empty_system(self):
        dims = linear_system_dimension(FatPointSystem(2, 3, (), FIELD))
        assert (dims.actual, dims.expected, dims.conditions) == (10, 10, 0)


class TestLinearSystemDimension:
    def test_quartics_through_eight_double_points(self):
        dims = linear_system_dimension(system(5, 4, 8, 2))
        assert dims.actual == 78
        assert dims.defect == 0
        assert dims.conditions_imposed == 48

    def test_plane_quartics_through_five_double_points(self):
        dims = linear_system_dimension(system(2, 4, 5, 2))
        assert (dims.actual, dims.expected) == (1, 0)
        assert dims.special

    @pytest.mark.parametrize("count, actual", [(8, 8), (9, 2)])
    def test_cubics_of_p5(self, count, actual):
        assert linear_system_dimension(system(5, 3, count, 2)).actual == actual

    def test_conics_through_two_double_points(self):
        # the double line through both points
        assert linear_system_dimension(system(2, 2, 2, 2)).actual == 1

    @settings(deadline=None, max_examples=20)
    @given(seed=st.integers(min_value=0, max_value=10**6), c=st.integers(min_value=1, max_value=10**6))
    def test_rescaling_points_changes_nothing(self, seed, c):
        points = general_points(4, 2, seed, FIELD)
        original = FatPointSystem.uniform(2, 4, points, 2, FIELD)
        scaled = FatPointSystem.uniform(2, 4, [p.scaled(c) for p in points], 2, FIELD)
        assert linear_system_dimension(scaled).actual == linear_system_dimension(original).actual

    @settings(deadline=None, max_examples=20)
    @given(seed=st.integers(min_value=0, max_value=10**6), m=st.integers(min_value=1, max_value=3))
    def test_extra_point_never_grows_the_system(self, seed, m):
        points = general_points(4, 3, seed, FIELD)
        base = FatPointSystem.uniform(3, 4, points[:3], 2, FIELD)
        assert linear_system_dimension(base.with_point(points[3], m)).actual <= linear_system_dimension(base).actual

    def test_vanishes_to_order(self):
        form = DegreeSlice.monomial((2, 1, 0), FIELD)
        point = ProjectivePoint((0, 0, 1), FIELD)
        assert vanishes_to_order(form, [point], 3)
        assert not vanishes_to_order(form, [point], 4)
        assert not vanishes_to_order(form, [ProjectivePoint((1, 1, 1), FIELD)], 1)


class TestAlexanderHirschowitz:
    @pytest.mark.parametrize("n, d, s", [(4, 3, 7), (2, 4, 5), (3, 4, 9), (4, 4, 14)])
    def test_sporadic_cases_have_defect_one(self, n, d, s):
        assert ah_exceptional(n, d, s)
        dims = linear_system_dimension(system(n, d, s, 2))
        assert dims.defect == 1

    def test_quadrics_rule(self):
        assert ah_exceptional(3, 2, 2)
        assert ah_exceptional(3, 2, 3)
        assert not ah_exceptional(3, 2, 4)
        assert not ah_exceptional(3, 2, 1)
        assert not ah_exceptional(5, 4, 8)

    def test_only_double_points(self):
        with pytest.raises(DomainError):
            ah_exceptional(2, 4, 5, multiplicity=3)

    def test_small_sweep_is_consistent(self):
        rows = ah_sweep(2, [2, 3, 4], 6, [0, 1], FIELD)
        assert len(rows) == 2 * 3 * 7
        assert all(row.consistent for row in rows)
        assert [row.s for row in rows if row.listed] == [2, 5]

    def test_full_sweep_matches_the_classification(self):
        rows = ah_sweep(5, [2, 3, 4], 20, [0, 1, 2], FIELD)
        assert len(rows) == 5 * 3 * 21
        assert [row for row in rows if not row.consistent] == []
        quadrics = {(n, 2, s) for n in range(2, 6) for s in range(2, n + 1)}
        sporadic = {(4, 3, 7), (2, 4, 5), (3, 4, 9), (4, 4, 14)}
        assert {(row.n, row.d, row.s) for row in rows if row.listed} == quadrics | sporadic
        assert {row.defect for row in rows if (row.n, row.d, row.s) in sporadic} == {1}


class TestQuinticTripleProbe:
    def test_expected_and_lower_bound(self):
        probe = quintic_triple_probe(0, FIELD, trials=1)
        assert probe.expected == 84
        assert probe.actuals[0] >= 84
        assert probe.stable


class TestPointsFile:
    def test_reads_points_and_comments(self, tmp_path):
        path = tmp_path / "points.txt"
        path.write_text("# two points of P^2\n1 2 3\n\n-1 0 4  # negative is fine\n", encoding="utf-8")
        points = load_points_file(path, 2, FIELD)
        assert [p.coordinates for p in points] == [(1, 2, 3), (FIELD.modulus - 1, 0, 4)]

    @pytest.mark.parametrize("content", ["1 2\n", "1 2 x\n", "0 0 0\n", "1.5 2 3\n"])
    def test_malformed_lines(self, tmp_path, content):
        path = tmp_path / "points.txt"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(ConfigError):
            load_points_file(path, 2, FIELD)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_points_file(tmp_path / "nope.txt", 2, FIELD)
