import pytest

import constructions
from artinian import general_instance, hilbert_dimension
from config import DEFAULT_PINS, RunConfig, load_pins
from constructions import (
    StabilityRecord,
    StabilityRun,
    coker_decomposition_probe,
    decomposition_report,
    degree3_report,
    degree5_report,
    duality_check,
    pencil_report,
    pencil_scenario,
    quadruple_product_span,
    restrict_to_hyperplane,
    stability_sweep,
)
from error_handler import DomainError, InvariantError
from fat_points import vanishes_to_order
from poly_ring import LinearForm, monomial_count
from reports import FAIL, PASS, PROOF, RECORDED, ClaimBook


class TestRestriction:
    def test_last_variable_dropped(self, field):
        spec, _ = general_instance(3, 2, 2, 4, field)
        restricted = restrict_to_hyperplane(spec, LinearForm.variable(2, 3, field))
        assert restricted.v == 2
        assert [form.coefficients for form in restricted.forms] == [form.coefficients[:2] for form in spec.forms]
        assert restricted.powers == spec.powers

    def test_generator_equal_to_l_is_dropped(self, field):
        spec, L = general_instance(3, 2, 2, 4, field)
        restricted = restrict_to_hyperplane(spec.extend(L, 3), L)
        assert len(restricted.generators) == 2

    def test_one_variable_ring(self, field):
        spec, L = general_instance(1, 1, 2, 0, field)
        with pytest.raises(DomainError):
            restrict_to_hyperplane(spec, L)

    @pytest.mark.parametrize("d", [0, 1, 2, 3, 4, 5])
    def test_both_cokernel_paths_agree(self, cubes, d):
        spec, L = cubes
        assert hilbert_dimension(spec.extend(L, 1), d) == hilbert_dimension(restrict_to_hyperplane(spec, L), d)

    @pytest.mark.slow
    @pytest.mark.parametrize("d", [6, 7])
    def test_both_cokernel_paths_agree_high(self, cubes, d):
        spec, L = cubes
        assert hilbert_dimension(spec.extend(L, 1), d) == hilbert_dimension(restrict_to_hyperplane(spec, L), d)


class TestDuality:
    def test_complete_intersection(self, field):
        spec, _ = general_instance(3, 3, 2, 5, field)
        check = duality_check(spec, 3)
        assert (check.hilbert, check.fat_points) == (1, 1)

    def test_below_every_power(self, field):
        spec, _ = general_instance(4, 3, 3, 1, field)
        check = duality_check(spec, 2)
        assert check.agree and check.hilbert == monomial_count(4, 2)

    def test_eight_cubes_degree4(self, cubes_spec):
        check = duality_check(cubes_spec, 4)
        assert check.agree and check.hilbert == 154

    def test_negative_degree(self, cubes_spec):
        with pytest.raises(DomainError):
            duality_check(cubes_spec, -1)

    @pytest.mark.slow
    @pytest.mark.parametrize("d", range(3, 9))
    def test_eight_cubes_degrees(self, cubes_spec, d):
        assert duality_check(cubes_spec, d).agree


class TestPencil:
    def test_pencil_and_eight_point_system(self, field):
        scenario = pencil_scenario(0, field)
        assert scenario.dims == (2, 8)
        assert scenario.contained and scenario.valid
        # the completed basis starts with the pencil
        assert [c.coefficients.tolist() for c in scenario.eight_basis[:2]] == [c.coefficients.tolist() for c in scenario.pencil_basis]

    def test_products(self, field):
        scenario = pencil_scenario(0, field)
        span = quadruple_product_span(scenario)
        assert span.span == 15
        assert (span.expected, span.raw_expected) == (14, 14)
        assert span.vanish and span.nine_vanish
        assert span.nine_span == 3
        assert span.nine_raw_expected == -42
        assert span.nine_actual >= 3

    def test_products_are_quadruple_at_eight_points(self, field):
        scenario = pencil_scenario(0, field)
        c1, c3 = scenario.eight_basis[0], scenario.eight_basis[2]
        assert vanishes_to_order(c1 * c3, scenario.points[:8], 4)
        assert vanishes_to_order(c1 * c1, scenario.points, 4)

    def test_report_passes(self, field):
        report = pencil_report(0, field)
        assert report.passed
        assert all(claim.verdict == PASS for claim in report.claims)
        assert [claim.id for claim in report.claims][:3] == ["pencil.dim9", "pencil.dim8", "pencil.contained"]


class TestScenarioReports:
    def test_degree3(self, field):
        report = degree3_report(0, field)
        verdicts = {claim.id: claim.verdict for claim in report.claims}
        assert set(verdicts.values()) == {PASS}
        assert "deg3.coker" in verdicts and "deg4.kernel" in verdicts
        coker = next(claim for claim in report.claims if claim.id == "deg3.coker")
        assert coker.computed == 78
        assert coker.certificate_kind == PROOF
        assert next(claim for claim in report.claims if claim.id == "deg4.coker").computed == 84

    def test_decomposition_probe(self, field):
        probe = coker_decomposition_probe(0, field)
        assert probe.coker_dim == probe.coker_restricted
        assert probe.s >= 28 and probe.s_prime >= 28
        assert probe.koszul_restricted == 28
        assert probe.residuals["fatpoint_sextics_minus_coker"] == 0

    def test_decomposition_report_mostly_recorded(self, field):
        report = decomposition_report(0, field)
        pinned = [claim for claim in report.claims if claim.pinned]
        assert [claim.id for claim in pinned] == ["probe.koszul_restricted"]
        assert all(claim.verdict == RECORDED for claim in report.claims if not claim.pinned)
        assert report.passed

    def test_stability_record(self):
        same = StabilityRun(0, 7, (1, 2, 0), (1,), 1, (True, True))
        record = StabilityRecord((same, StabilityRun(1, 7, (1, 2, 0), (1,), 2, (True, True))))
        assert record.hilbert_stable and record.failing_stable and record.duality_stable
        assert not record.kernel_stable
        assert not record.stable
        shifted = StabilityRecord((same, StabilityRun(1, 7, (1, 2, 0), (0, 1), 1, (True, False))))
        assert not shifted.failing_stable
        assert not shifted.duality_stable

    def test_syzygy_error_becomes_failed_claim(self, field, monkeypatch):
        def broken(seed, field, attempt, t):
            if t == 3:
                raise InvariantError("syzygy count disagrees between paths")
            return 0

        monkeypatch.setattr(constructions, "cubes_syzygies", broken)
        monkeypatch.setattr(constructions, "DUALITY_DEGREES", range(3, 5))
        report = degree5_report(0, field, ClaimBook(load_pins(DEFAULT_PINS)), trials=1)
        claims = {claim.id: claim for claim in report.claims}
        assert claims["syz.t3"].computed is None
        assert claims["syz.t3"].verdict == FAIL
        assert claims["A6.dim"].verdict == RECORDED
        assert claims["A6.euler"].verdict == FAIL
        assert claims["A5.dim"].verdict == PASS
        assert not report.passed

    @pytest.mark.slow
    def test_degree5(self, field):
        report = degree5_report(0, field, ClaimBook(load_pins(DEFAULT_PINS)), trials=1)
        claims = {claim.id: claim for claim in report.claims}
        assert report.passed
        assert claims["A5.dim"].computed == 238
        assert claims["deg5.kernel_positive"].computed >= 1
        assert claims["A6.dim"].computed == 252 + claims["syz.t3"].computed
        assert (claims["syz.t3"].computed, claims["syz.t3"].verdict) == (28, PASS)
        assert (claims["deg5.kernel"].computed, claims["deg5.kernel"].verdict) == (1, PASS)
        assert claims["A6.euler"].verdict == PASS

    def test_regression_values_recorded_without_pins(self, field, monkeypatch):
        monkeypatch.setattr(constructions, "DUALITY_DEGREES", range(3, 4))
        claims = {claim.id: claim for claim in degree5_report(0, field, trials=1).claims}
        assert claims["syz.t3"].verdict == RECORDED
        assert claims["deg5.kernel"].verdict == RECORDED

    @pytest.mark.slow
    def test_stability_sweep(self):
        record = stability_sweep(0, 3, RunConfig().stability_primes)
        assert len(record.runs) == 6
        assert record.stable
        assert {run.failing for run in record.runs} == {(5,)}
        assert {run.dims for run in record.runs} == {(1, 7, 28, 76, 154, 238, 280, 232, 91, 0)}
        assert {run.kernel5 for run in record.runs} == {1}
