"""Tests for the verification suites, margins, and report emission."""

import json
import math

import numpy as np
import pytest

from gaussiso.functionals import STABILITY_CONSTANT
from gaussiso.verify import (
    SUITE_NAMES,
    CheckRecord,
    SuiteConfig,
    VerificationReport,
    _margins_identity,
    _margins_le,
    emit_report,
    render_report,
    run_suite,
)

EPS_THRESHOLD = 1.3797724995792588  # instability threshold of the two-ray set at level 0

EXPECTED_CHECK_COUNTS = {
    "measure-oracle": 2,
    "iso": 1,
    "barycenter-max": 1,
    "main": 2,
    "strong-vs-standard": 1,
    "alpha-hat-corollary": 1,
    "excess-identity": 1,
    "scalar-functions": 8,
    "stationarity": 6,
}

SMALL = SuiteConfig(samples=300, seed=5)


def _without_wall_time(report_json: str) -> str:
    payload = json.loads(report_json)
    for check in payload["checks"]:
        check["wall_time"] = 0.0
    return json.dumps(payload, sort_keys=True)


class TestSuiteConfig:
    def test_defaults(self):
        config = SuiteConfig()
        assert config.samples == 10_000
        assert config.seed == 42
        assert config.jobs == 1
        assert config.main_constant == STABILITY_CONSTANT

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"samples": 0},
            {"seed": -1},
            {"jobs": 0},
            {"main_constant": 0.0},
            {"main_constant": math.inf},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            SuiteConfig(**kwargs)


class TestCheckRecord:
    def test_margin_sign_must_track_violations(self):
        with pytest.raises(ValueError, match="margin sign"):
            CheckRecord(name="x", anchor="y", samples=3, violations=0, worst_margin=-0.5)
        with pytest.raises(ValueError, match="margin sign"):
            CheckRecord(name="x", anchor="y", samples=3, violations=1, worst_margin=0.5)

    def test_field_validation(self):
        with pytest.raises(ValueError, match="nonempty"):
            CheckRecord(name="", anchor="y", samples=1, violations=0, worst_margin=0.1)
        with pytest.raises(ValueError, match="nonempty"):
            CheckRecord(name="x", anchor="", samples=1, violations=0, worst_margin=0.1)
        with pytest.raises(ValueError, match="finite"):
            CheckRecord(name="x", anchor="y", samples=1, violations=0, worst_margin=math.nan)
        with pytest.raises(ValueError, match="positive"):
            CheckRecord(name="x", anchor="y", samples=0, violations=0, worst_margin=0.1)


class TestMargins:
    def test_one_sided_formula(self):
        assert _margins_le(1.0, 2.0) == pytest.approx(1.0 + 1e-9 * 2.0, rel=1e-15)
        assert _margins_le(0.5, 0.25) < 0.0

    def test_one_sided_tolerance_floor(self):
        # slack below the tolerance does not count as a violation
        assert _margins_le(5e-10, 0.0) > 0.0
        assert _margins_le(2e-9, 0.0) < 0.0

    def test_identity_formula(self):
        assert _margins_identity(1.0, 1.0) == pytest.approx(1e-10, rel=1e-12)
        assert _margins_identity(1.0, 1.0 + 1e-9) < 0.0


class TestRunSuite:
    def test_unknown_suite_rejected(self):
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite("does-not-exist", SMALL)

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_each_suite_passes(self, name):
        report = run_suite(name, SMALL)
        assert report.suite == name
        assert len(report.checks) == EXPECTED_CHECK_COUNTS[name]
        assert report.total_violations == 0
        for check in report.checks:
            assert check.anchor
            assert check.worst_margin >= 0.0
            assert check.seed == SMALL.seed

    def test_all_concatenates_every_suite(self):
        report = run_suite("all", SMALL)
        assert report.suite == "all"
        assert len(report.checks) == sum(EXPECTED_CHECK_COUNTS.values())
        assert report.total_violations == 0

    def test_minimum_ratio_reported(self):
        report = run_suite("main", SMALL)
        ratio_check = next(c for c in report.checks if c.name == "minimum-constant-ratio")
        assert ratio_check.params["min_ratio"] >= 1.0
        assert ratio_check.params["main_constant"] == STABILITY_CONSTANT

    def test_halved_constant_halves_the_ratio_statistic(self):
        full = run_suite("main", SuiteConfig(samples=400, seed=42))
        half = run_suite(
            "main", SuiteConfig(samples=400, seed=42, main_constant=STABILITY_CONSTANT / 2.0)
        )
        r_full = next(c for c in full.checks if c.name == "minimum-constant-ratio")
        r_half = next(c for c in half.checks if c.name == "minimum-constant-ratio")
        assert r_half.params["min_ratio"] == pytest.approx(
            r_full.params["min_ratio"] / 2.0, rel=1e-12
        )

    def test_drastically_falsified_constant_is_caught(self):
        report = run_suite("main", SuiteConfig(samples=400, seed=42, main_constant=0.05))
        main_check = next(
            c for c in report.checks if c.name == "deficit-controls-strong-asymmetry"
        )
        assert main_check.violations > 0
        assert main_check.worst_margin < 0.0
        assert report.total_violations > 0

    def test_equality_members_present_and_consistent(self):
        iso = run_suite("iso", SuiteConfig(samples=400, seed=42))
        bary = run_suite("barycenter-max", SuiteConfig(samples=400, seed=42))
        n_iso = iso.checks[0].params["equality_members"]
        n_bary = bary.checks[0].params["equality_members"]
        assert n_iso >= 1
        assert n_iso == n_bary  # both counts are the exact half-line members

    def test_determinism_modulo_wall_time(self):
        first = render_report(run_suite("all", SuiteConfig(samples=150, seed=7)))
        second = render_report(run_suite("all", SuiteConfig(samples=150, seed=7)))
        assert _without_wall_time(first) == _without_wall_time(second)

    def test_seed_changes_corpus_margins(self):
        a = run_suite("main", SuiteConfig(samples=200, seed=1))
        b = run_suite("main", SuiteConfig(samples=200, seed=2))
        assert a.checks[0].worst_margin != b.checks[0].worst_margin

    def test_parallel_jobs_match_serial(self):
        serial = render_report(run_suite("excess-identity", SuiteConfig(samples=120, seed=9)))
        parallel = render_report(
            run_suite("excess-identity", SuiteConfig(samples=120, seed=9, jobs=2))
        )
        assert _without_wall_time(serial) == _without_wall_time(parallel)

    def test_threshold_check_matches_hand_value(self):
        report = run_suite("stationarity", SMALL)
        check = next(c for c in report.checks if c.name == "instability-threshold-level-zero")
        assert check.params["hand_threshold"] == pytest.approx(EPS_THRESHOLD, rel=1e-14)
        assert abs(check.params["solver_threshold"] - check.params["hand_threshold"]) < 1e-9

    def test_two_ray_criticality_is_exact(self):
        report = run_suite("stationarity", SMALL)
        check = next(c for c in report.checks if c.name == "two-ray-criticality")
        assert check.violations == 0
        # margin = threshold + tolerance when the deviation is exactly zero
        assert check.worst_margin == pytest.approx(1e-10 + 1e-9, rel=1e-6)


@pytest.fixture(scope="module")
def report():
    return run_suite("stationarity", SMALL)


@pytest.fixture(scope="module")
def scale_report():
    return run_suite("all", SuiteConfig(samples=1200, seed=42))


class TestRenderAndEmit:
    def test_csv_layout(self, report):
        text = render_report(report, "csv")
        lines = text.strip().split("\n")
        assert lines[0] == "name,anchor,samples,violations,worst_margin,seed,wall_time"
        assert len(lines) == len(report.checks) + 1
        for line in lines[1:]:
            assert len(line.split(",")) == 7

    def test_json_round_trip(self, report):
        payload = json.loads(render_report(report, "json"))
        assert payload["suite"] == "stationarity"
        assert len(payload["checks"]) == len(report.checks)
        for parsed, check in zip(payload["checks"], report.checks):
            assert parsed["name"] == check.name
            assert parsed["anchor"] == check.anchor
            assert parsed["samples"] == check.samples
            assert parsed["violations"] == check.violations
            assert parsed["worst_margin"] == check.worst_margin
            assert parsed["seed"] == check.seed

    def test_seventeen_digit_serialization(self, report):
        text = render_report(report, "json")
        for check in report.checks:
            assert format(check.worst_margin, ".17g") in text

    def test_empty_report_is_header_only_csv(self):
        empty = VerificationReport(suite="none", checks=())
        assert (
            render_report(empty, "csv")
            == "name,anchor,samples,violations,worst_margin,seed,wall_time\n"
        )
        assert json.loads(render_report(empty, "json")) == {"suite": "none", "checks": []}

    def test_bad_format_rejected(self, report):
        with pytest.raises(ValueError, match="format"):
            render_report(report, "xml")

    def test_comma_in_anchor_rejected_for_csv(self):
        bad = VerificationReport(
            suite="x",
            checks=(
                CheckRecord(
                    name="ok", anchor="claim, with comma", samples=1, violations=0, worst_margin=0.5
                ),
            ),
        )
        with pytest.raises(ValueError, match="comma"):
            render_report(bad, "csv")

    def test_emit_writes_files(self, report, tmp_path):
        json_path = tmp_path / "report.json"
        csv_path = tmp_path / "report.csv"
        emit_report(report, str(json_path), "json")
        emit_report(report, str(csv_path), "csv")
        assert json.loads(json_path.read_text())["suite"] == "stationarity"
        assert csv_path.read_text().startswith("name,anchor,")

    def test_emit_failure_names_the_path(self, report):
        target = "/nonexistent-dir-for-report/report.json"
        with pytest.raises(OSError, match="nonexistent-dir-for-report"):
            emit_report(report, target, "json")


class TestCorpusSuitesAtScale:
    """Medium-size corpus giving every member family a presence."""

    def test_no_violations(self, scale_report):
        assert scale_report.total_violations == 0

    def test_measure_oracle_covers_high_dimensions(self, scale_report):
        mc = next(c for c in scale_report.checks if c.name == "highdim-measure-vs-monte-carlo")
        assert mc.samples == 20
        assert mc.violations == 0

    def test_identity_margins_tight(self, scale_report):
        identity = next(c for c in scale_report.checks if c.name == "boundary-excess-identity")
        # slack is essentially the full identity tolerance: the two sides agree
        # to far better than 1e-10 relative
        assert identity.worst_margin > 9e-11
