import math

import pytest
from rich.console import Console

from src.core.report_builder import ReportBuilder
from src.core.reporting import print_verification, solve_table
from src.models.reports import MAX_OFFENDING_PER_CHECK, ComplexValue, SolveRecord


@pytest.mark.unit
def test_builder_tracks_residuals_and_failures():
    builder = ReportBuilder("consistency", seed=3)
    builder.measure("relation", 1e-15, 1e-12, "a")
    builder.measure("relation", 1e-10, 1e-12, "b")
    builder.require("condition", True, "c")
    builder.count_sample(2)

    report = builder.build()

    assert not report.passed
    assert report.seed == 3
    assert report.sample_count == 2
    assert report.check("relation").failures == 1
    assert report.check("relation").max_residual == pytest.approx(1e-10)
    assert report.check("condition").passed
    assert [o.sample for o in report.offending] == ["b"]


@pytest.mark.unit
def test_nan_residual_fails():
    builder = ReportBuilder("octagon")
    builder.measure("area", math.nan, 1.0, "nan sample")

    report = builder.build()

    assert not report.passed
    assert report.check("area").max_residual == math.inf


@pytest.mark.unit
def test_offending_samples_are_capped():
    builder = ReportBuilder("thm2")
    for k in range(MAX_OFFENDING_PER_CHECK + 5):
        builder.require("always fails", False, f"sample {k}")

    report = builder.build()

    assert report.check("always fails").failures == MAX_OFFENDING_PER_CHECK + 5
    assert len(report.offending) == MAX_OFFENDING_PER_CHECK


@pytest.mark.unit
def test_summary_is_json_friendly():
    builder = ReportBuilder("corollary")
    builder.measure("volume", 1e-13, 1e-9, "x")
    builder.skip("skipped sample")
    builder.note("half_volume", 3.66)

    summary = builder.build().summary()

    assert summary["passed"] is True
    assert summary["theorem"] == "corollary"
    assert summary["skipped"] == ["skipped sample"]
    assert summary["notes"]["half_volume"] == 3.66


@pytest.mark.unit
def test_console_rendering():
    console = Console(record=True, width=160)
    builder = ReportBuilder("thm3")
    builder.measure("distance", 0.01, 0.05, "r=100")
    print_verification(builder.build(), console)

    record = SolveRecord(
        side="beta",
        p=0,
        q=2,
        param=ComplexValue.of(0.5 + 1.2071j),
        u=ComplexValue.of(1.7627),
        v=ComplexValue.of(3.14159j),
        residual=1e-14,
        volume=3.6638623767,
    )
    console.print(solve_table([record]))

    text = console.export_text()
    assert "PASS" in text
    assert "distance" in text
    assert "(0, 2)" in text
