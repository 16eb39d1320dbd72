import csv
from pathlib import Path

import pytest

from src.core import scan as scan_module
from src.core.scan import (
    SCAN_FIELDS,
    STATUS_DEGENERATE,
    STATUS_OK,
    ScanConfig,
    ScanRunner,
    parse_range,
    record_row,
    write_scan_csv,
)
from src.errors import InvalidPath
from src.models.reports import ScanRecord


@pytest.mark.unit
def test_parse_range_is_inclusive():
    assert parse_range("-2:2:1") == [-2.0, -1.0, 0.0, 1.0, 2.0]
    assert parse_range("3:3:1") == [3.0]
    assert parse_range("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]


@pytest.mark.unit
@pytest.mark.parametrize("text", ["1:2", "1:2:0", "3:1:1", "a:b:c"])
def test_parse_range_rejects_bad_input(text):
    with pytest.raises(ValueError):
        parse_range(text)


@pytest.mark.unit
def test_scan_config_validation():
    with pytest.raises(ValueError):
        ScanConfig(side="gamma")
    with pytest.raises(ValueError):
        ScanConfig(threads=0)
    assert ScanConfig(p_values=[1, 2], q_values=[3, 4]).grid == [(1, 3), (1, 4), (2, 3), (2, 4)]


@pytest.mark.unit
def test_record_row_formats_floats_and_blanks():
    row = record_row(ScanRecord(p2=0.1, q2=2.0, status=STATUS_DEGENERATE))

    assert list(row) == SCAN_FIELDS
    assert row["p2"] == "0.10000000000000001"
    assert row["q2"] == "2"
    assert row["p1"] == ""
    assert row["volume"] == ""
    assert row["status"] == "degenerate"


@pytest.mark.unit
def test_beta_scan_rows(tmp_path: Path, top_arc_midpoint):
    scan = ScanConfig(side="beta", p_values=[0.0], q_values=[0.0, 2.0])
    records = ScanRunner(scan).run()

    assert [r.status for r in records] == [STATUS_DEGENERATE, STATUS_OK]
    ok = records[1]
    assert ok.beta.to_complex() == pytest.approx(top_arc_midpoint, abs=1e-10)
    assert ok.alpha.to_complex() == pytest.approx(0.5 + 0.5j)
    assert ok.volume == pytest.approx(3.6638623767, abs=1e-9)
    assert ok.orient == "+0+00+0+"
    assert ok.core_len_beta is None  # (0, 2) is not primitive
    assert ok.p1 is None and ok.p2 == 0.0

    path = write_scan_csv(records, tmp_path / "scan.csv")
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert path.read_text(encoding="utf-8").splitlines()[0] == ",".join(SCAN_FIELDS)
    assert rows[0]["status"] == "degenerate"
    assert rows[1]["re_alpha"] == "0.5"


@pytest.mark.unit
def test_scan_output_independent_of_thread_count():
    grid = dict(side="beta", p_values=[-3.0, 3.0], q_values=[-2.0, 1.0, 4.0])
    single = ScanRunner(ScanConfig(threads=1, **grid)).run()
    pooled = ScanRunner(ScanConfig(threads=4, **grid)).run()

    assert [record_row(r) for r in single] == [record_row(r) for r in pooled]


@pytest.mark.unit
def test_progress_callback_sees_every_point():
    seen = []
    scan = ScanConfig(side="alpha", p_values=[3.0], q_values=[4.0, 5.0], threads=2)
    ScanRunner(scan).run(progress_callback=lambda done, total, msg: seen.append((done, total)))

    assert sorted(seen) == [(1, 2), (2, 2)]


@pytest.mark.unit
def test_unexpected_solver_error_becomes_degenerate_row(monkeypatch):
    real_solve = scan_module.solve_filling

    def solve(f, side, **kwargs):
        if f.p == 5.0:
            raise InvalidPath("start point too close to a puncture")
        return real_solve(f, side, **kwargs)

    monkeypatch.setattr(scan_module, "solve_filling", solve)
    scan = ScanConfig(side="beta", p_values=[3.0, 5.0], q_values=[4.0], threads=2)
    records = ScanRunner(scan).run()

    assert [r.status for r in records] == [STATUS_OK, STATUS_DEGENERATE]
    assert records[1].p2 == 5.0
