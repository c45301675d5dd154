import json

import pytest

from intcp.scan import (
    ScanAuditError,
    ScanConfig,
    ScanRow,
    format_rows,
    iter_rows,
    parse_rows,
    run_scan,
)


def test_tiny_grid_exact():
    rows = list(iter_rows(ScanConfig(1, exact=True)))
    assert [(r.a, r.b, r.c) for r in rows] == [(0, 0, 0), (0, 0, 1), (1, 0, 1), (1, 1, 1)]
    assert [r.exact for r in rows] == [0, 1, 2, 1]
    s = run_scan(ScanConfig(1, exact=True))
    assert s.max_rank == 2 and s.witnesses == [(1, 0, 1)]
    assert s.histogram == {0: 1, 1: 2, 2: 1}


def test_n2_upper_small():
    s = run_scan(ScanConfig(2))
    assert s.max_upper <= 4 and s.ranked_by == "upper"


def test_n8_exact_max_nine_at_example_one():
    s = run_scan(ScanConfig(8, exact=True))
    assert s.max_rank == 9
    assert s.witnesses == [(8, 1, 8)]


def test_row_order_is_a_then_c_then_b():
    keys = [(r.a, r.c, r.b) for r in iter_rows(ScanConfig(6))]
    assert keys == sorted(keys)


@pytest.mark.parametrize("fmt", ["csv", "jsonl"])
def test_round_trip(fmt):
    rows = list(iter_rows(ScanConfig(5, exact=True)))
    rows.append(ScanRow(9, 9, 9, 5, None, "template(0,0,9)", 17, inconclusive=True))
    assert parse_rows(format_rows(rows, fmt), fmt) == rows


def test_csv_header_and_empty_exact():
    text = format_rows([ScanRow(1, 0, 1, 2, None, "template(0,0,0)")], "csv")
    assert text.splitlines() == ["a,b,c,upper,exact,template,nodes", '1,0,1,2,,"template(0,0,0)",']


def test_jsonl_field_names():
    text = format_rows([ScanRow(1, 1, 1, 1, 1, "t", 3)], "jsonl")
    assert json.loads(text) == {"a": 1, "b": 1, "c": 1, "upper": 1, "exact": 1, "template": "t", "nodes": 3}


def test_audit_rejects_bad_rows():
    with pytest.raises(ScanAuditError):
        format_rows([ScanRow(1, 0, 1, 12)], "csv")
    with pytest.raises(ScanAuditError):
        format_rows([ScanRow(1, 0, 1, 2, 3)], "jsonl")


def test_inconclusive_rows_are_marked(tmp_path):
    out = tmp_path / "rows.csv"
    s = run_scan(ScanConfig(12, exact=True, output_path=out, budget=3))
    rows = parse_rows(out.read_text(), "csv")
    assert s.inconclusive > 0
    assert sum(r.inconclusive for r in rows) == s.inconclusive
    assert len(rows) == s.rows


def test_files_written(tmp_path):
    out = tmp_path / "scan.jsonl"
    run_scan(ScanConfig(4, exact=True, output_path=out, format="jsonl"))
    meta = json.loads((tmp_path / "scan.jsonl.meta.json").read_text())
    assert meta["config"]["max_diag"] == 4
    assert meta["summary"]["rows"] == len(out.read_text().splitlines())


def test_unwritable_path_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        run_scan(ScanConfig(1, output_path=tmp_path / "missing" / "x.csv"))


@pytest.mark.parametrize("kwargs", [{"max_diag": 0}, {"max_diag": 3, "format": "xml"}, {"max_diag": 3, "parallelism": 0}])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        ScanConfig(**kwargs)


def test_parallel_matches_serial():
    serial = format_rows(iter_rows(ScanConfig(10, exact=True)), "csv")
    parallel = format_rows(iter_rows(ScanConfig(10, exact=True, parallelism=3)), "csv")
    assert serial == parallel
