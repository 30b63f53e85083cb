import csv
import io
import json
import logging

import pytest

from octaglue import InvariantViolation, census, cli
from octaglue.census import (
    CensusReport,
    boundary_report,
    capped_report,
    classes_report,
    emit_report,
    homology_report,
    load_cache,
    polygon_report,
    save_cache,
)


def run_cli(args):
    out = io.StringIO()
    status = cli.run(args, out=out)
    return status, out.getvalue()


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_polygon_cli_row():
    status, text = run_cli(["polygon", "--k", "3", "--format", "csv"])
    assert status == 0
    assert csv_rows(text) == [{"k": "3", "gluings": "15", "classes": "5", "surfaces": "2"}]


def test_polygon_cli_range_json():
    status, text = run_cli(["polygon", "--k", "1-4"])
    doc = json.loads(text)
    assert status == 0
    assert list(doc) == ["schema", "kind", "rows", "total"]
    assert [(r["gluings"], r["classes"], r["surfaces"]) for r in doc["rows"]] == [
        (1, 1, 1), (3, 2, 2), (15, 5, 2), (105, 17, 3)]


def test_polygon_list_classes():
    status, text = run_cli(["polygon", "--k", "4", "--list-classes", "--format", "csv"])
    rows = csv_rows(text)
    assert status == 0
    assert len(rows) == 17
    assert sum(int(r["orbit_size"]) for r in rows) == 105
    assert {r["genus"] for r in rows} == {"0", "1", "2"}


@pytest.mark.parametrize("args", [
    ["bogus"],
    ["polygon"],
    ["polygon", "--k", "0"],
    ["polygon", "--k", "9"],
    ["polygon", "--k", "3", "--format", "xml"],
    ["octa", "everything"],
    ["octa", "capped", "--frobnicate"],
])
def test_usage_errors_exit_one(args, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(args, out=io.StringIO())
    assert exc.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_limit_k_can_be_lowered():
    with pytest.raises(SystemExit) as exc:
        cli.run(["polygon", "--k", "4", "--limit-k", "3"], out=io.StringIO())
    assert exc.value.code == 1


def test_invariant_violation_exits_two(monkeypatch):
    def broken(*args, **kwargs):
        raise InvariantViolation("synthetic")

    monkeypatch.setattr(cli, "octahedron_records", broken)
    status, _ = run_cli(["octa", "capped"])
    assert status == 2


def test_octa_capped_csv(records):
    rows = csv_rows(emit_report(capped_report(records), "csv"))
    assert len(rows) == 6
    assert sum(int(r["count"]) for r in rows) == 298


def test_boundary_json_total(records):
    doc = json.loads(emit_report(boundary_report(records), "json"))
    assert doc["total"] == 298
    assert doc["kind"] == "octahedron-boundary"
    assert doc["schema"] == census.SCHEMA
    assert [r["boundary"] for r in doc["rows"]] == [
        "S", "S+S", "S+S+S", "S+S+S+S", "S+S+S+S+S", "T", "T+S", "T+S+S", "T+T", "T+T+S",
        "Sigma2", "Sigma2+T", "Sigma3"]


def test_homology_report_lists_genus_three_split(records):
    doc = json.loads(emit_report(homology_report(records), "json"))
    sigma3 = {r["h1"]: r["count"] for r in doc["rows"] if r["boundary"] == "Sigma3"}
    assert sigma3 == {"Z^3": 52, "Z/3+Z^3": 4}
    assert doc["total"] == 298


def test_classes_report(records):
    report = classes_report(records)
    assert report.total == 298
    ids = [r["class"] for r in report.rows]
    assert ids == sorted(ids)
    assert sum(r["orbit_size"] for r in report.rows) == 8505


@pytest.mark.parametrize("make", [boundary_report, capped_report, homology_report, classes_report])
def test_csv_and_json_carry_the_same_rows(records, make):
    report = make(records)
    doc = json.loads(emit_report(report, "json"))
    from_csv = csv_rows(emit_report(report, "csv"))

    def flat(row):
        return {k: " ".join(map(str, v)) if isinstance(v, list) else str(v) for k, v in row.items()}

    assert sorted(map(lambda r: sorted(flat(r).items()), doc["rows"])) == \
        sorted(map(lambda r: sorted(r.items()), from_csv))


def test_empty_report_rejected():
    with pytest.raises(ValueError):
        emit_report(CensusReport("polygon", []), "json")
    with pytest.raises(ValueError):
        polygon_report([0])
    with pytest.raises(ValueError):
        polygon_report([])


def test_polygon_report_jobs_deterministic():
    assert emit_report(polygon_report(range(1, 6), jobs=1)) == emit_report(polygon_report(range(1, 6), jobs=3))


def test_octa_jobs_deterministic(records):
    parallel = census.compute_octahedron_records(jobs=2)
    assert parallel == records


def test_cache_roundtrip(tmp_path, records):
    path = tmp_path / "cache.json"
    save_cache(path, records)
    loaded = load_cache(path)
    assert loaded == records
    for make in (boundary_report, capped_report, homology_report, classes_report):
        assert emit_report(make(loaded)) == emit_report(make(records))
    assert not list(tmp_path.glob("*.tmp"))


def test_cache_cli_second_run_skips_computation(tmp_path, records, monkeypatch):
    path = tmp_path / "octa.json"
    calls = []

    def fake_compute(jobs=1):
        calls.append(jobs)
        return records

    monkeypatch.setattr(census, "compute_octahedron_records", fake_compute)
    first = run_cli(["octa", "homology", "--cache", str(path)])
    second = run_cli(["octa", "homology", "--cache", str(path)])
    assert first == second
    assert first[0] == 0
    assert calls == [1]


def test_cache_version_mismatch_recomputes(tmp_path, records, monkeypatch, caplog):
    path = tmp_path / "octa.json"
    save_cache(path, records)
    doc = json.loads(path.read_text())
    doc["format_version"] = 999
    path.write_text(json.dumps(doc))
    calls = []
    monkeypatch.setattr(census, "compute_octahedron_records", lambda jobs=1: calls.append(1) or records)
    with caplog.at_level(logging.WARNING):
        records_again = census.octahedron_records(cache=path)
    assert records_again == records
    assert calls == [1]
    assert "format version" in caplog.text
    assert json.loads(path.read_text())["format_version"] == census.CACHE_VERSION


def test_cache_digest_mismatch_recomputes(tmp_path, records, caplog):
    path = tmp_path / "octa.json"
    save_cache(path, records)
    doc = json.loads(path.read_text())
    doc["classes"][0]["orbit_size"] += 1
    path.write_text(json.dumps(doc))
    with caplog.at_level(logging.WARNING):
        assert load_cache(path) is None
    assert "digest" in caplog.text


def test_cache_garbage_recomputes(tmp_path):
    path = tmp_path / "octa.json"
    path.write_text("{not json")
    assert load_cache(path) is None
    assert load_cache(tmp_path / "missing.json") is None
