import json
import math
import os

from e7_forge.report import (K_FAIL, K_PASS, K_SKIP, CheckRecord, VerificationReport, add_lists,
                             get_tab_str, merge_reports)


def sample_report():
    report = VerificationReport("structure", metadata={"construction": "tits"})
    report.check("closure", 1e-13, 1e-10)
    report.check("jacobi", 5e-9, 1e-9)
    report.expect("signature (54, 79)", False)
    report.skip("exact closure", "float build")
    return report


def test_helpers():
    assert get_tab_str("  ", 2) == "    "
    assert add_lists([1, 2, 3], [1, 0, 1]) == [2, 2, 4]


def test_record_status():
    assert CheckRecord("a", 0.0, 1e-12).tally == K_PASS
    assert CheckRecord("a", 1.0, 1e-12).tally == K_FAIL
    assert CheckRecord("a", 0.0, 0.0, skipped=True).tally == K_SKIP
    nan = CheckRecord("a", math.nan, 1.0)
    assert not nan.passed
    assert nan.status == "FAIL"


def test_totals_and_worst():
    report = sample_report()
    assert report.totals() == [1, 2, 1]
    assert not report.passed
    # 5x over tolerance beats 2x
    assert report.worst().name == "jacobi"


def test_passing_report():
    report = VerificationReport("volumes")
    report.expect("I(1,1,1) = 1/6", True)
    assert report.passed
    assert report.worst() is None


def test_to_dict_and_json(tmp_path):
    report = sample_report()
    d = report.to_dict()
    assert d["counts"] == {"pass": 1, "fail": 2, "skip": 1}
    assert d["worst"]["status"] == "FAIL"
    assert d["metadata"] == {"construction": "tits"}
    assert [r["name"] for r in d["records"]][:2] == ["closure", "jacobi"]
    path = tmp_path / "report.json"
    report.write(str(path))
    assert json.loads(path.read_text())["suite"] == "structure"


def test_write_replaces_atomically(tmp_path):
    path = tmp_path / "report.json"
    path.write_text("stale")
    sample_report().write(str(path))
    assert json.loads(path.read_text())["counts"]["fail"] == 2
    assert not os.path.exists(f"{path}.tmp")
    assert [p.name for p in tmp_path.iterdir()] == ["report.json"]


def test_get_as_string():
    text = sample_report().get_as_string()
    assert text.startswith("Suite: structure\n")
    assert "  [PASS]:closure" in text
    assert "[FAIL] Count =   2" in text
    assert "[SKIP] Count =   1" in text


def test_merge_reports():
    other = VerificationReport("volumes")
    other.expect("Vol(E7)", True)
    merged = merge_reports("all", [sample_report(), other], metadata={"seed": 0})
    assert len(merged.records) == 5
    assert merged.records[-1].name == "volumes: Vol(E7)"
    assert merged.totals() == [2, 2, 1]
    assert merged.metadata == {"seed": 0}
