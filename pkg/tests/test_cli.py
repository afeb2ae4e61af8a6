import io
import json
import shutil
import subprocess
import sys

import jsonschema
import pytest

from spectrex.cli import main
from spectrex.forbidden import catalog_path
from spectrex.reports import SCHEMAS, clean, envelope_schema, make_report


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def report(path):
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, envelope_schema(doc["command"]))
    return doc


def test_construct(tmp_path, capsys):
    out = tmp_path / "t10.json"
    code, text, _ = run(["construct", "--family", "Tm", "--m", "10", "--out", str(out)], capsys)
    assert code == 0 and text.strip() == "FhdLG"
    doc = report(out)
    assert doc["ok"] and doc["report"]["lambda"] == pytest.approx(2.9032, abs=1e-4)
    assert doc["report"]["polynomial"]["coefficients"][:2] == ["1", "0"]


def test_construct_usage_errors(capsys):
    assert run(["construct", "--family", "Lm", "--m", "7"], capsys)[0] == 2
    assert run(["construct", "--family", "SKab", "--a", "3"], capsys)[0] == 2
    assert run(["construct", "--family", "Lm"], capsys)[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["construct", "--family", "Qm", "--m", "8"])
    assert e.value.code == 2


def test_spectrum_from_stdin(capsys, monkeypatch, tmp_path):
    out = tmp_path / "s.json"
    code, text, _ = run(["spectrum", "--out", str(out)], capsys, stdin="Dhc\n", monkeypatch=monkeypatch)
    assert code == 0 and text.split()[0] == "2.000000"
    assert report(out)["report"]["triangles"] == pytest.approx(0, abs=1e-9)
    assert run(["spectrum", "Dh"], capsys)[0] == 2


def test_verify_lemma(tmp_path, capsys):
    out = tmp_path / "v.json"
    code, text, _ = run(["verify-lemma", "--lemma", "beta_bracket", "--m-range", "62:400:2", "--quiet", "--out", str(out)], capsys)
    assert code == 0 and "170/170 hold" in text
    doc = report(out)
    assert doc["report"]["failed"] == []
    code, text, _ = run(["verify-lemma", "--lemma", "LY", "--m", "12"], capsys)
    assert code == 0 and "flagged" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-lemma", "--lemma", "LT", "--m", "11"],
        ["verify-lemma", "--lemma", "LT", "--m-range", "10:4"],
        ["verify-lemma", "--lemma", "LT", "--m-range", "x:y"],
        ["verify-lemma", "--lemma", "LT"],
        ["verify-lemma", "--lemma", "LT", "--m", "10", "--m-range", "10:20"],
        ["threshold", "--entry", "Q1"],
        ["threshold", "--entry", "H1", "--m", "259"],
        ["search", "--m", "20"],
        ["search", "--m", "8", "--jobs", "0"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    assert code == 2


def test_threshold(tmp_path, capsys):
    out = tmp_path / "h3.json"
    code, text, _ = run(["threshold", "--entry", "H3", "--m", "162", "--out", str(out)], capsys)
    assert code == 0 and "m* = 128" in text
    doc = report(out)
    assert doc["report"]["certificate"]["positive"]
    assert run(["threshold", "--entry", "C7"], capsys)[0] == 0


def test_threshold_failure_exits_1(capsys):
    code, text, _ = run(["threshold", "--entry", "L3", "--cap", "1000"], capsys)
    assert code == 1 and "FAIL" in text


def test_search(tmp_path, capsys):
    out = tmp_path / "s8.json"
    code, text, _ = run(["search", "--m", "8", "--jobs", "1", "--out", str(out)], capsys)
    assert code == 0 and "Lm(m=8)" in text
    doc = report(out)
    assert doc["report"]["unique"] and doc["report"]["lambda_max"] == pytest.approx(2.4938, abs=5e-4)


def test_reports_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["search", "--m", "7", "--jobs", "1", "--out", str(a)], capsys)
    run(["search", "--m", "7", "--jobs", "1", "--out", str(b)], capsys)
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    da["report"].pop("runtime"), db["report"].pop("runtime")
    assert da == db


def test_audit(capsys):
    code, text, _ = run(["audit", "FhdLG"], capsys)
    assert code == 0 and "ok" in text
    code, text, _ = run(["audit", "FhCKG"], capsys)  # C7
    assert code == 1 and "VIOLATION" in text


def test_catalog_writes_into_data_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SPECTREX_DATA", str(tmp_path))
    out = tmp_path / "cat.json"
    code, text, _ = run(["catalog", "--write", "--jobs", "1", "--out", str(out)], capsys)
    assert code == 0 and (tmp_path / "catalog.json").exists()
    monkeypatch.delenv("SPECTREX_DATA")
    assert json.loads((tmp_path / "catalog.json").read_text()) == json.loads(catalog_path().read_text())
    assert report(out)["ok"]


def test_threshold_reads_SPECTREX_DATA(tmp_path, capsys, monkeypatch):
    shutil.copy(catalog_path(), tmp_path / "catalog.json")
    doc = json.loads((tmp_path / "catalog.json").read_text())
    doc["entries"][0]["spectrum"][0] += 1
    (tmp_path / "catalog.json").write_text(json.dumps(doc))
    monkeypatch.setenv("SPECTREX_DATA", str(tmp_path))
    assert run(["threshold", "--entry", "H1"], capsys)[0] == 2


def test_console_script(tmp_path):
    proc = subprocess.run(["spectrex", "construct", "--family", "Lm", "--m", "8", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0] == "Fhec?"
    doc = json.loads("\n".join(lines[1:]))
    jsonschema.validate(doc, envelope_schema("construct"))


def test_schemas_reject_bad_reports():
    with pytest.raises(jsonschema.ValidationError):
        make_report("search", True, {"m": 8})
    with pytest.raises(jsonschema.ValidationError):
        make_report("nope", True, {})
    assert set(SCHEMAS) == {"construct", "spectrum", "verify-lemma", "threshold", "search", "audit", "catalog"}


def test_clean_drops_non_finite():
    assert clean({"a": float("-inf"), "b": (1.0, float("nan"))}) == {"a": None, "b": [1.0, None]}
