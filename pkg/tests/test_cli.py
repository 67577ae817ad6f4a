import json
import shutil
import subprocess
import sys

import jsonschema
import pytest

from eawg.cli import main

from conftest import SCHEMAS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_semilattices_nullity_two(capsys):
    code, out, _ = run(capsys, "semilattices", "--nullity", "2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert "index=2" in lines[0] and "n(1,2)=2" in lines[0]
    assert "index=3" in lines[1] and "n(1,2)=1" in lines[1]


def test_semilattices_nullity_three(capsys):
    code, out, _ = run(capsys, "semilattices", "--nullity", "3")
    assert code == 0
    assert [l.split()[1] for l in out.splitlines()] == [f"index={m}" for m in range(3, 8)]


def test_semilattices_custom_and_errors(capsys):
    code, out, _ = run(capsys, "semilattices", "--nullity", "2", "--class", "{},{1},{2}")
    assert code == 0 and "index=2" in out and "n(1,2)=2" in out
    code, _, err = run(capsys, "semilattices", "--nullity", "5")
    assert code == 2 and "--class" in err
    code, _, err = run(capsys, "semilattices", "--nullity", "2", "--class", "{1},{2}")
    assert code == 2


def test_present_W_text(capsys):
    code, out, _ = run(capsys, "present", "--type", "A", "--rank", "1", "--nullity", "2",
                       "--index", "3", "--group", "W")
    assert code == 0
    assert "generators: x1, y1_1, y1_2, z1_2" in out
    assert "[y1_1,y1_2] = z1_2^2" in out.splitlines()


def test_present_H_rank_two_nullity_one(capsys):
    code, out, _ = run(capsys, "present", "--type", "A", "--rank", "2", "--nullity", "1",
                       "--group", "H")
    assert code == 0
    body = out.splitlines()[2:]
    assert "generators: y1_1, y2_1" in out and body == ["[y1_1,y2_1] = 1"]


def test_present_json_schema(capsys):
    code, out, _ = run(capsys, "present", "--type", "D", "--rank", "4", "--nullity", "2",
                       "--group", "W", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("presentation"))
    assert doc["rank"] == 4 and doc["nullity"] == 2


@pytest.mark.parametrize("argv", [
    ["present", "--type", "A", "--rank", "2", "--nullity", "2", "--index", "2"],
    ["present", "--type", "A", "--rank", "1", "--nullity", "2", "--index", "9"],
    ["present", "--type", "D", "--rank", "3"],
    ["present", "--rank", "1"],
    ["normal-form", "--type", "A", "--rank", "1", "--nullity", "1", "--word", "y1_1 *"],
    ["normal-form", "--type", "A", "--rank", "1", "--nullity", "1", "--word", "z1_2"],
    ["roots", "--type", "A", "--rank", "1", "--bound", "1", "--check-axioms"],
])
def test_config_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("eawg: error:") and out == ""


def test_argparse_errors_exit_two(capsys):
    for argv in (["present", "--index", "2", "--class", "{}"], ["bogus"], ["present", "--group", "Q"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_verify_single_and_fault(capsys):
    base = ["verify", "--type", "A", "--rank", "1", "--nullity", "2", "--index", "3", "--pairs", "30"]
    code, out, _ = run(capsys, *base)
    assert code == 0 and out.splitlines()[-1].startswith("overall: PASS")
    code, out, _ = run(capsys, *base, "--inject-fault", "relator")
    assert code == 1
    assert "failed relator" in out and "[y1_1,y1_2] = z1_2^2" in out


def test_verify_json_schema_and_determinism(capsys):
    argv = ["verify", "--type", "A", "--rank", "2", "--nullity", "2", "--seed", "42",
            "--pairs", "40", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    doc = json.loads(a)
    jsonschema.validate(doc, schema("verify_report"))
    assert doc["ok"] and {r["group"] for r in doc["results"]} == {"H", "W"}


def test_verify_default_sweep(capsys):
    code, out, _ = run(capsys, "verify", "--pairs", "20", "--samples", "10")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "overall: PASS (seed 0)"
    assert len(lines) == 43


def test_normal_form_examples(capsys):
    code, out, _ = run(capsys, "normal-form", "--type", "A", "--rank", "1", "--nullity", "1",
                       "--word", "y1_1 * x1")
    assert code == 0
    assert "finite part: x1" in out and "n(1,1)=-1" in out and "verified:    true" in out
    code, out, _ = run(capsys, "normal-form", "--type", "A", "--rank", "1", "--nullity", "2",
                       "--word", "1")
    assert code == 0 and "finite part: 1" in out and "c(1,2)^0" in out
    code, out, _ = run(capsys, "normal-form", "--type", "A", "--rank", "1", "--nullity", "2",
                       "--index", "2", "--word", "y1_1*y1_2*y1_1^-1*y1_2^-1", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("normal_form"))
    assert doc["central"] == [2] and doc["central_fs"] == [1] and doc["collected"] == "z1_2"


def test_roots_listings(capsys):
    code, out, _ = run(capsys, "roots", "--type", "A", "--rank", "1")
    assert code == 0 and out.splitlines() == ["[-1]", "[0]", "[1]"]
    code, out, _ = run(capsys, "roots", "--type", "A", "--rank", "1", "--nullity", "1",
                       "--index", "1", "--bound", "1")
    rows = [json.loads(l) for l in out.splitlines()]
    assert rows == sorted(rows)
    assert sum(1 for r in rows if r[0]) == 6


def test_roots_axioms_and_fault(capsys):
    base = ["roots", "--type", "A", "--rank", "2", "--nullity", "1", "--bound", "3", "--check-axioms"]
    code, out, _ = run(capsys, *base)
    assert code == 0 and "# axioms (bound 3): PASS" in out
    code, out, _ = run(capsys, "roots", "--type", "A", "--rank", "1", "--nullity", "2", "--index",
                       "2", "--bound", "2", "--check-axioms", "--inject-fault", "root",
                       "--format", "json")
    assert code == 1
    doc = json.loads(out)
    jsonschema.validate(doc, schema("roots"))
    r4 = [a for a in doc["axioms"]["axioms"] if a["axiom"] == "R4"][0]
    assert not r4["passed"]


def test_semilattices_json_schema(capsys):
    code, out, _ = run(capsys, "semilattices", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("semilattices"))
    assert len(doc["semilattices"]) == 9


def test_out_file(capsys, tmp_path):
    target = tmp_path / "p.txt"
    code, out, _ = run(capsys, "present", "--type", "A", "--rank", "1", "--nullity", "1",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert "x1^2 = 1" in target.read_text()


def test_color_env(capsys, monkeypatch):
    argv = ["verify", "--type", "A", "--rank", "1", "--pairs", "2", "--samples", "2"]
    monkeypatch.setenv("EAWG_COLOR", "1")
    _, colored, _ = run(capsys, *argv)
    monkeypatch.setenv("EAWG_COLOR", "0")
    _, plain, _ = run(capsys, *argv)
    assert "\x1b[32mPASS" in colored and "\x1b[" not in plain


def test_console_script():
    exe = shutil.which("eawg")
    cmd = [exe] if exe else [sys.executable, "-m", "eawg.cli"]
    res = subprocess.run(cmd + ["semilattices", "--nullity", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and "index=1" in res.stdout
