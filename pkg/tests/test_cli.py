import io
import json
import subprocess
import sys

import pytest

from i2gr.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), out=out, err=err)
    return status, out.getvalue(), err.getvalue()


def test_betti():
    assert run("betti", "--n", "4", "--k", "2") == (0, "1,1,2,2,3,6,3,2,2,1,1\n", "")
    status, out, _ = run("betti", "--n", "4", "--k", "3", "--format", "json")
    assert json.loads(out)["betti"] == [1, 1, 2, 6, 6, 6, 6, 2, 1, 1]


def test_degrees_csv():
    status, out, _ = run("degrees", "--n", "3", "--format", "csv")
    lines = out.splitlines()
    assert status == 0 and lines[0] == "subset,codim,degree" and len(lines) == 13
    assert lines[1] == '"[3,2]",0,14'


def test_verify_and_round_trip(tmp_path):
    status, out, _ = run("verify", "--n", "3")
    assert status == 0 and json.loads(out)["violations"] == []
    path = tmp_path / "classes.json"
    assert run("classes", "--n", "3", "--output", str(path))[0] == 0
    status, again, _ = run("verify", "--from-file", str(path))
    assert status == 0 and again == out


def test_verify_reports_corruption(tmp_path):
    _, out, _ = run("classes", "--n", "3")
    data = json.loads(out)
    data["classes"]["[3,1]"]["[2,-1]"]["terms"].append({"c": "1", "e": [0, 0, 0]})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    status, out, err = run("verify", "--from-file", str(path))
    assert status == 1 and json.loads(out)["violations"] and "divisibility" in err


def test_usage_errors():
    assert run("chevalley", "--n", "4", "--k", "3")[0] == 2
    assert run("betti", "--n", "17")[0] == 2
    assert run("betti")[0] == 2
    assert run("gkm", "--n", "3", "--format", "csv")[0] == 2
    assert run("pairing", "--n", "3", "--codim", "9")[0] == 2
    assert run("verify", "--from-file", "/nonexistent.json")[0] == 2
    status, _, err = run("frobnicate")
    assert status == 2


def test_other_commands():
    status, out, _ = run("fixed-points", "--n", "3", "--format", "csv")
    assert status == 0 and len(out.splitlines()) == 13
    status, out, _ = run("gkm", "--n", "3", "--geometry", "sympl", "--format", "dot")
    assert status == 0 and "dashed" in out
    status, out, _ = run("chevalley", "--n", "3", "--format", "csv")
    assert status == 0 and len(out.splitlines()) == 22
    status, out, _ = run("pairing", "--n", "3", "--codim", "3")
    assert status == 0 and json.loads(out)[0]["det"] == "1"
    status, out, _ = run("lefschetz", "--n", "3")
    assert status == 0 and json.loads(out)["ok"]
    status, out, _ = run("ring-check")
    assert status == 1 and not json.loads(out)["ideal"][0]["ok"]
    assert run("ring-check", "--amended")[0] == 0


def test_determinism_across_threads():
    a = run("verify", "--n", "4", "--threads", "1")
    b = run("verify", "--n", "4", "--threads", "4")
    assert a == b
    assert run("classes", "--n", "3") == run("classes", "--n", "3")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "i2gr", "betti", "--n", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1,1,2,4,2,1,1\n"
