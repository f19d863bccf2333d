import csv
import io
import json
import subprocess
import sys

import pytest

from ratioref.cli import main


@pytest.fixture
def files(tmp_path):
    three = tmp_path / "three.json"
    three.write_text(json.dumps({"variant": "finite", "scales": ["1/4", "1", "4"]}))
    med = tmp_path / "mediators.json"
    med.write_text(json.dumps({"variant": "interval", "lo": "1/2", "hi": "2"}))
    box = tmp_path / "box.json"
    box.write_text(json.dumps({"variant": "logbox", "lo": [-1, -1], "hi": [1, 1]}))
    return {"three": str(three), "med": str(med), "box": str(box)}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def js(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_eval(capsys):
    assert js(capsys, "eval", "--x", "1") == {"J": "0"}
    assert js(capsys, "eval", "--x", "16") == {"J": "225/32"}
    assert js(capsys, "eval", "--x", "4", "--penalty-a", "2") == {"J": "225/32"}
    assert js(capsys, "eval", "--x", "2", "--backend", "float") == {"J": "0.25"}


def test_mean(capsys, files):
    out = js(capsys, "mean", "--s", "3/10", "--dict", files["three"])
    assert out == {"minimizers": ["o1"], "cost": "1/60", "margin": "4/5"}


def test_mediate(capsys, files):
    out = js(capsys, "mediate", "--a", "4", "--c", "1/4", "--dict", files["med"])
    assert out["chosen"] == ["1"] and out["total"] == "9/4" and out["direct"] == "225/32"
    assert out["gain"] == "153/32"


def test_misc_commands(capsys, files):
    assert js(capsys, "sublevel", "--eps", "1")["hi"] == "2+sqrt(3)"
    assert js(capsys, "boundaries", "--dict", files["three"])["boundaries"] == ["1/2", "2"]
    assert js(capsys, "classify", "--x", "2", "--dict", files["three"]) == \
        {"cell": [2, 3], "ids": ["o2", "o3"]}
    assert js(capsys, "window", "backbone", "--delta", "1/2") == {"lo": "1/4", "hi": "3"}
    assert js(capsys, "window", "near-balance", "--eps", "1/4") == {"lo": "1/4", "hi": "4"}
    assert js(capsys, "window", "low-cost", "--s", "2", "--eps", "1/4") == {"lo": "1", "hi": "4"}
    assert js(capsys, "capacity", "--dict", files["three"], "--delta", "1/2") == {"capacity": 2}
    assert js(capsys, "chain", "--a", "4", "--c", "1/4", "--k", "4")["total"] == "1"
    out = js(capsys, "product", "--s1", "1/2", "--s2", "3/2", "--dict", files["three"])
    assert out["first"]["minimizers"] == ["o1", "o2"] and out["second"]["minimizers"] == ["o2"]
    assert js(capsys, "is-symbol", "--s", "3/10", "--id", "o2", "--dict", files["three"]) == \
        {"symbol": False}
    assert js(capsys, "mean-total", "--s", "1", "--dict", files["three"])["cost"] == "0"


def test_mean_md(capsys, files):
    out = js(capsys, "mean-md", "--s", "1,1/2", "--dict", files["box"])
    assert out["cost"] == "0" and out["minimizers"] == [["1", "1/2"]]


def test_sweep_csv(capsys, files):
    code, out, _ = run(capsys, "sweep", "--dict", files["three"], "--lo", "1/8",
                       "--hi", "8", "--per-decade", "16", "--csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "cell", "margin", "o1", "o2", "o3"]
    cells = [r[1] for r in rows[1:]]
    assert cells[0] == "1" and cells[-1] == "3"
    assert cells == sorted(cells, key=lambda c: float(c.split("-")[0]))


def test_errors(capsys, files):
    code, _, err = run(capsys, "eval", "--x", "-1")
    assert code == 1 and json.loads(err)["error"] == "DomainError"
    code, _, err = run(capsys, "window", "low-cost", "--s", "4", "--eps", "1/4")
    assert code == 1 and json.loads(err)["error"] == "PreconditionError"
    code, _, err = run(capsys, "frobnicate")
    assert code == 1
    code, _, _ = run(capsys, "mean", "--s", "1", "--dict", "/nonexistent.json")
    assert code == 1
    code, _, err = run(capsys, "is-symbol", "--s", "1", "--id", "zz", "--dict", files["three"])
    assert code == 1 and json.loads(err)["error"] == "KeyError"


def test_verify(capsys, monkeypatch):
    monkeypatch.setenv("RATIOREF_SEED", "3")
    code, out, err = run(capsys, "verify", "--trials", "100", "--continuous-trials", "20")
    assert code == 0
    report = json.loads(out)
    assert report["seed"] == 3 and report["passed"]
    assert err.count("PASS") == 6


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ratioref", "eval", "--x", "2"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout) == {"J": "1/4"}
