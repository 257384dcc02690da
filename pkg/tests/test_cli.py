import csv
import io
import json
import math
import os

import jsonschema
import pytest

from bbsub import cli
from bbsub.io import atomic_write, csv_text, dumps, to_jsonable
from bbsub.schemas import SCHEMAS

E = math.e


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def run_json(capsys, *argv):
    code, cap = run(capsys, *argv)
    doc = json.loads(cap.out)
    jsonschema.validate(doc, SCHEMAS[doc["schema"]])
    return code, doc


def test_check_pass_and_fail(capsys):
    code, doc = run_json(capsys, "check", "--theorem", "t1", "--beta", "1", "--gamma", "-0.5")
    assert code == 0 and doc["satisfied"]
    code, doc = run_json(capsys, "check", "--theorem", "t1", "--beta", "1", "--gamma", "-0.2")
    assert code == 1 and not doc["satisfied"]
    assert [m["ok"] for m in doc["margins"]] == [True, True, False]


def test_check_corollary_with_consistency(capsys):
    code, doc = run_json(capsys, "check", "--corollary", "cor_3.3", "--A", "0.3", "--B", "-0.1", "--c", "0.5",
                         "--consistency", "50")
    assert code == 0
    assert doc["corollary"]["consistency"]["count"] == 0
    code, doc = run_json(capsys, "check", "--corollary", "cor_3.12", "--alpha", "0", "--beta", "0.5")
    assert any("division by zero" in n for n in doc["corollary"]["notes"])


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 3
    with pytest.raises(SystemExit) as info:
        cli.main(["check", "--theorem", "t9"])
    assert info.value.code == 3
    code, cap = run(capsys, "check")
    assert code == 3 and "exactly one" in cap.err
    code, cap = run(capsys, "check", "--corollary", "cor_3.3", "--A", "0.3")
    assert code == 3
    # parameters outside the theorem's range are usage errors, not failures
    code, cap = run(capsys, "check", "--theorem", "t2", "--A", "0.5", "--B", "-1", "--beta", "1")
    assert code == 3 and "B" in cap.err
    code, cap = run(capsys, "subord", "--corpus", "nothing")
    assert code == 3
    code, cap = run(capsys, "interval", "--theorem", "t1", "--free", "gamma", "--beta", "1", "--range", "1", "0", "10")
    assert code == 3


def test_interval_endpoints(capsys):
    code, doc = run_json(capsys, "interval", "--theorem", "t2", "--A", "0.5", "--B", "-0.5", "--beta", "1",
                         "--free", "gamma")
    assert code == 0
    (lo, hi), = doc["intervals"]
    assert abs(lo + 1 / 3) < 1e-10 and abs(hi - (1 - E) / (1 + 3 * E)) < 1e-10
    code, doc = run_json(capsys, "interval", "--theorem", "t5", "--A", "0.5", "--B", "-0.5", "--beta", "1",
                         "--free", "gamma", "--range", "-4", "4", "401")
    assert code == 1 and doc["intervals"] == []


def test_unbounded_interval_is_encoded(capsys):
    code, doc = run_json(capsys, "interval", "--theorem", "t3", "--A", "0.5", "--B", "-1", "--beta", "0",
                         "--free", "gamma", "--range", "-5", "5", "1001")
    assert code == 0
    flat = [v for iv in doc["intervals"] for v in iv]
    assert all(isinstance(v, float) or v in ("inf", "-inf") for v in flat)


def test_certify(capsys, tmp_path):
    surface = tmp_path / "surf.csv"
    code, doc = run_json(capsys, "certify", "--theorem", "t1", "--beta", "1", "--gamma", "-0.5",
                         "--t-points", "65", "--k-points", "8", "--surface", str(surface))
    assert code == 0 and doc["verdict"] == "pass"
    assert sum(1 for _ in open(surface)) == 65 * 8 + 1
    code, doc = run_json(capsys, "certify", "--theorem", "t2", "--A", "0.5984485965235269",
                         "--B", "-0.5395496844447556", "--beta", "3.237273453583698",
                         "--gamma", "-0.7829465689534194")
    assert doc["hypothesis"]["satisfied"]
    assert code == (0 if doc["min_gap"] >= -1e-9 else 1)


def test_subord_and_bernardi(capsys):
    code, doc = run_json(capsys, "subord", "--corpus", "example_p1", "--gamma", "-0.5", "--rmax", "0.9",
                         "--n-radii", "3", "--n-samples", "128")
    assert code == 0 and doc["verdict"] == "contained"
    code, doc = run_json(capsys, "subord", "--corpus", "f_L", "--target", "janowski:0.1,0", "--rmax", "0.9",
                         "--n-radii", "3", "--n-samples", "128")
    assert code == 1 and doc["verdict"] == "violated"
    code, doc = run_json(capsys, "bernardi", "--corpus", "f_L", "--c", "-0.5", "--target", "expdisc",
                         "--rmax", "0.9", "--n-radii", "3", "--n-samples", "128", "--z", "0.5", "--z", "0.1+0.2j")
    assert code == 0 and len(doc["values"]) == 2
    assert doc["membership"]["verdict"] == "contained"


def test_scan_agrees_with_check(capsys):
    code, cap = run(capsys, "scan", "--theorem", "t2", "--A", "0.5", "--B", "-0.5", "--x", "beta", "--y", "gamma",
                    "--x-range", "0.5", "2", "4", "--y-range", "-0.6", "0", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(cap.out)))
    assert len(rows) == 20
    for row in rows:
        c, _ = run(capsys, "check", "--theorem", "t2", "--A", "0.5", "--B", "-0.5",
                   "--beta", row["beta"], "--gamma", row["gamma"])
        assert (c == 0) == (row["verdict"] == "satisfied")
    assert {r["verdict"] for r in rows} == {"satisfied", "violated"}
    code, cap = run(capsys, "scan", "--theorem", "t1", "--x", "beta", "--y", "beta",
                    "--x-range", "0", "1", "2", "--y-range", "0", "1", "2")
    assert code == 3


def test_plot_svg_with_sibling_csv(capsys, tmp_path):
    out = tmp_path / "regions.svg"
    code, _ = run(capsys, "--out", str(out), "plot", "--region", "lemniscate", "--region", "janowski:0.5,-0.5",
                  "--curve", "f_L", "--rmax", "0.9", "--n-samples", "64")
    assert code == 0
    svg = out.read_text()
    assert svg.startswith("<svg") and svg.count("<path") == 3
    rows = list(csv.reader(open(tmp_path / "regions.csv")))
    assert rows[0] == ["curve", "index", "re", "im"] and len(rows) == 1 + 3 * 64
    code, cap = run(capsys, "plot", "--region", "parabola", "--format", "csv", "--n-samples", "16")
    assert code == 0 and cap.out.count("\n") == 17
    code, cap = run(capsys, "plot")
    assert code == 3


def test_out_file_is_written_atomically(capsys, tmp_path):
    out = tmp_path / "r.json"
    out.write_text("old")
    code, _ = run(capsys, "--out", str(out), "check", "--theorem", "t1", "--beta", "0", "--gamma", "0")
    assert code == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, SCHEMAS["hypothesis"])
    assert os.listdir(tmp_path) == ["r.json"]


def test_atomic_write_keeps_original_on_failure(tmp_path):
    target = tmp_path / "x.txt"
    target.write_text("original")

    with pytest.raises(TypeError):
        atomic_write(target, 12345)  # not text: the write fails before the rename
    assert target.read_text() == "original"
    assert os.listdir(tmp_path) == ["x.txt"]


def test_json_encoding_of_special_values():
    assert to_jsonable({"a": float("inf"), "b": complex(1, -2), "c": (1, 2)}) == {
        "a": "inf", "b": {"re": 1.0, "im": -2.0}, "c": [1, 2]}
    assert json.loads(dumps([float("nan")])) == ["nan"]


def test_csv_reals_round_trip():
    x = 0.1 + 0.2
    text = csv_text(["x"], [[x]])
    assert float(text.splitlines()[1]) == x


def test_run_config_validation():
    from bbsub.errors import ParameterError

    with pytest.raises(ParameterError):
        cli.RunConfig("subord", r_max=1.0)
    with pytest.raises(ParameterError):
        cli.RunConfig("scan", ranges={"beta": (0, 1, 0)})
    with pytest.raises(ParameterError):
        cli.RunConfig("plot", fmt="png")


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "bbsub", "check", "--theorem", "t1", "--beta", "1", "--gamma", "-0.5"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["satisfied"]
