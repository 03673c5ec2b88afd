import csv
import io
import json
import subprocess
import sys

import pytest

from mhnumbers.cli import main
from mhnumbers.qtfield import parse, q, serialize, t


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def run_json(*argv):
    status, out, err = run(*argv)
    assert status == 0, err
    return json.loads(out)


def test_macdonald_degree_two():
    obj = run_json("macdonald", "--d", "2", "--out", "json")
    rows = obj["rows"]
    half = (1 + q) * (1 - t) ** 2 / 2
    assert rows["2"]["1,1"] == serialize(half)
    assert parse(rows["1,1"]["2"]) == -(1 - t) * (1 - t**2) / 2
    assert parse(obj["j"]["2"]) == (1 - t) * (1 - q * t) * (1 - q) * (1 - q**2)


def test_mh_json():
    obj = run_json("mh", "--h", "0", "--d", "1", "--profiles", "1|1")
    assert obj == {"value": serialize((1 - t) / (1 - q)), "genus": 0, "constraint_ok": True}
    obj = run_json("mh", "--h", "0", "--d", "2", "--profiles", "2")
    assert obj == {"value": "0", "genus": None, "constraint_ok": False}
    obj = run_json("mh", "--h", "0", "--d", "2", "--profiles", "1,1", "--disconnected", "--genus", "-1")
    assert parse(obj["value"]) == ((1 - t) / (1 - q)) ** 2 / 2


def test_coeffs_and_csv():
    status, out, _ = run("coeffs", "--lam", "2", "--out", "csv")
    assert status == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lambda", "delta", "a"]
    assert {r[1] for r in rows[1:]} == {"2", "1,1"}
    obj = run_json("coeffs", "--lam", "1", "--delta", "1")
    assert parse(obj["values"]["1"]) == 1 - t


def test_cutjoin_and_pretty():
    obj = run_json("cutjoin", "--d", "1", "--delta", "1")
    assert obj == {"1": {"1": {"0": "1"}}}
    obj = run_json("cutjoin", "--d", "2", "--delta", "2", "--hbar-one")
    assert set(obj) == {"2", "1,1"}
    status, out, _ = run("cutjoin", "--d", "2", "--delta", "2", "--out", "pretty")
    assert status == 0 and out.startswith("2:")


def test_wavefn():
    obj = run_json("wavefn", "--d", "1")
    assert obj["coeffs"][""]["1"] == {"-2": serialize((1 - t) / (1 - q))}
    a = run_json("wavefn", "--d", "2", "--deltas", "2", "--order", "2")
    b = run_json("wavefn", "--d", "2", "--deltas", "2", "--order", "2", "--mh-sum")
    assert a == b
    status, _, err = run("wavefn", "--d", "2", "--parity-gate")
    assert status == 2 and "--mh-sum" in err


def test_algebra():
    obj = run_json("algebra", "--d", "2", "--structure")
    assert obj["degree"] == 2 and obj["C"]
    obj = run_json("algebra", "--d", "2", "--eta", "1,1")
    assert obj["C"]["2|2|1,1"] == "1"
    obj = run_json("algebra", "--d", "2", "--idempotents", "--eta", "1,2", "--scale-order", "0")
    assert set(obj["idempotents"]) == {"2", "1,1"}
    status, _, err = run("algebra", "--d", "2", "--idempotents", "--eta", "1,2")
    assert status == 1 and "identity violation" in err


def test_algebra_verify_reports_failure():
    status, out, _ = run("algebra", "--d", "2", "--verify", "--eta", "2,1")
    obj = json.loads(out)
    assert status == 1
    assert obj["failed_suites"] == ["eta-idempotents"]


def test_jack():
    obj = run_json("jack", "--d", "2", "--eta", "1,2")
    assert obj["alpha"] == "2"
    assert obj["limits"]["2"]["J"] == {"2": "2", "1,1": "1"}
    raw = run_json("jack", "--d", "2", "--eta", "2,1", "--raw")
    assert raw["limits"]["2"]["J"]["1,1"] == "4"


def test_verify_pass_and_fail():
    status, out, _ = run("verify", "--suite", "orthogonality,mh-closed-forms", "--max-degree", "3")
    obj = json.loads(out)
    assert status == 0 and obj["ok"]
    assert [s["name"] for s in obj["suites"]] == ["orthogonality", "mh-closed-forms"]
    status, out, _ = run("verify", "--suite", "eigen", "--max-degree", "2")
    obj = json.loads(out)
    assert status == 1
    suite = obj["suites"][0]
    assert suite["equation"].startswith("D(Δ,ħ) J_λ(ħ)")
    assert suite["failed"] == suite["checked"] > 0


def test_verify_parallel_matches_serial():
    argv = ("verify", "--suite", "field-axioms,orthogonality,closure", "--max-degree", "3", "--seed", "7")
    serial = run(*argv)
    parallel = run(*argv, "--jobs", "3")
    assert serial == parallel


def test_global_flags_either_side():
    a = run("--max-degree", "3", "--out", "csv", "coeffs", "--lam", "2")
    b = run("coeffs", "--lam", "2", "--max-degree", "3", "--out", "csv")
    assert a == b and a[0] == 0


@pytest.mark.parametrize(
    "argv, needle",
    [
        (("macdonald", "--d", "7"), "exceeds --max-degree"),
        (("coeffs", "--lam", "1,2"), "weakly decreasing"),
        (("coeffs", "--lam", "2", "--delta", "3"), "differs"),
        (("mh", "--h", "0", "--d", "2", "--profiles", "3"), "not a partition"),
        (("jack", "--d", "2", "--eta", "0,1"), "A, B >= 1"),
        (("verify", "--suite", "nope"), "unknown suite"),
        (("algebra", "--d", "2", "--verify", "--out", "csv", "--max-degree", "0"), "max-degree"),
    ],
)
def test_usage_errors(argv, needle):
    status, _, err = run(*argv)
    assert status == 2
    assert needle in err


def test_cache_round_trip(tmp_path):
    cache = str(tmp_path / "cache")
    first = run("macdonald", "--d", "3", "--cache-dir", cache)
    assert (tmp_path / "cache" / "macdonald_d3.json").exists()
    second = run("macdonald", "--d", "3", "--cache-dir", cache)
    assert first == second


def test_cache_stale_and_malformed(tmp_path):
    cache = tmp_path / "cache"
    run("macdonald", "--d", "2", "--cache-dir", str(cache))
    path = cache / "macdonald_d2.json"
    obj = json.loads(path.read_text())
    obj["schema_version"] = -1
    path.write_text(json.dumps(obj))
    assert run("macdonald", "--d", "2", "--cache-dir", str(cache))[0] == 0
    assert json.loads(path.read_text())["schema_version"] != -1
    path.write_text("{not json")
    status, _, err = run("macdonald", "--d", "2", "--cache-dir", str(cache))
    assert status == 2 and "cache error" in err


def test_export(tmp_path):
    obj = run_json("export", "--dest", str(tmp_path), "--d", "2")
    assert len(obj["written"]) == 4
    data = json.loads((tmp_path / "macdonald_d2.json").read_text())
    assert data["degree"] == 2
    lines = (tmp_path / "macdonald_d1.csv").read_text().splitlines()
    assert lines == ["lambda,delta,a", "1,1,-t + 1"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mhnumbers", "mh", "--h", "0", "--d", "1", "--profiles", "1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["genus"] == 0
