import csv
import io
import json
import subprocess
import sys

import pytest

from modhom.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_dims_examples():
    assert run("dims", "--s", "1", "--t", "1", "--r", "2", "--q", "1", "--deg", "-1,1") == (0, "2\n")
    assert run("dims", "--s", "1", "--t", "0", "--r", "1", "--q", "2", "--deg", "0") == (0, "0\n")
    assert run("dims", "--s", "0", "--t", "1", "--q", "0", "--deg", "3") == (0, "1\n")


def test_dims_json_lists_basis():
    code, out = run("dims", "--s", "1", "--t", "1", "--r", "2", "--q", "1", "--deg", "-1,1",
                    "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    assert row["dim"] == 2
    assert row["basis"] == ["x1^-1*y1*dlogx1", "x1^-1*dy1"]


def test_cyclic_examples():
    assert run("cyclic", "--s", "0", "--t", "0", "--variant", "hc", "--n-range", "0..6") == \
        (0, "1,0,1,0,1,0,1\n")
    assert run("cyclic", "--s", "1", "--t", "0", "--r", "1", "--deg", "0", "--variant", "hp",
               "--n-range", "0..3") == (0, "1,1,1,1\n")


def test_cyclic_oracle_rows_match():
    code, out = run("cyclic", "--s", "1", "--t", "1", "--r", "3", "--deg-window", "-2..1,0..1",
                    "--variant", "hcminus", "--n-range", "0..4", "--oracle", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 8 and all(r["match"] for r in rows)


def test_csv_and_json_carry_the_same_data():
    args = ("cyclic", "--s", "1", "--t", "1", "--r", "2", "--deg-window", "-1..1,0..1",
            "--variant", "hc", "--n-range", "0..3")
    _, js = run(*args, "--format", "json")
    _, cs = run(*args, "--format", "csv")
    from_json = {(";".join(map(str, r["deg"])), int(n)): d for r in json.loads(js)
                 for n, d in r["dims"].items()}
    from_csv = {(row["deg"], int(row["n"])): int(row["dim"])
                for row in csv.DictReader(io.StringIO(cs))}
    assert from_json == from_csv


def test_cohomology_output():
    assert run("cohomology", "--s", "1", "--r", "1", "--deg", "0") == (0, "H0=1 H1=1\n")
    code, out = run("cohomology", "--s", "1", "--deg-window", "-1..1", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "s,t,r,deg,q,dim"


def test_verify_command():
    code, out = run("verify", "--suite", "identities", "--seed", "7", "--samples", "50")
    assert code == 0
    assert json.loads(out)["failures"] == []
    assert run("verify", "--suite", "unknown")[0] == 2


def test_probe_command():
    code, out = run("probe", "--s", "1", "--r", "2", "--chain", "x1 (x) x1^-1")
    assert code == 0 and json.loads(out)["status"] == "confirmed"
    assert run("probe", "--s", "1", "--chain", "x1 (x) x1 (x) 1")[0] == 2
    assert run("probe", "--s", "1", "--chain", "x1^-2 (x) x1")[0] == 2


def test_monoid_command():
    code, out = run("monoid", "--monoid", "N+Z", "--map", "0", "--map", "2", "--n", "3",
                    "--element", "1,0;0,1;0,1")
    data = json.loads(out)
    assert code == 0
    assert data["quotient"] == "Z/2+Z"
    assert data["in_repletion"] and data["image"][0] == [1, 2]
    code, out = run("monoid", "--monoid", "N", "--n", "2")
    assert json.loads(out)["repletion"] == "N^1 + (Z)^1"


@pytest.mark.parametrize("argv", [
    ("dims", "--s", "1", "--q", "1"),
    ("dims", "--s", "1", "--r", "0", "--q", "1", "--deg", "0"),
    ("dims", "--s", "1", "--t", "1", "--q", "1", "--deg", "0,-1"),
    ("cyclic", "--s", "1", "--deg", "0", "--n-range", "3..1"),
    ("cyclic", "--s", "1", "--deg", "0", "--variant", "hh"),
    ("monoid", "--monoid", "Q"),
    ("monoid", "--monoid", "N", "--map", "-1"),
    ("nonsense",),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_module_entry_point_is_byte_stable():
    cmd = [sys.executable, "-m", "modhom", "verify", "--suite", "closure", "--samples", "30"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["failures"] == []
