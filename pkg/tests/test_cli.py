import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from rankone_branch import cli, verify
from rankone_branch.criterion import boundedness_sweep
from rankone_branch.families import GroupFamily, Kind
from rankone_branch.unitarity import resolve_regime


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_dim(capsys):
    code, out, _ = run(capsys, "dim", "--family", "R", "--n", "3", "--tau", "2")
    assert code == 0 and rows_of(out)[0]["dim"] == "5"
    code, out, _ = run(capsys, "dim", "--family", "F4", "--tau", "1,1")
    assert code == 0 and rows_of(out)[0]["dim"] == "16"


def test_invalid_type_exit_two(capsys):
    code, out, err = run(capsys, "dim", "--family", "R", "--n", "3", "--tau", "-1")
    assert code == 2 and out == "" and "p >= 0" in err
    code, _, err = run(capsys, "dim", "--family", "H", "--n", "2", "--tau", "3,0")
    assert code == 2 and "even" in err
    code, _, _ = run(capsys, "dim", "--family", "X", "--n", "2", "--tau", "1")
    assert code == 2


def test_rnorm(capsys):
    code, out, _ = run(capsys, "rnorm", "--family", "R", "--n", "3", "--tau", "0", "--sigma", "0",
                       "--oracle")
    row = rows_of(out)[0]
    assert code == 0 and row["admissible"] == "true"
    assert float(row["closed"]) == pytest.approx(1.5707963267948966)
    assert float(row["oracle"]) == pytest.approx(1.0)
    code, out, _ = run(capsys, "rnorm", "--family", "C", "--n", "4", "--tau", "0,0", "--sigma",
                       "0,0")
    assert float(rows_of(out)[0]["closed"]) == 3
    code, out, _ = run(capsys, "rnorm", "--family", "R", "--n", "3", "--tau", "1", "--sigma", "0")
    row = rows_of(out)[0]
    assert row["closed"] == "0" and row["admissible"] == "false"


def test_lambda_exact_output(capsys):
    code, out, _ = run(capsys, "lambda", "--family", "H", "--n", "2", "--nu", "3", "--tau", "2,0")
    assert code == 0 and rows_of(out)[0]["lambda"] == "35/3"
    code, out, _ = run(capsys, "lambda", "--family", "R", "--n", "5", "--regime", "quotient:1",
                       "--tau", "3")
    assert code == 0 and rows_of(out)[0]["regime"] == "quotient:1"


def test_regime_exit_three(capsys):
    code, out, err = run(capsys, "sweep", "--family", "R", "--n", "4", "--nu", "7/2",
                         "--sigma-max", "5", "--p-max", "100")
    assert code == 3 and out == "" and "no unitary regime" in err
    code, _, _ = run(capsys, "criterion", "--family", "F4", "--nu", "17", "--sigma", "0")
    assert code == 3


def test_kernel_lambda_exit_two(capsys):
    code, _, err = run(capsys, "lambda", "--family", "R", "--n", "5", "--regime", "quotient:1",
                       "--tau", "1")
    assert code == 2 and "kernel" in err


def test_criterion_divergent_row(capsys):
    code, out, _ = run(capsys, "criterion", "--family", "R", "--n", "4", "--nu", "3/2",
                       "--sigma", "0", "--p-max", "2000")
    row = rows_of(out)[0]
    assert code == 0 and row["converged"] == "false" and row["ratio"] == "inf"


def test_sweep_summary_and_json_round_trip(capsys, tmp_path):
    path = tmp_path / "s.json"
    code, out, _ = run(capsys, "sweep", "--family", "R", "--n", "4", "--nu", "1/2",
                       "--sigma-max", "20", "--p-max", "1000", "--format", "json",
                       "--out", str(path))
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["schema_version"] == "1"
    assert doc["command"].startswith("sweep --family R --n 4 --nu 1/2")
    rows = doc["rows"]
    fam = GroupFamily(Kind.REAL, 4)
    rep = boundedness_sweep(fam, resolve_regime(fam, Fraction(1, 2)), 20, 1000)
    sig_rows = [r for r in rows if r["row_type"] == "sigma"]
    assert [r["sigma"] for r in sig_rows] == [str(r.sigma[0]) for r in rep.reports]
    assert [float(r["ratio"]) for r in sig_rows] == [r.ratio for r in rep.reports]
    assert rows[-1]["row_type"] == "summary" and rows[-1]["verdict"] == rep.verdict
    assert float(rows[-1]["drift"]) == rep.drift


def test_sweep_bytes_stable_across_jobs(tmp_path):
    outs = []
    for jobs in ("1", "4", "4"):
        path = tmp_path / f"c{len(outs)}.csv"
        assert cli.main(["sweep", "--family", "C", "--n", "3", "--nu", "1/2", "--sigma-max", "15",
                         "--p-max", "500", "--jobs", jobs, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    assert outs[0].startswith(b"row_type,sigma,")


def test_jobs_env_default(monkeypatch):
    monkeypatch.setenv("RANKONE_BRANCH_JOBS", "3")
    args = cli.build_parser().parse_args(["sweep", "--family", "R", "--n", "4", "--nu", "1/2"])
    assert args.jobs == 3


def test_verify_exit_codes(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "--suite", "dims")
    assert code == 0 and all(r["passed"] == "true" for r in rows_of(out))
    monkeypatch.setattr(verify, "run_suite",
                        lambda name: [verify.Check("dims", "forced", 1.0, 0.0, False)])
    code, out, _ = run(capsys, "verify", "--suite", "dims")
    assert code == 1 and rows_of(out)[0]["passed"] == "false"


def test_phi_command(capsys):
    code, out, _ = run(capsys, "phi", "--family", "F4", "--tau", "5,3", "--point", "0.7,0.4")
    assert code == 0
    assert float(rows_of(out)[0]["value"]) == pytest.approx(-0.0456135320000682946867, abs=1e-14)


def test_fmt():
    assert cli.fmt(Fraction(3, 4)) == "3/4"
    assert cli.fmt(Fraction(6, 3)) == "2"
    assert cli.fmt(0.1) == "0.10000000000000001"
    assert cli.fmt(float("inf")) == "inf"
    assert cli.fmt(True) == "true"
    assert cli.fmt((2, 1)) == "2,1"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rankone_branch", "dim", "--family", "C", "--n",
                          "2", "--tau", "3,1", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["rows"] == [{"family": "C2", "tau": "3,1", "dim": "5"}]
