import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from partition_certify.cli import parse_range, run, UsageError
from partition_certify.exact import p_dp_oracle
from partition_certify.report import VerificationReport


def test_compute_json():
    code, out = run(["compute", "0..30"])
    data = json.loads(out)
    assert code == 0 and data["schema_version"] == 1
    assert [int(r["p"]) for r in data["values"]] == [p_dp_oracle(n) for n in range(31)]


def test_compute_csv_and_text(tmp_path):
    code, out = run(["compute", "26", "--format", "csv", "--cache-file", str(tmp_path / "p.txt")])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows == [{"n": "26", "p": "2436"}]
    code, out = run(["compute", "4", "--format", "text"])
    assert out.strip() == "n=4  p=5"


def test_bounds_inside():
    code, out = run(["bounds", "1000", "-w", "4"])
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "inside" and d["guaranteed"]
    lo = Fraction(d["lower"]["mid"]) + Fraction(d["lower"]["rad"])
    hi = Fraction(d["upper"]["mid"]) - Fraction(d["upper"]["rad"])
    assert lo < int(d["p_exact"]) < hi


def test_bounds_violation_outside_guarantee_exits_zero():
    code, out = run(["bounds", "6", "-w", "2", "--kind", "bprz"])
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "violation" and not d["guaranteed"]


def test_bounds_undecided_at_low_precision():
    code, out = run(["bounds", "1000", "-w", "8", "--prec", "8"])
    assert code == 2 and json.loads(out)["verdict"] == "undecided"


def test_verify_pass_and_round_trip():
    code, out = run(["verify", "pp1", "--k", "0..20"])
    rep = VerificationReport.from_json(out)
    assert code == 0 and rep.passed and rep.total == 21 * 21
    assert VerificationReport.from_json(rep.to_json()).to_dict() == rep.to_dict()


def test_verify_failure_exits_one():
    code, out = run(["verify", "errorsum", "--k", "1..2", "--n", "1000"])
    rep = VerificationReport.from_json(out)
    assert code == 1 and rep.violations
    assert all(v[0] == 4 for v in rep.violations)


def test_verify_text_format():
    code, out = run(["verify", "oracle", "--n", "0..200", "--format", "text"])
    assert code == 0 and out.startswith("oracle: pass (201 points")


def test_coeff():
    code, out = run(["coeff", "0..3", "--decimal"])
    rows = json.loads(out)["coefficients"]
    assert code == 0 and rows[0]["exact"] == "1"
    assert abs(float(rows[2]["decimal"]) - 0.0639278941) < 1e-9
    code, out = run(["coeff", "0..30", "--check-omega", "--format", "text"])
    assert code == 0 and "31/31" in out


@pytest.mark.parametrize("argv", [
    ["compute", "5..2"],
    ["compute", "x"],
    ["bounds", "0"],
    ["bounds", "10", "-w", "0"],
    ["verify", "no-such-check"],
    ["verify", "pp1", "--max-prec", "1"],
    [],
])
def test_usage_errors_exit_three(argv):
    assert run(argv)[0] == 3


def test_domain_error_exits_three():
    assert run(["bounds", "10", "-w", "1", "--kind", "bprz"])[0] == 3


def test_parse_range():
    assert parse_range("3..5") == range(3, 6)
    assert parse_range("7") == range(7, 8)
    with pytest.raises(UsageError):
        parse_range("-1")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "partition_certify", "compute", "6"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and '"p": "11"' in proc.stdout
