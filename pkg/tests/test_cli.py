import json
import subprocess
import sys

import pytest

from htype.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_irr7(capsys):
    code, out, _ = run(capsys, "spectrum", "--model", "irr(7)", "--samples", "10")
    data = json.loads(out)
    assert code == 0 and data["schema"] == "htype/1"
    assert (data["has_unit"], data["m0"], data["branches"]) == (True, 1, [])


def test_spectrum_mixed_n3(capsys):
    _, out, _ = run(capsys, "spectrum", "--model", "sum(irr(3,+),irr(3,-))")
    branches = json.loads(out)["branches"]
    assert [b["multiplicity"] for b in branches] == [2]


def test_spectrum_irr1(capsys):
    _, out, _ = run(capsys, "spectrum", "--model", "irr(1)")
    data = json.loads(out)
    assert data["branches"] == [] and data["m0"] == 1


def test_minpoly_irr1_exact(capsys):
    code, out, _ = run(capsys, "minpoly", "--model", "irr(1)", "--x", "7/5,1/5,0", "--exact")
    data = json.loads(out)
    assert code == 0
    assert data["degree"] == 3 and data["coefficients"] == ["0", "2", "0", "1"]
    assert data["predicted_degree"] == 3


def test_minpoly_irr8(capsys):
    _, out, _ = run(capsys, "minpoly", "--model", "irr(8)", "--seed", "5")
    data = json.loads(out)
    assert data["degree"] == data["predicted_degree"] == 13
    assert data["max_coeff_reldiff"] < 1e-6
    assert all(isinstance(c, str) for c in data["coefficients"])


def test_verify_clifford_tensor(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "clifford", "--model", "tensor(irr(8),irr(4))")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert all(c["value"] < 1e-12 for c in data["checks"])


def test_verify_blocks_exact(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "blocks", "--exact", "--samples", "5")
    data = json.loads(out)
    assert code == 0
    assert all(c["value"] == 0 for c in data["checks"])


def test_verify_killing_irr9(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "killing", "--model", "irr(9)", "--samples", "5")
    assert code == 0 and json.loads(out)["checks"][0]["value"] < 1e-9


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 16
    row6 = next(line for line in lines if line.startswith("irr(6)"))
    assert row6 == "irr(6),6,0,True,True,P_n3*P0#*P1#,9,9,True"
    row7 = next(line for line in lines if line.startswith("\"sum(irr(7,+),irr(7,-))\""))
    assert row7.endswith(",2,False,False,P_n3*P_mu1*P_mu2,15,15,True")


@pytest.mark.parametrize("args, code", [
    (["spectrum", "--model", "irr(99"], 2),
    (["spectrum"], 2),
    (["verify", "--suite", "nope"], 2),
    (["minpoly", "--model", "irr(2)", "--x", "1,2"], 2),
    (["minpoly", "--model", "irr(2)", "--x", "0,0,1,0,0,0"], 4),
    (["minpoly", "--model", "irr(2)", "--x", "1,0,1,0,0,0", "--tol-rank", "-1"], 2),
    (["spectrum", "--model", "irr(3)", "--tol-cluster", "0.3"], 3),
    (["minpoly", "--model", "irr(4)", "--tol-rank", "1e-300"], 5),
])
def test_exit_codes(capsys, args, code):
    assert main(args) == code
    capsys.readouterr()


def test_determinism(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["minpoly", "--model", "irr(5)", "--seed", "11", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "htype", "table", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "passed: True" in proc.stdout
