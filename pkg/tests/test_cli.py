import json
from pathlib import Path

import pytest

from flataffine import io
from flataffine.cli import main

FIXTURES = Path(__file__).parent / "fixtures"
KEYS = ["command", "status", "inputs", "checks", "residuals", "errata", "data", "wall_time"]


def run(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_validate_catalog(capsys):
    code, rep = run(capsys, "validate", "--catalog", "oscillator:F3")
    assert code == 0 and rep["status"] == "pass"
    assert rep["residuals"]["complete"] is True
    assert list(rep) == KEYS
    assert run(capsys, "validate", "--catalog", "abelian4")[0] == 0


def test_validate_perturbed_fixture(capsys):
    code, rep = run(capsys, "validate", str(FIXTURES / "perturbed-F4.alg"))
    assert code == 1
    ls = next(c for c in rep["checks"] if c["name"] == "left_symmetric")
    assert ls["status"] == "fail" and ls["violations"]
    assert all(len(v["triple"]) == 3 for v in ls["violations"])


def test_cohomology_commands(capsys):
    assert run(capsys, "cohomology", "--catalog", "e2:F1", "--param", "alpha=0")[1]["residuals"]["dim_H2"] == 3
    assert run(capsys, "cohomology", "--catalog", "e2:F2", "--param", "alpha=1")[1]["residuals"]["dim_H2"] == 2
    code, rep = run(capsys, "cohomology", str(FIXTURES / "zero2.alg"))
    assert code == 0 and rep["residuals"]["dim_H2"] == 4


def test_cohomology_refuses_non_left_symmetric(capsys):
    code, rep = run(capsys, "cohomology", str(FIXTURES / "perturbed-F4.alg"))
    assert code != 0 and rep["status"] == "fail"


@pytest.mark.parametrize("r,case", [("1,1,0", "central_ext"), ("0,0,0", "abelian"), ("2,-1,3", "cplx_semidirect")])
def test_cybe(capsys, r, case):
    code, rep = run(capsys, "cybe", "--catalog", "oscillator", "--r", r)
    assert code == 0
    assert rep["residuals"]["dual_group_case"] == case


def test_develop_point(capsys):
    code, rep = run(capsys, "develop", "--group", "aff", "--conn", "nabla2", "--param", "alpha=0", "--point", "2,1")
    assert code == 0
    assert rep["data"]["numeric"] == pytest.approx([0.693147, 1], abs=1e-6)
    assert rep["residuals"]["deviation"] < 1e-6
    code, rep = run(capsys, "develop", "--group", "oscillator", "--conn", "F3", "--point", "0,0,0,0")
    assert code == 0 and rep["data"]["numeric"] == [0, 0, 0, 0]
    code, rep = run(capsys, "develop", "--group", "oscillator", "--conn", "F1", "--param", "t=1,s=1",
                    "--point", "1,2,3,4")
    assert code == 0
    assert rep["data"]["closed_form"] == pytest.approx([15.5, 2, 3, 4])
    assert rep["residuals"]["deviation"] < 1e-6


def test_develop_grid_csv(capsys, tmp_path):
    out = tmp_path / "grid.csv"
    code, rep = run(capsys, "develop", "--group", "aff", "--conn", "nabla2", "--param", "alpha=2",
                    "--grid", "0.5:2:3,-1:1:4", "--out", str(out))
    assert code == 0 and rep["data"]["rows"] == 12
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,D0,D1,closed0,closed1" and len(lines) == 13


def test_develop_geodesics(capsys):
    code, rep = run(capsys, "develop", "--group", "oscillator", "--conn", "F3", "--geodesic", "0,1,0,0")
    assert code == 0 and rep["residuals"]["collinearity"] < 1e-7
    code, rep = run(capsys, "develop", "--group", "aff", "--conn", "nabla2", "--param", "alpha=2",
                    "--geodesic", "-1,0")
    assert code == 1 and 0.4 < rep["residuals"]["geodesic_exit_time"] < 0.6


def test_develop_input_errors(capsys):
    assert run(capsys, "develop", "--group", "aff", "--conn", "nabla2", "--point", "-1,0")[0] == 2
    assert run(capsys, "develop", "--group", "aff", "--conn", "nabla2", "--point", "1,2,3")[0] == 2
    assert run(capsys, "develop", "--group", "aff", "--conn", "bogus", "--point", "1,0")[0] == 2
    assert run(capsys, "develop", "--group", "aff", "--conn", "nabla2")[0] == 2


def test_symplectic_commands(capsys):
    code, rep = run(capsys, "symplectic", "hess", "--catalog", "aff")
    assert code == 0
    names = {c["name"]: c["status"] for c in rep["checks"]}
    assert names["matches expected table"] == "pass" and names["Lorentz compatible"] == "pass"
    code, rep = run(capsys, "symplectic", "check", "--map", "(exp(y), exp(y)/x)", "--points", "20")
    assert code == 0 and rep["residuals"]["max_relative"] < 1e-8
    code, rep = run(capsys, "symplectic", "check", "--map", "(x,y)")
    assert code == 0 and rep["residuals"]["max_relative"] < 1e-8
    assert run(capsys, "symplectic", "check", "--map", "(x*exp(y), exp(y)/x)")[0] == 1
    assert run(capsys, "symplectic", "check", "--map", "(x, frob(y))")[0] == 2


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "validate", str(tmp_path / "missing.alg"))[0] == 2
    bad = tmp_path / "bad.alg"
    bad.write_text('{"name": "x", "dim": 2, "basis": ["a", "b"], "bracket": [[0, 1, 1, 0.5]]}')
    assert run(capsys, "validate", str(bad))[0] == 2
    assert run(capsys, "validate", "--catalog", "nope")[0] == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_export_round_trip(capsys, tmp_path):
    out = tmp_path / "f4.alg"
    code, _ = run(capsys, "export", "--catalog", "oscillator:F4", "--out", str(out))
    assert code == 0
    assert run(capsys, "validate", str(out))[0] == 0
    assert io.load(out).name == "oscillator:F4"


def test_list(capsys):
    code, rep = run(capsys, "list")
    assert code == 0 and "oscillator:F4" in rep["data"]["catalog"]


def test_summary_on_stderr(capsys):
    assert main(["validate", "--catalog", "oscillator:F3"]) == 0
    cap = capsys.readouterr()
    assert json.loads(cap.out)["status"] == "pass"
    assert cap.err.startswith("validate: pass")


def test_deterministic(capsys):
    a = run(capsys, "symplectic", "check", "--map", "(exp(y), exp(y)/x)", "--seed", "3")[1]
    b = run(capsys, "symplectic", "check", "--map", "(exp(y), exp(y)/x)", "--seed", "3")[1]
    assert a["residuals"] == b["residuals"]
