import io
import json
import warnings

import numpy as np
import pytest

from sixpg.cli import (
    EXIT_CHECK, EXIT_CONFIG, EXIT_OK, PhysicalParameters, StudyConfig, ConfigError, main,
    nondimensionalize, parse_function, run_convergence_study,
)
from sixpg.errors import DomainError


def run(argv):
    buf = io.StringIO()
    code = main(argv, stream=buf)
    return code, buf.getvalue()


def test_eigenvalues_csv_round_trips(monkeypatch):
    monkeypatch.delenv("SIXPG_OUT", raising=False)
    code, out = run(["eigenvalues", "--max-index", "6", "--check"])
    assert code == EXIT_OK
    rows = [l.split(",") for l in out.splitlines() if not l.startswith("#")][1:]
    vals = {(int(r[0]), r[1]): float(r[2]) for r in rows}
    assert abs(vals[(1, "even")] - 4.71352778544) < 1e-9
    assert len(rows) == 13


def test_env_sets_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("SIXPG_OUT", str(tmp_path))
    code, out = run(["eigenvalues", "--max-index", "3", "--format", "json"])
    assert code == EXIT_OK and out == ""
    data = json.loads((tmp_path / "eigenvalues.json").read_text())
    assert data["columns"] == ["index", "parity", "value", "source"]


def test_solve_writes_three_artifacts(tmp_path):
    code, _ = run(["solve", "--problem", "model1", "--max-index", "100", "--check", "--out", str(tmp_path)])
    assert code == EXIT_OK
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["solve_model1_coefficients.csv", "solve_model1_solution.csv", "solve_model1_summary.json"]
    sol = np.loadtxt(tmp_path / "solve_model1_solution.csv", delimiter=",", comments="#", skiprows=2)
    assert sol.shape == (2001, 3)


def test_check_failure_exit_code(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"problem": "model1", "truncations": [5, 10], "max_error": 1e-30}))
    code, _ = run(["study", "--config", str(cfg), "--check", "--out", str(tmp_path / "o")])
    assert code == EXIT_CHECK


def test_config_errors(tmp_path):
    assert run(["solve", "--problem", "nope"])[0] == EXIT_CONFIG
    assert run(["expand", "--function", "sin-3"])[0] == EXIT_CONFIG
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"truncations": [50, 25]}))
    assert run(["study", "--config", str(cfg)])[0] == EXIT_CONFIG
    cfg.write_text(json.dumps({"colour": "blue"}))
    assert run(["study", "--config", str(cfg)])[0] == EXIT_CONFIG


def test_study_is_deterministic(tmp_path):
    for d in ("a", "b"):
        assert run(["study", "--truncations", "10,20", "--out", str(tmp_path / d)])[0] == EXIT_OK
    for name in ("study_errors.csv", "study_coefficients.csv", "study_summary.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_study_report_monotone():
    rep = run_convergence_study(StudyConfig("model1", (10, 20, 40)))
    assert rep.non_increasing()
    assert [r[2] for r in rep.rows] == ["ok"] * 3


def test_expand_and_gram_and_basis(tmp_path):
    assert run(["expand", "--function", "cos-2", "--check", "--out", str(tmp_path)])[0] == EXIT_OK
    s = json.loads((tmp_path / "expand_summary.json").read_text())
    assert s["parity_restriction"] == "even-only" and s["closed_form_max_rel_diff"] < 1e-10
    assert run(["gram", "--max-index", "8", "--check", "--out", str(tmp_path)])[0] == EXIT_OK
    code, out = run(["basis", "--kind", "test", "--parity", "odd", "--index", "4", "--samples", "11", "--check"])
    assert code == EXIT_OK and out.count("\n") == 13


def test_expand_from_file(tmp_path):
    x = np.linspace(-1, 1, 401)
    np.savetxt(tmp_path / "f.csv", np.column_stack([x, x ** 3]), delimiter=",")
    assert run(["expand", "--function", f"file:{tmp_path / 'f.csv'}", "--max-index", "30",
                "--out", str(tmp_path)])[0] == EXIT_OK


def test_evolve_mode_decay(tmp_path):
    code, out = run(["evolve", "--max-index", "5", "--initial", "mode:odd:3", "--t-final", "2e-6", "--dt", "2e-9",
                     "--record-every", "1000"])
    assert code == EXIT_OK
    last = out.strip().splitlines()[-1].split(",")
    assert abs(float(last[9]) - np.exp(-(3 * np.pi) ** 6 * 2e-6)) < 1e-4


def test_parse_function_scaling():
    f = parse_function("2.5*x^3")
    assert f(np.array([2.0]))[0] == 20.0
    with pytest.raises(ConfigError):
        parse_function("tan")


def test_nondimensionalize():
    p = PhysicalParameters(1.0, 1.0, 1.0, 1.0, 0.01, 1.0)
    assert nondimensionalize(p) == (1.0, pytest.approx(12e6))
    b1, t1 = nondimensionalize(PhysicalParameters(2.0, 3.0, 9.8, 0.5, 0.01, 7.0))
    b2, t2 = nondimensionalize(PhysicalParameters(2.0, 3.0, 9.8, 1.0, 0.01, 7.0))
    assert b2 / b1 == pytest.approx(16) and t2 / t1 == pytest.approx(64)
    with pytest.raises(DomainError):
        PhysicalParameters(1.0, -1.0, 1.0, 1.0, 0.01, 1.0)
    with pytest.warns(UserWarning):
        PhysicalParameters(1.0, 1.0, 1.0, 1.0, 0.5, 1.0)
    code, out = run(["nondim", "--density", "1", "--viscosity", "1", "--gravity", "1", "--half-width", "1",
                     "--height", "0.01", "--stiffness", "1"])
    assert code == EXIT_OK and "bond,1.0,1" in out
