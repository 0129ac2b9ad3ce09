import csv
import io
import json
import math

import numpy as np
import pytest

from imaginarity import cli, gaussian, states
from imaginarity.gaussian import GaussianState, OneModeParams


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_state(tmp_path, rho, name="state.json"):
    path = tmp_path / name
    path.write_text(json.dumps(states.state_to_json(rho)))
    return str(path)


def write_gaussian(tmp_path, g, name="gauss.json"):
    path = tmp_path / name
    path.write_text(json.dumps(gaussian.gaussian_to_json(g)))
    return str(path)


def read_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], np.array(rows[1:], dtype=float)


# --- measure ----------------------------------------------------------------------------


def test_measure_maximally_mixed_is_zero(capsys, tmp_path):
    code, out, _ = run(capsys, "measure", write_state(tmp_path, np.eye(3) / 3))
    assert code == 0
    obj = json.loads(out)
    assert obj["dim"] == 3
    assert [r["measure"] for r in obj["results"]] == ["tsallis", "trace", "relent", "fidelity"]
    assert all(abs(r["value"]) < 1e-12 for r in obj["results"])


def test_measure_single_tsallis(capsys, tmp_path):
    path = write_state(tmp_path, states.from_bloch((0, 0.6, 0)))
    code, out, _ = run(capsys, "measure", path, "--measure", "tsallis", "--mu", "0.5")
    obj = json.loads(out)
    assert code == 0 and obj["measure"] == "tsallis" and obj["mu"] == 0.5
    assert abs(obj["value"] - 0.2) < 1e-12


def test_measure_trace_of_y_state(capsys, tmp_path):
    path = write_state(tmp_path, states.from_bloch((0, 0.6, 0)))
    _, out, _ = run(capsys, "measure", path, "--measure", "trace")
    assert abs(json.loads(out)["value"] - 1.2) < 1e-12


def test_measure_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "measure", str(path))
    assert code == 2 and "error" in err


def test_measure_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "measure", str(tmp_path / "nope.json"))
    assert code == 2


def test_measure_invalid_state(capsys, tmp_path):
    code, out, err = run(capsys, "measure", write_state(tmp_path, np.diag([1.5, -0.5])))
    assert code == 3 and out == "" and "invalid state" in err


@pytest.mark.parametrize("mu", ["0", "1", "1.5", "-0.2"])
def test_measure_rejects_mu(capsys, tmp_path, mu):
    code, _, _ = run(capsys, "measure", write_state(tmp_path, np.eye(2) / 2), "--mu", mu)
    assert code == 2


# --- gaussian -----------------------------------------------------------------------------


def test_gaussian_thermal(capsys, tmp_path):
    code, out, _ = run(capsys, "gaussian", write_gaussian(tmp_path, gaussian.thermal_state(2.0)))
    obj = json.loads(out)
    assert code == 0 and abs(obj["value"]) < 1e-12
    assert obj["modes"] == 1 and obj["convention"] == gaussian.CONVENTION
    assert abs(obj["symplectic_eigenvalues"][0] - 2.0) < 1e-12


def test_gaussian_squeezed(capsys, tmp_path):
    g = gaussian.one_mode_from_params(OneModeParams(zeta_abs=0.5, theta=math.pi / 2))
    code, out, _ = run(capsys, "gaussian", write_gaussian(tmp_path, g), "--mu", "0.5")
    assert code == 0
    assert abs(json.loads(out)["value"] - (1 - 1 / math.cosh(1))) < 1e-9


def test_gaussian_uncertainty_violation(capsys, tmp_path):
    g = GaussianState(np.zeros(2), 0.5 * np.eye(2))
    code, _, err = run(capsys, "gaussian", write_gaussian(tmp_path, g))
    assert code == 3 and "invalid" in err


def test_gaussian_malformed(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"modes": 1, "mean": [0.0], "cov": [[1.0]]}))
    code, _, _ = run(capsys, "gaussian", str(path))
    assert code == 2


# --- sweep -----------------------------------------------------------------------------------


def test_default_sweep_surface(capsys):
    code, out, _ = run(capsys, "sweep")
    assert code == 0
    header, data = read_csv(out)
    assert header == ["y", "mu", "value"]
    assert data.shape == (101 * 99, 3)
    assert np.abs(data[data[:, 0] == 0, 2]).max() <= 1e-12
    cell = data[np.isclose(data[:, 0], 0.6) & np.isclose(data[:, 1], 0.5)]
    assert cell.shape[0] == 1 and abs(cell[0, 2] - 0.2) <= 1e-9
    surface = data[:, 2].reshape(101, 99)
    assert np.abs(surface - surface[:, ::-1]).max() <= 1e-12


def test_sweep_writes_file(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "sweep", "--grid", "y:0.9999", "--grid", "mu:0.5", "-o", str(path))
    assert code == 0 and out == ""
    _, data = read_csv(path.read_text())
    assert data[0, 2] >= 0.98


def test_sweep_is_deterministic(capsys):
    _, a, _ = run(capsys, "sweep", "--grid", "y:0:1:5,mu:0.1:0.9:3")
    _, b, _ = run(capsys, "sweep", "--grid", "y:0:1:5,mu:0.1:0.9:3")
    assert a == b


@pytest.mark.parametrize(
    "grid", ["y:0:1", "y:0:1:x,mu:0.5", "q:0:1:3,mu:0.5", "y:0:2:3,mu:0.5", "y:0:1:3,mu:0:1:3", "y:0:1:3"]
)
def test_sweep_rejects_bad_grid(capsys, grid):
    code, _, err = run(capsys, "sweep", "--grid", grid)
    assert code == 2 and err


def test_gaussian_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--gaussian-grid", "xbar2:0:4:5,nu:2")
    header, data = read_csv(out)
    assert code == 0 and header == ["nu", "zeta", "theta", "xbar2", "mu", "value"]
    assert data.shape == (5, 6)
    assert abs(data[0, 5]) <= 1e-12 and np.all(np.diff(data[:, 5]) > 0)
    expected = gaussian.one_mode_closed_form(OneModeParams(alpha=2j, nu=2.0))
    assert abs(data[-1, 5] - expected) < 1e-12


@pytest.mark.parametrize("grid", ["nu:0.5", "zeta:-1", "mu:1", "xi:3"])
def test_gaussian_sweep_rejects(capsys, grid):
    assert run(capsys, "sweep", "--gaussian-grid", grid)[0] == 2


# --- verify -------------------------------------------------------------------------------------


def test_verify_axioms_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "axioms", "--trials", "20", "--seed", "7")
    obj = json.loads(out)
    assert code == 0 and obj["passed"] and obj["seed"] == 7 and obj["trials"] == 20
    assert all(c["failures"] == [] for c in obj["checks"])


def test_verify_is_bytewise_reproducible(capsys):
    argv = ("verify", "--suite", "gaussian", "--trials", "10", "--seed", "3")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("IMAG_SEED", "99")
    _, out, _ = run(capsys, "verify", "--suite", "axioms", "--trials", "2")
    assert json.loads(out)["seed"] == 99
    monkeypatch.setenv("IMAG_SEED", "abc")
    assert run(capsys, "verify", "--suite", "axioms", "--trials", "2")[0] == 2


def test_verify_default_seed(capsys, monkeypatch):
    monkeypatch.delenv("IMAG_SEED", raising=False)
    _, out, _ = run(capsys, "verify", "--suite", "axioms", "--trials", "2")
    assert json.loads(out)["seed"] == cli.DEFAULT_SEED


def test_verify_rejects_zero_trials(capsys):
    assert run(capsys, "verify", "--trials", "0")[0] == 2


def test_unknown_command_exits_two():
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 2
