import json

import numpy as np
import pytest

from imaginarity import states
from imaginarity.errors import BlochNormExceeded, InvalidState, ProbabilityOutOfRange, ZeroVector


def test_validate_examples():
    assert states.validate(np.eye(2) / 2).ok
    report = states.validate(np.diag([0.6, 0.6]))
    assert [v.invariant for v in report.violations] == ["unit_trace"]
    assert abs(report.violations[0].magnitude - 0.2) < 1e-12
    report = states.validate(np.array([[0.5, 0.7], [0.7, 0.5]]))
    assert [v.invariant for v in report.violations] == ["psd"]
    assert abs(report.details["min_eigenvalue"] + 0.2) < 1e-12


def test_validate_reports_non_hermitian_and_shape():
    assert states.validate(np.array([[0.5, 0.1], [0.0, 0.5]])).violations[0].invariant == "hermitian"
    assert states.validate(np.ones((2, 3))).violations[0].invariant == "shape"


def test_from_bloch_examples():
    assert np.array_equal(states.from_bloch((0, 0, 0)), np.eye(2) / 2)
    assert np.array_equal(states.from_bloch((0, 0, 1)), np.diag([1.0, 0.0]))
    expected = 0.5 * np.array([[1, -1j], [1j, 1]])
    assert np.array_equal(states.from_bloch((0, 1, 0)), expected)
    with pytest.raises(BlochNormExceeded):
        states.from_bloch((0.8, 0.8, 0))


def test_bloch_round_trip():
    b = states.BlochVector(0.3, -0.4, 0.5)
    back = states.to_bloch(states.from_bloch(b))
    assert np.allclose([back.x, back.y, back.z], [0.3, -0.4, 0.5])


def test_pure_state_examples():
    assert np.allclose(states.pure_state([1, 0]), np.diag([1, 0]))
    assert np.allclose(states.pure_state(np.array([1, 1j]) / np.sqrt(2)), 0.5 * np.array([[1, -1j], [1j, 1]]))
    assert np.allclose(states.pure_state([1, 1, 1]), np.full((3, 3), 1 / 3))
    with pytest.raises(ZeroVector):
        states.pure_state([0, 0])


def test_conjugate_examples():
    real = np.diag([0.3, 0.7]).astype(complex)
    assert np.array_equal(states.conjugate(real), real)
    rho = 0.5 * np.array([[1, -1j], [1j, 1]])
    assert np.array_equal(states.conjugate(rho), 0.5 * np.array([[1, 1j], [-1j, 1]]))
    assert np.array_equal(states.conjugate(states.conjugate(rho)), rho)


@pytest.mark.parametrize("seed", range(20))
def test_conjugate_properties(seed):
    rho = states.random_density(4, seed)
    c = states.conjugate(rho)
    assert states.validate(c).ok
    assert np.array_equal(c, rho.T)
    assert np.abs(np.linalg.eigvalsh(rho) - np.linalg.eigvalsh(c)).max() < 1e-10


def test_real_imag_parts_examples():
    real = np.diag([0.3, 0.7]).astype(complex)
    re, im = states.real_imag_parts(real)
    assert np.array_equal(re, real.real) and not im.any()
    re, im = states.real_imag_parts(0.5 * np.array([[1, -1j], [1j, 1]]))
    assert np.array_equal(re, np.eye(2) / 2)
    assert np.array_equal(im, 0.5 * np.array([[0, -1], [1, 0]]))


@pytest.mark.parametrize("seed", range(50))
def test_real_part_is_a_state(seed):
    rho = states.random_density(1 + seed % 5, seed)
    re, im = states.real_imag_parts(rho)
    assert np.array_equal(re + 1j * im, rho)
    assert np.array_equal(re, re.T) and np.array_equal(im, -im.T)
    assert states.validate(re).ok


def test_is_real_examples():
    assert states.is_real(np.diag([0.3, 0.7]))
    assert not states.is_real(states.from_bloch((0, 0.5, 0)))
    assert states.is_real(states.from_bloch((0.5, 0, 0.5)))


def test_direct_sum_examples():
    half = np.eye(2) / 2
    assert np.allclose(states.direct_sum(0.5, half, half), np.eye(4) / 4)
    out = states.direct_sum(0.25, np.diag([1.0, 0]), np.diag([0, 1.0]))
    assert np.allclose(out, np.diag([0.25, 0, 0, 0.75]))
    with pytest.raises(ProbabilityOutOfRange):
        states.direct_sum(1.0, half, half)


@pytest.mark.parametrize("seed", range(10))
def test_direct_sum_properties(seed):
    r1, r2 = states.random_density(2, seed), states.random_density(3, seed + 100)
    p = 0.1 + 0.08 * seed
    out = states.direct_sum(p, r1, r2)
    assert abs(np.trace(out) - 1) < 1e-12
    assert states.validate(out).ok
    assert np.array_equal(out.real, states.direct_sum(p, r1.real, r2.real).real)


def test_random_density_d1_and_determinism():
    assert np.allclose(states.random_density(1, 5), [[1.0]])
    a, b = states.random_density(4, 99), states.random_density(4, 99)
    assert a.tobytes() == b.tobytes()


def test_random_density_always_valid():
    for seed in range(1000):
        assert states.validate(states.random_density(1 + seed % 6, seed)).ok


def test_ensure_state_rejects():
    with pytest.raises(InvalidState, match="unit_trace"):
        states.ensure_state(np.diag([0.6, 0.6]))


def test_json_round_trip_is_bit_exact(tmp_path):
    rho = states.random_density(3, 7)
    path = tmp_path / "s.json"
    states.save_state(path, rho)
    back = states.load_state(path)
    assert back.tobytes() == rho.tobytes()
    obj = json.loads(path.read_text())
    assert obj["dim"] == 3 and len(obj["matrix"][0][0]) == 2


@pytest.mark.parametrize(
    "obj",
    [
        {"dim": 2},
        {"dim": 2, "matrix": [[[1, 0], [0, 0]]]},
        {"dim": 1, "matrix": [[[1, 0, 0]]]},
        {"dim": 1, "matrix": [[["1", 0]]]},
        {"dim": 0, "matrix": []},
        [1, 2],
    ],
)
def test_json_rejects_malformed(obj):
    with pytest.raises(ValueError):
        states.state_from_json(obj)
