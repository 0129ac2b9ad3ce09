import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from imaginarity.errors import NotHermitian, NotPSD, NotSymmetric
from imaginarity.matfun import (
    hermitian_eig,
    matrix_power,
    matrix_sqrt,
    real_psd_factor,
    symmetric_real_eig,
    trace_norm,
)

SIGMA_Y = np.array([[0, -1j], [1j, 0]])


def random_hermitian(rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (g + g.conj().T)


def random_psd(rng, d, rank=None):
    g = rng.normal(size=(d, rank or d)) + 1j * rng.normal(size=(d, rank or d))
    return g @ g.conj().T


def random_unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def charpoly_faddeev_leverrier(a):
    """Characteristic polynomial coefficients (leading 1) from traces only."""
    n = a.shape[0]
    coeffs = [1.0 + 0j]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(a @ m) / k)
    return np.array(coeffs)


def test_eig_identity():
    e = hermitian_eig(np.eye(2))
    assert np.allclose(e.eigenvalues, [1, 1])
    assert np.abs(e.eigenvectors.conj().T @ e.eigenvectors - np.eye(2)).max() < 1e-10


def test_eig_pauli_y():
    assert np.allclose(hermitian_eig(SIGMA_Y).eigenvalues, [-1, 1], atol=1e-14)


def test_eig_matches_characteristic_polynomial(rng):
    h = random_hermitian(rng, 4)
    roots = np.sort(np.roots(charpoly_faddeev_leverrier(h)).real)
    e = hermitian_eig(h)
    assert np.abs(e.eigenvalues - roots).max() < 1e-8
    assert np.all(np.diff(e.eigenvalues) >= 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 7))
def test_eig_reconstruction(seed, d):
    h = random_hermitian(np.random.default_rng(seed), d)
    w, u = hermitian_eig(h)
    assert np.abs((u * w) @ u.conj().T - h).max() <= 1e-10 * max(1, np.abs(h).max())
    assert np.abs(u.conj().T @ u - np.eye(d)).max() <= 1e-10


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_power_identity_fixed_point():
    assert np.abs(matrix_power(np.eye(3), 0.5) - np.eye(3)).max() < 1e-14


def test_power_rank_deficient():
    assert np.abs(matrix_power(np.diag([4.0, 0.0]), 0.5) - np.diag([2.0, 0.0])).max() < 1e-14


def test_power_scalar_evaluation():
    out = matrix_power(np.diag([0.25, 0.75]), 0.3)
    assert np.abs(out - np.diag([0.25**0.3, 0.75**0.3])).max() < 1e-14


def test_power_clips_roundoff_and_rejects_negative():
    out = matrix_power(np.diag([1.0, -5e-11]), 0.5)
    assert out[1, 1] == 0
    with pytest.raises(NotPSD):
        matrix_power(np.diag([1.0, -1e-6]), 0.5)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.05, 0.5), st.floats(0.05, 0.5), st.integers(0, 2))
def test_power_semigroup(seed, mu, nu, deficiency):
    rng = np.random.default_rng(seed)
    a = random_psd(rng, 4, rank=4 - deficiency)
    a /= np.trace(a).real
    lhs = matrix_power(a, mu) @ matrix_power(a, nu)
    assert np.abs(lhs - matrix_power(a, mu + nu)).max() < 1e-9


def test_power_one_is_identity_map(rng):
    a = random_psd(rng, 5)
    assert np.abs(matrix_power(a, 1.0) - a).max() < 1e-10 * np.abs(a).max()


def test_sqrt_examples(rng):
    assert np.abs(matrix_sqrt(np.eye(3)) - np.eye(3)).max() < 1e-14
    assert np.abs(matrix_sqrt(np.diag([9.0, 1.0])) - np.diag([3.0, 1.0])).max() < 1e-14
    a = random_psd(rng, 5)
    b = matrix_sqrt(a)
    assert np.abs(b @ b - a).max() < 1e-9


def test_trace_norm_examples(rng):
    assert trace_norm(np.zeros((3, 3))) == 0
    assert abs(trace_norm(SIGMA_Y) - 2) < 1e-14
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    w = np.linalg.eigvalsh(a.conj().T @ a)
    assert abs(trace_norm(a) - np.sum(np.sqrt(np.clip(w, 0, None)))) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_trace_norm_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    u, v = random_unitary(rng, 4), random_unitary(rng, 4)
    assert abs(trace_norm(u @ a @ v) - trace_norm(a)) < 1e-9


@pytest.mark.parametrize("m", [np.eye(3), np.diag([4.0, 0.0])])
def test_real_psd_factor_examples(m):
    k = real_psd_factor(m)
    assert k.dtype == float
    assert np.abs(k.T @ k - m).max() < 1e-9


def test_real_psd_factor_gram(rng):
    for rank in (5, 3, 1):
        a = rng.normal(size=(rank, 5))
        m = a.T @ a
        k = real_psd_factor(m)
        assert not np.iscomplexobj(k)
        assert np.abs(k.T @ k - m).max() < 1e-9


def test_real_psd_factor_rejects_indefinite():
    with pytest.raises(NotPSD):
        real_psd_factor(np.diag([1.0, -0.5]))


def test_symmetric_real_eig_examples(rng):
    q, lam = symmetric_real_eig(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(np.abs(q), np.abs(q).round())  # a permutation up to signs
    assert np.allclose(lam, [1, 2, 3])
    q, lam = symmetric_real_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(lam, [-1, 1])
    s = rng.normal(size=(5, 5))
    s = s + s.T
    q, lam = symmetric_real_eig(s)
    assert np.abs(q @ q.T - np.eye(5)).max() < 1e-10
    d = q @ s @ q.T
    assert np.abs(d - np.diag(np.diag(d))).max() < 1e-9
    assert np.abs(q.T @ np.diag(lam) @ q - s).max() < 1e-9


def test_symmetric_real_eig_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        symmetric_real_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_determinism(rng):
    a = random_psd(rng, 6)
    assert np.array_equal(matrix_power(a, 0.37), matrix_power(a.copy(), 0.37))
