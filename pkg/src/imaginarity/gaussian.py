"""Imaginarity of bosonic Gaussian states from first and second moments.

Conventions: quadratures ``q = a + a^dagger`` and ``p = -i(a - a^dagger)``,
ordered ``(q_1, p_1, ..., q_N, p_N)``. The vacuum covariance is the identity
and symplectic eigenvalues satisfy ``nu >= 1``. The symplectic form is
``Omega = (+)_l [[0, 1], [-1, 0]]`` and complex conjugation in the Fock basis
acts on moments through ``O = (+)_l diag(1, -1)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import tolerances as tol
from .errors import (
    DimensionMismatch,
    InvalidGaussian,
    MuOutOfRange,
    NotPositiveDefinite,
    NuBelowOne,
    SingularSum,
    TruncationUnreliable,
)
from .matfun import sqrt_spd
from .measures import MeasureId, MeasureValue, check_mu
from .states import ValidationReport, Violation

CONVENTION = "q=a+ad, p=-i(a-ad)"


def symplectic_form(n_modes: int) -> np.ndarray:
    if n_modes < 1:
        raise ValueError("need at least one mode")
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def conjugation_matrix(n_modes: int) -> np.ndarray:
    """``O = (+)_l diag(1, -1)``, the action of Fock-basis conjugation on moments."""
    return np.kron(np.eye(n_modes), np.diag([1.0, -1.0]))


@dataclass(frozen=True, eq=False)
class GaussianState:
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float).ravel()
        cov = np.array(self.cov, dtype=float)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2 or cov.shape[0] == 0:
            raise DimensionMismatch(f"covariance must be 2N x 2N, got {cov.shape}")
        if mean.shape != (cov.shape[0],):
            raise DimensionMismatch(f"mean has length {mean.size}, covariance is {cov.shape}")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def modes(self) -> int:
        return self.cov.shape[0] // 2


@dataclass(frozen=True, eq=False)
class WilliamsonForm:
    """``cov = S (+)_l nu_l I_2 S^T`` with ``S`` symplectic, ``nu`` descending."""

    S: np.ndarray
    nu: np.ndarray

    def diagonal(self) -> np.ndarray:
        return np.diag(np.repeat(self.nu, 2))


@dataclass(frozen=True)
class OneModeParams:
    """One-mode state ``D(alpha) S(zeta) rho_th S(zeta)^dagger D(alpha)^dagger``.

    ``zeta = zeta_abs * exp(i theta)``; ``nu`` is the symplectic eigenvalue.
    """

    alpha: complex = 0.0
    zeta_abs: float = 0.0
    theta: float = 0.0
    nu: float = 1.0


def validate_gaussian(g: GaussianState, atol: float = tol.UNCERTAINTY) -> ValidationReport:
    cov = g.cov
    violations = []
    asym = float(np.max(np.abs(cov - cov.T)))
    if asym > tol.SYMMETRIC * tol.scale(cov):
        violations.append(Violation("symmetric", asym))
    if not (np.all(np.isfinite(cov)) and np.all(np.isfinite(g.mean))):
        return ValidationReport([Violation("finite", float("nan"))])
    h = 0.5 * (cov + cov.T) + 1j * symplectic_form(g.modes)
    min_eig = float(np.linalg.eigvalsh(h)[0])
    if min_eig < -atol:
        violations.append(Violation("uncertainty_principle", -min_eig))
    return ValidationReport(violations, {"min_eigenvalue": min_eig, "asymmetry": asym})


def ensure_gaussian(g: GaussianState) -> GaussianState:
    report = validate_gaussian(g)
    if not report.ok:
        raise InvalidGaussian(report.describe())
    return g


def williamson(cov) -> WilliamsonForm:
    """Williamson normal form of a real symmetric positive definite matrix.

    With ``R = cov**(1/2)`` the antisymmetric matrix ``R Omega R`` is brought
    to real canonical form ``(+)_l nu_l J`` by an orthogonal ``K`` built from
    the eigenvectors of the Hermitian ``i R Omega R``; then
    ``S = R K (+)_l nu_l**(-1/2) I_2``.
    """
    cov = np.asarray(cov, dtype=float)
    n2 = cov.shape[0]
    if cov.ndim != 2 or n2 != cov.shape[1] or n2 % 2 or n2 == 0:
        raise DimensionMismatch(f"covariance must be 2N x 2N, got {cov.shape}")
    n = n2 // 2
    root = sqrt_spd(cov)
    a = root @ symplectic_form(n) @ root
    a = 0.5 * (a - a.T)
    w, vecs = np.linalg.eigh(1j * a)
    if w[n] <= 0:
        raise NotPositiveDefinite("degenerate symplectic spectrum")
    # Positive half of the +-nu pairs, largest first.
    nu = w[n:][::-1].copy()
    k = np.empty((n2, n2))
    for l, col in enumerate(range(n2 - 1, n - 1, -1)):
        v = vecs[:, col]
        k[:, 2 * l] = math.sqrt(2.0) * v.imag
        k[:, 2 * l + 1] = math.sqrt(2.0) * v.real
    s = (root @ k) / np.sqrt(np.repeat(nu, 2))
    return WilliamsonForm(s, nu)


def symplectic_eigenvalues(cov) -> np.ndarray:
    """Moduli of the eigenvalues of ``i Omega cov``, one per pair, descending."""
    cov = np.asarray(cov, dtype=float)
    n = cov.shape[0] // 2
    ev = np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ cov))
    return np.sort(ev)[::-1][::2]


def _check_power_mu(mu: float) -> float:
    mu = float(mu)
    if not 0.0 < mu <= 1.0:
        raise MuOutOfRange(f"mu must lie in (0, 1], got {mu}")
    return mu


def _clamp_nu(nu: float) -> float:
    if nu < 1.0 - tol.NU_CLAMP:
        raise NuBelowOne(f"symplectic eigenvalue {nu} is below 1")
    return max(float(nu), 1.0)


def _eta(nu: float) -> float:
    """``log((nu + 1) / (nu - 1))``; infinite for (numerically) pure modes."""
    nu = _clamp_nu(nu)
    if nu - 1.0 <= tol.PURE_MODE:
        return math.inf
    return math.log1p(2.0 / (nu - 1.0))


def nu_power(nu: float, mu: float) -> float:
    """Symplectic eigenvalue of ``rho**mu / tr rho**mu`` for a mode with eigenvalue ``nu``."""
    mu = _check_power_mu(mu)
    eta = _eta(nu)
    if math.isinf(eta):
        return 1.0
    return 1.0 / math.tanh(0.5 * mu * eta)


def log_trace_power(nu: float, mu: float) -> float:
    """``log tr rho_th**mu`` for one thermal mode; 0 for a pure mode."""
    mu = _check_power_mu(mu)
    eta = _eta(nu)
    if math.isinf(eta):
        return 0.0
    return mu * math.log(-math.expm1(-eta)) - math.log(-math.expm1(-mu * eta))


def power_state(g: GaussianState, mu: float) -> tuple[GaussianState, float]:
    """Normalized power ``rho**mu / tr rho**mu`` and ``log tr rho**mu``.

    The mean is unchanged; the covariance keeps the symplectic matrix of
    ``g`` and replaces each ``nu_l`` with :func:`nu_power`.
    """
    mu = _check_power_mu(mu)
    wf = williamson(g.cov)
    nu_mu = np.array([nu_power(v, mu) for v in wf.nu])
    cov = (wf.S * np.repeat(nu_mu, 2)) @ wf.S.T
    log_tr = float(sum(log_trace_power(v, mu) for v in wf.nu))
    return GaussianState(g.mean, 0.5 * (cov + cov.T)), log_tr


def conjugate_gaussian(g: GaussianState) -> GaussianState:
    o = conjugation_matrix(g.modes)
    return GaussianState(o @ g.mean, o @ g.cov @ o)


def is_real_gaussian(g: GaussianState, atol: float = tol.REAL_STATE) -> bool:
    c = conjugate_gaussian(g)
    return (
        float(np.max(np.abs(g.mean - c.mean))) <= atol
        and float(np.max(np.abs(g.cov - c.cov))) <= atol
    )


def log_overlap(g1: GaussianState, g2: GaussianState) -> float:
    """``log tr(rho sigma)`` for two Gaussian states."""
    if g1.modes != g2.modes:
        raise DimensionMismatch(f"{g1.modes}-mode and {g2.modes}-mode states")
    total = g1.cov + g2.cov
    sign, logdet = np.linalg.slogdet(total)
    if sign <= 0 or not np.isfinite(logdet):
        raise SingularSum("det(V + W) is not positive")
    d = g1.mean - g2.mean
    quad = float(d @ np.linalg.solve(total, d))
    return g1.modes * math.log(2.0) - 0.5 * logdet - 0.5 * quad


def overlap(g1: GaussianState, g2: GaussianState) -> float:
    return math.exp(log_overlap(g1, g2))


def log_power_overlap(g: GaussianState, mu: float) -> float:
    """``log tr[rho**mu (rho*)**(1-mu)]``, which stays resolvable when the value saturates."""
    mu = check_mu(mu)
    g = ensure_gaussian(g)
    left, log_tr_left = power_state(g, mu)
    right, log_tr_right = power_state(conjugate_gaussian(g), 1.0 - mu)
    return log_tr_left + log_tr_right + log_overlap(left, right)


def m_tsallis_gaussian(g: GaussianState, mu: float) -> MeasureValue:
    """Tsallis imaginarity of a Gaussian state, assembled in log space."""
    mu = check_mu(mu)
    return MeasureValue(0.0 - math.expm1(log_power_overlap(g, mu)), MeasureId.TSALLIS, mu)


def product_state(*states: GaussianState) -> GaussianState:
    """Tensor product: concatenated means, block-diagonal covariance."""
    n2 = sum(s.cov.shape[0] for s in states)
    cov = np.zeros((n2, n2))
    i = 0
    for s in states:
        k = s.cov.shape[0]
        cov[i : i + k, i : i + k] = s.cov
        i += k
    return GaussianState(np.concatenate([s.mean for s in states]), cov)


def thermal_state(nu, mean=None) -> GaussianState:
    nu = np.atleast_1d(np.asarray(nu, dtype=float))
    cov = np.diag(np.repeat(nu, 2))
    return GaussianState(np.zeros(cov.shape[0]) if mean is None else mean, cov)


def random_symplectic(n_modes: int, seed=None, scale: float = 0.4) -> np.ndarray:
    """``expm(Omega H)`` for a random real symmetric ``H``; always symplectic."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    h = rng.normal(scale=scale, size=(2 * n_modes, 2 * n_modes))
    h = 0.5 * (h + h.T)
    return expm(symplectic_form(n_modes) @ h)


def random_gaussian(n_modes: int, seed=None, nu_max: float = 4.0, mean_scale: float = 1.0) -> GaussianState:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    s = random_symplectic(n_modes, rng)
    nu = rng.uniform(1.0, nu_max, size=n_modes)
    cov = (s * np.repeat(nu, 2)) @ s.T
    return GaussianState(rng.normal(scale=mean_scale, size=2 * n_modes), 0.5 * (cov + cov.T))


def one_mode_from_params(p: OneModeParams) -> GaussianState:
    if p.nu < 1.0:
        raise NuBelowOne(f"nu = {p.nu} is below 1")
    ch, sh = math.cosh(2.0 * p.zeta_abs), math.sinh(2.0 * p.zeta_abs)
    c, s = math.cos(p.theta), math.sin(p.theta)
    cov = p.nu * np.array([[ch + c * sh, s * sh], [s * sh, ch - c * sh]])
    alpha = complex(p.alpha)
    return GaussianState(2.0 * np.array([alpha.real, alpha.imag]), cov)


def one_mode_closed_form(p: OneModeParams) -> float:
    """Tsallis imaginarity at ``mu = 1/2`` of the one-mode state ``p``."""
    if p.nu < 1.0:
        raise NuBelowOne(f"nu = {p.nu} is below 1")
    p_mean = 2.0 * complex(p.alpha).imag
    ch, sh = math.cosh(2.0 * p.zeta_abs), math.sinh(2.0 * p.zeta_abs)
    nu_half = p.nu + math.sqrt(p.nu * p.nu - 1.0)
    var_p = ch - math.cos(p.theta) * sh
    damping = math.sqrt(1.0 + (math.sin(p.theta) * sh) ** 2)
    return -math.expm1(-(p_mean**2) / (nu_half * var_p) - math.log(damping))


def _ladder(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), 1).astype(complex)


def _unitary_exp(generator: np.ndarray) -> np.ndarray:
    """``exp(G)`` for anti-Hermitian ``G`` via the eigendecomposition of ``iG``."""
    h = 1j * generator
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return (v * np.exp(-1j * w)) @ v.conj().T


def fock_truncate(p: OneModeParams, cutoff: int = 80) -> np.ndarray:
    """Density matrix of the one-mode state ``p`` in a truncated Fock basis.

    The squeezer is ``exp((zeta a^dagger^2 - zeta* a^2) / 2)``, the sign for
    which the state's covariance equals :func:`one_mode_from_params`.
    """
    if cutoff < 16:
        raise ValueError("cutoff must be at least 16")
    if p.nu < 1.0:
        raise NuBelowOne(f"nu = {p.nu} is below 1")
    a = _ladder(cutoff)
    ad = a.conj().T
    j = np.arange(cutoff)
    if p.nu - 1.0 <= tol.PURE_MODE:
        pop = (j == 0).astype(float)
    else:
        ratio = (p.nu - 1.0) / (p.nu + 1.0)
        tail = ratio**cutoff
        if tail > tol.FOCK_TAIL:
            raise TruncationUnreliable(f"thermal tail mass {tail:.2e} beyond cutoff {cutoff}")
        pop = (1.0 - ratio) * ratio**j
        pop /= pop.sum()
    alpha = complex(p.alpha)
    zeta = p.zeta_abs * complex(math.cos(p.theta), math.sin(p.theta))
    disp = _unitary_exp(alpha * ad - alpha.conjugate() * a)
    squeeze = _unitary_exp(0.5 * (zeta * ad @ ad - zeta.conjugate() * a @ a))
    u = disp @ squeeze
    rho = (u * pop) @ u.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def fock_moments(rho) -> GaussianState:
    """Mean and covariance of a truncated one-mode density matrix (diagnostic)."""
    rho = np.asarray(rho, dtype=complex)
    a = _ladder(rho.shape[0])
    quads = [a + a.conj().T, -1j * (a - a.conj().T)]
    mean = np.array([np.trace(rho @ x).real for x in quads])
    cov = np.empty((2, 2))
    for i, x in enumerate(quads):
        for k, y in enumerate(quads):
            anti = x @ y + y @ x
            cov[i, k] = 0.5 * np.trace(rho @ anti).real - mean[i] * mean[k]
    return GaussianState(mean, cov)


# JSON Gaussian format: {"modes": N, "mean": [...], "cov": [[...]], "convention": ...}.


def gaussian_to_json(g: GaussianState) -> dict:
    return {
        "modes": g.modes,
        "mean": g.mean.tolist(),
        "cov": g.cov.tolist(),
        "convention": CONVENTION,
    }


def gaussian_from_json(obj: dict) -> GaussianState:
    if not isinstance(obj, dict) or not {"modes", "mean", "cov"} <= obj.keys():
        raise ValueError('Gaussian object needs "modes", "mean" and "cov" keys')
    n = obj["modes"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError('"modes" must be a positive integer')
    conv = obj.get("convention", CONVENTION)
    if conv != CONVENTION:
        raise ValueError(f"unsupported quadrature convention {conv!r}")
    try:
        mean = np.array(obj["mean"], dtype=float)
        cov = np.array(obj["cov"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError("mean and cov must be numeric") from exc
    if mean.shape != (2 * n,) or cov.shape != (2 * n, 2 * n):
        raise ValueError(f"expected mean of length {2 * n} and {2 * n}x{2 * n} cov")
    if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
        raise ValueError("mean and cov must be finite")
    return GaussianState(mean, cov)


def load_gaussian(path) -> GaussianState:
    with open(path, encoding="utf-8") as fh:
        return gaussian_from_json(json.load(fh))
