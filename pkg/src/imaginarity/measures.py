"""Imaginarity measures and the distinguishability quantities tied to them.

The central quantity is the Tsallis imaginarity

    M_T(rho; mu) = 1 - tr[rho**mu (rho*)**(1 - mu)],    0 < mu < 1,

alongside the trace-norm, relative-entropy and fidelity measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import tolerances as tol
from .errors import DimensionMismatch, MuOutOfRange, ZeroVector
from .matfun import hermitian_eig, matrix_power, matrix_sqrt, psd_spectrum, trace_norm, von_neumann_entropy
from .states import BlochVector, ensure_state, from_bloch

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class MeasureId(str, Enum):
    TSALLIS = "tsallis"
    TRACE = "trace"
    RELENT = "relent"
    FIDELITY = "fidelity"


@dataclass(frozen=True)
class MeasureValue:
    value: float
    measure_id: MeasureId
    parameter: float | None = None

    def __float__(self) -> float:
        return self.value


def check_mu(mu: float, margin: float = tol.MU_MARGIN) -> float:
    mu = float(mu)
    if not margin < mu < 1.0 - margin:
        raise MuOutOfRange(f"mu must lie in ({margin}, {1 - margin}), got {mu}")
    return mu


def _real_trace(a: np.ndarray, what: str) -> float:
    t = complex(np.trace(a))
    if abs(t.imag) > tol.TRACE_IMAG_RESIDUE:
        raise ArithmeticError(f"{what} has imaginary residue {t.imag:.3e}")
    return t.real


def power_overlap(rho, sigma, mu: float) -> float:
    """``tr(rho**mu sigma**(1-mu))`` for valid states and ``0 < mu < 1``."""
    return _real_trace(matrix_power(rho, mu) @ matrix_power(sigma, 1.0 - mu), "tr(rho^mu sigma^(1-mu))")


def tsallis_rel_entropy(rho, sigma, mu: float) -> float:
    """Tsallis relative entropy ``(1 - tr(rho**mu sigma**(1-mu))) / (1 - mu)``."""
    mu = check_mu(mu)
    rho, sigma = _pair(rho, sigma)
    return (1.0 - power_overlap(rho, sigma, mu)) / (1.0 - mu)


def _pair(rho, sigma):
    rho = ensure_state(rho)
    sigma = ensure_state(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"states have shapes {rho.shape} and {sigma.shape}")
    return rho, sigma


def m_tsallis(rho, mu: float) -> MeasureValue:
    mu = check_mu(mu)
    rho = ensure_state(rho)
    # (rho*)**nu equals (rho**nu)*, which keeps the mu <-> 1-mu symmetry exact.
    overlap = _real_trace(
        matrix_power(rho, mu) @ matrix_power(rho, 1.0 - mu).conj(), "tr[rho^mu (rho*)^(1-mu)]"
    )
    return MeasureValue(1.0 - overlap, MeasureId.TSALLIS, mu)


def m_tsallis_pure(psi, mu: float | None = None) -> float:
    """Tsallis imaginarity of a pure state, ``1 - |<psi|psi*>|**2`` (independent of mu)."""
    if mu is not None:
        check_mu(mu)
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ZeroVector("state vector has zero norm")
    psi = psi / norm
    # <psi|psi*> = sum_j conj(psi_j) conj(psi_j)
    inner = np.sum(psi.conj() ** 2)
    return 1.0 - abs(inner) ** 2


def m_trace(rho) -> MeasureValue:
    rho = ensure_state(rho)
    return MeasureValue(trace_norm(rho - rho.conj()), MeasureId.TRACE)


def m_rel_entropy(rho) -> MeasureValue:
    """``S(Re rho) - S(rho)`` in nats."""
    rho = ensure_state(rho)
    value = von_neumann_entropy(rho.real.astype(complex)) - von_neumann_entropy(rho)
    return MeasureValue(value, MeasureId.RELENT)


def relative_entropy_coherence(rho) -> float:
    """``S(diag rho) - S(rho)`` in nats."""
    rho = ensure_state(rho)
    p = np.clip(np.diag(rho).real, 0.0, None)
    p = p[p > 0]
    return float(-np.sum(p * np.log(p))) - von_neumann_entropy(rho)


def fidelity(rho, sigma) -> float:
    """Square-root (unsquared) fidelity ``tr sqrt(sqrt(rho) sigma sqrt(rho))``."""
    rho, sigma = _pair(rho, sigma)
    s = matrix_sqrt(rho)
    inner = s @ sigma @ s
    inner = 0.5 * (inner + inner.conj().T)
    return float(np.real(np.trace(matrix_sqrt(inner))))


def m_fidelity(rho) -> MeasureValue:
    rho = ensure_state(rho)
    return MeasureValue(1.0 - fidelity(rho, rho.conj()), MeasureId.FIDELITY)


def qubit_closed_form(b: BlochVector | tuple[float, float, float], mu: float, eps: float = 1e-8) -> float:
    """Closed-form Tsallis imaginarity of the qubit with Bloch vector ``b``.

    Falls back to :func:`m_tsallis` when ``r <= eps`` or ``r - |z| <= eps``,
    where the expression has removable singularities.
    """
    mu = check_mu(mu)
    if not isinstance(b, BlochVector):
        b = BlochVector(*b)
    x, y, z, r = b.x, b.y, b.z, b.r
    if r <= eps or r - abs(z) <= eps:
        return m_tsallis(from_bloch(b), mu).value
    lower = (1.0 - r) * ((r - y * y / (r - z)) ** 2 + (x * y / (r - z)) ** 2)
    upper = (1.0 + r) * ((r - y * y / (r + z)) ** 2 + (x * y / (r + z)) ** 2)
    mixed = y * y * ((1.0 - r) ** mu * (1.0 + r) ** (1.0 - mu) + (1.0 - r) ** (1.0 - mu) * (1.0 + r) ** mu)
    return 1.0 - (lower + upper + mixed) / (2.0 * r * r)


def affinity(rho, sigma) -> float:
    rho, sigma = _pair(rho, sigma)
    return _real_trace(matrix_sqrt(rho) @ matrix_sqrt(sigma), "affinity")


def hellinger(rho, sigma) -> float:
    return 2.0 * (1.0 - affinity(rho, sigma))


def bhattacharyya(rho, sigma) -> float:
    return 0.5 * affinity(rho, sigma)


class _Spectral:
    """Cached eigendecompositions of a state pair for repeated C_mu evaluation."""

    def __init__(self, rho, sigma):
        er, es = hermitian_eig(rho), hermitian_eig(sigma)
        self.lam = psd_spectrum(er.eigenvalues)
        self.kap = psd_spectrum(es.eigenvalues)
        self.weights = np.abs(er.eigenvectors.conj().T @ es.eigenvectors) ** 2

    def __call__(self, mu: float) -> float:
        # 0**0 is taken as 0, so mu = 0 and mu = 1 give the support-projector limits.
        a = np.where(self.lam > 0, self.lam ** mu if mu > 0 else 1.0, 0.0)
        b = np.where(self.kap > 0, self.kap ** (1.0 - mu) if mu < 1 else 1.0, 0.0)
        return float(a @ self.weights @ b)


def chernoff_quantity(rho, sigma, mu: float) -> float:
    """``C_mu = tr(rho**mu sigma**(1-mu))`` on the closed interval ``[0, 1]``.

    At the endpoints the zero-th power is the support projector.
    """
    rho, sigma = _pair(rho, sigma)
    mu = float(mu)
    if not 0.0 <= mu <= 1.0:
        raise MuOutOfRange(f"mu must lie in [0, 1], got {mu}")
    if mu == 0.0:
        return _real_trace(_support_projector(rho) @ sigma, "C_0")
    if mu == 1.0:
        return _real_trace(rho @ _support_projector(sigma), "C_1")
    return power_overlap(rho, sigma, mu)


def _support_projector(a: np.ndarray) -> np.ndarray:
    w, u = hermitian_eig(a)
    keep = psd_spectrum(w) > 0
    return u[:, keep] @ u[:, keep].conj().T


def chernoff_bound(rho, sigma, grid: int = 101, xtol: float = 1e-8, max_iter: int = 200):
    """Quantum Chernoff quantity ``(1/2) min_{0<=mu<=1} C_mu``.

    A uniform grid pre-scan brackets the minimum, then golden-section search
    refines it. Returns ``(value, argmin_mu)``.
    """
    rho, sigma = _pair(rho, sigma)
    c = _Spectral(rho, sigma)
    mus = np.linspace(0.0, 1.0, grid)
    vals = np.array([c(m) for m in mus])
    i = int(np.argmin(vals))
    best_mu, best = float(mus[i]), float(vals[i])
    lo, hi = float(mus[max(i - 1, 0)]), float(mus[min(i + 1, grid - 1)])
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = c(x1), c(x2)
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = c(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = c(x2)
    for m, f in ((x1, f1), (x2, f2)):
        if f < best:
            best_mu, best = m, f
    return 0.5 * best, best_mu
