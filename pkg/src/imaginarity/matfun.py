"""Spectral kernels for Hermitian and real-symmetric matrices.

Every routine here is a pure function of its arguments. Fractional powers use
the convention ``0**mu == 0`` so rank-deficient inputs are handled.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import tolerances as tol
from .errors import DimensionMismatch, NotHermitian, NotPositiveDefinite, NotPSD, NotSymmetric


class HermitianEig(NamedTuple):
    """Eigenvalues in ascending order and the matching unitary (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _square(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    return a


def hermitian_eig(h, atol: float = tol.HERMITIAN) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    Args:
        h: square complex matrix, Hermitian to within ``atol`` (relative to
            ``max(1, max|h|)``).
        atol: asymmetry tolerance on ``max|h - h^dagger|``.

    Returns:
        HermitianEig with ascending eigenvalues.

    Raises:
        NotHermitian: if the asymmetry exceeds the tolerance.
    """
    h = _square(np.asarray(h, dtype=complex))
    asym = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if asym > atol * tol.scale(h):
        raise NotHermitian(f"max|H - H^dagger| = {asym:.3e} exceeds {atol:.1e}")
    h = 0.5 * (h + h.conj().T)
    w, u = np.linalg.eigh(h)
    return HermitianEig(w, u)


def _clipped(w: np.ndarray, floor: float, zero: float = 0.0) -> np.ndarray:
    if w.size and w[0] < -floor:
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e} below -{floor:.1e}")
    return np.where(w > zero, w, 0.0)


def psd_spectrum(w: np.ndarray, scale: float = 1.0, floor: float = tol.EIG_CLIP) -> np.ndarray:
    """Clean an ascending PSD spectrum before taking fractional powers.

    Values below ``-floor * scale`` raise :class:`NotPSD`; values with
    ``|w| <= EIG_ZERO * scale`` become exactly zero, since for small powers
    ``eps**mu`` of round-off is not small.
    """
    return _clipped(w, floor * scale, tol.EIG_ZERO * scale)


def _power_values(w: np.ndarray, mu: float) -> np.ndarray:
    out = np.zeros_like(w)
    pos = w > 0
    out[pos] = w[pos] ** mu
    return out


def matrix_power(a, mu: float, floor: float = tol.EIG_CLIP) -> np.ndarray:
    """Fractional power ``A**mu`` of a Hermitian PSD matrix.

    Eigenvalues in ``[-floor, 0)`` (scaled) are clipped to zero; anything more
    negative raises :class:`NotPSD`. Zero eigenvalues stay zero for every
    ``mu`` in ``(0, 1]``.
    """
    if not 0.0 < mu <= 1.0:
        raise ValueError(f"mu must lie in (0, 1], got {mu}")
    w, u = hermitian_eig(a)
    w = psd_spectrum(w, tol.scale(a), floor)
    return (u * _power_values(w, mu)) @ u.conj().T


def matrix_sqrt(a, floor: float = tol.EIG_CLIP) -> np.ndarray:
    return matrix_power(a, 0.5, floor=floor)


def trace_norm(a) -> float:
    """Sum of singular values of a square matrix."""
    a = _square(np.asarray(a, dtype=complex))
    if a.size == 0:
        return 0.0
    return float(np.sum(np.linalg.svd(a, compute_uv=False)))


def symmetric_real_eig(sym, atol: float = tol.SYMMETRIC) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a real symmetric matrix by a real orthogonal ``Q``.

    Returns ``(q, lam)`` with ``q @ sym @ q.T == diag(lam)``; note that the
    rows of ``q`` are the eigenvectors, matching the ``Q M Q^T`` convention.
    """
    sym = _square(np.asarray(sym))
    if np.iscomplexobj(sym):
        if np.max(np.abs(sym.imag), initial=0.0) > atol * tol.scale(sym):
            raise NotSymmetric("matrix has a nonzero imaginary part")
        sym = sym.real
    sym = sym.astype(float)
    asym = float(np.max(np.abs(sym - sym.T), initial=0.0))
    if asym > atol * tol.scale(sym):
        raise NotSymmetric(f"max|M - M^T| = {asym:.3e} exceeds {atol:.1e}")
    lam, vecs = np.linalg.eigh(0.5 * (sym + sym.T))
    return vecs.T.copy(), lam


def real_psd_factor(m, floor: float = tol.EIG_CLIP) -> np.ndarray:
    """Real ``K`` with ``K.T @ K == m`` for a real symmetric PSD ``m``.

    Uses the symmetric square root, which also covers rank-deficient input
    where an unpivoted Cholesky would break down.
    """
    q, lam = symmetric_real_eig(m)
    lam = _clipped(lam, floor * tol.scale(m))
    # q.T diag(lam) q = m, so K = diag(sqrt lam) q is one factor; rotate back
    # by q.T to obtain the symmetric root.
    return (q.T * np.sqrt(lam)) @ q


def sqrt_spd(m) -> np.ndarray:
    """Symmetric square root of a real symmetric positive definite matrix."""
    q, lam = symmetric_real_eig(m)
    if lam.size and lam[0] <= 0:
        raise NotPositiveDefinite(f"smallest eigenvalue {lam[0]:.3e} is not positive")
    return (q.T * np.sqrt(lam)) @ q


def von_neumann_entropy(rho) -> float:
    """Natural-log von Neumann entropy with ``0 log 0 = 0``."""
    w = _clipped(hermitian_eig(rho).eigenvalues, tol.EIG_CLIP)
    w = w[w > 0]
    return float(-np.sum(w * np.log(w))) + 0.0
