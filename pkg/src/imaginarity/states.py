"""Finite-dimensional density matrices in a fixed computational basis.

States are plain ``complex`` numpy arrays of shape ``(d, d)``. Constructors
in this module always return arrays that pass :func:`validate`; functions
taking states as input reject invalid ones with :class:`InvalidState`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .errors import (
    BlochNormExceeded,
    DimensionMismatch,
    InvalidState,
    ProbabilityOutOfRange,
    ZeroVector,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class Violation:
    invariant: str
    magnitude: float

    def __str__(self) -> str:
        return f"{self.invariant} violated (magnitude {self.magnitude:.3e})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validation; empty ``violations`` means the input is valid."""

    violations: list[Violation] = field(default_factory=list)
    details: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        return "ok" if self.ok else "; ".join(str(v) for v in self.violations)


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    @property
    def r(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)


def validate(rho, atol: float = tol.PSD) -> ValidationReport:
    """Check Hermiticity, unit trace and positivity of ``rho``.

    Never raises on bad numerics; shape problems are reported as a
    ``shape`` violation with magnitude ``nan``.
    """
    a = np.asarray(rho, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        return ValidationReport([Violation("shape", float("nan"))])
    if not np.all(np.isfinite(a)):
        return ValidationReport([Violation("finite", float("nan"))])
    violations = []
    herm = float(np.max(np.abs(a - a.conj().T)))
    if herm > atol:
        violations.append(Violation("hermitian", herm))
    trace_dev = abs(complex(np.trace(a)) - 1.0)
    if trace_dev > atol:
        violations.append(Violation("unit_trace", trace_dev))
    min_eig = float(np.linalg.eigvalsh(0.5 * (a + a.conj().T))[0])
    if min_eig < -atol:
        violations.append(Violation("psd", -min_eig))
    details = {"hermitian": herm, "trace_deviation": trace_dev, "min_eigenvalue": min_eig}
    return ValidationReport(violations, details)


def ensure_state(rho) -> np.ndarray:
    """Return ``rho`` as a complex array, raising if it is not a valid state."""
    report = validate(rho)
    if not report.ok:
        raise InvalidState(report.describe())
    return np.asarray(rho, dtype=complex)


def from_bloch(b: BlochVector | tuple[float, float, float]) -> np.ndarray:
    """Qubit state ``(I + r.sigma) / 2``."""
    if not isinstance(b, BlochVector):
        b = BlochVector(*b)
    if b.r > 1.0 + tol.BLOCH_NORM:
        raise BlochNormExceeded(f"|r| = {b.r} exceeds 1")
    return 0.5 * np.array(
        [[1 + b.z, b.x - 1j * b.y], [b.x + 1j * b.y, 1 - b.z]], dtype=complex
    )


def to_bloch(rho) -> BlochVector:
    rho = ensure_state(rho)
    if rho.shape != (2, 2):
        raise DimensionMismatch("Bloch vectors exist only for qubits")
    return BlochVector(
        float(np.trace(rho @ SIGMA_X).real),
        float(np.trace(rho @ SIGMA_Y).real),
        float(np.trace(rho @ SIGMA_Z).real),
    )


def pure_state(psi) -> np.ndarray:
    """Projector onto ``psi`` (normalized internally)."""
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if norm == 0 or not np.isfinite(norm):
        raise ZeroVector("state vector has zero (or non-finite) norm")
    psi = psi / norm
    return np.outer(psi, psi.conj())


def conjugate(rho) -> np.ndarray:
    """Entrywise complex conjugate in the reference basis."""
    return ensure_state(rho).conj()


def real_imag_parts(rho) -> tuple[np.ndarray, np.ndarray]:
    """``(Re rho, Im rho)``; the first is symmetric, the second antisymmetric."""
    rho = ensure_state(rho)
    return rho.real.copy(), rho.imag.copy()


def is_real(rho, atol: float = tol.REAL_STATE) -> bool:
    rho = ensure_state(rho)
    return float(np.max(np.abs(rho.imag))) <= atol


def direct_sum(p: float, rho1, rho2) -> np.ndarray:
    """Block-diagonal state ``p rho1 (+) (1-p) rho2``."""
    if not 0.0 < p < 1.0:
        raise ProbabilityOutOfRange(f"p must lie in (0, 1), got {p}")
    rho1 = ensure_state(rho1)
    rho2 = ensure_state(rho2)
    d1, d2 = rho1.shape[0], rho2.shape[0]
    out = np.zeros((d1 + d2, d1 + d2), dtype=complex)
    out[:d1, :d1] = p * rho1
    out[d1:, d1:] = (1.0 - p) * rho2
    return out


def mixture(probs, states) -> np.ndarray:
    """Convex combination ``sum_j p_j rho_j``."""
    probs = np.asarray(probs, dtype=float)
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > tol.TRACE:
        raise ProbabilityOutOfRange("mixture weights must be a probability vector")
    states = [ensure_state(s) for s in states]
    if len({s.shape for s in states}) != 1:
        raise DimensionMismatch("mixture components must share a dimension")
    return sum(p * s for p, s in zip(probs, states))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_density(d: int, seed=None) -> np.ndarray:
    """Hilbert-Schmidt random state ``G G^dagger / tr(G G^dagger)``.

    ``seed`` may be an integer, a sequence of integers or a
    :class:`numpy.random.Generator`; equal integer seeds give bitwise-equal
    output.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    rng = _rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return m / np.trace(m).real


def random_real_density(d: int, seed=None) -> np.ndarray:
    """Real analogue of :func:`random_density` (real Ginibre factor)."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    rng = _rng(seed)
    g = rng.standard_normal((d, d))
    m = g @ g.T
    m = 0.5 * (m + m.T)
    return (m / np.trace(m)).astype(complex)


def random_orthogonal(d: int, seed=None) -> np.ndarray:
    """Haar-random real orthogonal matrix (QR with sign fix)."""
    rng = _rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


# JSON state format: {"dim": d, "matrix": [[[re, im], ...], ...]} row-major.


def state_to_json(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {
        "dim": int(rho.shape[0]),
        "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in rho],
    }


def state_from_json(obj: dict) -> np.ndarray:
    """Parse the JSON state object; raises ``ValueError`` on malformed input."""
    if not isinstance(obj, dict) or "dim" not in obj or "matrix" not in obj:
        raise ValueError('state object needs "dim" and "matrix" keys')
    d = obj["dim"]
    rows = obj["matrix"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ValueError('"dim" must be a positive integer')
    if not isinstance(rows, list) or len(rows) != d:
        raise ValueError(f'"matrix" must have {d} rows')
    out = np.empty((d, d), dtype=complex)
    for j, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise ValueError(f"row {j} must have {d} entries")
        for k, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
            ):
                raise ValueError(f"entry ({j}, {k}) must be a [re, im] pair of numbers")
            re, im = float(entry[0]), float(entry[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ValueError(f"entry ({j}, {k}) is not finite")
            out[j, k] = complex(re, im)
    return out


def load_state(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return state_from_json(json.load(fh))


def save_state(path, rho) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_json(rho), fh)
