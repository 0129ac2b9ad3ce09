"""Real quantum operations: Kraus lists with real matrices.

A :class:`RealOperation` stores real Kraus matrices ``K_l`` and the cached
defect ``I - sum_l K_l^T K_l``. A channel is an operation whose defect
vanishes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .errors import DimensionMismatch, ImaginarityError, SingularNormalizer
from .matfun import real_psd_factor, symmetric_real_eig
from .states import ValidationReport, Violation, ensure_state


@dataclass(frozen=True, eq=False)
class RealOperation:
    kraus: tuple[np.ndarray, ...]
    defect: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mats = []
        for k in self.kraus:
            k = np.asarray(k)
            if np.iscomplexobj(k):
                if np.max(np.abs(k.imag), initial=0.0) > 0:
                    raise ImaginarityError("Kraus operators of a real operation must be real")
                k = k.real
            k = np.array(k, dtype=float)
            k.setflags(write=False)
            mats.append(k)
        if not mats:
            raise ImaginarityError("a real operation needs at least one Kraus operator")
        shapes = {k.shape for k in mats}
        if len(shapes) != 1 or mats[0].ndim != 2 or mats[0].shape[0] != mats[0].shape[1]:
            raise DimensionMismatch(f"Kraus operators must be square and equal-sized, got {shapes}")
        d = mats[0].shape[0]
        defect = np.eye(d) - sum(k.T @ k for k in mats)
        defect = 0.5 * (defect + defect.T)
        defect.setflags(write=False)
        object.__setattr__(self, "kraus", tuple(mats))
        object.__setattr__(self, "defect", defect)

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]

    def is_channel(self, atol: float = tol.COMPLETENESS) -> bool:
        return float(np.max(np.abs(self.defect))) <= atol


@dataclass(frozen=True)
class OutcomeDecomposition:
    """Normalized post-measurement states with their probabilities."""

    outcomes: list[tuple[float, np.ndarray]]

    @property
    def total_probability(self) -> float:
        return float(sum(p for p, _ in self.outcomes))


def validate_real_operation(op: RealOperation, atol: float = tol.OPERATION_DEFECT) -> ValidationReport:
    violations = []
    max_imag = max(float(np.max(np.abs(np.imag(k)), initial=0.0)) for k in op.kraus)
    if max_imag > 0:
        violations.append(Violation("real_kraus", max_imag))
    min_eig = float(np.linalg.eigvalsh(op.defect)[0])
    if min_eig < -atol:
        violations.append(Violation("defect_psd", -min_eig))
    return ValidationReport(
        violations,
        {"defect_min_eigenvalue": min_eig, "defect_max_abs": float(np.max(np.abs(op.defect)))},
    )


def apply(op: RealOperation, rho, floor: float = tol.OUTCOME_FLOOR):
    """Apply ``op`` to ``rho``.

    Returns:
        ``(output, decomposition)`` where ``output = sum_l K_l rho K_l^T`` is
        unnormalized and ``decomposition`` lists ``(p_l, K_l rho K_l^T / p_l)``
        for every outcome with ``p_l >= floor``.
    """
    rho = ensure_state(rho)
    if rho.shape[0] != op.dim:
        raise DimensionMismatch(f"state has dim {rho.shape[0]}, operation has dim {op.dim}")
    output = np.zeros_like(rho)
    outcomes = []
    for k in op.kraus:
        branch = k @ rho @ k.T
        branch = 0.5 * (branch + branch.conj().T)
        output += branch
        p = float(np.trace(branch).real)
        if p >= floor:
            outcomes.append((p, branch / p))
    return output, OutcomeDecomposition(outcomes)


def complete_to_channel(op: RealOperation, atol: float = tol.COMPLETENESS) -> RealOperation:
    """Append a real ``K'`` with ``K'^T K' = I - sum K^T K`` so the result is a channel."""
    if op.is_channel(atol):
        return op
    extra = real_psd_factor(op.defect, floor=tol.OPERATION_DEFECT)
    return RealOperation(op.kraus + (extra,))


def real_orthogonal_diagonalizer(rho) -> np.ndarray:
    """Real orthogonal ``Q`` with ``Q Re(rho) Q^T`` diagonal."""
    rho = ensure_state(rho)
    q, _ = symmetric_real_eig(rho.real)
    return q


def random_real_channel(d: int, k: int, seed=None, max_attempts: int = 16) -> RealOperation:
    """Random real channel ``K_l = G_l M^{-1/2}`` with ``M = sum G_l^T G_l``.

    ``G_l`` are real standard Gaussian matrices. Stacking them into
    ``A = U s V^T`` gives ``A M^{-1/2} = U V^T``, which is evaluated instead
    of forming ``M`` so completeness holds to machine precision even for
    badly conditioned draws. If ``M`` is numerically singular (smallest
    eigenvalue ``s_min**2`` below the floor) the draw is repeated from the
    next substream ``(seed, attempt)``.
    """
    if d < 1 or k < 1:
        raise ValueError("dimension and Kraus count must be at least 1")
    if isinstance(seed, np.random.Generator):
        streams = (seed for _ in range(max_attempts))
    else:
        base = [] if seed is None else list(np.atleast_1d(seed).astype(int))
        streams = (np.random.default_rng(base + [attempt]) for attempt in range(max_attempts))
    for rng in streams:
        gs = rng.standard_normal((k, d, d))
        u, s, vt = np.linalg.svd(gs.reshape(k * d, d), full_matrices=False)
        if s[-1] ** 2 <= tol.NORMALIZER_FLOOR * max(1.0, s[0] ** 2):
            continue
        return RealOperation(tuple((u @ vt).reshape(k, d, d)))
    raise SingularNormalizer(f"normalizer stayed singular after {max_attempts} draws")


def random_real_operation(d: int, k: int, seed=None) -> RealOperation:
    """Random strict real operation: a random channel scaled by a factor in (0.2, 1)."""
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    channel = random_real_channel(d, k, rng)
    scale = np.sqrt(rng.uniform(0.2, 1.0))
    return RealOperation(tuple(scale * kk for kk in channel.kraus))


def apply_kraus(kraus, rho) -> np.ndarray:
    """``sum_l K_l rho K_l^dagger`` for arbitrary (possibly complex) Kraus matrices."""
    rho = np.asarray(rho, dtype=complex)
    return sum(np.asarray(k) @ rho @ np.asarray(k).conj().T for k in kraus)


def check_conjugation_commutes(kraus, rho) -> float:
    """``max|phi(rho*) - phi(rho)*|``; zero up to round-off for real Kraus lists.

    ``kraus`` may be a :class:`RealOperation` or any list of matrices, so
    complex Kraus operators can serve as negative controls.
    """
    rho = ensure_state(rho)
    mats = kraus.kraus if isinstance(kraus, RealOperation) else kraus
    lhs = apply_kraus(mats, rho.conj())
    rhs = apply_kraus(mats, rho).conj()
    return float(np.max(np.abs(lhs - rhs)))


# JSON operation format: {"dim": d, "kraus": [[[real, ...], ...], ...]}.


def operation_to_json(op: RealOperation) -> dict:
    return {"dim": op.dim, "kraus": [k.tolist() for k in op.kraus]}


def operation_from_json(obj: dict) -> RealOperation:
    if not isinstance(obj, dict) or "dim" not in obj or "kraus" not in obj:
        raise ValueError('operation object needs "dim" and "kraus" keys')
    d = obj["dim"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ValueError('"dim" must be a positive integer')
    mats = []
    for j, m in enumerate(obj["kraus"]):
        try:
            arr = np.array(m, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"Kraus matrix {j} is not a real numeric matrix") from exc
        if arr.shape != (d, d):
            raise ValueError(f"Kraus matrix {j} has shape {arr.shape}, expected {(d, d)}")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"Kraus matrix {j} is not finite")
        mats.append(arr)
    if not mats:
        raise ValueError("kraus list is empty")
    return RealOperation(tuple(mats))


def load_operation(path) -> RealOperation:
    with open(path, encoding="utf-8") as fh:
        return operation_from_json(json.load(fh))
