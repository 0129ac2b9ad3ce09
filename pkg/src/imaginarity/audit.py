"""Seeded randomized audits of the measure and channel properties.

Each check draws its own per-trial generator from ``(seed, suite, trial)``,
so a failure can be replayed from the seed and trial index in the report.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import channels, gaussian, measures, states

SUITES = ("axioms", "gaussian", "oracle")

FOCK_GRID = {
    "nu": (1.0, 1.5, 3.0),
    "zeta_abs": (0.0, 0.3, 0.7),
    "theta": (0.0, math.pi / 4, math.pi / 2),
    "p_mean": (0.0, 1.0, 2.0),
}


@dataclass
class Failure:
    seed: int
    trial: int
    description: str
    magnitude: float


@dataclass
class AuditReport:
    suite: str
    check: str
    tolerance: float
    trials: int = 0
    max_violation: float = 0.0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, seed: int, trial: int, magnitude: float, description: str = "") -> None:
        self.trials += 1
        magnitude = float(magnitude)
        if math.isnan(magnitude):
            magnitude = math.inf
        self.max_violation = max(self.max_violation, magnitude)
        if magnitude > self.tolerance:
            self.failures.append(Failure(seed, trial, description or self.check, magnitude))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def _trial_rng(seed: int, suite: str, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, SUITES.index(suite) if suite in SUITES else 99, trial])


def _run(
    suite: str, checks: dict[str, float], trials: int, seed: int, body: Callable[[np.random.Generator], dict]
) -> list[AuditReport]:
    reports = {name: AuditReport(suite, name, tol) for name, tol in checks.items()}
    for t in range(trials):
        rng = _trial_rng(seed, suite, t)
        for name, (mag, desc) in body(rng).items():
            reports[name].record(seed, t, mag, desc)
    return list(reports.values())


def _mt(rho, mu):
    return measures.m_tsallis(rho, mu).value


AXIOM_CHECKS = {
    "M1_range": 1e-10,
    "M1_faithfulness": 0.0,
    "M2_monotonicity": 1e-9,
    "M3_probabilistic_monotonicity": 1e-9,
    "M4_convexity": 1e-9,
    "M5_direct_sum_additivity": 1e-10,
    "symmetry": 1e-10,
    "real_orthogonal_invariance": 1e-9,
    "conjugation_commutes": 1e-12,
    "channel_completion": 1e-9,
    "entropy_coherence_link": 1e-9,
    "affinity_identities": 1e-10,
    "chernoff_grid_dominance": 1e-10,
}


def _axiom_trial(rng: np.random.Generator) -> dict:
    d = int(rng.integers(2, 5))
    k = int(rng.integers(1, 4))
    mu = float(rng.uniform(0.05, 0.95))
    tag = f"d={d} k={k} mu={mu:.6f}"
    rho = states.random_density(d, rng)
    real_rho = states.random_real_density(d, rng)
    phi = channels.random_real_channel(d, k, rng)
    out = {}

    m = _mt(rho, mu)
    m_real = _mt(real_rho, mu)
    out["M1_range"] = (max(-m, m - 1.0, -m_real, 0.0), tag)
    mismatch = float((m <= 1e-9) != (np.max(np.abs(rho.imag)) <= 1e-9))
    mismatch += float((m_real <= 1e-9) != (np.max(np.abs(real_rho.imag)) <= 1e-9))
    out["M1_faithfulness"] = (mismatch, tag)

    image, decomposition = channels.apply(phi, rho)
    out["M2_monotonicity"] = (_mt(image, mu) - m, tag)
    weighted = sum(p * _mt(s, mu) for p, s in decomposition.outcomes)
    out["M3_probabilistic_monotonicity"] = (weighted - m, tag)

    parts = [states.random_density(d, rng) for _ in range(3)]
    probs = rng.dirichlet(np.ones(3))
    mixed = states.mixture(probs, parts)
    out["M4_convexity"] = (_mt(mixed, mu) - sum(p * _mt(s, mu) for p, s in zip(probs, parts)), tag)

    p = float(rng.uniform(0.05, 0.95))
    other = states.random_density(int(rng.integers(1, 4)), rng)
    joined = states.direct_sum(p, rho, other)
    out["M5_direct_sum_additivity"] = (abs(_mt(joined, mu) - p * m - (1 - p) * _mt(other, mu)), tag)

    sym = max(abs(m - _mt(rho.conj(), mu)), abs(m - _mt(rho, 1.0 - mu)))
    out["symmetry"] = (sym, tag)

    q = states.random_orthogonal(d, rng)
    out["real_orthogonal_invariance"] = (abs(_mt(q @ rho @ q.T, mu) - m), tag)

    out["conjugation_commutes"] = (channels.check_conjugation_commutes(phi, rho), tag)

    op = channels.random_real_operation(d, k, rng)
    completed = channels.complete_to_channel(op)
    out["channel_completion"] = (float(np.max(np.abs(completed.defect))), tag)

    qd = channels.real_orthogonal_diagonalizer(rho)
    link = measures.m_rel_entropy(rho).value - measures.relative_entropy_coherence(qd @ rho @ qd.T)
    out["entropy_coherence_link"] = (abs(link), tag)

    half = _mt(rho, 0.5)
    conj = rho.conj()
    out["affinity_identities"] = (
        max(
            abs(half - (1 - measures.affinity(rho, conj))),
            abs(half - 0.5 * measures.hellinger(rho, conj)),
            abs(half - (1 - 2 * measures.bhattacharyya(rho, conj))),
        ),
        tag,
    )

    bound, _ = measures.chernoff_bound(rho, conj)
    grid = np.linspace(0.0, 1.0, 11)
    excess = max(bound - 0.5 * measures.chernoff_quantity(rho, conj, g) for g in grid)
    out["chernoff_grid_dominance"] = (excess, tag)
    return out


def audit_axioms(trials: int, seed: int) -> list[AuditReport]:
    return _run("axioms", AXIOM_CHECKS, trials, seed, _axiom_trial)


GAUSSIAN_CHECKS = {
    "williamson_nu_recovery": 1e-8,
    "williamson_symplectic": 1e-8,
    "williamson_reconstruction": 1e-7,
    "oso_symplectic": 1e-8,
    "power_conjugate_commute": 1e-8,
    "half_specialization": 1e-10,
    "mu_symmetry": 1e-9,
    "trace_power_additivity": 1e-10,
    "one_mode_closed_form": 1e-10,
    "real_gaussian_zero": 1e-12,
}


def _gaussian_trial(rng: np.random.Generator) -> dict:
    n = int(rng.integers(1, 4))
    mu = float(rng.uniform(0.05, 0.95))
    tag = f"N={n} mu={mu:.6f}"
    s0 = gaussian.random_symplectic(n, rng)
    nu0 = np.sort(rng.uniform(1.0, 4.0, size=n))[::-1]
    cov = (s0 * np.repeat(nu0, 2)) @ s0.T
    cov = 0.5 * (cov + cov.T)
    g = gaussian.GaussianState(rng.normal(size=2 * n), cov)
    omega = gaussian.symplectic_form(n)
    o = gaussian.conjugation_matrix(n)
    out = {}

    wf = gaussian.williamson(cov)
    out["williamson_nu_recovery"] = (float(np.max(np.abs(wf.nu - nu0))), tag)
    out["williamson_symplectic"] = (float(np.max(np.abs(wf.S @ omega @ wf.S.T - omega))), tag)
    recon = wf.S @ wf.diagonal() @ wf.S.T
    out["williamson_reconstruction"] = (
        float(np.max(np.abs(recon - cov))) / max(1.0, float(np.max(np.abs(cov)))),
        tag,
    )
    oso = o @ wf.S @ o
    out["oso_symplectic"] = (float(np.max(np.abs(oso @ omega @ oso.T - omega))), tag)

    a, _ = gaussian.power_state(gaussian.conjugate_gaussian(g), 1 - mu)
    b, _ = gaussian.power_state(g, 1 - mu)
    b = gaussian.conjugate_gaussian(b)
    out["power_conjugate_commute"] = (float(np.max(np.abs(a.cov - b.cov))), tag)

    general = gaussian.m_tsallis_gaussian(g, 0.5).value
    out["half_specialization"] = (abs(general - _half_formula(g)), tag)

    out["mu_symmetry"] = (
        abs(gaussian.m_tsallis_gaussian(g, mu).value - gaussian.m_tsallis_gaussian(g, 1 - mu).value),
        tag,
    )

    modes = [gaussian.random_gaussian(1, rng) for _ in range(2)]
    joint = gaussian.product_state(*modes)
    _, lt_joint = gaussian.power_state(joint, mu)
    lt_sum = sum(gaussian.power_state(m_, mu)[1] for m_ in modes)
    out["trace_power_additivity"] = (abs(lt_joint - lt_sum), tag)

    params = gaussian.OneModeParams(
        alpha=complex(rng.normal(), rng.normal()),
        zeta_abs=float(rng.uniform(0, 1)),
        theta=float(rng.uniform(0, 2 * math.pi)),
        nu=float(rng.uniform(1, 4)),
    )
    closed = gaussian.one_mode_closed_form(params)
    general = gaussian.m_tsallis_gaussian(gaussian.one_mode_from_params(params), 0.5).value
    out["one_mode_closed_form"] = (abs(closed - general), tag)

    real = gaussian.one_mode_from_params(
        gaussian.OneModeParams(alpha=float(rng.normal()), zeta_abs=params.zeta_abs, theta=0.0, nu=params.nu)
    )
    out["real_gaussian_zero"] = (abs(gaussian.m_tsallis_gaussian(real, mu).value), tag)
    return out


def _half_formula(g: gaussian.GaussianState) -> float:
    """The mu = 1/2 expression with ``V^(1/2) + O V^(1/2) O``, built directly."""
    n = g.modes
    o = gaussian.conjugation_matrix(n)
    wf = gaussian.williamson(g.cov)
    nu_half = np.array([gaussian.nu_power(v, 0.5) for v in wf.nu])
    v_half = (wf.S * np.repeat(nu_half, 2)) @ wf.S.T
    total = v_half + o @ v_half @ o
    # prefactor (1 - e^-eta) / (1 - e^-eta/2)^2 equals nu^(1/2) per mode
    log_pref = float(np.sum(np.log(nu_half)))
    diff = g.mean - o @ g.mean
    _, logdet = np.linalg.slogdet(total)
    log_c = n * math.log(2) + log_pref - 0.5 * logdet - 0.5 * diff @ np.linalg.solve(total, diff)
    return -math.expm1(log_c)


def audit_gaussian(trials: int, seed: int) -> list[AuditReport]:
    return _run("gaussian", GAUSSIAN_CHECKS, trials, seed, _gaussian_trial)


def fock_grid() -> Iterable[gaussian.OneModeParams]:
    for nu in FOCK_GRID["nu"]:
        for z in FOCK_GRID["zeta_abs"]:
            for th in FOCK_GRID["theta"]:
                for pm in FOCK_GRID["p_mean"]:
                    yield gaussian.OneModeParams(alpha=complex(0.0, pm / 2.0), zeta_abs=z, theta=th, nu=nu)


def audit_oracle(trials: int, seed: int, cutoff: int = 80) -> list[AuditReport]:
    """Fock-space oracle on the fixed one-mode grid plus random qubit closed forms."""
    fock = AuditReport("oracle", "gaussian_vs_fock", 1e-4)
    for i, p in enumerate(fock_grid()):
        rho = gaussian.fock_truncate(p, cutoff)
        dev = abs(measures.m_tsallis(rho, 0.5).value - gaussian.m_tsallis_gaussian(gaussian.one_mode_from_params(p), 0.5).value)
        fock.record(seed, i, dev, f"nu={p.nu} |zeta|={p.zeta_abs} theta={p.theta:.6f} p_mean={2 * p.alpha.imag}")

    qubit = AuditReport("oracle", "qubit_closed_form", 1e-9)
    for t in range(trials):
        rng = _trial_rng(seed, "oracle", t)
        b = random_bloch(rng)
        mu = float(rng.uniform(0.05, 0.95))
        dev = abs(measures.qubit_closed_form(b, mu) - measures.m_tsallis(states.from_bloch(b), mu).value)
        qubit.record(seed, t, dev, f"b=({b.x:.6f},{b.y:.6f},{b.z:.6f}) mu={mu:.6f}")
    return [fock, qubit]


def random_bloch(rng: np.random.Generator, r_max: float = 0.999, gap: float = 1e-4) -> states.BlochVector:
    """Uniform direction, radius in (0, r_max], rejecting ``r - |z| < gap``."""
    while True:
        v = rng.normal(size=3)
        v *= rng.uniform(0.0, r_max) ** (1 / 3) / np.linalg.norm(v)
        b = states.BlochVector(*map(float, v))
        if b.r - abs(b.z) >= gap:
            return b


def run_suite(name: str, trials: int, seed: int) -> list[AuditReport]:
    runners = {"axioms": audit_axioms, "gaussian": audit_gaussian, "oracle": audit_oracle}
    if name == "all":
        return [r for suite in SUITES for r in runners[suite](trials, seed)]
    return runners[name](trials, seed)
