"""Command-line front end: ``imaginarity {measure,gaussian,sweep,verify}``.

Exit codes: 0 success, 1 audit failure, 2 unparsable input, 3 input that
parses but fails validation.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys

import numpy as np

from . import audit, gaussian, measures, states
from .errors import ImaginarityError

EXIT_OK, EXIT_AUDIT, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3
DEFAULT_SEED = 20231001
DEFAULT_QUBIT_GRID = "y:0:1:101,mu:0.01:0.99:99"
GAUSSIAN_AXES = ("nu", "zeta", "theta", "xbar2", "mu")
GAUSSIAN_DEFAULTS = {"nu": 1.0, "zeta": 0.0, "theta": 0.0, "xbar2": 0.0, "mu": 0.5}


class InputError(Exception):
    """Raised for malformed files or flags; maps to exit code 2."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=False) + "\n")


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def parse_grid(text: str, allowed) -> dict[str, np.ndarray]:
    """Parse ``name:lo:hi:n`` (or ``name:value``) items separated by commas."""
    axes = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        parts = item.split(":")
        name = parts[0]
        if name not in allowed:
            raise InputError(f"unknown grid axis {name!r}; expected one of {sorted(allowed)}")
        try:
            if len(parts) == 2:
                values = np.array([float(parts[1])])
            elif len(parts) == 4:
                lo, hi, n = float(parts[1]), float(parts[2]), int(parts[3])
                if n < 1:
                    raise ValueError
                values = np.linspace(lo, hi, n)
            else:
                raise ValueError
        except ValueError as exc:
            raise InputError(f"malformed grid item {item!r}; use name:lo:hi:n or name:value") from exc
        if not np.all(np.isfinite(values)):
            raise InputError(f"grid item {item!r} is not finite")
        axes[name] = values
    return axes


def cmd_measure(args) -> int:
    try:
        rho = states.state_from_json(_read_json(args.state))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = states.validate(rho)
    if not report.ok:
        print(f"invalid state: {report.describe()}", file=sys.stderr)
        return EXIT_INVALID
    wanted = ["tsallis", "trace", "relent", "fidelity"] if args.measure == "all" else [args.measure]
    results = []
    for name in wanted:
        if name == "tsallis":
            mv = measures.m_tsallis(rho, args.mu)
        else:
            mv = {"trace": measures.m_trace, "relent": measures.m_rel_entropy, "fidelity": measures.m_fidelity}[name](rho)
        results.append({"measure": name, "mu": mv.parameter, "value": mv.value})
    _emit(results[0] if len(results) == 1 else {"dim": int(rho.shape[0]), "results": results})
    return EXIT_OK


def cmd_gaussian(args) -> int:
    try:
        g = gaussian.gaussian_from_json(_read_json(args.state))
    except (ValueError, ImaginarityError) as exc:
        raise InputError(str(exc)) from exc
    report = gaussian.validate_gaussian(g)
    if not report.ok:
        print(f"invalid Gaussian state: {report.describe()}", file=sys.stderr)
        return EXIT_INVALID
    try:
        wf = gaussian.williamson(g.cov)
    except ImaginarityError as exc:
        print(f"invalid Gaussian state: {exc}", file=sys.stderr)
        return EXIT_INVALID
    mv = gaussian.m_tsallis_gaussian(g, args.mu)
    _emit(
        {
            "measure": "tsallis",
            "mu": mv.parameter,
            "value": mv.value,
            "modes": g.modes,
            "symplectic_eigenvalues": [float(v) for v in wf.nu],
            "convention": gaussian.CONVENTION,
        }
    )
    return EXIT_OK


def qubit_sweep_rows(axes: dict[str, np.ndarray]):
    """Rows ``(y, mu, value)`` for the qubit ``x = z = 0`` family via the eigen-path."""
    for y in axes["y"]:
        rho = states.from_bloch((0.0, float(y), 0.0))
        for mu in axes["mu"]:
            yield float(y), float(mu), measures.m_tsallis(rho, float(mu)).value


def gaussian_sweep_rows(axes: dict[str, np.ndarray]):
    grids = [axes.get(k, np.array([GAUSSIAN_DEFAULTS[k]])) for k in GAUSSIAN_AXES]
    for nu, zeta, theta, xbar2, mu in itertools.product(*grids):
        p = gaussian.OneModeParams(alpha=complex(0.0, xbar2 / 2.0), zeta_abs=zeta, theta=theta, nu=nu)
        value = gaussian.m_tsallis_gaussian(gaussian.one_mode_from_params(p), float(mu)).value
        yield float(nu), float(zeta), float(theta), float(xbar2), float(mu), value


def cmd_sweep(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if args.gaussian_grid is not None:
        axes = parse_grid(args.gaussian_grid, GAUSSIAN_AXES)
        _check_gaussian_axes(axes)
        writer.writerow(GAUSSIAN_AXES + ("value",))
        rows = gaussian_sweep_rows(axes)
    else:
        axes = parse_grid(",".join(args.grid) if args.grid else DEFAULT_QUBIT_GRID, ("y", "mu"))
        if set(axes) != {"y", "mu"}:
            raise InputError("qubit grid needs both y and mu axes")
        if np.any(np.abs(axes["y"]) > 1):
            raise InputError("y must lie in [-1, 1]")
        _check_mu_axis(axes["mu"])
        writer.writerow(("y", "mu", "value"))
        rows = qubit_sweep_rows(axes)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _check_mu_axis(mus) -> None:
    try:
        for mu in mus:
            measures.check_mu(mu)
    except ImaginarityError as exc:
        raise InputError(str(exc)) from exc


def _check_gaussian_axes(axes) -> None:
    if "mu" in axes:
        _check_mu_axis(axes["mu"])
    if "nu" in axes and np.any(axes["nu"] < 1):
        raise InputError("nu must be at least 1")
    if "zeta" in axes and np.any(axes["zeta"] < 0):
        raise InputError("zeta (the squeezing modulus) must be non-negative")


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    seed = args.seed
    if seed is None:
        env = os.environ.get("IMAG_SEED")
        try:
            seed = int(env) if env else DEFAULT_SEED
        except ValueError as exc:
            raise InputError(f"IMAG_SEED={env!r} is not an integer") from exc
    reports = audit.run_suite(args.suite, args.trials, seed)
    passed = all(r.passed for r in reports)
    _emit(
        {
            "suite": args.suite,
            "seed": seed,
            "trials": args.trials,
            "passed": passed,
            "checks": [r.to_dict() for r in reports],
        }
    )
    return EXIT_OK if passed else EXIT_AUDIT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="imaginarity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="imaginarity measures of a density-matrix JSON file")
    p.add_argument("state")
    p.add_argument("--measure", choices=["tsallis", "trace", "relent", "fidelity", "all"], default="all")
    p.add_argument("--mu", type=float, default=0.5)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("gaussian", help="Tsallis imaginarity of a Gaussian-state JSON file")
    p.add_argument("state")
    p.add_argument("--mu", type=float, default=0.5)
    p.set_defaults(func=cmd_gaussian)

    p = sub.add_parser("sweep", help="CSV parameter sweep")
    p.add_argument("--grid", action="append", help=f"qubit grid, default {DEFAULT_QUBIT_GRID!r}")
    p.add_argument(
        "--gaussian-grid",
        help="one-mode grid over nu, zeta, theta, xbar2, mu (e.g. 'xbar2:0:5:11,nu:2')",
    )
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run randomized property audits")
    p.add_argument("--suite", choices=list(audit.SUITES) + ["all"], default="all")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("measure", "gaussian"):
            _check_mu_axis([args.mu])
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ImaginarityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
