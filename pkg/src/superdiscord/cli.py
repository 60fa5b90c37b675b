"""Command-line interface: ``superdiscord {compute,sweep-werner,sweep-bloch,verify}``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 internal
consistency violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import corr, kernels, verify
from .measure import STRONG, qubit_basis
from .states import (BlochNormalForm, StateFileError, StateValidationError,
                     bloch_normal_form, load_state, pure_schmidt, werner)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def fmt(v: float) -> str:
    """Ten significant digits, with exact zero and inf spelled plainly."""
    if v == 0:
        return "0"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.10g}"


def parse_strength(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "strong"):
        return STRONG
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid strength {text!r}") from None
    if not x >= 0:
        raise argparse.ArgumentTypeError(f"strength must be >= 0 or 'inf', got {text}")
    return x


def parse_grid(text: str) -> tuple[int, int]:
    try:
        nt, np_ = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 64x128, got {text!r}") from None
    return nt, np_


def _floats(spec: str, n: int | None, name: str) -> list[float]:
    try:
        vals = [float(v) for v in spec.split(",")] if spec else []
    except ValueError:
        raise InputError(f"{name}: parameters must be comma-separated reals, got {spec!r}") from None
    if n is not None and len(vals) != n:
        raise InputError(f"{name}: expected {n} parameters, got {len(vals)}")
    return vals


def parse_bloch(spec: str) -> BlochNormalForm:
    v = _floats(spec, 9, "bloch")
    return BlochNormalForm(tuple(v[0:3]), tuple(v[3:6]), tuple(v[6:9]))


def resolve_state(spec: str):
    """Preset ``name:params`` or a path to a JSON state file."""
    name, _, params = spec.partition(":")
    try:
        if name == "pure" and params:
            return pure_schmidt(_floats(params, 1, "pure")[0])
        if name == "werner" and params:
            return werner(_floats(params, 1, "werner")[0])
        if name == "bloch" and params:
            return bloch_normal_form(parse_bloch(params))
        if name == "maximally-entangled" and not params:
            return pure_schmidt(0.5)
        path = Path(spec)
        if not path.exists():
            raise InputError(
                f"unknown state {spec!r}: not a preset (pure:L, werner:Z, bloch:a1,...,c3, "
                f"maximally-entangled) and no such file")
        return load_state(path)
    except (StateValidationError, StateFileError) as exc:
        raise InputError(str(exc)) from None


def _settings(args) -> corr.OptimizationSettings:
    nt, np_ = args.grid
    try:
        return corr.OptimizationSettings(n_theta=nt, n_phi=np_, refine_tolerance=args.refine_tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8", newline=""), True
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _write_csv(path, header, rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    fh, close = _open_out(path)
    try:
        fh.write(buf.getvalue())
    finally:
        if close:
            fh.close()


# -- subcommands -------------------------------------------------------------

def cmd_compute(args) -> int:
    rho = resolve_state(args.state)
    if rho.dim != 4:
        raise InputError("compute needs a two-qubit (4x4) state")
    settings = _settings(args)
    basis = None
    if args.basis is not None:
        th, ph = _floats(args.basis, 2, "--basis")
        basis = qubit_basis(th, ph)
    if args.no_optimize and basis is None:
        raise InputError("--no-optimize requires --basis THETA,PHI")
    report = corr.correlation_report(rho, args.x, settings,
                                     basis=basis if args.no_optimize else None)
    report.check()
    if args.json:
        d = report.as_dict()
        d["strength_x"] = fmt(d["strength_x"]) if math.isinf(d["strength_x"]) else d["strength_x"]
        print(json.dumps(d, indent=2))
        return EXIT_OK
    mode = "fixed basis" if not report.optimized else "minimised over bases"
    lines = [
        f"strength x               {fmt(report.strength_x)}",
        f"conditional entropies    {mode}",
        f"S(A)                     {fmt(report.entropy_A)}",
        f"S(B)                     {fmt(report.entropy_B)}",
        f"S(AB)                    {fmt(report.entropy_AB)}",
        f"S(A|B)                   {fmt(report.entropy_AB - report.entropy_B)}",
        f"mutual information I     {fmt(report.mutual_information)}",
        f"classical correlation J  {fmt(report.classical_correlation)}",
        f"discord D                {fmt(report.discord)}",
        f"super discord D_w        {fmt(report.super_discord)}",
        f"strong basis (th, ph)    {fmt(report.optimal_basis_strong[0])}, {fmt(report.optimal_basis_strong[1])}",
        f"weak basis (th, ph)      {fmt(report.optimal_basis_weak[0])}, {fmt(report.optimal_basis_weak[1])}",
    ]
    print("\n".join(lines))
    return EXIT_OK


def cmd_sweep_werner(args) -> int:
    if args.steps < 2:
        raise InputError("--steps must be >= 2")
    if not (-1 / 3 - 1e-12 <= args.z_min <= args.z_max <= 1 + 1e-12):
        raise InputError("z range must satisfy -1/3 <= z-min <= z-max <= 1")
    settings = _settings(args)
    rows = []
    for z in np.linspace(args.z_min, args.z_max, args.steps):
        rep = corr.correlation_report(werner(float(z)), args.x, settings)
        rep.check()
        rows.append([fmt(float(z)), fmt(args.x), fmt(rep.mutual_information),
                     fmt(rep.classical_correlation), fmt(rep.discord), fmt(rep.super_discord)])
    _write_csv(args.out, ["z", "x", "mutual_information", "classical_correlation",
                          "discord", "super_discord"], rows)
    return EXIT_OK


def cmd_sweep_bloch(args) -> int:
    if args.theta_steps < 1 or args.x_steps < 1:
        raise InputError("step counts must be positive")
    if not args.state.startswith("bloch:"):
        raise InputError("sweep-bloch needs --state bloch:a1,a2,a3,b1,b2,b3,c1,c2,c3")
    rho = resolve_state(args.state)
    s_cond = corr.conditional_entropy_AB(rho)
    blocks = kernels.reduce_blocks(rho.mat)
    thetas = np.linspace(0.0, math.pi, args.theta_steps)
    xs = np.linspace(0.0, args.x_max, args.x_steps) if args.x_steps > 1 else np.array([0.0])
    surface = np.array([kernels.objective_grid(blocks, thetas, [args.phi], math.tanh(x))[:, 0]
                        for x in xs])
    if np.any(np.diff(surface, axis=0) > 1e-9):
        raise corr.InternalConsistencyError("weak discord surface increases with x")
    rows = []
    for i, th in enumerate(thetas):
        for k, x in enumerate(xs):
            s_w = float(surface[k, i])
            rows.append([fmt(float(th)), fmt(float(x)), fmt(s_w), fmt(s_w - s_cond)])
    _write_csv(args.out, ["theta", "x", "weak_conditional_entropy",
                          "weak_discord_fixed_basis"], rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be >= 1")
    settings = _settings(args)
    reports = verify.run_all(args.trials, args.seed, settings)
    total = 0
    for name, rep in reports.items():
        status = "PASS" if rep.ok else "FAIL"
        print(f"{status} {name}: {rep.checks_run} checks, {len(rep.failures)} failures, "
              f"max violation {fmt(rep.max_violation)}")
        total += len(rep.failures)
    if args.out:
        rows = [[f.check, "" if f.seed is None else f.seed, f.parameters,
                 fmt(f.observed), fmt(f.bound)]
                for rep in reports.values() for f in rep.failures]
        _write_csv(args.out, ["check", "seed", "parameters", "observed", "bound"], rows)
    return EXIT_OK if total == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superdiscord",
        description="Super quantum discord of two-qubit states under weak measurements.")
    sub = parser.add_subparsers(dest="command", required=True)

    def opt_flags(p):
        p.add_argument("--grid", type=parse_grid, default=(64, 128),
                       help="coarse basis grid NTHETAxNPHI (default 64x128)")
        p.add_argument("--refine-tol", type=float, default=1e-10,
                       help="stop refinement when a sweep improves less than this (bits)")

    p = sub.add_parser("compute", help="report all correlation measures for one state")
    p.add_argument("--state", required=True,
                   help="pure:L0 | werner:Z | bloch:a1,a2,a3,b1,b2,b3,c1,c2,c3 | "
                        "maximally-entangled | path to JSON state file")
    p.add_argument("--x", type=parse_strength, default=0.2, help="strength, or 'inf'")
    p.add_argument("--basis", help="THETA,PHI in radians")
    p.add_argument("--no-optimize", action="store_true",
                   help="evaluate conditional entropies in --basis instead of minimising")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    opt_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep-werner", help="discords of the Werner family versus z")
    p.add_argument("--x", type=parse_strength, default=0.2)
    p.add_argument("--z-min", type=float, default=0.0)
    p.add_argument("--z-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--out", help="CSV path (default stdout)")
    opt_flags(p)
    p.set_defaults(func=cmd_sweep_werner)

    p = sub.add_parser("sweep-bloch", help="fixed-basis weak discord over (theta, x)")
    p.add_argument("--state", default="bloch:0.01,0.1,0.22,0.1,0.03,0.5,0.1,0.02,0.2")
    p.add_argument("--phi", type=float, default=1.57)
    p.add_argument("--theta-steps", type=int, default=61)
    p.add_argument("--x-max", type=float, default=5.0)
    p.add_argument("--x-steps", type=int, default=51)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep_bloch)

    p = sub.add_parser("verify", help="run the dominance, monotonicity and identity checks")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", help="write failures as CSV")
    opt_flags(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except corr.InternalConsistencyError as exc:
        print(f"internal consistency violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
