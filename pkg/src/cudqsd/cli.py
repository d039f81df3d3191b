"""Command-line interface: ``cudqsd {theory,simulate,sweep,verify}``.

Exit codes: 0 success, 1 invalid input, 2 runtime failure (I/O or a failed
verification suite).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import numpy as np

from .discrimination import theory_report
from .montecarlo import NoiseModel, estimate, percentage_errors, run_trials
from .qudit import DEFAULT_FLOOR, CoefficientProfile, CoefficientVector
from .sweep import DEFAULT_XI_PRIMES, SweepError, SweepGrid, export, r_histogram, run_sweep, summarize
from .verify import run_verification

EXIT_OK, EXIT_VALIDATION, EXIT_RUNTIME = 0, 1, 2
RENORM_TOL = 1e-6


class ValidationError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def parse_csq(text: str) -> np.ndarray:
    """Comma-separated ``|c_k|^2``; renormalized if the sum is within 1e-6 of 1."""
    try:
        vals = np.array([float(v) for v in text.split(",") if v.strip()])
    except ValueError as exc:
        raise ValidationError(f"--csq must be a comma-separated list of numbers: {exc}") from None
    if np.any(vals <= 0):
        raise ValidationError("--csq entries must be positive (|c_k| != 0 for linear independence)")
    total = vals.sum()
    if abs(total - 1.0) > RENORM_TOL:
        raise ValidationError(f"--csq must sum to 1 (got {total!r}); normalization invariant violated")
    return vals / total


def coefficients_from_args(args) -> CoefficientVector:
    sources = [args.csq is not None, args.uniform, args.j0 is not None]
    if sum(sources) != 1:
        raise ValidationError("give exactly one coefficient source: --csq, --uniform, or --j0/--xi-prime")
    if args.csq is not None:
        csq = parse_csq(args.csq)
        if args.d is not None and csq.size != args.d:
            raise ValidationError(f"--csq has {csq.size} entries but --d is {args.d}")
        return CoefficientVector.from_csq(csq)
    if args.d is None:
        raise ValidationError("--d is required with --uniform or --j0")
    if args.uniform:
        return CoefficientVector.uniform(args.d)
    if args.xi_prime is None:
        raise ValidationError("--xi-prime is required with --j0")
    return CoefficientProfile(args.d, args.j0, args.xi_prime, args.floor).coefficients()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _kv_lines(d: dict) -> str:
    lines = []
    for k, v in d.items():
        lines.append(f"{k:<24} {v:.6f}" if isinstance(v, float) else f"{k:<24} {v}")
    return "\n".join(lines) + "\n"


def cmd_theory(args) -> int:
    c = coefficients_from_args(args)
    rep = theory_report(c).to_dict()
    payload = {"d": c.dim, "csq": c.csq.tolist(), "theory": rep}
    if args.format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(f"d                        {c.dim}\n" + _kv_lines(rep), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.seed is None:
        raise ValidationError("--seed is required for simulate")
    c = coefficients_from_args(args)
    noise = NoiseModel(args.gamma)
    theory = theory_report(c)
    counts = run_trials(c, noise, args.shots, args.seed)
    est = estimate(counts, theory)
    errs = percentage_errors(est, theory)
    payload = {"d": c.dim, "csq": c.csq.tolist(), "gamma": noise.gamma, "shots": args.shots,
               "seed": args.seed, "theory": theory.to_dict(), "estimate": est.to_dict(),
               "percentage_errors": errs}
    if args.format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        est_d = est.to_dict()
        flagged = est_d.pop("flagged")
        text = (f"d={c.dim} gamma={noise.gamma} shots={args.shots} seed={args.seed}\n"
                "[theory]\n" + _kv_lines(theory.to_dict())
                + "[estimate]\n" + _kv_lines(est_d)
                + (f"flagged (arm, input)    {flagged}\n" if flagged else "")
                + "[percentage errors]\n" + _kv_lines(errs))
        _emit(text, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.d is None:
        raise ValidationError("--d is required for sweep")
    fmt = args.format if args.format in ("csv", "json") else "csv"
    grid = SweepGrid(
        d=args.d,
        j0_values=None if args.j0 is None else (args.j0,),
        xi_prime_values=DEFAULT_XI_PRIMES if args.xi_prime is None else (args.xi_prime,),
        floor=args.floor,
        noise=NoiseModel(args.gamma),
        shots_per_input=args.shots,
        seed=0 if args.seed is None else args.seed,
    )
    rows = run_sweep(grid, workers=args.workers)
    out = args.out or f"sweep_d{grid.d}.{fmt}"
    export(rows, fmt, out, grid)
    summary = summarize(rows)
    summary["output"] = str(out)
    if fmt == "json":
        sys.stdout.write(json.dumps(summary, indent=2) + "\n")
        return EXIT_OK
    lines = [f"wrote {summary['rows']} rows to {out}"]
    for key in ("r_th", "r_est", "dpp", "dpmc", "dpmi"):
        if key in summary:
            s = summary[key]
            lines.append(f"{key:<6} min {s['min']:.6f}  max {s['max']:.6f}  mean {s['mean']:.6f}")
    if summary["nonorthogonal_rows"]:
        h = r_histogram(rows)
        lines.append("R histogram (estimate): " + " ".join(str(int(n)) for n in h.counts))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verification(trials=args.trials, seed=0 if args.seed is None else args.seed,
                              completeness_tol=args.completeness_tol)
    if args.format == "json":
        _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    else:
        _emit("\n".join(report.lines()) + "\n", args.out)
    return EXIT_OK if report.ok else EXIT_RUNTIME


def _common(p: argparse.ArgumentParser, formats=("text", "json"), out_help="output file (default: stdout)") -> None:
    p.add_argument("--d", type=int, help="Hilbert-space dimension")
    p.add_argument("--csq", help="comma-separated squared magnitudes |c_k|^2")
    p.add_argument("--uniform", action="store_true", help="uniform coefficients (orthogonal states)")
    p.add_argument("--j0", type=int, help="profile parameter j0")
    p.add_argument("--xi-prime", type=float, dest="xi_prime", help="profile parameter xi/xi_max")
    p.add_argument("--floor", type=float, default=DEFAULT_FLOOR, help="amplitude floor fixing xi_max")
    p.add_argument("--gamma", type=float, default=0.0, help="depolarization weight")
    p.add_argument("--shots", type=int, default=100_000, help="shots per input state")
    p.add_argument("--seed", type=int, help="integer seed (required by simulate)")
    p.add_argument("--out", help=out_help)
    p.add_argument("--format", choices=formats, default=formats[0])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cudqsd", description="Unambiguous and concatenated discrimination of symmetric qudit states.",
                     epilog="exit codes: 0 ok, 1 invalid input, 2 runtime failure")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("theory", help="closed-form protocol probabilities"))
    _common(sub.add_parser("simulate", help="Monte Carlo run of one state set"))
    p = sub.add_parser("sweep", help="theory + simulation over the (j0, xi') grid")
    _common(p, formats=("csv", "json"), out_help="dataset file (default: sweep_d<D>.<format>)")
    p.add_argument("--workers", type=int, default=None, help="threads for row-level parallelism")
    p = sub.add_parser("verify", help="run the randomized invariant suites")
    _common(p)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--completeness-tol", type=float, default=1e-20, dest="completeness_tol")
    return parser


COMMANDS = {"theory": cmd_theory, "simulate": cmd_simulate, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.shots < 1:
            raise ValidationError("--shots must be at least 1")
        return COMMANDS[args.command](args)
    except (ValueError, IndexError, SweepError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
