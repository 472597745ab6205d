"""Command-line entry point.

Subcommands: ``eval`` prints every derived quantity of one set descriptor;
``verify`` runs a named check suite over the mixed corpus and grids;
``minimize`` searches for the minimizer of the penalized functional;
``sweep`` tabulates the two-ray deficit-to-asymmetry ratio along a list of
mass levels.  Exit codes: 0 success with zero violations, 1 at least one
violation, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys

from .functionals import FunctionalParams, quantities, stability_params
from .optimize import (
    OptimizerSettings,
    mass_sweep,
    minimize_penalized_functional,
)
from .sets import set_from_json, set_to_dict
from .verify import (
    SUITE_NAMES,
    SuiteConfig,
    emit_report,
    render_report,
    run_suite,
)
from .verify import _format_number as _number
from .verify import _json_value as _json

__all__ = ["cli_main", "main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussiso",
        description="Gaussian isoperimetric quantities, verification suites, and minimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate every derived quantity of one set")
    p_eval.add_argument("--set", required=True, metavar="JSON", help="set descriptor JSON")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True, choices=SUITE_NAMES + ("all",))
    p_verify.add_argument("--samples", type=int, default=10_000)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--out", default=None, help="report file path (default: stdout)")
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")
    p_verify.add_argument(
        "--main-constant",
        type=float,
        default=None,
        help="override the explicit constant of the asymmetry estimate (falsification hook)",
    )

    p_min = sub.add_parser("minimize", help="minimize the penalized functional")
    p_min.add_argument("--s", type=float, required=True, help="target mass level")
    p_min.add_argument("--eps", default="paper", help="barycenter weight: a number or 'paper'")
    p_min.add_argument("--lambda", dest="lambda_pen", default="paper",
                       help="mass-penalty weight: a number or 'paper'")
    p_min.add_argument("--kmax", type=int, default=3)
    p_min.add_argument("--starts", type=int, default=64)
    p_min.add_argument("--seed", type=int, default=0)

    p_sweep = sub.add_parser("sweep", help="two-ray ratio sweep over mass levels")
    p_sweep.add_argument("--s-list", required=True,
                         help="mass levels, space- or comma-separated, all negative")
    return parser


def _resolve_weight(text: str, default_value: float, flag: str) -> float:
    if text == "paper":
        return default_value
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"{flag} must be a number or 'paper', got {text!r}") from None


def _run_eval(args) -> int:
    bundle = quantities(set_from_json(args.set))
    sys.stdout.write(_json(bundle.as_dict()) + "\n")
    return 0


def _run_verify(args) -> int:
    config = SuiteConfig(
        samples=args.samples,
        seed=args.seed,
        jobs=args.jobs,
        **({"main_constant": args.main_constant} if args.main_constant is not None else {}),
    )
    report = run_suite(args.suite, config)
    if args.out is None:
        sys.stdout.write(render_report(report, args.format))
    else:
        emit_report(report, args.out, args.format)
        for c in report.checks:
            status = "FAIL" if c.violations else "pass"
            sys.stdout.write(
                f"{status} {c.name}: {c.violations} violations in {c.samples} samples, "
                f"worst margin {_number(c.worst_margin)}\n"
            )
    return 1 if report.total_violations else 0


def _run_minimize(args) -> int:
    defaults = stability_params(args.s)
    params = FunctionalParams(
        s=args.s,
        eps=_resolve_weight(args.eps, defaults.eps, "--eps"),
        lambda_pen=_resolve_weight(args.lambda_pen, defaults.lambda_pen, "--lambda"),
    )
    settings = OptimizerSettings(multistarts=args.starts, seed=args.seed)
    outcome = minimize_penalized_functional(args.s, params, k_max=args.kmax, settings=settings)
    payload = {
        "s": args.s,
        "eps": params.eps,
        "lambda": params.lambda_pen,
        "k_max": args.kmax,
        "best_set": set_to_dict(outcome.best_set),
        "best_value": outcome.best_value,
        "half_line_value": outcome.half_line_value,
        "half_line_optimal": outcome.half_line_optimal,
        "target_mass": outcome.target_mass,
        "achieved_mass": outcome.achieved_mass,
        "starts_total": len(outcome.starts),
        "starts_converged": sum(1 for d in outcome.starts if d.converged),
    }
    sys.stdout.write(_json(payload) + "\n")
    return 0


def _run_sweep(args) -> int:
    text = args.s_list.replace(",", " ")
    try:
        levels = [float(tok) for tok in text.split()]
    except ValueError:
        raise ValueError(f"--s-list must contain numbers, got {args.s_list!r}") from None
    rows = mass_sweep(levels)
    sys.stdout.write("s,a_s,deficit,beta,ratio\n")
    for row in rows:
        sys.stdout.write(
            f"{_number(row.s)},{_number(row.a_s)},{_number(row.deficit)},"
            f"{_number(row.beta)},{_number(row.ratio)}\n"
        )
    return 0


def _normalize_argv(argv: list[str]) -> list[str]:
    """Join ``--s-list`` with its value so leading-dash level lists parse."""
    out: list[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token == "--s-list":
            value = next(tokens, None)
            if value is None:
                out.append(token)
            else:
                out.append(f"--s-list={value}")
        else:
            out.append(token)
    return out


def cli_main(argv=None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_normalize_argv(list(argv)))
    except SystemExit as exc:  # argparse already printed its message
        return int(exc.code or 0)
    handlers = {
        "eval": _run_eval,
        "verify": _run_verify,
        "minimize": _run_minimize,
        "sweep": _run_sweep,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, RuntimeError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(cli_main())
