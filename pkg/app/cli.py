"""Command-line surface.

Polynomials are written leading coefficient first: "1,0,0,0,0,0,0,1,0,0,0"
is x^10 + x^3 (a_0, a_1, ..., a_10 in hex).
"""
import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from .core.config import settings
from .core.runner import EXIT_ERROR, render, runner_instance
from .models.schemas import RunConfig, RunResult


def setup_logging(verbose: bool = False) -> None:
    """Set up logging configuration"""
    level = logging.DEBUG if verbose else getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )


def _add_field_args(p: argparse.ArgumentParser, poly: bool = True) -> None:
    p.add_argument("--n", type=int, required=poly, help="extension degree of GF(2^n)")
    p.add_argument("--modulus", help="field modulus as hex, e.g. 19 for X^4+X^3+1")
    if poly:
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--poly", help="hex coefficients, leading first, comma separated")
        group.add_argument("--poly-file", help="file holding the coefficient string")
        p.add_argument("--alpha", help="direction alpha as hex")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", help="also write the JSON report to this path")
    p.add_argument("--verbose", "-v", action="store_true", help="verbose logging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gf2n-toolkit",
        description="Differential uniformity of degree-10 polynomials over GF(2^n)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="theorem conditions for a degree-10 polynomial")
    _add_field_args(check)
    check.add_argument("--sweep-cap", type=int, help=f"alphas tried above n={settings.SWEEP_FULL_MAX_N}")
    _add_common(check)

    analyze = sub.add_parser("analyze", help="DDT rows and differential uniformity")
    _add_field_args(analyze)
    analyze.add_argument("--full", action="store_true", help="compute delta(f) even when --alpha is given")
    analyze.add_argument("--counts", action="store_true", help="include the full value histogram")
    analyze.add_argument("--timing", action="store_true",
                         help="add runtime_ms to the delta summary (output is then not reproducible)")
    analyze.add_argument("--spectrum-csv", help="export alpha_hex,beta_hex,count to this CSV")
    analyze.add_argument("--row-max-n", type=int, help=f"raise the row guard (default {settings.ROW_MAX_N})")
    analyze.add_argument("--delta-max-n", type=int, help=f"raise the delta guard (default {settings.DELTA_MAX_N})")
    _add_common(analyze)

    stats = sub.add_parser("stats", help="factorization statistics of specializations")
    _add_field_args(stats)
    stats.add_argument("--mode", choices=["cubic_s3", "quartic_klein"])
    stats.add_argument("--samples", type=int, default=settings.DEFAULT_SAMPLES)
    stats.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    stats.add_argument("--sweep-cap", type=int)
    _add_common(stats)

    bounds = sub.add_parser("bounds", help="effective Chebotarev threshold")
    bounds.add_argument("--d-omega", type=int, required=True)
    bounds.add_argument("--deg-d", type=int, required=True)
    bounds.add_argument("--n", type=int, help="report the V lower bound at this n")
    _add_common(bounds)

    repro = sub.add_parser("reproduce", help="run the built-in worked examples")
    repro.add_argument("--scenario", help="run a single scenario")
    _add_common(repro)

    serve = sub.add_parser("serve", help="start the HTTP API")
    serve.add_argument("--host", default="0.0.0.0")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--reload", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {
        "command": args.command,
        "n": getattr(args, "n", None),
        "modulus": getattr(args, "modulus", None),
        "poly": getattr(args, "poly", None),
        "poly_file": getattr(args, "poly_file", None),
        "alpha": getattr(args, "alpha", None),
        "mode": getattr(args, "mode", None),
        "full": getattr(args, "full", False),
        "include_counts": getattr(args, "counts", False),
        "timing": getattr(args, "timing", False),
        "spectrum_csv": getattr(args, "spectrum_csv", None),
        "d_omega": getattr(args, "d_omega", None),
        "deg_d": getattr(args, "deg_d", None),
        "scenario": getattr(args, "scenario", None),
        "output": args.out,
        "row_max_n": getattr(args, "row_max_n", None),
        "delta_max_n": getattr(args, "delta_max_n", None),
        "sweep_cap": getattr(args, "sweep_cap", None),
    }
    if hasattr(args, "samples"):
        fields["samples"] = args.samples
        fields["seed"] = args.seed
    return RunConfig(**fields)


def _summary(result: RunResult) -> str:
    if result.error:
        return f"error ({result.error}): {result.message}"
    report = result.report or {}
    if result.command == "check":
        lines = [f"theorem {report['theorem']} over GF(2^{report['field']['n']})"]
        for c in report["conditions"]:
            lines.append(f"  {'✓' if c['pass'] else '✗'} {c['name']} {c.get('witness') or ''}".rstrip())
        lines.append(f"alpha={report.get('alpha')} min_n={report['min_n']} -> {report['conclusion']}")
        return "\n".join(lines)
    if result.command == "bounds":
        return f"g_bound={report['g_bound']} min_n={report['min_n']} V>={report['v_lower_bound']} at n={report['n']}"
    if result.command == "reproduce":
        lines = [f"{'PASS' if s['passed'] else 'FAIL'} {s['name']}" for s in report["scenarios"]]
        for s in report["scenarios"]:
            lines.extend(f"  {m}" for m in s.get("mismatches", []))
        return "\n".join(lines)
    return render(result)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(getattr(args, "verbose", False))

    if args.command == "serve":
        import uvicorn

        uvicorn.run("app.main:app", host=args.host, port=args.port, reload=args.reload,
                    log_level=settings.LOG_LEVEL.lower())
        return 0

    try:
        config = config_from_args(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    result = runner_instance.run(config)
    print(render(result) if args.json else _summary(result))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
