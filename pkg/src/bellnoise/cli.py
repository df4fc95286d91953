"""Command-line interface.

Subcommands: bell-probs, optimal-dc, aaqpt, compare.  Each writes a CSV or
JSON report to --out (bell-probs prints to stdout when --out is omitted)
and optionally renders a PNG figure next to the data file with --plot.

Exit codes: 0 success, 1 invalid configuration, 2 runtime/numerical
failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .channel import TimingConfig
from .harness import (
    ExperimentConfig,
    bell_probs_payload,
    bell_probs_report,
    emit_bell_probs,
    emit_report,
    run_comparison,
    run_montecarlo,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_IO = 3


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Raise instead of exiting so main() controls the exit code.
    def error(self, message):
        raise _CliError(message)


def _parse_p_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise _CliError(f"--p expects comma-separated decimals, got {text!r}") from exc


def _parse_timing(text: str) -> TimingConfig:
    parts = text.split(",")
    if len(parts) != 4:
        raise _CliError(f"--timing expects t1,t2,t3,T, got {text!r}")
    try:
        t1, t2, t3, period = (float(part) for part in parts)
    except ValueError as exc:
        raise _CliError(f"--timing expects decimals, got {text!r}") from exc
    return TimingConfig(t1=t1, t2=t2, t3=t3, period=period)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--p", required=True, help="comma-separated noise weights in [0,1]")
    sub.add_argument("--counts", type=float, default=1600.0, help="total counts per trial")
    sub.add_argument("--trials", type=int, default=100, help="Monte Carlo trials per weight")
    sub.add_argument("--seed", type=int, default=2026, help="master seed")
    sub.add_argument("--out", required=True, help="output report path")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--plot", action="store_true", help="render a PNG next to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bellnoise", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    bell = commands.add_parser("bell-probs", help="Bell outcome distribution for a timing config")
    bell.add_argument("--timing", required=True, help="t1,t2,t3,T (decimals, same unit)")
    bell.add_argument("--out", default=None, help="output path (stdout when omitted)")
    bell.add_argument("--format", choices=("csv", "json"), default="csv")
    bell.add_argument("--plot", action="store_true", help="render a PNG next to the report")

    optimal = commands.add_parser("optimal-dc", help="optimal-protocol Monte Carlo")
    _add_common(optimal)

    aaqpt = commands.add_parser("aaqpt", help="tomography-baseline Monte Carlo")
    _add_common(aaqpt)
    aaqpt.add_argument("--mode", choices=("poisson", "multinomial"), default="poisson")

    compare = commands.add_parser("compare", help="equal-budget efficiency comparison")
    _add_common(compare)

    return parser


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    if args.command == "bell-probs":
        if args.plot and args.out is None:
            raise _CliError("--plot requires --out")
        return ExperimentConfig(
            experiment="bell-probs",
            p_values=(_parse_timing(args.timing),),
            output_path=args.out,
        )
    if args.command == "compare" and args.trials < 2:
        raise _CliError("compare needs --trials >= 2 for a standard deviation")
    return ExperimentConfig(
        experiment=args.command,
        p_values=_parse_p_list(args.p),
        trials=args.trials,
        counts=args.counts,
        mode=getattr(args, "mode", "multinomial"),
        seed=args.seed,
        output_path=args.out,
    )


def _figure_path(out: str) -> str:
    return str(Path(out).with_suffix(".png"))


def _execute(cfg: ExperimentConfig, args: argparse.Namespace) -> int:
    if cfg.experiment == "bell-probs":
        report = bell_probs_report(cfg)
        if args.out is None:
            sys.stdout.write(bell_probs_payload(report, args.format))
            return EXIT_OK
        emit_bell_probs(report, args.out, args.format)
        if args.plot:
            from .figures import save_bell_probs_figure

            save_bell_probs_figure(report, _figure_path(args.out))
        return EXIT_OK

    report = run_comparison(cfg) if cfg.experiment == "compare" else run_montecarlo(cfg)
    emit_report(report, args.out, args.format)
    if args.plot:
        from .figures import save_montecarlo_figure

        save_montecarlo_figure(report, _figure_path(args.out))
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _build_config(args)
    except (_CliError, ValueError) as exc:
        print(f"bellnoise: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _execute(cfg, args)
    except OSError as exc:
        print(f"bellnoise: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"bellnoise: runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
