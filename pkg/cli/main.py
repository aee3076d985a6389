"""
oplog command line.

    python oplog.py <command> [--family SPEC | --matrix FILE] [--t T] [--s S]
                    [--eta Z] [--nu Z] [--format json|csv] [--output PATH]
                    [--seed N] [--tolerance TOL]

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence, Tuple

from applications.cole_hopf import canonical_convention
from cli.commands import COMMANDS, RunConfig, UsageError
from cli.reports import Report, write_report
from cli.suite import run_suite
from config.settings import DEFAULT_OUTPUT_FORMAT, DEFAULT_SEED, LOG_FORMAT, LOG_LEVEL
from utils.errors import InvalidMatrix, OperatorCalculusError, UnknownFamily, error_name

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

COMMAND_HELP = {
    "logm": "principal logarithm of a matrix by contour integral",
    "verify-gen": "recover A(t) of a family by every representation",
    "equivalence": "pairwise agreement of the four representations (nu = eta/(1-eta))",
    "formal-log": "untranslated Log[U I_eta] - Log[I_eta] diagnostic",
    "algebra": "boundedness, continuity and commutation of a1, a2 on a grid",
    "cole-hopf": "Cole-Hopf transform of periodic heat data and Burgers residuals",
    "striplog": "logarithm of the logarithm with round-trip check",
    "suite": "full acceptance suite",
    "families": "list the family catalogue and check its presets",
}


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _grid(text: str) -> Tuple[Tuple[float, float], ...]:
    try:
        return tuple(tuple(float(v) for v in item.split(":")) for item in text.split(",") if item)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 't:s,t:s', got {text!r}")


def _convention(name: str) -> str:
    return name if name == "both" else canonical_convention(name)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--family", dest="family_spec", help="family spec, e.g. constant:B=rot or advection:n=16")
    source.add_argument("--matrix", dest="matrix_path", help="matrix JSON file {n, entries}")
    common.add_argument("--t", type=float, default=1.0, help="evolution time t (default 1.0)")
    common.add_argument("--s", type=float, default=0.5, help="initial time s (default 0.5)")
    common.add_argument("--eta", type=_complex, help="resolvent parameter (default: selected)")
    common.add_argument("--nu", type=_complex, help="translation parameter (default: selected)")
    common.add_argument("--format", dest="output_format", choices=("json", "csv"), default=DEFAULT_OUTPUT_FORMAT)
    common.add_argument("--output", dest="output_path", help="report file (default stdout)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--tolerance", type=float, help="override every tolerance (forces failures when tiny)")
    common.add_argument("--derivative", choices=("chain", "direct"), default="chain")
    common.add_argument("--log-level", default=LOG_LEVEL)

    parser = argparse.ArgumentParser(prog="oplog", description="Logarithmic representation of evolution generators")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in COMMAND_HELP.items():
        cmd = sub.add_parser(name, parents=[common], help=text, description=text)
        if name == "cole-hopf":
            cmd.add_argument("--mu", type=float, default=0.5)
            cmd.add_argument("--n", type=int, default=128)
            cmd.add_argument("--convention", choices=("paper", "root", "classical", "both"), default="both")
            cmd.add_argument("--series", dest="series_path", help="CSV time series of the residuals")
        if name == "algebra":
            cmd.add_argument("--grid", type=_grid, default=(), help="grid points 't:s,t:s,...'")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        family_spec=args.family_spec,
        matrix_path=args.matrix_path,
        t=args.t,
        s=args.s,
        eta=args.eta,
        nu=args.nu,
        output_format=args.output_format,
        output_path=args.output_path,
        seed=args.seed,
        tolerance=args.tolerance,
        derivative=args.derivative,
        mu=getattr(args, "mu", 0.5),
        n=getattr(args, "n", 128),
        convention=_convention(getattr(args, "convention", "both")),
        grid=getattr(args, "grid", ()),
        series_path=getattr(args, "series_path", None),
    )


def run(config: RunConfig) -> Tuple[int, Optional[Report]]:
    """
    Execute one command and write its report.

    Returns:
        (exit code, report); the report is None on usage errors
    """
    try:
        if config.command == "suite":
            report = run_suite(config)
        else:
            report = COMMANDS[config.command](config)
    except (UsageError, InvalidMatrix, UnknownFamily, FileNotFoundError) as e:
        print(f"oplog: error: {e}", file=sys.stderr)
        return EXIT_USAGE, None
    except OperatorCalculusError as e:
        report = config.report()
        report.holds(f"{config.command}:{error_name(e)}", False, str(e))
    except ValueError as e:
        print(f"oplog: error: {e}", file=sys.stderr)
        return EXIT_USAGE, None

    write_report(report, config.output_format, config.output_path)
    return (EXIT_OK if report.passed else EXIT_CHECK_FAILED), report


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_USAGE

    logging.basicConfig(level=args.log_level.upper(), format=LOG_FORMAT, stream=sys.stderr)
    code, _ = run(config_from_args(args))
    return code
