#!/usr/bin/env python3
"""
pf-theory command-line entry point.

Subcommands: spectrum, trajectory, lorentz-check, limits. Exit codes:
0 success, 1 usage or configuration error, 2 numerical failure,
3 regime violation.
"""

import argparse
import logging
import sys
from typing import List, Optional

from config.settings import Config
from src.core.constants import ExitCode, LimitFamily, OutputFormat, SolverBackend, UnitSystem
from src.core.exceptions import ConfigurationError, PFTheoryError

from .commands import COMMANDS
from .config import RunConfig, parse_bool, parse_config_file

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with code 1 instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="Flat key = value file; flags override it")
    parser.add_argument("--units", choices=[u.value for u in UnitSystem], default=None)
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=None)
    parser.add_argument("--output", "-o", default=None, help="Report file (default: stdout)")
    parser.add_argument("--seed", type=int, default=None, help="Base seed (PF_SEED overrides)")
    parser.add_argument("--verbose", "-v", action="store_true", default=False)
    parser.add_argument("--quiet", "-q", action="store_true", default=False)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="pf-theory", description="Particle-field kinematics and relativistic spectra")
    subparsers = parser.add_subparsers(dest="command", required=True)

    spectrum = subparsers.add_parser("spectrum", help="Energy levels of a bound problem")
    _add_common(spectrum)
    spectrum.add_argument("--box", action="store_true", default=False, help="Infinite square well on [0, a]")
    spectrum.add_argument("--a", default=None, help="Box width; accepts 'pi', '2pi', 'pi/2'")
    spectrum.add_argument("--v-floor", type=float, default=None, help="Constant potential inside the box")
    spectrum.add_argument("--potential-csv", default=None, help="Two-column x,V file")
    spectrum.add_argument("--x-lo", default=None)
    spectrum.add_argument("--x-hi", default=None)
    spectrum.add_argument("--m0", type=float, default=None, help="Rest mass (0 for photonic)")
    spectrum.add_argument("--form", default=None, help="mass_dependent or mass_independent")
    spectrum.add_argument("--levels", type=int, default=None)
    spectrum.add_argument("--backend", choices=[b.value for b in SolverBackend], default=None)
    spectrum.add_argument("--grid-size", type=int, default=None)
    spectrum.add_argument("--tol", type=float, default=None, help="Shooting boundary tolerance")
    spectrum.add_argument("--e-min", type=float, default=None)
    spectrum.add_argument("--e-max", type=float, default=None)
    spectrum.add_argument(
        "--eigenfields", nargs="?", const=Config.OUTPUT_DIR, default=None,
        help="Dump per-level x,chi CSV files into this directory",
    )

    trajectory = subparsers.add_parser("trajectory", help="Particle and PF trajectory in a stationary field")
    _add_common(trajectory)
    trajectory.add_argument("--field", choices=["zero", "linear", "sine", "box", "csv"], default=None)
    trajectory.add_argument("--field-csv", default=None)
    trajectory.add_argument("--slope", type=float, default=None)
    trajectory.add_argument("--amplitude", type=float, default=None)
    trajectory.add_argument("--wavenumber", type=float, default=None)
    trajectory.add_argument("--n", type=int, default=None, help="Box eigenfield index")
    trajectory.add_argument("--a", default=None, help="Box eigenfield width")
    trajectory.add_argument("--force", choices=["free", "harmonic"], default=None)
    trajectory.add_argument("--spring", type=float, default=None)
    trajectory.add_argument("--center", default=None)
    trajectory.add_argument("--x0", default=None)
    trajectory.add_argument("--v0", type=float, default=None)
    trajectory.add_argument("--mass", type=float, default=None)
    trajectory.add_argument("--g-pf", type=float, default=None)
    trajectory.add_argument("--dt", type=float, default=None)
    trajectory.add_argument("--steps", type=int, default=None)
    trajectory.add_argument("--sample-every", type=int, default=None)

    lorentz = subparsers.add_parser("lorentz-check", help="Randomized frame-matching and interval check")
    _add_common(lorentz)
    lorentz.add_argument("--samples", type=int, default=None)
    lorentz.add_argument("--max-speed", type=float, default=None, help="Fraction of c")
    lorentz.add_argument("--max-slope", type=float, default=None)
    lorentz.add_argument("--min-gamma", type=float, default=None)
    lorentz.add_argument("--tolerance", type=float, default=None)
    lorentz.add_argument("--workers", type=int, default=None)
    lorentz.add_argument("--scaling", action="store_true", default=False, help="Also fit the quartic slope scaling")
    lorentz.add_argument("--scaling-v-p-prime", type=float, default=None, help="Primed particle speed of the scaling fit")
    lorentz.add_argument("--scaling-v-pf", type=float, default=None, help="Frame speed of the scaling fit")

    limits = subparsers.add_parser("limits", help="Non-relativistic and photon limit tables")
    _add_common(limits)
    limits.add_argument("family", help=f"One of {', '.join(f.value for f in LimitFamily)}")
    limits.add_argument("--a", default=None)
    limits.add_argument("--levels", type=int, default=None)
    limits.add_argument("--masses", default=None, help="Comma-separated m0 values")
    limits.add_argument("--gammas", default=None, help="Comma-separated gamma_p values")
    limits.add_argument("--slopes", default=None, help="Comma-separated field slopes")

    return parser


def _merge_config_file(parser: argparse.ArgumentParser, args: argparse.Namespace, argv: List[str]) -> argparse.Namespace:
    """Re-parse with config-file values as defaults so flags still win."""
    values = parse_config_file(args.config)
    action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    subparser = action.choices[args.command]
    known = {item.dest: item for item in subparser._actions}

    defaults = {}
    for key, value in values.items():
        if key in ("command", "config") or key not in known:
            raise ConfigurationError(f"Unknown config key '{key}' for {args.command}", config_key=key)
        action = known[key]
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            defaults[key] = parse_bool(key, value)
        else:
            defaults[key] = value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _configure_logging(args: argparse.Namespace) -> None:
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    else:
        level = getattr(logging, str(Config.LOG_LEVEL).upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else ExitCode.SUCCESS

    _configure_logging(args)
    try:
        if args.config:
            args = _merge_config_file(parser, args, argv)
        config = RunConfig.from_namespace(args)
        config.progress = not args.quiet and sys.stderr.isatty()
        logger.debug(f"Run configuration: {config.to_dict()}")
        return int(COMMANDS[config.command](config))
    except PFTheoryError as e:
        logger.error(str(e))
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return ExitCode.NUMERICAL_FAILURE


if __name__ == "__main__":
    sys.exit(main())
