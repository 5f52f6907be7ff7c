"""
Command-line entry point: `python -m seirs <command> [--config run.toml] ...`

Exit codes: 0 success, 1 analysis failure, 2 configuration error, 3 integration failure.
Diagnostics go to stderr; stdout carries only the final summary line.
"""

import argparse
import logging
import sys
from typing import List, Optional

from config.settings import get_settings
from seirs import __version__
from seirs.cli.commands import COMMANDS
from seirs.cli.config import load_config
from seirs.errors import ConfigError, IntegrationError, SeirsError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_INTEGRATION = 3


def _add_global_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="TOML run configuration")
    parser.add_argument("--out", help="Output directory (overrides output_dir)")
    parser.add_argument("--jobs", type=int, help="Worker processes for sweep")
    parser.add_argument("--seed", type=int, help="Seed for random initial conditions")
    parser.add_argument("--tol", type=float, help="Integration relative tolerance")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seirs",
        description="Periodic SEIRS models: simulation, reproduction ratio, endemic orbits",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_global_flags(parser)

    # same flags after the subcommand; SUPPRESS keeps them from clobbering earlier values
    shared = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    _add_global_flags(shared)

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "simulate": "Integrate from the configured initial conditions and write trajectory CSVs",
        "analyze": "Disease-free solution, R0 and the threshold report",
        "endemic": "Threshold report with persistence floor and a priori bounds",
        "orbit": "Locate a periodic orbit by shooting",
        "sweep": "Threshold quantities over a (beta, amplitude, phase) grid",
        "check-hypotheses": "Grid audit of the incidence hypotheses",
        "figures": "Trajectory data for the forced mass-action cells",
    }
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[shared], help=helps[name])
    return parser


def _configure_logging(level: Optional[str]) -> None:
    level = (level or get_settings().LOG_LEVEL).upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.log_level)

    try:
        config = load_config(
            args.config,
            overrides={"seed": args.seed, "output_dir": args.out, "jobs": args.jobs, "tol": args.tol},
        )
        summary = COMMANDS[args.command](config)
    except ConfigError as e:
        logger.error(f"[CLI] Configuration error: {e}")
        return EXIT_CONFIG
    except IntegrationError as e:
        logger.error(f"[CLI] Integration failed: {e}")
        return EXIT_INTEGRATION
    except SeirsError as e:
        logger.error(f"[CLI] {args.command} failed: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.exception(f"[CLI] Unexpected error in {args.command}: {e}")
        return EXIT_FAILURE

    print(summary)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
