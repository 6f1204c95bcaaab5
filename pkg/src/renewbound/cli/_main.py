import argparse
import logging
import sys
import typing

from renewbound import __version__
from renewbound._base import InputError, SolverException

from ._commands import COMMANDS
from ._config import load_run_config, parse_variant

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_SOLVER_ERROR = 3

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="renewbound",
        description="Calibrate zonal electricity prices and compute the optimal renewable installation boundary.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    helps = {
        "estimate": "fit the ARX(1) price model of a zone",
        "boundary": "compute the free boundary",
        "simulate": "simulate the optimal strategy and estimate the payoffs",
        "compare": "compare the realized installation with the boundary",
        "psi-dump": "tabulate the increasing fundamental solution (debug)",
    }
    for name, help_text in helps.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", default=None, help="path to a flat TOML run configuration")
        sub.add_argument("--zone", default=None, help="price zone, e.g. North, CentralNorth, Sardinia")
        sub.add_argument("--seed", type=int, default=None, help="seed of the random numbers")
        sub.add_argument("--out", default=None, help="output directory (default: $RENEWBOUND_OUTDIR or renewbound_out)")
        sub.add_argument(
            "--variant",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="boundary variant switch, e.g. rhat_y_coeff=two_kappa (can be repeated)",
        )
        sub.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
        sub.add_argument("--progress", action="store_true", help="show progress bars")
    return parser


def _overrides(args: argparse.Namespace) -> typing.Dict[str, typing.Any]:
    overrides: typing.Dict[str, typing.Any] = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["output_dir"] = args.out
    for item in args.variant:
        key, value = parse_variant(item)
        overrides[key] = value
    return overrides


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    """
    Run the `renewbound` command line.

    :returns: the exit code: 0 on success, 2 on an input or validation error, 3 on a numerical failure.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        config = load_run_config(args.config, zone=args.zone, overrides=_overrides(args))
        return COMMANDS[args.command](config, args.progress)
    except InputError as e:
        print(f"Input error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except SolverException as e:
        print(f"Numerical failure: {e}", file=sys.stderr)
        logger.debug("Failure data: %s", e.data)
        return EXIT_SOLVER_ERROR
    except ValueError as e:
        print(f"Invalid value: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
