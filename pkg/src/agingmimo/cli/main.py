"""Command line entry point ``agingmimo``.

Exit codes: 0 on success, 2 for configuration errors, 3 for numerical failures.

"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import Executor, ThreadPoolExecutor
from contextlib import nullcontext
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

import agingmimo
from agingmimo.cli import commands
from agingmimo.cli.config import RunConfig, load_config

logger = logging.getLogger(__name__)

EXIT_SUCCESS: int = 0
EXIT_CONFIG: int = 2
EXIT_NUMERICAL: int = 3

COMMANDS: dict[str, str] = {
    "stcc": "tabulate the space-time correlation of adjacent antennas",
    "se": "per-user SE and ASE at a single operating point and block length",
    "ase-sweep": "ASE over block lengths for the sweep grid",
    "copt-fit": "fit the optimal block length model to sweep results",
    "delta-ase": "ASE gain of the predicted over the coherence-time block length",
    "layout-dump": "layout, VUE positions and associations of a drop",
}


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="JSON configuration")
    common.add_argument("--seed", type=int, default=None, help="master seed")
    common.add_argument(
        "--threads", type=_positive_int, default=1, help="worker threads for the drops"
    )
    common.add_argument("--out", type=Path, default=None, help="output directory")
    common.add_argument(
        "--paper-fidelity",
        "--full-scale",
        dest="full_scale",
        action="store_true",
        help="full-size array (M = 100) with stride 8",
    )
    common.add_argument(
        "--stride", type=_positive_int, default=None, help="decimation of the symbol axis"
    )
    common.add_argument(
        "--resume", action="store_true", help="skip points already in the sweep CSV"
    )
    common.add_argument(
        "--non-aging", action="store_true", help="replace the temporal correlation by one"
    )
    common.add_argument("--verbose", action="store_true", help="per-drop progress")

    parser = argparse.ArgumentParser(
        prog="agingmimo",
        description="Channel aging in multi-cell massive MIMO vehicular networks.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, description in COMMANDS.items():
        subparser = subparsers.add_parser(name, parents=[common], help=description)
        if name == "copt-fit":
            subparser.add_argument(
                "--sweep-file", type=Path, default=None, help="sweep CSV to fit"
            )
    return parser


def configure(args: argparse.Namespace) -> RunConfig:
    """Configuration file with command line overrides applied."""
    config = load_config(args.config)
    if args.full_scale:
        config = config.full_scale()
    monte_carlo = config.monte_carlo
    if args.seed is not None:
        monte_carlo = replace(monte_carlo, master_seed=args.seed)
    if args.stride is not None:
        monte_carlo = replace(monte_carlo, stride=args.stride)
    link = replace(config.link, non_aging=True) if args.non_aging else config.link
    output = config.output
    if args.out is not None:
        output = replace(output, directory=str(args.out))
    return replace(config, monte_carlo=monte_carlo, link=link, output=output)


def run(
    args: argparse.Namespace, config: RunConfig, executor: Optional[Executor]
) -> list[Path]:
    out_dir = Path(config.output.directory)
    if args.command == "stcc":
        return commands.cmd_stcc(config, out_dir)
    elif args.command == "se":
        return commands.cmd_se(config, out_dir, executor, args.verbose)
    elif args.command == "ase-sweep":
        return commands.cmd_ase_sweep(config, out_dir, executor, args.resume, args.verbose)
    elif args.command == "copt-fit":
        return commands.cmd_copt_fit(config, out_dir, args.sweep_file)
    elif args.command == "delta-ase":
        return commands.cmd_delta_ase(config, out_dir, executor, args.verbose)
    elif args.command == "layout-dump":
        return commands.cmd_layout_dump(config, out_dir)
    raise agingmimo.ConfigError(f"Unknown command {args.command}.")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run a command and map failures to exit codes."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stdout,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s",
    )

    try:
        config = configure(args)
        logger.info(f"{args.command}: configuration {config.config_hash()}.")
        pool = ThreadPoolExecutor(max_workers=args.threads) if args.threads > 1 else None
        with pool if pool is not None else nullcontext():
            paths = run(args, config, pool)
    except (
        agingmimo.ConfigError,
        agingmimo.DomainError,
        agingmimo.SchemaError,
        agingmimo.EmptyCurve,
    ) as error:
        logger.error(f"Configuration error: {error}")
        return EXIT_CONFIG
    except agingmimo.NumericalFailure as error:
        logger.error(f"Numerical failure: {error}")
        return EXIT_NUMERICAL

    for path in paths:
        logger.info(f"Wrote {path}.")
    return EXIT_SUCCESS


if __name__ == "__main__":
    sys.exit(main())
