import argparse
import logging
import sys
from typing import Optional, Sequence

from gbsm.core.config import settings
from gbsm.core.errors import GBSMError, InvalidConfigError, InvalidInstanceError, TooLargeError
from gbsm.commands import bench, check, exact, generate, solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BAD_INPUT = 2
EXIT_EMPTY_INFEASIBLE = 3
EXIT_TOO_LARGE = 4

logger = logging.getLogger("gbsm")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbsm",
        description="Budgeted submodular maximization over bins and bin-assigned elements",
    )
    parser.add_argument("--log-level", default=settings.GBSM_LOG_LEVEL)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (solve, exact, check, generate, bench):
        command.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(levelname)-8s %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    try:
        return args.handler(args)
    except (InvalidInstanceError, InvalidConfigError) as exc:
        logger.error("Invalid input: %s", exc)
        return EXIT_BAD_INPUT
    except TooLargeError as exc:
        logger.error("Instance too large for exact enumeration: %s", exc)
        return EXIT_TOO_LARGE
    except GBSMError as exc:
        logger.error("Command failed: %s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
