import argparse
import json
import logging
from pathlib import Path

from pydantic import ValidationError

from gbsm.core.errors import InvalidConfigError
from gbsm.commands.output import emit
from gbsm.services.bench_service import BenchConfig, bench_service

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("bench", help="Run a benchmark sweep and print a CSV ratio table")
    parser.add_argument("config_path")
    parser.add_argument("--out", default=None)
    parser.add_argument(
        "--no-timing",
        action="store_true",
        help="leave wall_ms empty so repeated runs are byte-identical",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    try:
        raw = json.loads(Path(args.config_path).read_text())
        config = BenchConfig.model_validate(raw)
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise InvalidConfigError(f"bad bench config {args.config_path}: {exc}") from exc
    if args.no_timing:
        config = config.model_copy(update={"record_timing": False})

    frame = bench_service.run(config)
    emit(bench_service.to_csv(frame), args.out)
    return 0
