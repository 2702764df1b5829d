import argparse
import json
import logging
from pathlib import Path

from pydantic import ValidationError

from gbsm.core.errors import InvalidConfigError
from gbsm.models.profit import ModularProfit
from gbsm.models.schemas import InstanceFile
from gbsm.commands.output import emit
from gbsm.services.generator_service import GeneratorSpec, generator_service

logger = logging.getLogger(__name__)

KINDS = ["random_general", "unit_cost", "adaptive_seeding", "sfkc", "table1"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("generate", help="Write a generated instance as JSON")
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--m", type=int, default=2)
    parser.add_argument("--k", type=float, default=5.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--profit", choices=["modular", "coverage", "concave_modular"], default="coverage")
    parser.add_argument("--forbidden-prob", type=float, default=0.0)
    parser.add_argument("--edge-prob", type=float, default=0.5)
    parser.add_argument("--eps-param", type=float, default=0.25)
    parser.add_argument("--big-m", type=float, default=100.0)
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.kind == "table1":
        instance = generator_service.table1_instance(args.eps_param, args.big_m, args.k)
        oracle = ModularProfit([1.0] * instance.n)
    else:
        try:
            spec = GeneratorSpec(
                kind=args.kind,
                n=args.n,
                m=args.m,
                k=args.k,
                profit=args.profit,
                forbidden_prob=args.forbidden_prob,
                edge_prob=args.edge_prob,
            )
        except ValidationError as exc:
            raise InvalidConfigError(str(exc)) from exc
        instance, oracle = spec.build(args.seed)

    payload = InstanceFile.from_problem(instance, oracle).model_dump(mode="json")
    # costs are written at full precision so a reload reproduces the instance exactly
    emit(json.dumps(payload, indent=2) + "\n", args.out)
    if args.out:
        logger.info("Instance written. kind=%s path=%s", args.kind, Path(args.out))
    return 0
