import argparse

from gbsm.commands.output import emit_json
from gbsm.models.schemas import read_instance
from gbsm.services.cost_service import cost_service
from gbsm.services.oracle_service import oracle_service


def register(subparsers) -> None:
    parser = subparsers.add_parser("exact", help="Brute-force optimum of a small instance")
    parser.add_argument("instance_path")
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    instance, oracle = read_instance(args.instance_path)
    bins, elements, profit = oracle_service.brute_force_opt(instance, oracle, instance.budget)
    emit_json(
        {
            "profit": profit,
            "cost": cost_service.solution_cost(instance, bins, elements),
            "bins": sorted(bins),
            "elements": sorted(elements),
        },
        args.out,
    )
    return 0
