import argparse
import logging

from pydantic import ValidationError

from gbsm.core.config import settings
from gbsm.core.errors import InvalidConfigError, TooLargeError
from gbsm.commands.output import emit_json
from gbsm.models.schemas import read_instance
from gbsm.models.solution import SolveStatus
from gbsm.services.oracle_service import oracle_service
from gbsm.services.solver_service import SolverConfig, solver_service

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("solve", help="Run the greedy solver on an instance file")
    parser.add_argument("instance_path")
    parser.add_argument("--list", dest="list_builder", choices=["enum", "expbudget"], default="expbudget")
    parser.add_argument("--epsilon", type=float, default=settings.GBSM_DEFAULT_EPSILON)
    parser.add_argument("--beta", type=float, default=1.0)
    parser.add_argument("--depth", type=int, default=settings.GBSM_DEFAULT_DEPTH)
    parser.add_argument("--budget-override", type=float, default=None)
    parser.add_argument(
        "--with-opt",
        action="store_true",
        help="also compute the exact optimum and report the achieved ratio",
    )
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    instance, oracle = read_instance(args.instance_path)
    if args.budget_override is not None:
        instance = instance.with_budget(args.budget_override)
    try:
        config = SolverConfig(
            beta=args.beta,
            list_builder=args.list_builder,
            epsilon=args.epsilon,
            depth=args.depth,
        )
    except ValidationError as exc:
        raise InvalidConfigError(str(exc)) from exc

    solution, report = solver_service.solve(instance, oracle, config)
    if args.with_opt:
        try:
            _, _, opt_profit = oracle_service.brute_force_opt(instance, oracle, instance.budget)
            report.opt_profit = opt_profit
            report.ratio = 1.0 if opt_profit <= 0 else solution.profit / opt_profit
        except TooLargeError as exc:
            logger.warning("Exact optimum skipped: %s", exc)

    partial = solution.partial.to_dict()
    emit_json(
        {
            "profit": partial["profit"],
            "cost": partial["cost"],
            "bins": partial["bins"],
            "elements": partial["elements"],
            "assignment": partial["assignment"],
            "status": solution.status.value,
            "report": report.to_dict(),
        },
        args.out,
    )
    return 3 if solution.status == SolveStatus.EMPTY_INFEASIBLE else 0
