import argparse

from gbsm.core.config import settings
from gbsm.core.errors import InvalidConfigError
from gbsm.commands.output import emit_json
from gbsm.models.schemas import read_instance
from gbsm.services.enum_list_service import EnumListConfig, enum_list_service


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "check-condition", help="Check whether small-subset enumeration gives a (1 - eps)-list"
    )
    parser.add_argument("instance_path")
    parser.add_argument("--epsilon", type=float, default=settings.GBSM_DEFAULT_EPSILON)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if not 0.0 < args.epsilon < 1.0:
        raise InvalidConfigError(f"epsilon must lie in (0, 1), got {args.epsilon}")
    instance, _ = read_instance(args.instance_path)
    holds = enum_list_service.check_condition(instance, args.epsilon)
    emit_json(
        {
            "epsilon": args.epsilon,
            "q": EnumListConfig(epsilon=args.epsilon).q,
            "holds": holds,
        }
    )
    return 0
