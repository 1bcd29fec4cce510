import sys
import argparse
import logging
from pathlib import Path
from typing import Optional, Sequence

from neighborly.cli import NeighborlyCli
from neighborly.config import Config
from neighborly.constants import (
    CHECK_NAMES,
    EXIT_BUDGET,
    EXIT_ERROR,
    EXIT_USAGE,
    OUTPUT_FORMATS,
    DeletionRule,
    SignConvention,
)
from neighborly.errors import BudgetExceededError, ValidationError
from neighborly.services.reports import ReportWriter

logger = logging.getLogger(__name__)


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=Path, help="YAML file overriding the defaults")
    parser.add_argument("--max-weight", type=_non_negative, help="largest partition weight")
    parser.add_argument("--min-part", type=_non_negative, help="smallest allowed part")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="json")
    parser.add_argument("--output", type=Path, help="write here instead of stdout")
    parser.add_argument(
        "--deletion-rule",
        choices=[r.value for r in DeletionRule],
        help="deletion rule for chains of length 6m+4",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neighborly",
        description="Verify Rogers-Ramanujan type identities by enumerating neighborly partitions.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run verification checks")
    verify.add_argument("target", choices=CHECK_NAMES + ["all"])
    _add_common(verify)
    verify.add_argument("--q-order", type=_non_negative)
    verify.add_argument("--x-order", type=_non_negative)
    verify.add_argument("--n-parts", type=_non_negative)
    verify.add_argument("--signature-weight", type=_non_negative)
    verify.add_argument("--prune-weight", type=_non_negative)
    verify.add_argument(
        "--sign-convention",
        choices=[c.value for c in SignConvention],
        help="prefactor of the odd-vertex edge/vertex formula",
    )
    verify.add_argument("--timings", action="store_true", help="include elapsed seconds")

    enumerate_ = commands.add_parser("enumerate", help="list admissible neighborly partitions")
    _add_common(enumerate_)
    enumerate_.add_argument("--all", action="store_true", help="include non-admissible partitions")

    table = commands.add_parser("table", help="print a table")
    table.add_argument("kind", choices=["bn"])
    table.add_argument("--max", dest="max_n", type=_non_negative, default=6)
    table.add_argument("--poly", action="store_true", help="also print the B_n(x) coefficients")
    _add_common(table)

    show = commands.add_parser("show", help="draw G and G' for a partition")
    show.add_argument("partition", help='"mu1/mu2" such as 1,2,3/2, or a part list such as 1,2,2,3')
    _add_common(show)
    return parser


def _build_config(args: argparse.Namespace) -> Config:
    config = Config.from_env()
    if args.config is not None:
        config = Config.from_yaml(args.config, base=config)
    overrides = {
        "max_weight": args.max_weight,
        "min_part": args.min_part,
        "deletion_rule": args.deletion_rule,
    }
    for name in ("q_order", "x_order", "n_parts", "signature_weight", "prune_weight", "sign_convention"):
        overrides[name] = getattr(args, name, None)
    return config.with_overrides(**overrides)


def _run(args: argparse.Namespace, stream) -> int:
    config = _build_config(args)
    logger.info(f"Running {args.command} with {config.to_dict()}")
    writer = ReportWriter(args.format, include_timing=getattr(args, "timings", False))
    cli = NeighborlyCli(config, writer, stream, args.output)
    if args.command == "verify":
        return cli.cmd_verify(args.target)
    if args.command == "enumerate":
        return cli.cmd_enumerate(include_all=args.all)
    if args.command == "table":
        return cli.cmd_table(args.kind, args.max_n, poly=args.poly)
    return cli.cmd_show(args.partition)


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Parse `argv`, run the command and return its exit status."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if args.verbose:
        logging.getLogger().setLevel(logging.INFO)

    try:
        return _run(args, sys.stdout)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except Exception as e:
        logger.error(f"Unexpected failure: {e}")
        return EXIT_ERROR


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
