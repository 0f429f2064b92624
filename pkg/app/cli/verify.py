from argparse import ArgumentParser, Namespace

from app.cli.options import CommandRouter, diagram_options, group_options, scheme_options
from app.dependencies import (
    get_knot_service,
    get_verification_service,
    resolve_diagram,
    resolve_groups,
    scheme_factory,
)
from app.schemas.report import MoveVerificationReport, TheoremReport


router = CommandRouter()


def _move_options(parser: ArgumentParser) -> None:
    parser.add_argument("--moves", type=int, help="number of random moves (default VERIFY_MOVES)")
    parser.add_argument("--seed", type=int, help="random seed (default VERIFY_SEED)")


def _case_options(parser: ArgumentParser) -> None:
    parser.add_argument("--case", help="only rows whose key starts with this, e.g. even3, nogo.B")


@router.command(
    "verify-moves",
    help="check that the signature survives a random move sequence",
    options=(diagram_options, scheme_options, group_options, _move_options),
)
def verify_moves(args: Namespace) -> MoveVerificationReport:
    """任一步签名改变时退出码为 1"""
    knots = get_knot_service()
    d = resolve_diagram(args, knots)
    return get_verification_service(knots).verify_moves(
        d,
        scheme_factory(args, knots),
        resolve_groups(args, knots),
        moves=args.moves,
        seed=args.seed,
    )


@router.command(
    "verify-theorems",
    help="symbolic reductions, commutator extraction and no-go table",
    options=(_case_options,),
)
def verify_theorems(args: Namespace) -> TheoremReport:
    knots = get_knot_service()
    return get_verification_service(knots).verify_theorems(args.case)
