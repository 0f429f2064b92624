from argparse import ArgumentParser, Namespace

from app.cli.options import CommandRouter, code_options, diagram_options
from app.core.exceptions import InapplicableMoveError
from app.core.gauss import serialize
from app.dependencies import get_knot_service, resolve_code, resolve_diagram
from app.models.diagram import Diagram, Direction, MoveKind
from app.schemas.diagram import (
    DiagramSchema,
    DiagramSummary,
    GaussCodeResponse,
    MoveSiteSchema,
    ParityResponse,
    ParsedResponse,
    SitesResponse,
)
from app.services.workbench import KnotService


router = CommandRouter()


def summarize(d: Diagram, service: KnotService) -> DiagramSummary:
    return DiagramSummary(
        classical=len(d.classical),
        virtual=len(d.virtual),
        arcs=len(d.arcs),
        theorem_arcs=service.theorem_arc_count(d),
        diagram=DiagramSchema.from_model(d),
    )


@router.command("parse", help="parse a Gauss code and realize its diagram", options=(code_options,))
def parse(args: Namespace) -> ParsedResponse:
    """完全标记的码同时给出图"""
    service = get_knot_service()
    code = resolve_code(args, service)
    response = ParsedResponse(code=GaussCodeResponse.from_model(code))
    if code.fully_marked:
        response.diagram = summarize(service.diagram(code), service)
    return response


@router.command("parity", help="crossing parities (Even/Odd)", options=(diagram_options,))
def parity(args: Namespace) -> ParityResponse:
    """Gauss 码按原始标记给出；图文件按经典交叉点 id 给出"""
    service = get_knot_service()
    if args.diagram is not None:
        d = resolve_diagram(args, service)
        return ParityResponse(
            text=serialize(service.classical_code(d)),
            parities={str(k): v for k, v in service.diagram_parities(d).items()},
        )
    code = resolve_code(args, service)
    return ParityResponse(text=serialize(code), parities=service.parities(code))


def _site_options(parser: ArgumentParser) -> None:
    parser.add_argument("--move", required=True, choices=[k.value for k in MoveKind], help="move type")
    parser.add_argument("--direction", default=Direction.APPLY.value,
                        choices=[d.value for d in Direction], help="apply or undo")
    parser.add_argument("--apply", type=int, metavar="INDEX", help="apply the site with this index")


@router.command(
    "sites",
    help="list move sites, optionally applying one",
    options=(diagram_options, _site_options),
)
def sites(args: Namespace) -> SitesResponse:
    service = get_knot_service()
    d = resolve_diagram(args, service)
    found = service.sites(d, MoveKind(args.move), Direction(args.direction))
    response = SitesResponse(sites=[MoveSiteSchema.from_model(s) for s in found])
    if args.apply is not None:
        if not 0 <= args.apply < len(found):
            raise InapplicableMoveError(f"Site index {args.apply} out of range, {len(found)} sites found")
        response.applied = summarize(service.apply(d, found[args.apply]), service)
    return response
