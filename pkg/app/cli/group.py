from argparse import Namespace

from app.cli.options import CommandRouter, group_options, presentation_options
from app.dependencies import (
    get_knot_service,
    resolve_diagram,
    resolve_groups,
    resolve_presentation,
    scheme_factory,
)
from app.schemas.group import (
    AbelianResponse,
    HomCountResponse,
    PresentationResponse,
    SignatureResponse,
    SignatureSchema,
)


router = CommandRouter()


@router.command("build", help="build the group presentation of a diagram", options=(presentation_options,))
def build(args: Namespace) -> PresentationResponse:
    service = get_knot_service()
    scheme, p = resolve_presentation(args, service)
    return PresentationResponse.from_model(scheme, p)


@router.command("simplify", help="Tietze-simplify a presentation", options=(presentation_options,))
def simplify(args: Namespace) -> PresentationResponse:
    service = get_knot_service()
    scheme, p = resolve_presentation(args, service)
    return PresentationResponse.from_model(scheme, service.simplify(p))


@router.command("abelian", help="abelianization invariants", options=(presentation_options,))
def abelian(args: Namespace) -> AbelianResponse:
    """挠系数后接自由秩个 0"""
    service = get_knot_service()
    scheme, p = resolve_presentation(args, service)
    return AbelianResponse(scheme=scheme, invariants=list(service.abelian(p)))


@router.command(
    "homcount",
    help="count homomorphisms into finite groups",
    options=(presentation_options, group_options),
)
def homcount(args: Namespace) -> HomCountResponse:
    service = get_knot_service()
    scheme, p = resolve_presentation(args, service)
    return HomCountResponse(scheme=scheme, counts=service.homcount(p, resolve_groups(args, service)))


@router.command(
    "signature",
    help="abelian invariants plus homomorphism counts",
    options=(presentation_options, group_options),
)
def signature(args: Namespace) -> SignatureResponse:
    service = get_knot_service()
    groups = resolve_groups(args, service)
    if args.presentation is not None:
        _, p = resolve_presentation(args, service)
        sig = service.presentation_signature(p, groups)
        return SignatureResponse(scheme="file", signature=SignatureSchema.from_model(sig))
    d = resolve_diagram(args, service)
    scheme = scheme_factory(args, service)(d)
    return SignatureResponse(
        scheme=scheme.name,
        signature=SignatureSchema.from_model(service.signature(d, scheme, groups)),
    )
