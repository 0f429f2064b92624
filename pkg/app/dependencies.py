"""
命令行依赖

把 argparse 参数解析为服务层需要的对象：Gauss 码、图、方案、表示与有限群
"""

from argparse import Namespace
from collections.abc import Callable
from pathlib import Path

from app.config import get_settings
from app.core.diagram import normalize_diagram
from app.core.finite_groups import FiniteGroup
from app.core.presentation import AutomorphismScheme
from app.corpus import CorpusManager
from app.models.diagram import Diagram, GaussCode
from app.models.group import Presentation
from app.schemas.diagram import DiagramSchema
from app.schemas.group import PresentationSchema, SchemeSpec
from app.services.verification import VerificationService
from app.services.workbench import KnotService


def get_knot_service() -> KnotService:
    """获取工作台服务"""
    settings = get_settings()
    return KnotService(settings, CorpusManager(settings.CORPUS_DIR))


def get_verification_service(knots: KnotService) -> VerificationService:
    return VerificationService(knots)


def _read(path: Path) -> bytes:
    return Path(path).read_bytes()


# ============ 图 ============

def resolve_code(args: Namespace, service: KnotService) -> GaussCode:
    """--gauss 或 --knot"""
    return service.load_code(gauss=args.gauss, knot=args.knot)


def resolve_diagram(args: Namespace, service: KnotService) -> Diagram:
    """--diagram 文件优先，否则由 Gauss 码构造"""
    if getattr(args, "diagram", None) is not None:
        return normalize_diagram(DiagramSchema.model_validate_json(_read(args.diagram)).to_model())
    return service.diagram(resolve_code(args, service))


# ============ 方案 ============

def resolve_scheme_spec(args: Namespace) -> SchemeSpec | None:
    if getattr(args, "scheme", None) is None:
        return None
    return SchemeSpec.model_validate_json(_read(args.scheme))


def scheme_factory(args: Namespace, service: KnotService) -> Callable[[Diagram], AutomorphismScheme]:
    """方案依赖图的生成元个数，移动后需要重新构造"""
    spec = resolve_scheme_spec(args)
    preset_name = getattr(args, "preset", None)
    return lambda d: service.scheme(d, preset_name=preset_name, spec=spec)


def resolve_presentation(args: Namespace, service: KnotService) -> tuple[str, Presentation]:
    """--presentation 文件，或由图与方案构造；返回 (方案名, 表示)"""
    if getattr(args, "presentation", None) is not None:
        schema = PresentationSchema.model_validate_json(_read(args.presentation))
        return "file", schema.to_model()
    d = resolve_diagram(args, service)
    scheme = scheme_factory(args, service)(d)
    return scheme.name, service.build(d, scheme)


# ============ 有限群 ============

def resolve_groups(args: Namespace, service: KnotService) -> list[FiniteGroup]:
    return service.groups(args.group or (), args.group_file)
