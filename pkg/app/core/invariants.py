"""
群不变量：阿贝尔化不变量与同态计数签名
"""

from collections.abc import Sequence

from app.config import Settings, get_settings
from app.core.finite_groups import FiniteGroup
from app.core.homcount import count_homs
from app.core.presentation import AutomorphismScheme, abelianization_matrix, build
from app.core.snf import smith_normal_form
from app.core.tietze import tietze_simplify
from app.models.diagram import Diagram
from app.models.group import InvariantSignature, Presentation


def abelian_invariants(p: Presentation) -> tuple[int, ...]:
    """大于 1 的挠系数，后接自由秩个 0"""
    diagonal = smith_normal_form(abelianization_matrix(p))
    torsion = [d for d in diagonal if d > 1]
    free_rank = p.rank - sum(1 for d in diagonal if d != 0)
    return tuple(torsion + [0] * free_rank)


def presentation_signature(
        p: Presentation,
        groups: Sequence[FiniteGroup],
        settings: Settings | None = None,
) -> InvariantSignature:
    settings = settings or get_settings()
    simplified = tietze_simplify(p, settings.TIETZE_BUDGET)
    counts = {
        g.name: count_homs(
            simplified,
            g,
            log_budget=settings.HOMCOUNT_LOG_BUDGET,
            node_limit=settings.HOMCOUNT_NODE_LIMIT,
            workers=settings.HOMCOUNT_WORKERS,
        )
        for g in groups
    }
    return InvariantSignature(abelian_invariants(simplified), counts)


def signature(
        d: Diagram,
        scheme: AutomorphismScheme,
        groups: Sequence[FiniteGroup],
        settings: Settings | None = None,
) -> InvariantSignature:
    """build -> simplify -> 阿贝尔化 + 同态计数"""
    return presentation_signature(build(d, scheme), groups, settings)
