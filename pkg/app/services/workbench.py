"""
纽结工作台服务

把解析、构图、表示、化简与不变量计算串成 CLI 使用的一组操作
"""

from collections.abc import Sequence
import logging
from pathlib import Path

from app.config import Settings, get_settings
from app.core.diagram import classical_gauss_code, diagram_parities, theorem_arcs
from app.core.embedding import realize_diagram
from app.core.exceptions import DiagramError
from app.core.finite_groups import FiniteGroup, get_group, load_group_file
from app.core.gauss import parities, parse_gauss
from app.core.homcount import count_homs
from app.core.invariants import abelian_invariants, presentation_signature, signature
from app.core.moves import apply_move, enumerate_sites
from app.core.presentation import AutomorphismScheme, build, preset, scheme_from_spec
from app.core.tietze import tietze_simplify
from app.corpus import CorpusManager, corpus
from app.models.diagram import Diagram, Direction, GaussCode, MoveKind, MoveSite, Parity
from app.models.group import InvariantSignature, Presentation
from app.schemas.group import SchemeSpec


logger = logging.getLogger(__name__)


class KnotService:
    """纽结图与群表示服务"""

    def __init__(self, settings: Settings | None = None, corpus_manager: CorpusManager | None = None):
        self.settings = settings or get_settings()
        self.corpus = corpus_manager or corpus

    # ============ 输入 ============

    def parse(self, text: str) -> GaussCode:
        """解析 Gauss 码"""
        code = parse_gauss(text)
        logger.debug("parsed %d crossings from %r", code.crossing_count, text)
        return code

    def load_code(self, *, gauss: str | None = None, knot: str | None = None) -> GaussCode:
        """--gauss 优先，其次语料名"""
        if gauss is not None:
            return self.parse(gauss)
        if knot is not None:
            return self.parse(self.corpus.get(knot).gauss)
        raise DiagramError("Give a Gauss code or a corpus knot name")

    def diagram(self, code: GaussCode) -> Diagram:
        """由完全标记的 Gauss 码构造平面图"""
        d = realize_diagram(code)
        logger.info("🪢 realized %d classical, %d virtual crossings", len(d.classical), len(d.virtual))
        return d

    def parities(self, code: GaussCode) -> dict[str, Parity]:
        return parities(code)

    def classical_code(self, d: Diagram) -> GaussCode:
        return classical_gauss_code(d)

    def diagram_parities(self, d: Diagram) -> dict[int, Parity]:
        return diagram_parities(d)

    def theorem_arc_count(self, d: Diagram) -> int:
        return 1 if d.is_unknot_circle else len(theorem_arcs(d))

    # ============ 方案与表示 ============

    def scheme(
            self,
            d: Diagram,
            *,
            preset_name: str | None = None,
            spec: SchemeSpec | None = None,
    ) -> AutomorphismScheme:
        """自定义方案优先，未指定时使用 pi1"""
        if spec is not None:
            return scheme_from_spec(spec.to_spec(), d)
        return preset(preset_name or "pi1", d)

    def build(self, d: Diagram, scheme: AutomorphismScheme) -> Presentation:
        p = build(d, scheme)
        logger.info("🧱 %s presentation: %d generators, %d relators", scheme.name, p.rank, len(p.relators))
        return p

    def simplify(self, p: Presentation) -> Presentation:
        simplified = tietze_simplify(p, self.settings.TIETZE_BUDGET)
        logger.info(
            "✂️ simplified %d/%d -> %d/%d (generators/relators)",
            p.rank, len(p.relators), simplified.rank, len(simplified.relators),
        )
        return simplified

    # ============ 不变量 ============

    def groups(self, names: Sequence[str] = (), group_file: Path | None = None) -> list[FiniteGroup]:
        """--group 名称与 --group-file；都未给出时使用 DEFAULT_GROUPS"""
        chosen = [get_group(name) for name in names]
        if group_file is not None:
            chosen.append(load_group_file(group_file))
        return chosen or [get_group(name) for name in self.settings.DEFAULT_GROUPS]

    def abelian(self, p: Presentation) -> tuple[int, ...]:
        return abelian_invariants(self.simplify(p))

    def homcount(self, p: Presentation, groups: Sequence[FiniteGroup]) -> dict[str, int]:
        simplified = self.simplify(p)
        return {
            g.name: count_homs(
                simplified,
                g,
                log_budget=self.settings.HOMCOUNT_LOG_BUDGET,
                node_limit=self.settings.HOMCOUNT_NODE_LIMIT,
                workers=self.settings.HOMCOUNT_WORKERS,
            )
            for g in groups
        }

    def signature(
            self,
            d: Diagram,
            scheme: AutomorphismScheme,
            groups: Sequence[FiniteGroup],
    ) -> InvariantSignature:
        return signature(d, scheme, groups, self.settings)

    def presentation_signature(self, p: Presentation, groups: Sequence[FiniteGroup]) -> InvariantSignature:
        return presentation_signature(p, groups, self.settings)

    # ============ 移动 ============

    def sites(self, d: Diagram, kind: MoveKind, direction: Direction = Direction.APPLY) -> list[MoveSite]:
        return enumerate_sites(d, kind, direction)

    def apply(self, d: Diagram, site: MoveSite) -> Diagram:
        return apply_move(d, site)
