"""
验证服务

verify-moves：随机移动序列下签名保持不变
verify-theorems：符号化简、交换子提取与特化族的报告表
"""

from collections.abc import Callable, Sequence
from dataclasses import asdict
import logging
import random

from app.core.counterexample import even3_counterexample, family_counterexample
from app.core.finite_groups import FiniteGroup
from app.core.formal import CommutationDecl
from app.core.presentation import AutomorphismScheme
from app.core.reductions import (
    NO_GO_FAMILIES,
    PARITY_COMMUTATORS,
    R3Case,
    Side,
    check_r3_invariance,
    corollary_check,
    no_go_check,
    parity_commutator_steps,
    printed_mismatches,
    r3_reduce,
    vr4_check,
    vr4_reduce,
)
from app.models.diagram import Diagram, Direction, MoveKind, MoveSite
from app.models.group import InvariantSignature, Presentation
from app.schemas.diagram import MoveSiteSchema
from app.schemas.group import SignatureSchema
from app.schemas.report import MoveStep, MoveVerificationReport, RowStatus, TheoremReport, TheoremRow
from app.services.workbench import KnotService


logger = logging.getLogger(__name__)

# 增加交叉点的移动
_GROWING = (MoveKind.R1A, MoveKind.R1B, MoveKind.VR1, MoveKind.R2CO, MoveKind.R2CONTRA, MoveKind.VR2)

THETA_PHI = CommutationDecl.build(commute=[("theta", "phi")])
ETA_PAIRS = CommutationDecl.build(commute=[("theta", "eta"), ("phi", "eta")])
ALL_PAIRS = THETA_PHI.merged(ETA_PAIRS)

EXPECTED_COMMUTATORS = {
    "even3.z": frozenset({"e", "E"}),
    "case1.x": frozenset({"E", "O"}),
    "case1.y": frozenset({"e", "o"}),
    "case1.z": frozenset({"O", "o"}),
}

# 报告行核对的结论
REFERENCES = {
    "even3": "main theorem: R3 with three even crossings, both sides",
    "even3.noncommuting": "main theorem: R3 fails unless theta and phi commute",
    "vr4": "corollary: virtual R4 with eta",
    "corollary": "corollary: every commuting pair is needed",
    "case1": "parity R3: case 1 reduction",
    "case2": "parity R3: case 2 reduction",
    "case3": "parity R3: case 3 reduction",
    "commutator.even3.z": "parity R3: commutator from the all-even z equation",
    "commutator.case1.x": "parity R3: commutator from the case 1 x equation",
    "commutator.case1.y": "parity R3: commutator from the case 1 y equation",
    "commutator.case1.z": "parity R3: commutator from the case 1 z equation",
    "commutator.sufficiency": "parity R3: the four commutators suffice",
    "counterexample.even3": "main theorem: concrete non-commuting counterexample",
}


def _reference(key: str) -> str:
    if key in REFERENCES:
        return REFERENCES[key]
    kind, family = key.split(".", 1)
    if kind == "nogo":
        return f"parity no-go: family {family}"
    return f"parity no-go: concrete counterexample in family {family}"


def _status(ok: bool) -> RowStatus:
    return "pass" if ok else "fail"


class VerificationService:
    """验证服务"""

    def __init__(self, knots: KnotService):
        self.knots = knots
        self.settings = knots.settings

    # ============ 移动验证 ============

    def candidate_sites(self, d: Diagram) -> list[MoveSite]:
        """当前图上所有可用位点；达到交叉点上限时不再增加交叉点"""
        capped = len(d.crossings) >= self.settings.VERIFY_MAX_CROSSINGS
        sites: list[MoveSite] = []
        for kind in MoveKind:
            for direction in Direction:
                if capped and direction is Direction.APPLY and kind in _GROWING:
                    continue
                sites.extend(self.knots.sites(d, kind, direction))
        return sites

    def verify_moves(
            self,
            d: Diagram,
            make_scheme: Callable[[Diagram], AutomorphismScheme],
            groups: Sequence[FiniteGroup],
            *,
            moves: int | None = None,
            seed: int | None = None,
    ) -> MoveVerificationReport:
        """
        随机移动序列

        每步在全部可用位点中均匀选择一个，重新构造方案并比较签名
        """
        moves = self.settings.VERIFY_MOVES if moves is None else moves
        seed = self.settings.VERIFY_SEED if seed is None else seed
        rng = random.Random(seed)
        scheme = make_scheme(d)
        start = self.knots.build(d, scheme)
        initial = self.knots.presentation_signature(start, groups)
        report = MoveVerificationReport(
            scheme=scheme.name,
            seed=seed,
            groups=[g.name for g in groups],
            initial=SignatureSchema.from_model(initial),
        )
        logger.info("🎲 verifying %d moves (seed %d) with %s", moves, seed, scheme.name)

        # 撤销移动常回到已见过的表示
        seen: dict[Presentation, InvariantSignature] = {start: initial}
        current = d
        for step in range(1, moves + 1):
            sites = self.candidate_sites(current)
            if not sites:
                logger.warning("⚠️ no move sites left after %d steps", step - 1)
                break
            site = rng.choice(sites)
            current = self.knots.apply(current, site)
            p = self.knots.build(current, make_scheme(current))
            sig = seen.get(p)
            if sig is None:
                sig = seen[p] = self.knots.presentation_signature(p, groups)
            matches = sig.as_key() == initial.as_key()
            if not matches:
                logger.error("❌ step %d (%s %s) changed the signature", step, site.kind.value,
                             site.direction.value)
            report.steps.append(MoveStep(
                step=step,
                site=MoveSiteSchema.from_model(site),
                crossings=len(current.crossings),
                signature=SignatureSchema.from_model(sig),
                matches=matches,
            ))

        logger.info("✅ move verification finished" if report.passed else "❌ move verification failed")
        return report

    # ============ 定理验证 ============

    def _reduction_rows(self) -> list[TheoremRow]:
        rows: list[TheoremRow] = []
        left, right = r3_reduce(Side.LHS, R3Case.EVEN3), r3_reduce(Side.RHS, R3Case.EVEN3)
        rows.append(TheoremRow(
            key="even3",
            reference=_reference("even3"),
            status=_status(check_r3_invariance(R3Case.EVEN3, THETA_PHI)),
            detail={"lhs": left.as_text(), "rhs": right.as_text(), "decls": THETA_PHI.to_dict()},
        ))
        rows.append(TheoremRow(
            key="even3.noncommuting",
            reference=_reference("even3.noncommuting"),
            status=_status(not check_r3_invariance(R3Case.EVEN3)),
        ))

        left, right = vr4_reduce(Side.LHS), vr4_reduce(Side.RHS)
        rows.append(TheoremRow(
            key="vr4",
            reference=_reference("vr4"),
            status=_status(vr4_check(ETA_PAIRS)),
            detail={"lhs": left.as_text(), "rhs": right.as_text(), "decls": ETA_PAIRS.to_dict()},
        ))

        dropped = {
            ",".join(sorted(pair)): corollary_check(
                CommutationDecl(ALL_PAIRS.commute - {pair})
            )
            for pair in sorted(ALL_PAIRS.commute, key=sorted)
        }
        rows.append(TheoremRow(
            key="corollary",
            reference=_reference("corollary"),
            status=_status(corollary_check(ALL_PAIRS) and not any(dropped.values())),
            detail={"without_pair": dropped},
        ))

        for case in (R3Case.CASE1, R3Case.CASE2, R3Case.CASE3):
            lhs, rhs = r3_reduce(Side.LHS, case), r3_reduce(Side.RHS, case)
            rows.append(TheoremRow(
                key=case.value,
                reference=_reference(case.value),
                status="reported",
                detail={
                    "holds_under_parity_commutators": check_r3_invariance(case, PARITY_COMMUTATORS),
                    "lhs": lhs.as_text(),
                    "rhs": rhs.as_text(),
                    "flags": list(lhs.flags + rhs.flags),
                    "printed_mismatches": printed_mismatches(case),
                },
            ))
        return rows

    def _commutator_rows(self) -> list[TheoremRow]:
        rows = []
        for step in parity_commutator_steps():
            expected = EXPECTED_COMMUTATORS[step.source]
            found = step.relation.kind == "commute" and frozenset(step.relation.symbols) == expected
            rows.append(TheoremRow(
                key=f"commutator.{step.source}",
                reference=_reference(f"commutator.{step.source}"),
                status=_status(found),
                detail={
                    "substitution": list(step.substitution),
                    "residual": list(step.residual),
                    "relation": str(step.relation),
                },
            ))
        rows.append(TheoremRow(
            key="commutator.sufficiency",
            reference=_reference("commutator.sufficiency"),
            status="reported",
            detail={
                f"case{i}": check_r3_invariance(case, PARITY_COMMUTATORS)
                for i, case in enumerate((R3Case.CASE1, R3Case.CASE2, R3Case.CASE3), start=1)
            },
        ))
        return rows

    def _no_go_rows(self) -> list[TheoremRow]:
        rows = []
        for family in NO_GO_FAMILIES:
            result = no_go_check(family)
            rows.append(TheoremRow(
                key=f"nogo.{family}",
                reference=_reference(f"nogo.{family}"),
                status=_status(result.holds),
                detail={
                    "equation": result.equation,
                    "residual": list(result.residual),
                    "relation": str(result.relation),
                    "expected": str(result.expected),
                },
            ))
        return rows

    def _counterexample_rows(self) -> list[TheoremRow]:
        budget = self.settings.COUNTEREXAMPLE_BUDGET
        length = self.settings.COUNTEREXAMPLE_WORD_LENGTH
        rows = []
        found = even3_counterexample(budget, length)
        rows.append(TheoremRow(
            key="counterexample.even3",
            reference=_reference("counterexample.even3"),
            status=_status(found is not None),
            detail=asdict(found) if found is not None else {},
        ))
        for family in NO_GO_FAMILIES:
            found = family_counterexample(family, budget, length)
            rows.append(TheoremRow(
                key=f"counterexample.{family}",
                reference=_reference(f"counterexample.{family}"),
                status=_status(found is not None),
                detail=asdict(found) if found is not None else {},
            ))
        return rows

    def verify_theorems(self, case: str | None = None) -> TheoremReport:
        """
        生成报告表

        case 为键前缀过滤（例如 even3、nogo、counterexample.B）
        """
        sections: list[tuple[tuple[str, ...], Callable[[], list[TheoremRow]]]] = [
            (("even3", "vr4", "corollary", "case"), self._reduction_rows),
            (("commutator",), self._commutator_rows),
            (("nogo",), self._no_go_rows),
            (("counterexample",), self._counterexample_rows),
        ]
        rows: list[TheoremRow] = []
        for prefixes, section in sections:
            if case is None or any(p.startswith(case) or case.startswith(p) for p in prefixes):
                rows.extend(section())
        if case is not None:
            rows = [r for r in rows if r.key.startswith(case)]
        report = TheoremReport(rows=rows)
        logger.info("📋 %d theorem rows, passed=%s", len(rows), report.passed)
        return report

