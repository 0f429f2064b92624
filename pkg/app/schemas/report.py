from typing import Any, Literal

from pydantic import BaseModel, Field, computed_field

from app.schemas.diagram import MoveSiteSchema
from app.schemas.group import SignatureSchema


# ============ 移动验证 ============
class MoveStep(BaseModel):
    """一步随机移动"""
    step: int
    site: MoveSiteSchema
    crossings: int
    signature: SignatureSchema
    matches: bool


class MoveVerificationReport(BaseModel):
    """verify-moves 报告"""
    scheme: str
    seed: int
    groups: list[str]
    initial: SignatureSchema
    steps: list[MoveStep] = []

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(s.matches for s in self.steps)


# ============ 定理验证 ============
RowStatus = Literal["pass", "fail", "reported"]


class TheoremRow(BaseModel):
    """
    报告行

    reference 指明该行核对的是哪条结论；reported 行只记录结果，不参与通过判定
    """
    key: str
    reference: str = Field(min_length=1)
    status: RowStatus
    detail: dict[str, Any] = {}


class TheoremReport(BaseModel):
    """verify-theorems 报告"""
    rows: list[TheoremRow] = []

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.rows)
