from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.gauss import serialize
from app.models.diagram import (
    Crossing,
    CrossingKind,
    Diagram,
    Direction,
    GaussCode,
    MoveKind,
    MoveSite,
    Parity,
    Role,
)


# ============ Gauss 码 ============
class PassSchema(BaseModel):
    """一次经过"""
    label: int
    name: str
    role: Role
    sign: int = Field(ge=-1, le=1)


class GaussCodeResponse(BaseModel):
    """解析结果"""
    text: str
    crossings: int
    fully_marked: bool
    passes: list[PassSchema]

    @classmethod
    def from_model(cls, code: GaussCode) -> Self:
        return cls(
            text=serialize(code),
            crossings=code.crossing_count,
            fully_marked=code.fully_marked,
            passes=[
                PassSchema(label=p.label, name=code.names[p.label - 1], role=p.role, sign=p.sign)
                for p in code.passes
            ],
        )


class ParityResponse(BaseModel):
    """交叉点奇偶性"""
    text: str
    parities: dict[str, Parity]


# ============ 图 ============
class CrossingSchema(BaseModel):
    """交叉点，ports 按 (x, y, z, a)"""
    model_config = ConfigDict(frozen=True)

    id: int = Field(ge=0)
    kind: CrossingKind
    sign: int = Field(ge=-1, le=1)
    ports: tuple[int, int, int, int]

    @model_validator(mode="after")
    def check_sign(self) -> Self:
        if (self.kind is CrossingKind.VIRTUAL) != (self.sign == 0):
            raise ValueError("virtual crossings carry sign 0, classical crossings carry +1 or -1")
        return self


class DiagramSchema(BaseModel):
    """图的 JSON 形式"""
    crossings: list[CrossingSchema] = []
    arcs: list[tuple[int | None, int | None]] = [(None, None)]

    @classmethod
    def from_model(cls, d: Diagram) -> Self:
        return cls(
            crossings=[
                CrossingSchema(id=c.id, kind=c.kind, sign=c.sign, ports=c.ports) for c in d.crossings
            ],
            arcs=list(d.arcs),
        )

    def to_model(self) -> Diagram:
        return Diagram(
            crossings=tuple(Crossing(c.id, c.kind, c.sign, c.ports) for c in self.crossings),
            arcs=tuple(self.arcs),
        )


class DiagramSummary(BaseModel):
    """图概要"""
    classical: int
    virtual: int
    arcs: int
    theorem_arcs: int
    diagram: DiagramSchema


class ParsedResponse(BaseModel):
    """parse 输出；diagram 仅在完全标记时给出"""
    code: GaussCodeResponse
    diagram: DiagramSummary | None = None


# ============ 移动 ============
class MoveSiteSchema(BaseModel):
    """移动位点"""
    kind: MoveKind
    direction: Direction = Direction.APPLY
    arcs: list[int]
    sides: list[int] = []
    option: int = 0

    @classmethod
    def from_model(cls, site: MoveSite) -> Self:
        return cls(
            kind=site.kind,
            direction=site.direction,
            arcs=list(site.arcs),
            sides=list(site.sides),
            option=site.option,
        )

    def to_model(self) -> MoveSite:
        return MoveSite(self.kind, tuple(self.arcs), self.direction, tuple(self.sides), self.option)


class SitesResponse(BaseModel):
    """位点列表，applied 为应用所选位点后的图"""
    sites: list[MoveSiteSchema]
    applied: DiagramSummary | None = None


# ============ 语料 ============
class CorpusEntry(BaseModel):
    """语料条目"""
    name: str
    gauss: str
    description: str = ""
    parity_only: bool = False


class CorpusFile(BaseModel):
    knots: list[CorpusEntry]
