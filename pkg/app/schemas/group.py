from typing import Any, Literal, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.free_group import format_word
from app.core.presentation import Enforcement
from app.models.group import InvariantSignature, Presentation


# ============ 表示 ============
class PresentationSchema(BaseModel):
    """
    表示的 JSON 形式

    relators 中每个字母为 [生成元名, ±1]
    """
    generators: list[str]
    relators: list[list[tuple[str, Literal[1, -1]]]] = []
    provenance: list[str] = []

    @model_validator(mode="after")
    def check_references(self) -> Self:
        known = set(self.generators)
        if len(known) != len(self.generators):
            raise ValueError("generator names must be distinct")
        for relator in self.relators:
            unknown = {name for name, _ in relator} - known
            if unknown:
                raise ValueError(f"relator uses unknown generators {sorted(unknown)}")
        if self.provenance and len(self.provenance) != len(self.relators):
            raise ValueError("provenance must have one tag per relator")
        return self

    @classmethod
    def from_model(cls, p: Presentation) -> Self:
        return cls(
            generators=list(p.generators),
            relators=[[(p.generators[g], e) for g, e in r] for r in p.relators],
            provenance=list(p.provenance),
        )

    def to_model(self) -> Presentation:
        index = {name: i for i, name in enumerate(self.generators)}
        return Presentation(
            generators=tuple(self.generators),
            relators=tuple(tuple((index[name], e) for name, e in r) for r in self.relators),
            provenance=tuple(self.provenance) or ("",) * len(self.relators),
        )


class PresentationResponse(BaseModel):
    """build / simplify 输出"""
    scheme: str
    rank: int
    presentation: PresentationSchema
    text: list[str]

    @classmethod
    def from_model(cls, scheme: str, p: Presentation) -> Self:
        return cls(
            scheme=scheme,
            rank=p.rank,
            presentation=PresentationSchema.from_model(p),
            text=[format_word(r, p.generators) for r in p.relators],
        )


# ============ 自同构方案 ============
class AutomorphismSpec(BaseModel):
    """
    自同构规格

    三选一：images (+ inverse_images)、inner_by、identity
    """
    model_config = ConfigDict(extra="forbid")

    rank: int | None = Field(default=None, ge=0)
    images: dict[str, str] | None = None
    inverse_images: dict[str, str] | None = None
    inner_by: str | None = None
    exponent: Literal[1, -1] = 1
    identity: bool = False

    @model_validator(mode="after")
    def check_form(self) -> Self:
        forms = [self.images is not None or self.inverse_images is not None,
                 self.inner_by is not None, self.identity]
        if sum(forms) != 1:
            raise ValueError("give exactly one of images, inner_by or identity")
        return self


class ParitySpec(BaseModel):
    """偶交叉点用 E/e，奇交叉点用 O/o"""
    E: AutomorphismSpec | None = None
    O: AutomorphismSpec | None = None  # noqa: E741
    e: AutomorphismSpec | None = None
    o: AutomorphismSpec | None = None


class ExtraRelator(BaseModel):
    provenance: str
    word: str


class SchemeSpec(BaseModel):
    """--scheme 文件"""
    model_config = ConfigDict(extra="forbid")

    name: str = "custom"
    j: int = Field(default=0, ge=0)
    extra_names: list[str] = []
    theta: AutomorphismSpec | None = None
    phi: AutomorphismSpec | None = None
    eta: AutomorphismSpec | None = None
    parity: ParitySpec | None = None
    enforce: Enforcement = Enforcement.STRICT
    extra_relators: list[ExtraRelator] = []

    def to_spec(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)


# ============ 不变量 ============
class SignatureSchema(BaseModel):
    """不变量签名"""
    abelian_invariants: list[int]
    hom_counts: dict[str, int] = {}

    @classmethod
    def from_model(cls, sig: InvariantSignature) -> Self:
        return cls(abelian_invariants=list(sig.abelian_invariants), hom_counts=dict(sig.hom_counts))


class AbelianResponse(BaseModel):
    scheme: str
    invariants: list[int]


class HomCountResponse(BaseModel):
    scheme: str
    counts: dict[str, int]


class SignatureResponse(BaseModel):
    scheme: str
    signature: SignatureSchema
