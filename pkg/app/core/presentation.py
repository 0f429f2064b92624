"""
自同构参数化的群表示

生成元为弧生成元 a1..ak 加 j 个额外生成元。定理模式下虚拟交叉点透明（弧从经典交叉点
走到经典交叉点）；给出 eta 时为推论模式，每条弧都是生成元。
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace
from enum import Enum
import logging
from typing import Any

from app.core.diagram import diagram_parities, theorem_arcs, validate_diagram
from app.core.exceptions import CommutationError, NotFoundException, RankMismatchError
from app.core.free_group import (
    ConcreteAutomorphism,
    apply,
    apply_inverse,
    automorphism_from_spec,
    commutes,
    exponent_sums,
    generator,
    identity,
    inner,
    invert,
    multiply,
    parse_word,
)
from app.models.diagram import A, CrossingKind, Diagram, Parity, X, Y, Z
from app.models.group import Presentation, Word


logger = logging.getLogger(__name__)

DEFAULT_EXTRAS = ("s", "t", "q")


class Enforcement(str, Enum):
    """交换性要求的处理方式"""
    STRICT = "strict"
    QUOTIENT = "quotient"


@dataclass(frozen=True, slots=True)
class ParityOperators:
    """偶/奇交叉点分别使用的 θ (E, O) 与 φ (e, o)"""
    E: ConcreteAutomorphism
    O: ConcreteAutomorphism  # noqa: E741
    e: ConcreteAutomorphism
    o: ConcreteAutomorphism

    @property
    def uniform(self) -> bool:
        return self.E == self.O and self.e == self.o


@dataclass(frozen=True, slots=True)
class AutomorphismScheme:
    """
    自同构方案

    extra_relators 为 (来源标记, 字文本) 对，用于额外生成元的特化与等同
    """
    j: int
    theta: ConcreteAutomorphism
    phi: ConcreteAutomorphism
    eta: ConcreteAutomorphism | None = None
    parity: ParityOperators | None = None
    extra_names: tuple[str, ...] = ()
    enforce: Enforcement = Enforcement.STRICT
    extra_relators: tuple[tuple[str, str], ...] = ()
    name: str = "custom"

    @property
    def corollary(self) -> bool:
        return self.eta is not None

    def operators(self) -> dict[str, ConcreteAutomorphism]:
        ops = {"theta": self.theta, "phi": self.phi}
        if self.eta is not None:
            ops["eta"] = self.eta
        if self.parity is not None:
            ops.update(E=self.parity.E, O=self.parity.O, e=self.parity.e, o=self.parity.o)
        return ops

    def required_pairs(self) -> list[tuple[str, str]]:
        """需要交换的算子对，均按 (θ 侧, φ 侧) 定向"""
        if self.parity is not None:
            pairs = [("E", "e"), ("O", "o"), ("E", "O"), ("e", "o")]
            if self.eta is not None:
                pairs += [(name, "eta") for name in ("E", "O", "e", "o")]
            return pairs
        pairs = [("theta", "phi")]
        if self.eta is not None:
            pairs += [("theta", "eta"), ("phi", "eta")]
        return pairs

    def collapsed(self) -> "AutomorphismScheme":
        """E=O 且 e=o 时奇偶模式退化为普通方案（θ=E，φ=e）"""
        if self.parity is None or not self.parity.uniform:
            return self
        return replace(self, theta=self.parity.E, phi=self.parity.e, parity=None)


# ============ 生成元 ============

def arc_generators(d: Diagram, corollary: bool) -> tuple[int, dict[int, int]]:
    """(弧生成元个数, 弧 -> 生成元下标)"""
    if corollary or d.is_unknot_circle:
        return len(d.arcs), {i: i for i in range(len(d.arcs))}
    runs = theorem_arcs(d)
    return len(runs), {arc: k for k, run in enumerate(runs) for arc in run}


def extra_names_for(j: int) -> tuple[str, ...]:
    if j <= len(DEFAULT_EXTRAS):
        return DEFAULT_EXTRAS[:j]
    return tuple(f"u{i + 1}" for i in range(j))


def generator_names(d: Diagram, j: int, corollary: bool, extras: Sequence[str] = ()) -> tuple[str, ...]:
    count, _ = arc_generators(d, corollary)
    extras = tuple(extras) or extra_names_for(j)
    if len(extras) != j:
        raise RankMismatchError(f"Expected {j} extra generator names, got {len(extras)}")
    return tuple(f"a{i + 1}" for i in range(count)) + extras


# ============ 构造 ============

def _check_scheme(scheme: AutomorphismScheme, rank: int) -> None:
    for label, f in scheme.operators().items():
        if f.rank != rank:
            raise RankMismatchError(f"{label} has rank {f.rank}, the diagram needs rank {rank}")
    if scheme.enforce is Enforcement.STRICT:
        ops = scheme.operators()
        for f, g in scheme.required_pairs():
            if not commutes(ops[f], ops[g]):
                raise CommutationError(f"{f} and {g} do not commute")


def build(d: Diagram, scheme: AutomorphismScheme) -> Presentation:
    """
    交叉点关系与交换子关系

    正交叉：z = y θ(x a^-1)，a = φ(y)；负交叉：z = φ^-1(x)，a = θ^-1(z^-1 y) x；
    推论模式下虚拟交叉点：a = η(y)，z = η^-1(x)。关系子写作 lhs·rhs^-1
    """
    validate_diagram(d)
    scheme = scheme.collapsed()
    names = generator_names(d, scheme.j, scheme.corollary, scheme.extra_names)
    count, arc_gen = arc_generators(d, scheme.corollary)
    rank = len(names)
    _check_scheme(scheme, rank)
    parities = diagram_parities(d) if scheme.parity is not None else {}

    relators: list[Word] = []
    provenance: list[str] = []

    def emit(tag: str, lhs: Word, rhs: Word) -> None:
        relator = multiply(lhs, invert(rhs))
        if relator:
            relators.append(relator)
            provenance.append(tag)

    for c in sorted(d.crossings, key=lambda c: c.id):
        x, y, z, a = (generator(arc_gen[c.ports[p]]) for p in (X, Y, Z, A))
        tag = f"crossing:{c.id}:{c.kind.value}"
        if c.kind is CrossingKind.VIRTUAL:
            if scheme.eta is None:
                continue
            emit(f"{tag}:0", a, apply(scheme.eta, y))
            emit(f"{tag}:1", z, apply_inverse(scheme.eta, x))
            continue
        theta, phi = scheme.theta, scheme.phi
        if scheme.parity is not None:
            even = parities[c.id] is Parity.EVEN
            theta = scheme.parity.E if even else scheme.parity.O
            phi = scheme.parity.e if even else scheme.parity.o
        if c.sign > 0:
            emit(f"{tag}:0", z, multiply(y, apply(theta, multiply(x, invert(a)))))
            emit(f"{tag}:1", a, apply(phi, y))
        else:
            emit(f"{tag}:0", z, apply_inverse(phi, x))
            emit(f"{tag}:1", a, multiply(apply_inverse(theta, multiply(invert(z), y)), x))

    ops = scheme.operators()
    for f, g in scheme.required_pairs():
        for i in range(rank):
            gen = generator(i)
            emit(f"commute:{f},{g}:{names[i]}", apply(ops[f], apply(ops[g], gen)), apply(ops[g], apply(ops[f], gen)))

    for tag, text in scheme.extra_relators:
        emit(tag, parse_word(text, names), ())

    logger.debug("built %s presentation: %d generators, %d relators", scheme.name, rank, len(relators))
    return Presentation(generators=names, relators=tuple(relators), provenance=tuple(provenance))


def abelianization_matrix(p: Presentation) -> list[list[int]]:
    """行为关系子，列为生成元，元素为指数和"""
    return [exponent_sums(r, p.rank) for r in p.relators]


# ============ 预设 ============

PRESETS = ("pi1", "quandle", "biquandle", "S", "I", "VG", "EG", "WG", "QG")


def preset(name: str, d: Diagram) -> AutomorphismScheme:
    """
    预设方案

    单个额外生成元 s 的预设用 s 的内自同构；VG 系列用 s, t, q 的内自同构分别作为 θ, φ, η
    """
    if name not in PRESETS:
        raise NotFoundException(f"Unknown preset {name!r}, expected one of {', '.join(PRESETS)}")
    corollary = name in ("quandle", "biquandle", "VG", "EG", "WG", "QG")
    j = {"pi1": 0, "quandle": 1, "biquandle": 1, "S": 1, "I": 1}.get(name, 3)
    count, _ = arc_generators(d, corollary)
    rank = count + j
    ident = identity(rank)
    by_s = inner(rank, count) if j else ident

    match name:
        case "pi1":
            return AutomorphismScheme(0, ident, ident, name=name)
        case "quandle":
            return AutomorphismScheme(1, by_s, ident, eta=ident, extra_names=("s",),
                                      enforce=Enforcement.QUOTIENT, name=name)
        case "biquandle":
            return AutomorphismScheme(1, ident, by_s, eta=ident, extra_names=("s",),
                                      enforce=Enforcement.QUOTIENT, name=name)
        case "S":
            return AutomorphismScheme(1, by_s, by_s, extra_names=("s",),
                                      enforce=Enforcement.QUOTIENT, name=name)
        case "I":
            return AutomorphismScheme(1, by_s, by_s.inverse(), extra_names=("s",),
                                      enforce=Enforcement.QUOTIENT, name=name)

    theta, phi, eta = inner(rank, count), inner(rank, count + 1), inner(rank, count + 2)
    extra: tuple[tuple[str, str], ...] = ()
    if name == "EG":
        eta = ident
    elif name == "WG":
        extra = (("identify:q=s", "q s^-1"),)
    elif name == "QG":
        extra = (("specialize:s=1", "s"),)
    return AutomorphismScheme(3, theta, phi, eta=eta, extra_names=DEFAULT_EXTRAS,
                              enforce=Enforcement.QUOTIENT, extra_relators=extra, name=name)


def scheme_from_spec(spec: Mapping[str, Any], d: Diagram) -> AutomorphismScheme:
    """
    由 JSON 规格构造方案

    自同构规格按图的生成元名称解析；出现 eta 即为推论模式，出现 parity 即为奇偶模式
    """
    j = int(spec.get("j", 0))
    corollary = spec.get("eta") is not None
    names = generator_names(d, j, corollary, spec.get("extra_names") or ())
    rank = len(names)

    def resolve(key: str, source: Mapping[str, Any] = spec) -> ConcreteAutomorphism:
        value = source.get(key)
        return identity(rank) if value is None else automorphism_from_spec(value, rank, names)

    parity = None
    if spec.get("parity") is not None:
        table = spec["parity"]
        parity = ParityOperators(*(resolve(k, table) for k in ("E", "O", "e", "o")))
    extra = tuple((item["provenance"], item["word"]) for item in spec.get("extra_relators") or ())
    return AutomorphismScheme(
        j=j,
        theta=resolve("theta"),
        phi=resolve("phi"),
        eta=resolve("eta") if corollary else None,
        parity=parity,
        extra_names=names[rank - j:] if j else (),
        enforce=Enforcement(spec.get("enforce", Enforcement.STRICT.value)),
        extra_relators=extra,
        name=str(spec.get("name", "custom")),
    )
