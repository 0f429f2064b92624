"""
R3 / 虚拟 R4 的交叉点方程组化简、约束提取与特化族的不可区分性检查

每个方程组由 (目标变量, 表达式) 组成，从输入 a, b, c 出发逐步代入求出 x, y, z。
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
import logging

from app.core.exceptions import FormalSyntaxError
from app.core.formal import (
    ALPHABET,
    NO_DECLS,
    CommutationDecl,
    FormalWord,
    Ops,
    cyclic_normalize,
    equal,
    format_formal,
    normalize,
    normalize_ops,
    parse_formal,
    rename_ops,
    substitute,
    variable,
)


logger = logging.getLogger(__name__)

INPUTS = ("a", "b", "c")
OUTPUTS = ("x", "y", "z")


class Side(str, Enum):
    LHS = "lhs"
    RHS = "rhs"


class R3Case(str, Enum):
    EVEN3 = "even3"
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"


@dataclass(frozen=True, slots=True)
class CrossingSystem:
    equations: tuple[tuple[str, str], ...]
    fallbacks: tuple[tuple[str, str], ...] = ()


# ============ 方程组 ============

_R3_SYSTEMS: dict[tuple[R3Case, Side], CrossingSystem] = {
    (R3Case.EVEN3, Side.LHS): CrossingSystem((
        ("s", "phi(a)"),
        ("x", "a theta(r s^-1)"),
        ("t", "phi(b)"),
        ("z", "b theta(s t^-1)"),
        ("y", "phi^-1(t)"),
        ("r", "theta^-1(y^-1 c) t"),
    )),
    (R3Case.EVEN3, Side.RHS): CrossingSystem((
        ("p", "phi^-1(b)"),
        ("x", "theta^-1(p^-1 q) b"),
        ("z", "phi(m)"),
        ("q", "m theta(c z^-1)"),
        ("y", "phi(p)"),
        ("m", "p theta(a y^-1)"),
    )),
    (R3Case.CASE1, Side.LHS): CrossingSystem((
        ("s", "o(a)"),
        ("x", "a O(r s^-1)"),
        ("t", "o(b)"),
        ("z", "b O(s t^-1)"),
        ("y", "e^-1(t)"),
        ("r", "E^-1(y^-1 c) t"),
    )),
    (R3Case.CASE1, Side.RHS): CrossingSystem((
        ("p", "e^-1(b)"),
        ("x", "E^-1(p^-1 q) b"),
        ("z", "o(m)"),
        ("q", "m O(c z^-1)"),
        ("y", "o(p)"),
        ("m", "p O(a y^-1)"),
    )),
    (R3Case.CASE2, Side.LHS): CrossingSystem((
        ("s", "e(a)"),
        ("x", "a E(r s^-1)"),
        ("t", "o(b)"),
        ("z", "b O(s t^-1)"),
        ("y", "o^-1(t)"),
        ("r", "O^-1(b^-1 c) t"),
    )),
    (R3Case.CASE2, Side.RHS): CrossingSystem((
        ("p", "o^-1(b)"),
        ("x", "O^-1(p^-1 q) b"),
        ("z", "e(m)"),
        ("q", "m E(c z^-1)"),
        ("y", "o(p)"),
        ("m", "p O(a y^-1)"),
    )),
    (R3Case.CASE3, Side.LHS): CrossingSystem(
        (
            ("s", "o(z)"),
            ("x", "a O(r s^-1)"),
            ("t", "e(b)"),
            ("z", "b E(s t^-1)"),
            ("y", "o^-1(t)"),
            ("r", "O^-1(y^-1 c) t"),
        ),
        fallbacks=(("s", "o(a)"),),
    ),
    (R3Case.CASE3, Side.RHS): CrossingSystem((
        ("p", "o^-1(b)"),
        ("x", "O^-1(p^-1 q) b"),
        ("z", "o(m)"),
        ("q", "m O(c z^-1)"),
        ("y", "e(p)"),
        ("m", "p E(a y^-1)"),
    )),
}

_VR4_SYSTEMS: dict[Side, CrossingSystem] = {
    Side.LHS: CrossingSystem((
        ("x", "a theta(r s^-1)"),
        ("s", "phi(a)"),
        ("y", "eta^-1(t)"),
        ("r", "eta(c)"),
        ("z", "eta^-1(s)"),
        ("t", "eta(b)"),
    )),
    Side.RHS: CrossingSystem((
        ("q", "m theta(c z^-1)"),
        ("z", "phi(m)"),
        ("m", "eta^-1(a)"),
        ("y", "eta(p)"),
        ("p", "eta^-1(b)"),
        ("x", "eta(q)"),
    )),
}

# 化简后的奇偶情形方程（左右两边按书写形式）
PRINTED_EQUATIONS: dict[str, tuple[str, str]] = {
    "case1.x": (
        "a O(E^-1(e^-1(o(b^-1)) c) o(b a^-1))",
        "E^-1(O(a o(e^-1(b^-1)) c o(O(o(e^-1(b)) a^-1) e^-1(b^-1)))) b",
    ),
    "case1.y": ("e^-1(o(b))", "o(e^-1(b))"),
    "case1.z": ("b O(o(a) o(b^-1))", "o(e^-1(b) O(a o(e^-1(b))))"),
    "case2.x": (
        "a E(O^-1(b^-1 c) o(b) e(a^-1))",
        "a b O^-1(E(c e(O(b a^-1) o^-1(b^-1)))) b",
    ),
    "case2.y": ("b", "b"),
    "case2.z": ("b O(e(a) o(b^-1))", "e(o^-1(b) O(a b^-1))"),
    "case3.x": ("a b^-1 c O(e(b) o(a^-1))", "a b^-1 E^-1(O(c o(E(b a^-1)) b^-1)) b"),
    "case3.y": ("o^-1(e(b))", "e(o^-1(b))"),
    "case3.z": ("b E(o(a) e(b^-1))", "b o(E(a b^-1))"),
}

PARITY_COMMUTATORS = CommutationDecl.build(
    commute=[("e", "E"), ("o", "O"), ("O", "E"), ("o", "e")],
)

EVEN_TO_PARITY = {"theta": "E", "phi": "e"}

Equation = tuple[FormalWord, FormalWord]


# ============ 代入求解 ============

@dataclass(frozen=True, slots=True)
class Reduction:
    """一侧方程组化简后的输出"""
    label: str
    side: Side
    x: FormalWord
    y: FormalWord
    z: FormalWord
    flags: tuple[str, ...] = ()

    @property
    def outputs(self) -> tuple[FormalWord, FormalWord, FormalWord]:
        return self.x, self.y, self.z

    def as_text(self) -> dict[str, str]:
        return {name: format_formal(w) for name, w in zip(OUTPUTS, self.outputs, strict=True)}


def compose_system(system: CrossingSystem) -> tuple[dict[str, FormalWord], list[str]]:
    """按依赖顺序代入；遇到循环时使用登记的替代读法并记录"""
    known: dict[str, FormalWord] = {v: variable(v) for v in INPUTS}
    pending = {target: parse_formal(text) for target, text in system.equations}
    fallbacks = dict(system.fallbacks)
    flags: list[str] = []

    while pending:
        ready = [t for t, w in pending.items() if w.variables() <= known.keys()]
        if not ready:
            usable = [t for t in pending if t in fallbacks]
            if not usable:
                raise FormalSyntaxError(f"Crossing equations are cyclic in {sorted(pending)}")
            for target in usable:
                original = dict(system.equations)[target]
                replacement = fallbacks.pop(target)
                flags.append(
                    f"cyclic equations {sorted(pending)}: read {target} = {original} as {target} = {replacement}"
                )
                logger.warning("⚠️ %s", flags[-1])
                pending[target] = parse_formal(replacement)
            continue
        for target in ready:
            known[target] = substitute(pending.pop(target), known)
    return known, flags


def _reduce(label: str, side: Side, system: CrossingSystem, assignment: Mapping[str, str] | None) -> Reduction:
    values, flags = compose_system(system)
    outs = []
    for name in OUTPUTS:
        w = values[name]
        if assignment:
            w = rename_ops(w, assignment)
        outs.append(normalize(w))
    return Reduction(label, side, *outs, flags=tuple(flags))


def r3_reduce(side: Side | str, case: R3Case | str, assignment: Mapping[str, str] | None = None) -> Reduction:
    """
    合成一侧的六个交叉点方程并消去内部弧变量

    assignment 可把算子重新命名，例如 {"theta": "E", "phi": "e"}
    """
    side, case = Side(side), R3Case(case)
    return _reduce(case.value, side, _R3_SYSTEMS[(case, side)], assignment)


def vr4_reduce(side: Side | str) -> Reduction:
    side = Side(side)
    return _reduce("vr4", side, _VR4_SYSTEMS[side], None)


def differing_outputs(left: Reduction, right: Reduction, decls: CommutationDecl) -> list[str]:
    return [
        name
        for name, u, v in zip(OUTPUTS, left.outputs, right.outputs, strict=True)
        if not equal(u, v, decls)
    ]


def check_r3_invariance(case: R3Case | str, decls: CommutationDecl = NO_DECLS) -> bool:
    return not differing_outputs(r3_reduce(Side.LHS, case), r3_reduce(Side.RHS, case), decls)


def vr4_check(decls: CommutationDecl = NO_DECLS) -> bool:
    return not differing_outputs(vr4_reduce(Side.LHS), vr4_reduce(Side.RHS), decls)


def corollary_check(decls: CommutationDecl = NO_DECLS) -> bool:
    """虚拟 R4 与偶 R3 同时成立"""
    return check_r3_invariance(R3Case.EVEN3, decls) and vr4_check(decls)


# ============ 约束提取 ============

def printed_equation(key: str) -> Equation:
    if key not in PRINTED_EQUATIONS:
        raise FormalSyntaxError(f"Unknown equation {key!r}, expected one of {sorted(PRINTED_EQUATIONS)}")
    lhs, rhs = PRINTED_EQUATIONS[key]
    return parse_formal(lhs), parse_formal(rhs)


def printed_mismatches(case: R3Case | str, decls: CommutationDecl = NO_DECLS) -> list[dict[str, str]]:
    """合成出的各输出与登记的印刷方程逐侧比较，返回不相等的项"""
    case = R3Case(case)
    reductions = {side: r3_reduce(side, case) for side in Side}
    mismatches = []
    for i, name in enumerate(OUTPUTS):
        printed = printed_equation(f"{case.value}.{name}")
        for side, expected in zip(Side, printed, strict=True):
            composed = reductions[side].outputs[i]
            if not equal(composed, expected, decls):
                mismatches.append({
                    "output": name,
                    "side": side.value,
                    "printed": format_formal(normalize(expected, decls)),
                    "composed": format_formal(normalize(composed, decls)),
                })
    return mismatches


def extract_constraint(
        equation: Equation,
        substitution: Iterable[str] = (),
        decls: CommutationDecl = NO_DECLS,
) -> Equation:
    """把 substitution 中的变量替换为单位元，规范化后消去公共前后缀"""
    identity = {v: FormalWord() for v in substitution}
    left = list(normalize(substitute(equation[0], identity), decls).letters)
    right = list(normalize(substitute(equation[1], identity), decls).letters)
    while left and right and left[0] == right[0]:
        left.pop(0)
        right.pop(0)
    while left and right and left[-1] == right[-1]:
        left.pop()
        right.pop()
    return FormalWord(tuple(left)), FormalWord(tuple(right))


@dataclass(frozen=True, slots=True)
class OperatorRelation:
    """
    由方程强制的算子关系

    kind: trivial | identity | equal | commute | other
    """
    kind: str
    symbols: tuple[str, ...] = ()
    sign: int = 1
    residue: str = ""

    def __str__(self) -> str:
        match self.kind:
            case "trivial":
                return "trivial"
            case "identity":
                return f"{self.symbols[0]} = id"
            case "equal":
                right = self.symbols[1] if self.sign == 1 else f"{self.symbols[1]}^-1"
                return f"{self.symbols[0]} = {right}"
            case "commute":
                return f"[{self.symbols[0]}, {self.symbols[1]}]"
        return f"{self.residue} = 1"


def _ordered(a: str, b: str) -> tuple[str, str]:
    return (a, b) if ALPHABET.index(a) <= ALPHABET.index(b) else (b, a)


def classify_ops(ops: Ops) -> OperatorRelation:
    """把等于恒等的算子串读成关系"""
    text = " ".join(str(s) for s in ops)
    if not ops:
        return OperatorRelation("trivial")
    if len(ops) == 1:
        return OperatorRelation("identity", (ops[0].name,))
    if len(ops) == 2 and ops[0].name != ops[1].name:
        f, g = ops
        return OperatorRelation("equal", _ordered(f.name, g.name), -f.exponent * g.exponent)
    if len(ops) == 4:
        f, g, f2, g2 = ops
        if f.name != g.name and f2 == f.inverse() and g2 == g.inverse():
            return OperatorRelation("commute", _ordered(f.name, g.name))
    return OperatorRelation("other", residue=text)


def forced_relation(equation: Equation, decls: CommutationDecl = NO_DECLS) -> OperatorRelation:
    """
    方程 u = v 对所有变量取值成立时推出的算子关系

    关系子循环约化后若只剩 f(v)^±1 g(v)^∓1，则 f 与 g 作为映射相等
    """
    relator = cyclic_normalize(equation[0] * equation[1].inverse(), decls)
    letters = relator.letters
    if not letters:
        return OperatorRelation("trivial")
    if len(letters) == 2 and letters[0].var == letters[1].var and letters[0].exp == -letters[1].exp:
        first, second = letters
        ops = tuple(s.inverse() for s in reversed(second.ops)) + first.ops
        return classify_ops(normalize_ops(ops, decls))
    return OperatorRelation("other", residue=format_formal(relator))


def commutator_of(equation: Equation, decls: CommutationDecl = NO_DECLS) -> frozenset[str] | None:
    relation = forced_relation(equation, decls)
    return frozenset(relation.symbols) if relation.kind == "commute" else None


@dataclass(frozen=True, slots=True)
class ConstraintStep:
    source: str
    substitution: tuple[str, ...]
    residual: tuple[str, str]
    relation: OperatorRelation


def parity_commutator_steps() -> list[ConstraintStep]:
    """
    偶 R3 给出 [e, E]；情形 1 的 x (a=b=1)、y、z (b=1) 依次给出 [O, E]、[o, e]、[O, o]
    """
    steps: list[ConstraintStep] = []
    left = r3_reduce(Side.LHS, R3Case.EVEN3, EVEN_TO_PARITY)
    right = r3_reduce(Side.RHS, R3Case.EVEN3, EVEN_TO_PARITY)
    sources: list[tuple[str, Equation, tuple[str, ...]]] = [("even3.z", (left.z, right.z), ("a",))]
    for key, subst in (("case1.x", ("a", "b")), ("case1.y", ()), ("case1.z", ("b",))):
        sources.append((key, printed_equation(key), subst))
    for source, equation, subst in sources:
        lhs, rhs = extract_constraint(equation, subst)
        steps.append(ConstraintStep(
            source=source,
            substitution=subst,
            residual=(format_formal(lhs), format_formal(rhs)),
            relation=forced_relation((lhs, rhs)),
        ))
    return steps


# ============ 特化族 ============

@dataclass(frozen=True, slots=True)
class NoGoFamily:
    name: str
    equation: str
    decls: CommutationDecl
    substitution: tuple[str, ...]
    expected: OperatorRelation


NO_GO_FAMILIES: dict[str, NoGoFamily] = {
    "B": NoGoFamily(
        "B", "case3.z",
        CommutationDecl.build(identify=[("E", "id"), ("O", "id")], commute=[("o", "e")]),
        (),
        OperatorRelation("equal", ("e", "o")),
    ),
    "S": NoGoFamily(
        "S", "case3.z",
        CommutationDecl.build(identify=[("e", "E"), ("o", "O")], commute=[("O", "E")]),
        (),
        OperatorRelation("equal", ("E", "O")),
    ),
    "I": NoGoFamily(
        "I", "case3.z",
        CommutationDecl.build(identify=[("O", "o^-1"), ("E", "e^-1")], commute=[("O", "E")]),
        ("a",),
        OperatorRelation("equal", ("E", "O")),
    ),
    "Q": NoGoFamily(
        "Q", "case3.x",
        CommutationDecl.build(identify=[("o", "id"), ("e", "id")]),
        ("a", "b"),
        OperatorRelation("equal", ("E", "O")),
    ),
}


@dataclass(frozen=True, slots=True)
class NoGoResult:
    family: str
    equation: str
    residual: tuple[str, str]
    relation: OperatorRelation
    expected: OperatorRelation
    holds: bool = field(default=False)


def no_go_check(family: str) -> NoGoResult:
    """在特化族的等同关系下化简方程，读出被迫的偶/奇算子等同"""
    key = family.upper()
    if key not in NO_GO_FAMILIES:
        raise FormalSyntaxError(f"Unknown family {family!r}, expected one of {sorted(NO_GO_FAMILIES)}")
    spec = NO_GO_FAMILIES[key]
    lhs, rhs = extract_constraint(printed_equation(spec.equation), spec.substitution, spec.decls)
    relation = forced_relation((lhs, rhs), spec.decls)
    logger.debug("no-go %s: %s = %s -> %s", key, lhs, rhs, relation)
    return NoGoResult(
        family=key,
        equation=spec.equation,
        residual=(format_formal(lhs), format_formal(rhs)),
        relation=relation,
        expected=spec.expected,
        holds=relation == spec.expected,
    )
