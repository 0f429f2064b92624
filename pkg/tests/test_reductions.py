import pytest

from app.core.exceptions import FormalSyntaxError
from app.core.formal import CommutationDecl, OperatorSymbol, parse_formal
from app.core.reductions import (
    EVEN_TO_PARITY,
    NO_GO_FAMILIES,
    PARITY_COMMUTATORS,
    CrossingSystem,
    OperatorRelation,
    R3Case,
    Side,
    check_r3_invariance,
    classify_ops,
    commutator_of,
    compose_system,
    corollary_check,
    extract_constraint,
    forced_relation,
    no_go_check,
    parity_commutator_steps,
    printed_equation,
    printed_mismatches,
    r3_reduce,
    vr4_check,
    vr4_reduce,
)
from app.services.verification import ALL_PAIRS, ETA_PAIRS, EXPECTED_COMMUTATORS, THETA_PHI


# ============ 偶 R3 与虚拟 R4 ============

def test_even3_needs_theta_phi_commuting():
    assert check_r3_invariance(R3Case.EVEN3, THETA_PHI)
    assert not check_r3_invariance(R3Case.EVEN3)


def test_even3_outputs_use_only_inputs():
    for side in Side:
        reduction = r3_reduce(side, R3Case.EVEN3)
        for w in reduction.outputs:
            assert w.variables() <= {"a", "b", "c"}
        assert reduction.flags == ()


def test_vr4_needs_eta_pairs():
    assert vr4_check(ETA_PAIRS)
    assert not vr4_check()
    assert set(vr4_reduce("lhs").as_text()) == {"x", "y", "z"}


def test_corollary_is_tight():
    """去掉任何一对交换声明都不再成立"""
    assert corollary_check(ALL_PAIRS)
    for pair in ALL_PAIRS.commute:
        assert not corollary_check(CommutationDecl(ALL_PAIRS.commute - {pair}))


def test_renaming_to_parity_operators():
    reduction = r3_reduce(Side.LHS, R3Case.EVEN3, EVEN_TO_PARITY)
    names = {s.name for w in reduction.outputs for letter in w.letters for s in letter.ops}
    assert names <= {"E", "e"}


def test_case3_lhs_cycle_is_flagged():
    assert r3_reduce(Side.LHS, R3Case.CASE3).flags
    assert not r3_reduce(Side.RHS, R3Case.CASE3).flags


def test_cyclic_system_without_fallback():
    system = CrossingSystem((("x", "y a"), ("y", "x b"), ("z", "c")))
    with pytest.raises(FormalSyntaxError, match="cyclic"):
        compose_system(system)


def test_compose_in_dependency_order():
    system = CrossingSystem((("x", "theta(m)"), ("m", "a b"), ("y", "b"), ("z", "c")))
    values, flags = compose_system(system)
    assert str(values["x"]) == "theta(a b)"
    assert flags == []


# ============ 约束提取 ============

def test_classify_ops():
    theta, phi = OperatorSymbol("theta"), OperatorSymbol("phi")
    assert classify_ops(()) == OperatorRelation("trivial")
    assert classify_ops((theta,)) == OperatorRelation("identity", ("theta",))
    assert classify_ops((phi.inverse(), theta)) == OperatorRelation("equal", ("theta", "phi"), 1)
    relation = classify_ops((theta, phi, theta.inverse(), phi.inverse()))
    assert relation.kind == "commute"
    assert str(relation) == "[theta, phi]"


def test_forced_relation_of_equal_maps():
    relation = forced_relation((parse_formal("theta(a)"), parse_formal("phi(a)")))
    assert relation == OperatorRelation("equal", ("theta", "phi"), 1)
    assert str(relation) == "theta = phi"
    assert forced_relation((parse_formal("a b"), parse_formal("a b"))).kind == "trivial"
    assert forced_relation((parse_formal("a"), parse_formal("b"))).kind == "other"


def test_commutator_of():
    equation = (parse_formal("theta(phi(a))"), parse_formal("phi(theta(a))"))
    assert commutator_of(equation) == frozenset({"theta", "phi"})
    assert commutator_of(equation, CommutationDecl.build(commute=[("theta", "phi")])) is None


def test_extract_constraint_strips_common_affixes():
    lhs, rhs = extract_constraint((parse_formal("a theta(b) c"), parse_formal("a phi(b) c")))
    assert (str(lhs), str(rhs)) == ("theta(b)", "phi(b)")
    lhs, rhs = extract_constraint((parse_formal("a theta(b)"), parse_formal("phi(b) a")), ["a"])
    assert (str(lhs), str(rhs)) == ("theta(b)", "phi(b)")


def test_printed_equation_unknown():
    with pytest.raises(FormalSyntaxError):
        printed_equation("case4.x")


def test_printed_mismatches():
    """登记的印刷方程与合成结果不一致处按输出与侧列出"""
    found = {
        case: {(m["output"], m["side"]) for m in printed_mismatches(case)}
        for case in ("case1", "case2", "case3")
    }
    assert ("z", "rhs") in found["case1"]
    assert ("x", "rhs") in found["case2"]
    assert {("x", "lhs"), ("x", "rhs"), ("z", "rhs")} <= found["case3"]
    assert not {("y", "lhs"), ("y", "rhs")} & found["case2"]
    for m in printed_mismatches("case3"):
        assert m["printed"] != m["composed"]


def test_parity_commutators():
    steps = parity_commutator_steps()
    assert [s.source for s in steps] == list(EXPECTED_COMMUTATORS)
    for step in steps:
        assert step.relation.kind == "commute"
        assert frozenset(step.relation.symbols) == EXPECTED_COMMUTATORS[step.source]


def test_parity_commutator_declaration():
    assert PARITY_COMMUTATORS.commutes("E", "e")
    assert PARITY_COMMUTATORS.commutes("O", "o")
    assert not PARITY_COMMUTATORS.commutes("E", "o")


# ============ 特化族 ============

@pytest.mark.parametrize("family", sorted(NO_GO_FAMILIES))
def test_no_go_families(family: str):
    result = no_go_check(family)
    assert result.holds
    assert result.relation == NO_GO_FAMILIES[family].expected


def test_no_go_lowercase_name():
    assert no_go_check("s").family == "S"


def test_no_go_unknown_family():
    with pytest.raises(FormalSyntaxError):
        no_go_check("Z")
