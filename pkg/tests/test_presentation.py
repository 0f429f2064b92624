import pytest

from app.core.diagram import theorem_arcs
from app.core.exceptions import CommutationError, NotFoundException, RankMismatchError
from app.core.presentation import (
    PRESETS,
    Enforcement,
    abelianization_matrix,
    build,
    extra_names_for,
    generator_names,
    preset,
    scheme_from_spec,
)
from app.models.diagram import Diagram


# ============ 生成元 ============

def test_unknot_rank(unknot: Diagram):
    """无交叉点的圆：一个弧生成元加 j 个额外生成元"""
    assert build(unknot, preset("pi1", unknot)).generators == ("a1",)
    p = build(unknot, preset("VG", unknot))
    assert p.generators == ("a1", "s", "t", "q")
    assert p.rank == 4


def test_theorem_mode_rank(trefoil: Diagram, virtual_trefoil: Diagram):
    assert build(trefoil, preset("pi1", trefoil)).rank == len(theorem_arcs(trefoil)) == 6
    assert build(virtual_trefoil, preset("pi1", virtual_trefoil)).rank == 4


def test_corollary_mode_rank(virtual_trefoil: Diagram):
    """给出 eta 时每条弧都是生成元"""
    p = build(virtual_trefoil, preset("quandle", virtual_trefoil))
    assert p.rank == len(virtual_trefoil.arcs) + 1
    assert p.generators[-1] == "s"


def test_extra_names():
    assert extra_names_for(2) == ("s", "t")
    assert extra_names_for(4) == ("u1", "u2", "u3", "u4")


def test_extra_names_length(trefoil: Diagram):
    with pytest.raises(RankMismatchError):
        generator_names(trefoil, 2, False, ("s",))


# ============ 关系子 ============

def test_pi1_relators(trefoil: Diagram):
    p = build(trefoil, preset("pi1", trefoil))
    assert len(p.relators) == len(p.provenance) == 6
    assert all(tag.startswith("crossing:") for tag in p.provenance)
    # 每个关系子的指数和为 0
    assert all(sum(row) == 0 for row in abelianization_matrix(p))


def test_virtual_crossings_are_transparent_without_eta(virtual_trefoil: Diagram):
    p = build(virtual_trefoil, preset("pi1", virtual_trefoil))
    assert not any(":V:" in tag for tag in p.provenance)


def test_virtual_crossings_with_eta(virtual_trefoil: Diagram):
    p = build(virtual_trefoil, preset("VG", virtual_trefoil))
    assert any(":V:" in tag for tag in p.provenance)


@pytest.mark.parametrize("name", PRESETS)
def test_presets_build(trefoil: Diagram, name: str):
    p = build(trefoil, preset(name, trefoil))
    assert len(p.relators) == len(p.provenance)


def test_preset_extra_relators(trefoil: Diagram):
    assert "identify:q=s" in build(trefoil, preset("WG", trefoil)).provenance
    assert "specialize:s=1" in build(trefoil, preset("QG", trefoil)).provenance


def test_unknown_preset(trefoil: Diagram):
    with pytest.raises(NotFoundException):
        preset("VH", trefoil)


# ============ 自定义方案 ============

def test_strict_commutation(trefoil: Diagram):
    spec = {"theta": {"inner_by": "a1"}, "phi": {"inner_by": "a2"}}
    scheme = scheme_from_spec(spec, trefoil)
    assert scheme.enforce is Enforcement.STRICT
    with pytest.raises(CommutationError):
        build(trefoil, scheme)


def test_quotient_commutation(trefoil: Diagram):
    spec = {"theta": {"inner_by": "a1"}, "phi": {"inner_by": "a2"}, "enforce": "quotient"}
    p = build(trefoil, scheme_from_spec(spec, trefoil))
    assert any(tag.startswith("commute:theta,phi:") for tag in p.provenance)


def test_rank_mismatch(trefoil: Diagram):
    with pytest.raises(RankMismatchError):
        scheme_from_spec({"theta": {"rank": 5, "images": {}}}, trefoil)


def test_scheme_with_extra_generator(trefoil: Diagram):
    spec = {
        "name": "conj",
        "j": 1,
        "extra_names": ["s"],
        "theta": {"inner_by": "s"},
        "extra_relators": [{"provenance": "specialize:s=1", "word": "s"}],
    }
    scheme = scheme_from_spec(spec, trefoil)
    assert scheme.name == "conj"
    assert scheme.extra_names == ("s",)
    p = build(trefoil, scheme)
    assert p.generators[-1] == "s"
    assert p.provenance[-1] == "specialize:s=1"


def test_identity_parity_scheme_matches_pi1(trefoil: Diagram):
    """奇偶算子都取恒等时与 pi1 相同"""
    parity = build(trefoil, scheme_from_spec({"parity": {}}, trefoil))
    assert parity.relators == build(trefoil, preset("pi1", trefoil)).relators


@pytest.mark.parametrize("eta", [None, {"inner_by": "s"}])
def test_uniform_parity_scheme_matches_plain_build(virtual_trefoil: Diagram, eta: dict | None):
    """E=O、e=o 的奇偶模式与普通构造逐条相同（含来源标记），即使 θ、φ 不交换"""
    base = {"j": 2, "extra_names": ["s", "t"], "enforce": "quotient"}
    if eta is not None:
        base["eta"] = eta
    plain = {**base, "theta": {"inner_by": "s"}, "phi": {"inner_by": "t"}}
    parity = {**base, "parity": {
        "E": {"inner_by": "s"}, "O": {"inner_by": "s"},
        "e": {"inner_by": "t"}, "o": {"inner_by": "t"},
    }}
    expected = build(virtual_trefoil, scheme_from_spec(plain, virtual_trefoil))
    actual = build(virtual_trefoil, scheme_from_spec(parity, virtual_trefoil))
    assert any(tag.startswith("commute:theta,phi:") for tag in expected.provenance)
    assert actual.relators == expected.relators
    assert actual.provenance == expected.provenance
    assert actual.generators == expected.generators


def test_parity_commutators_are_theta_side_first(virtual_trefoil: Diagram):
    """奇偶算子不一致时四对交换子都按 (θ 侧, φ 侧) 定向"""
    spec = {"j": 2, "extra_names": ["s", "t"], "enforce": "quotient", "parity": {
        "E": {"inner_by": "s"}, "O": {"inner_by": "t"},
        "e": {"inner_by": "t"}, "o": {"inner_by": "s"},
    }}
    p = build(virtual_trefoil, scheme_from_spec(spec, virtual_trefoil))
    pairs = {tag.split(":")[1] for tag in p.provenance if tag.startswith("commute:")}
    assert pairs <= {"E,e", "O,o", "E,O", "e,o"}
    assert "E,e" in pairs
    assert "theta,phi" not in pairs
