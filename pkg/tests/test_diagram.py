import pytest

from app.core.diagram import (
    classical_gauss_code,
    diagram_parities,
    faces,
    is_isomorphic,
    normalize_diagram,
    theorem_arcs,
    validate_diagram,
)
from app.core.embedding import realize_diagram
from app.core.exceptions import DiagramError
from app.core.gauss import parse_gauss, serialize
from app.models.diagram import Crossing, CrossingKind, Diagram, Parity
from app.schemas.diagram import DiagramSchema
from tests.conftest import FIGURE_EIGHT, KINK, TREFOIL, VIRTUAL_TREFOIL


def test_unknot():
    """空码为无交叉点的圆"""
    d = realize_diagram(parse_gauss(""))
    assert d == Diagram()
    assert d.is_unknot_circle
    assert d.arcs == ((None, None),)


def test_trefoil_is_planar(trefoil: Diagram):
    assert len(trefoil.classical) == 3
    assert len(trefoil.virtual) == 0
    assert len(trefoil.arcs) == 6


def test_figure_eight_is_planar(figure_eight: Diagram):
    assert len(figure_eight.classical) == 4
    assert len(figure_eight.virtual) == 0
    assert sorted(c.sign for c in figure_eight.crossings) == [-1, -1, 1, 1]


def test_virtual_trefoil_needs_virtual_crossings(virtual_trefoil: Diagram):
    assert len(virtual_trefoil.classical) == 2
    assert len(virtual_trefoil.virtual) >= 1


@pytest.mark.parametrize("text", [KINK, TREFOIL, FIGURE_EIGHT, VIRTUAL_TREFOIL])
def test_arc_counts(text: str):
    """推论模式弧数为交叉点总数的两倍，定理模式半弧数为经典交叉点数的两倍"""
    d = realize_diagram(parse_gauss(text))
    assert len(d.arcs) == 2 * len(d.crossings)
    runs = theorem_arcs(d)
    assert len(runs) == 2 * len(d.classical)
    assert sorted(a for run in runs for a in run) == list(range(len(d.arcs)))


@pytest.mark.parametrize("text", [KINK, TREFOIL, FIGURE_EIGHT, VIRTUAL_TREFOIL])
def test_classical_code_round_trip(text: str):
    """忽略虚拟交叉点后的 Gauss 码与输入一致"""
    d = realize_diagram(parse_gauss(text))
    assert serialize(classical_gauss_code(d)) == text


@pytest.mark.parametrize("text", [KINK, TREFOIL, VIRTUAL_TREFOIL])
def test_realized_diagrams_are_normalized(text: str):
    d = realize_diagram(parse_gauss(text))
    assert normalize_diagram(d) == d


def test_realize_requires_marking():
    with pytest.raises(DiagramError):
        realize_diagram(parse_gauss("abcacb"))


def test_diagram_parities(virtual_trefoil: Diagram, trefoil: Diagram):
    assert set(diagram_parities(virtual_trefoil).values()) == {Parity.ODD}
    assert set(diagram_parities(trefoil).values()) == {Parity.EVEN}


def test_faces_satisfy_euler(trefoil: Diagram):
    """V - E + F = 2"""
    assert len(faces(trefoil)) == 2 - len(trefoil.crossings) + len(trefoil.arcs)


def test_isomorphism(trefoil: Diagram, figure_eight: Diagram):
    assert is_isomorphic(trefoil, trefoil)
    assert not is_isomorphic(trefoil, figure_eight)
    assert is_isomorphic(Diagram(), Diagram())
    assert not is_isomorphic(Diagram(), trefoil)


def test_mirror_is_not_isomorphic(trefoil: Diagram):
    """符号是节点属性"""
    mirror = realize_diagram(parse_gauss("U1-,O2-,U3-,O1-,U2-,O3-"))
    assert not is_isomorphic(trefoil, mirror)


@pytest.mark.parametrize(
    "bad",
    [
        Diagram(arcs=((None, None), (None, None))),
        Diagram(crossings=(Crossing(1, CrossingKind.CLASSICAL, 1, (0, 1, 1, 0)),), arcs=((1, 1),)),
        Diagram(crossings=(Crossing(1, CrossingKind.CLASSICAL, 0, (0, 1, 1, 0)),), arcs=((1, 1), (1, 1))),
        Diagram(crossings=(Crossing(1, CrossingKind.VIRTUAL, 1, (0, 1, 1, 0)),), arcs=((1, 1), (1, 1))),
        Diagram(crossings=(Crossing(1, CrossingKind.CLASSICAL, 1, (0, 7, 1, 0)),), arcs=((1, 1), (1, 1))),
    ],
)
def test_invalid_diagrams(bad: Diagram):
    with pytest.raises(DiagramError):
        validate_diagram(bad)


def test_diagram_json_round_trip(virtual_trefoil: Diagram):
    schema = DiagramSchema.from_model(virtual_trefoil)
    restored = DiagramSchema.model_validate_json(schema.model_dump_json())
    assert restored.to_model() == virtual_trefoil


def test_diagram_schema_rejects_signed_virtual():
    with pytest.raises(ValueError):
        DiagramSchema.model_validate({
            "crossings": [{"id": 1, "kind": "V", "sign": 1, "ports": [0, 1, 1, 0]}],
            "arcs": [[1, 1], [1, 1]],
        })
