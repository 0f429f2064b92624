"""
纽结图查询

经典 Gauss 码、奇偶性、半弧划分、面与同构判定
"""

import networkx as nx
from networkx.algorithms.isomorphism import categorical_multiedge_match, categorical_node_match

from app.core.embedding import Dart, PlanarMap
from app.core.gauss import parity_of
from app.models.diagram import A, CrossingKind, Diagram, GaussCode, Parity, Pass, Role, X, Y, Z


def validate_diagram(d: Diagram) -> PlanarMap:
    """检查结构（端口、单一回路、平面性）并返回工作结构"""
    return PlanarMap.from_diagram(d)


def normalize_diagram(d: Diagram) -> Diagram:
    """从 arc 0 开始按遍历顺序重新编号"""
    return validate_diagram(d).to_diagram()


def classical_gauss_code(d: Diagram) -> GaussCode:
    """
    忽略虚拟交叉点的 Gauss 码

    names 使用交叉点 id，因此 parity_of(code, crossing_id) 可直接使用
    """
    m = validate_diagram(d)
    sign = {c.id: c.sign for c in d.crossings}
    passes: list[Pass] = []
    names: list[str] = []
    if m.is_unknot:
        return GaussCode(passes=())
    for e in m.traversal():
        w = m.head[e]
        if m.kind[w] is not CrossingKind.CLASSICAL:
            continue
        if str(w) not in names:
            names.append(str(w))
        role = Role.OVER if m.over_in[w] == (e, 1) else Role.UNDER
        passes.append(Pass(names.index(str(w)) + 1, role, sign[w]))
    return GaussCode(passes=tuple(passes), names=tuple(names))


def diagram_parities(d: Diagram) -> dict[int, Parity]:
    """经典交叉点 id -> 奇偶性"""
    code = classical_gauss_code(d)
    return {int(name): parity_of(code, name) for name in code.names}


def theorem_arcs(d: Diagram) -> list[tuple[int, ...]]:
    """
    经典到经典的半弧（虚拟交叉点视为透明）

    从第一条尾端为经典交叉点的弧开始，按遍历顺序给出
    """
    m = validate_diagram(d)
    order = m.traversal()
    if m.is_unknot or all(m.kind[m.tail[e]] is not CrossingKind.CLASSICAL for e in order):
        return [tuple(order)]
    begin = next(i for i, e in enumerate(order) if m.kind[m.tail[e]] is CrossingKind.CLASSICAL)
    order = order[begin:] + order[:begin]
    runs: list[tuple[int, ...]] = []
    current: list[int] = []
    for e in order:
        current.append(e)
        if m.kind[m.head[e]] is CrossingKind.CLASSICAL:
            runs.append(tuple(current))
            current = []
    return runs


def faces(d: Diagram) -> list[tuple[Dart, ...]]:
    """所有面；(arc, 0) 表示面在弧的左侧，(arc, 1) 表示右侧"""
    cycles, _ = validate_diagram(d).faces()
    return [tuple(c) for c in cycles]


def _port_graph(d: Diagram) -> nx.MultiDiGraph:
    graph = nx.MultiDiGraph()
    for c in d.crossings:
        graph.add_node(c.id, kind=c.kind.value, sign=c.sign)
    out_port = {}
    in_port = {}
    for c in d.crossings:
        out_port[c.ports[Z]], out_port[c.ports[A]] = "z", "a"
        in_port[c.ports[X]], in_port[c.ports[Y]] = "x", "y"
    for i, (tail, head) in enumerate(d.arcs):
        graph.add_edge(tail, head, ports=(out_port[i], in_port[i]))
    return graph


def is_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    """端口标记的多重图同构（交叉点与弧的重新编号）"""
    if d1.is_unknot_circle or d2.is_unknot_circle:
        return d1.is_unknot_circle and d2.is_unknot_circle
    if len(d1.crossings) != len(d2.crossings):
        return False
    return bool(nx.is_isomorphic(
        _port_graph(d1),
        _port_graph(d2),
        node_match=categorical_node_match(["kind", "sign"], [None, 0]),
        edge_match=categorical_multiedge_match("ports", None),
    ))
