"""
定向 Reidemeister / 虚拟 Reidemeister / 绕行移动

位点由弧编号与面侧描述；所有移动在 PlanarMap 上做局部手术后重新规范化
"""

from itertools import combinations
import logging

from app.core.diagram import diagram_parities
from app.core.embedding import Dart, PlanarMap
from app.core.exceptions import InapplicableMoveError
from app.models.diagram import CrossingKind, Diagram, Direction, MoveKind, MoveSite, Parity


logger = logging.getLogger(__name__)

C, V = CrossingKind.CLASSICAL, CrossingKind.VIRTUAL

_KINKS = (MoveKind.R1A, MoveKind.R1B, MoveKind.VR1)
_BIGONS = (MoveKind.R2CO, MoveKind.R2CONTRA, MoveKind.VR2)
_TRIANGLES = (MoveKind.R3, MoveKind.VR3, MoveKind.VR4)


# ============ 位点枚举 ============

def _kink_apply_sites(m: PlanarMap, kind: MoveKind) -> list[MoveSite]:
    sites = []
    for e in sorted(m.edges):
        if kind is MoveKind.VR1:
            sites.extend(MoveSite(kind, (e,), sides=(side,)) for side in (0, 1))
        else:
            side = 0 if kind is MoveKind.R1A else 1
            sites.extend(MoveSite(kind, (e,), sides=(side,), option=sign) for sign in (1, -1))
    return sites


def _kink_undo_sites(m: PlanarMap, kind: MoveKind) -> list[MoveSite]:
    cycles, face_of = m.faces()
    sites = []
    for v in sorted(m.rot):
        ring = m.rot[v]
        i = next(k for k in range(4) if ring[k][1] == 1 and ring[(k + 1) % 4][1] == 0)
        x, a, z, y = (ring[(i + k) % 4] for k in range(4))
        for out, back, side in ((z, y, 0), (a, x, 1)):
            loop = out[0]
            if back != (loop, 1):
                continue
            if len(cycles[face_of[(loop, 0)]]) != 1 and len(cycles[face_of[(loop, 1)]]) != 1:
                continue
            if m.kind[v] is V:
                if kind is MoveKind.VR1:
                    sites.append(MoveSite(kind, (loop,), Direction.UNDO, (side,)))
                continue
            if kind is (MoveKind.R1A if side == 0 else MoveKind.R1B):
                sign = -1 if m.over_in[v] == x else 1
                sites.append(MoveSite(kind, (loop,), Direction.UNDO, (side,), sign))
    return sites


def _bigon_apply_sites(m: PlanarMap, kind: MoveKind) -> list[MoveSite]:
    cycles, _ = m.faces()
    sites = []
    for cycle in cycles:
        for (e1, s1), (e2, s2) in combinations(cycle, 2):
            if e1 == e2:
                continue
            co = s1 != s2
            arcs, sides = (e1, e2), (s1, s2)
            if kind is MoveKind.VR2:
                sites.append(MoveSite(kind, arcs, sides=sides))
            elif co == (kind is MoveKind.R2CO):
                sites.extend(MoveSite(kind, arcs, sides=sides, option=o) for o in (0, 1))
    return sites


def _bigon_undo_sites(m: PlanarMap, kind: MoveKind) -> list[MoveSite]:
    cycles, _ = m.faces()
    sites = []
    for cycle in cycles:
        if len(cycle) != 2:
            continue
        (f1, t1), (f2, t2) = cycle
        u, w = m.vertex_at((f1, t1)), m.vertex_at((f2, t2))
        if f1 == f2 or u == w or m.kind[u] is not m.kind[w]:
            continue
        if m.kind[u] is V:
            if kind is MoveKind.VR2:
                sites.append(MoveSite(kind, (f1, f2), Direction.UNDO, (t1, t2)))
            continue
        over_u, over_w = m.is_over(u, (f1, t1)), m.is_over(w, (f1, 1 - t1))
        if over_u != over_w or kind is MoveKind.VR2:
            continue
        if (t1 != t2) == (kind is MoveKind.R2CO):
            sites.append(MoveSite(kind, (f1, f2), Direction.UNDO, (t1, t2), 0 if over_u else 1))
    return sites


def _triangle_sites(m: PlanarMap, kind: MoveKind, direction: Direction) -> list[MoveSite]:
    cycles, _ = m.faces()
    sites = []
    for cycle in cycles:
        if len(cycle) != 3:
            continue
        edges = [e for e, _ in cycle]
        vertices = [m.vertex_at(h) for h in cycle]
        if len(set(edges)) != 3 or len(set(vertices)) != 3:
            continue
        kinds = [m.kind[v] for v in vertices]
        if kind is MoveKind.R3:
            if kinds.count(C) != 3 or len({s for _, s in cycle}) != 1:
                continue
            heights = sorted(_over_count(m, cycle, i) for i in range(3))
            if heights != [0, 1, 2]:
                continue
        elif kind is MoveKind.VR3 and kinds.count(V) != 3:
            continue
        elif kind is MoveKind.VR4 and kinds.count(C) != 1:
            continue
        sites.append(MoveSite(kind, tuple(edges), direction, tuple(s for _, s in cycle)))
    return sites


def _over_count(m: PlanarMap, cycle: list[Dart], i: int) -> int:
    """三角形第 i 条边所在弧在其两个顶点处为上方的次数"""
    e, s = cycle[i]
    return int(m.is_over(m.vertex_at((e, s)), (e, s))) + int(
        m.is_over(m.vertex_at((e, 1 - s)), (e, 1 - s))
    )


def _detour_runs(m: PlanarMap) -> list[tuple[int, ...]]:
    if m.is_unknot:
        return []
    order = m.traversal()
    classical = [e for e in order if m.kind[m.tail[e]] is C]
    if not classical:
        return [tuple(order)]
    begin = order.index(classical[0])
    order = order[begin:] + order[:begin]
    runs, current = [], []
    for e in order:
        current.append(e)
        if m.kind[m.head[e]] is C:
            if len(current) > 1:
                runs.append(tuple(current))
            current = []
    return runs


def enumerate_sites(
        d: Diagram,
        kind: MoveKind,
        direction: Direction = Direction.APPLY,
) -> list[MoveSite]:
    """给定类型的全部可用位点，顺序确定"""
    m = PlanarMap.from_diagram(d)
    if kind in _KINKS:
        if direction is Direction.APPLY:
            return _kink_apply_sites(m, kind)
        return [] if m.is_unknot else _kink_undo_sites(m, kind)
    if m.is_unknot:
        return []
    if kind in _BIGONS:
        if direction is Direction.APPLY:
            return _bigon_apply_sites(m, kind)
        return _bigon_undo_sites(m, kind)
    if kind in _TRIANGLES:
        return _triangle_sites(m, kind, direction)
    if direction is Direction.UNDO:
        return []
    return [MoveSite(kind, run) for run in _detour_runs(m)]


# ============ 局部手术 ============

def _add_kink(m: PlanarMap, e: int, side: int, kind: CrossingKind, sign: int) -> None:
    was_unknot = m.is_unknot
    k = m.new_vertex(kind)
    loop = m.new_edge()
    m.tail[loop] = m.head[loop] = k
    if was_unknot:
        e2 = e
        m.tail[e] = k
    else:
        e2 = m.new_edge()
        m.tail[e2] = k
        m.replace_dart(m.head[e], (e, 1), (e2, 1))
    m.head[e] = k

    if side == 0:
        m.rot[k] = [(e, 1), (e2, 0), (loop, 0), (loop, 1)]
        x, y = (e, 1), (loop, 1)
    else:
        m.rot[k] = [(loop, 1), (loop, 0), (e2, 0), (e, 1)]
        x, y = (loop, 1), (e, 1)
    if kind is C:
        m.over_in[k] = y if sign > 0 else x


def _add_bigon(m: PlanarMap, h1: Dart, h2: Dart, kind: CrossingKind, over: int) -> None:
    left = m.new_vertex(kind)
    right = m.new_vertex(kind)
    walks: list[tuple[tuple[int, int, int], int]] = []
    for idx, (e, s) in enumerate((h1, h2)):
        first, second = (left, right) if (idx == 0) == (s == 0) else (right, left)
        middle = m.new_edge()
        m.tail[middle], m.head[middle] = first, second
        last = m.new_edge()
        m.tail[last] = second
        m.replace_dart(m.head[e], (e, 1), (last, 1))
        m.head[e] = first
        walks.append(((e, middle, last) if s == 0 else (last, middle, e), s))

    def start(idx: int, piece: int) -> Dart:
        pieces, s = walks[idx]
        return pieces[piece], s

    def end(idx: int, piece: int) -> Dart:
        pieces, s = walks[idx]
        return pieces[piece], 1 - s

    m.rot[left] = [end(1, 1), start(0, 1), start(1, 2), end(0, 0)]
    m.rot[right] = [end(1, 0), end(0, 1), start(1, 1), start(0, 2)]
    if kind is C:
        over_edges = set(walks[over][0])
        for v in (left, right):
            m.over_in[v] = next(d for d in m.rot[v] if d[0] in over_edges and d[1] == 1)


def _flip_triangle(m: PlanarMap, cycle: list[Dart]) -> None:
    """
    三角形翻转（R3 / VR3 / VR4）

    每对弧的交点保留其顶点编号、类型与上下关系
    """
    v = [m.vertex_at(h) for h in cycle]

    def start(i: int) -> Dart:
        return cycle[i]

    def end(i: int) -> Dart:
        e, s = cycle[i]
        return e, 1 - s

    minus = [m.opposite(v[i], start(i)) for i in range(3)]
    plus = [m.opposite(v[(i + 1) % 3], end(i)) for i in range(3)]

    old = {
        v[0]: ({start(0), minus[0]}, {end(2), plus[2]}),
        v[1]: ({end(0), plus[0]}, {start(1), minus[1]}),
        v[2]: ({end(1), plus[1]}, {start(2), minus[2]}),
    }
    new_rings = {
        v[1]: [start(0), plus[1], minus[0], end(1)],
        v[0]: [plus[0], minus[2], end(0), start(2)],
        v[2]: [end(2), start(1), plus[2], minus[1]],
    }
    new_pairs = {
        v[0]: ({plus[0], end(0)}, {minus[2], start(2)}),
        v[1]: ({start(0), minus[0]}, {plus[1], end(1)}),
        v[2]: ({start(1), minus[1]}, {end(2), plus[2]}),
    }
    for w, ring in new_rings.items():
        m.rot[w] = ring
        for dart in ring:
            m.attach(w, dart)
        if m.kind[w] is C:
            which = 0 if m.over_in[w] in old[w][0] else 1
            m.over_in[w] = next(d for d in new_pairs[w][which] if d[1] == 1)


def _detour(m: PlanarMap, run: tuple[int, ...]) -> None:
    if not any(m.kind[u] is C for u in m.rot):
        m.make_unknot()
        return
    first, last = run[0], run[-1]
    inner = {m.head[e] for e in run[:-1]}
    on_run = m.base in run

    tip = m.new_vertex(None)
    m.head[first] = tip
    m.rot[tip] = [(first, 1)]
    loose = m.new_vertex(None)
    m.tail[last] = loose
    m.rot[loose] = [(last, 0)]
    m.reconnect(inner, last)

    pen = m.route(first, (last, 0))
    m.join(pen, last)
    if on_run:
        m.base = first


def apply_move(d: Diagram, site: MoveSite) -> Diagram:
    """在位点上执行移动，返回规范化后的新图"""
    if site not in enumerate_sites(d, site.kind, site.direction):
        raise InapplicableMoveError(f"{site.kind.value} {site.direction.value} site {site.arcs} does not apply")

    m = PlanarMap.from_diagram(d)
    kind, undo = site.kind, site.direction is Direction.UNDO
    if kind in _KINKS:
        if undo:
            m.remove_vertices({m.tail[site.arcs[0]]})
        else:
            crossing = V if kind is MoveKind.VR1 else C
            _add_kink(m, site.arcs[0], site.sides[0], crossing, site.option)
    elif kind in _BIGONS:
        h1, h2 = zip(site.arcs, site.sides, strict=True)
        if undo:
            m.remove_vertices({m.vertex_at(h1), m.vertex_at(h2)})
        else:
            crossing = V if kind is MoveKind.VR2 else C
            _add_bigon(m, h1, h2, crossing, site.option)
    elif kind in _TRIANGLES:
        _flip_triangle(m, list(zip(site.arcs, site.sides, strict=True)))
    else:
        _detour(m, site.arcs)

    result = m.to_diagram()
    logger.debug(
        "%s %s: %d -> %d crossings",
        kind.value, site.direction.value, len(d.crossings), len(result.crossings),
    )
    return result


def r3_parity_pattern(d: Diagram, site: MoveSite) -> tuple[Parity, ...]:
    """三角形位点上经典交叉点的奇偶性"""
    m = PlanarMap.from_diagram(d)
    parity = diagram_parities(d)
    vertices = [m.vertex_at(h) for h in zip(site.arcs, site.sides, strict=True)]
    return tuple(parity[v] for v in vertices if m.kind[v] is C)
