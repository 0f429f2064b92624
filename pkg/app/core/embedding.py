"""
平面图（旋转系统）与 Gauss 码实现

边按纽结方向定向；dart (e, 0) 位于边 e 的尾端，(e, 1) 位于头端。
每个顶点的 rot 按逆时针列出 dart，面沿左手侧遍历。
度为 1 的顶点是构造过程中的临时端点（笔尖 / 待接端口）。
"""

from collections import deque
from dataclasses import dataclass, field
import logging

from app.core.exceptions import DiagramError
from app.models.diagram import A, Crossing, CrossingKind, Diagram, GaussCode, Pass, Role, X, Y, Z


logger = logging.getLogger(__name__)

Dart = tuple[int, int]


@dataclass
class PlanarMap:
    """可变的工作结构，对外只暴露 Diagram"""
    tail: dict[int, int] = field(default_factory=dict)
    head: dict[int, int] = field(default_factory=dict)
    rot: dict[int, list[Dart]] = field(default_factory=dict)
    kind: dict[int, CrossingKind | None] = field(default_factory=dict)
    over_in: dict[int, Dart] = field(default_factory=dict)
    base: int = 0

    # ============ 基本操作 ============

    @property
    def is_unknot(self) -> bool:
        return not self.rot

    @property
    def edges(self) -> list[int]:
        return sorted(self.tail) if self.tail else [self.base]

    def new_vertex(self, kind: CrossingKind | None) -> int:
        v = max(self.rot, default=0) + 1
        self.rot[v] = []
        self.kind[v] = kind
        return v

    def new_edge(self) -> int:
        return max([*self.tail, *self.head, self.base]) + 1

    def vertex_at(self, dart: Dart) -> int:
        e, end = dart
        return self.head[e] if end else self.tail[e]

    def opposite(self, v: int, dart: Dart) -> Dart:
        ring = self.rot[v]
        return ring[(ring.index(dart) + 2) % 4]

    def is_over(self, v: int, dart: Dart) -> bool:
        """dart 是否属于 v 处的上方弧"""
        over = self.over_in[v]
        return dart == over or dart == self.opposite(v, over)

    def attach(self, v: int, dart: Dart) -> None:
        e, end = dart
        if end:
            self.head[e] = v
        else:
            self.tail[e] = v

    def replace_dart(self, v: int, old: Dart, new: Dart) -> None:
        ring = self.rot[v]
        ring[ring.index(old)] = new
        if self.over_in.get(v) == old:
            self.over_in[v] = new
        self.attach(v, new)

    def drop_edge(self, e: int) -> None:
        self.tail.pop(e, None)
        self.head.pop(e, None)

    def drop_vertex(self, v: int) -> None:
        self.rot.pop(v, None)
        self.kind.pop(v, None)
        self.over_in.pop(v, None)

    def copy(self) -> "PlanarMap":
        return PlanarMap(
            tail=dict(self.tail),
            head=dict(self.head),
            rot={v: list(r) for v, r in self.rot.items()},
            kind=dict(self.kind),
            over_in=dict(self.over_in),
            base=self.base,
        )

    def make_unknot(self) -> None:
        self.tail.clear()
        self.head.clear()
        self.rot.clear()
        self.kind.clear()
        self.over_in.clear()
        self.base = 0

    # ============ 面 ============

    def next_in_face(self, dart: Dart) -> Dart:
        e, end = dart
        arriving = (e, 1 - end)
        ring = self.rot[self.vertex_at(arriving)]
        return ring[ring.index(arriving) - 1]

    def faces(self) -> tuple[list[list[Dart]], dict[Dart, int]]:
        """所有面（dart 循环）及 dart -> 面编号"""
        if self.is_unknot:
            return [[(self.base, 0)], [(self.base, 1)]], {(self.base, 0): 0, (self.base, 1): 1}
        cycles: list[list[Dart]] = []
        face_of: dict[Dart, int] = {}
        for e in sorted(self.tail):
            for end in (0, 1):
                start = (e, end)
                if start in face_of:
                    continue
                cycle = []
                dart = start
                while dart not in face_of:
                    face_of[dart] = len(cycles)
                    cycle.append(dart)
                    dart = self.next_in_face(dart)
                cycles.append(cycle)
        return cycles, face_of

    def strand_successor(self, e: int) -> int:
        """沿纽结方向的下一条边"""
        w = self.head[e]
        return self.opposite(w, (e, 1))[0]

    def traversal(self) -> list[int]:
        """从 base 开始的边序列"""
        if self.is_unknot:
            return [self.base]
        order = [self.base]
        e = self.strand_successor(self.base)
        while e != self.base:
            if len(order) > len(self.tail):
                raise DiagramError("Arcs do not form a single closed circuit")
            order.append(e)
            e = self.strand_successor(e)
        return order

    # ============ 笔（路由） ============

    def cross(self, pen: int, h: Dart) -> int:
        """笔穿过 h 所在的边，生成一个虚拟交叉点；返回新的笔边"""
        e, side = h
        v = self.new_vertex(CrossingKind.VIRTUAL)
        e2 = self.new_edge()
        self.tail[e2] = v
        self.replace_dart(self.head[e], (e, 1), (e2, 1))
        self.head[e] = v

        tip = self.head[pen]
        new_pen = self.new_edge()
        self.head[pen] = v
        self.tail[new_pen] = v
        self.head[new_pen] = tip
        self.rot[tip] = [(new_pen, 1)]
        if side == 0:
            self.rot[v] = [(e2, 0), (pen, 1), (e, 1), (new_pen, 0)]
        else:
            self.rot[v] = [(e2, 0), (new_pen, 0), (e, 1), (pen, 1)]
        return new_pen

    def _first_crossing(
            self,
            cycles: list[list[Dart]],
            face_of: dict[Dart, int],
            src: int,
            dst: int,
    ) -> Dart:
        parent: dict[int, tuple[int, Dart]] = {}
        queue = deque([src])
        seen = {src}
        while queue:
            f = queue.popleft()
            if f == dst:
                break
            for e, end in cycles[f]:
                g = face_of[(e, 1 - end)]
                if g not in seen:
                    seen.add(g)
                    parent[g] = (f, (e, end))
                    queue.append(g)
        if dst not in seen:
            raise DiagramError("Target face unreachable in the dual graph")
        f = dst
        while parent[f][0] != src:
            f = parent[f][0]
        return parent[f][1]

    def route(self, pen: int, target: Dart) -> int:
        """沿最短对偶路径把笔尖移到 target 所在的面"""
        while True:
            cycles, face_of = self.faces()
            src, dst = face_of[(pen, 1)], face_of[target]
            if src == dst:
                return pen
            pen = self.cross(pen, self._first_crossing(cycles, face_of, src, dst))

    def join(self, pen: int, stub: int) -> None:
        """笔尖与待接端口位于同一面时连接二者"""
        tip, loose = self.head[pen], self.tail[stub]
        w = self.head[stub]
        self.head[pen] = w
        self.replace_dart(w, (stub, 1), (pen, 1))
        self.drop_edge(stub)
        self.drop_vertex(tip)
        self.drop_vertex(loose)
        if self.base == stub:
            self.base = pen

    # ============ 删除顶点 ============

    def reconnect(self, removed: set[int], start: int) -> None:
        """
        删除 removed 中的顶点并把穿过它们的边合并

        从 start 开始沿纽结遍历，遇到度为 1 的端点或回到起点时结束；
        没有被遍历到的边一并删除
        """
        chains: list[list[int]] = []
        chain = [start]
        e = start
        while True:
            w = self.head[e]
            if w in removed:
                e = self.opposite(w, (e, 1))[0]
                chain.append(e)
                continue
            chains.append(chain)
            if len(self.rot[w]) == 1:
                break
            e = self.opposite(w, (e, 1))[0]
            if e == start:
                break
            chain = [e]

        substitute = {(c[-1], 1): (c[0], 1) for c in chains if len(c) > 1}
        heads = {c[0]: self.head[c[-1]] for c in chains}
        in_chain = {e: c[0] for c in chains for e in c}

        for v in removed:
            self.drop_vertex(v)
        for e in list(self.tail):
            if e not in heads:
                self.drop_edge(e)
        for e, w in heads.items():
            self.head[e] = w
        for v, ring in self.rot.items():
            self.rot[v] = [substitute.get(d, d) for d in ring]
            if v in self.over_in:
                self.over_in[v] = substitute.get(self.over_in[v], self.over_in[v])
        self.base = in_chain.get(self.base, start)

    def remove_vertices(self, removed: set[int]) -> None:
        """删除若干交叉点（两条穿过的弧各自合并）"""
        kept = [v for v in self.rot if v not in removed]
        if not kept:
            self.make_unknot()
            return
        start = min(e for e in self.tail if self.tail[e] not in removed)
        self.reconnect(removed, start)

    # ============ 与 Diagram 互转 ============

    @classmethod
    def from_diagram(cls, d: Diagram) -> "PlanarMap":
        """由 Diagram 构造，同时检查结构合法性"""
        m = cls()
        if not d.crossings:
            if len(d.arcs) != 1 or d.arcs[0] != (None, None):
                raise DiagramError("A diagram without crossings has exactly one free arc")
            return m

        ids = [c.id for c in d.crossings]
        if len(set(ids)) != len(ids):
            raise DiagramError("Duplicate crossing id")
        if len(d.arcs) != 2 * len(d.crossings):
            raise DiagramError("Arc count must be twice the crossing count")

        for c in d.crossings:
            if any(not 0 <= p < len(d.arcs) for p in c.ports):
                raise DiagramError(f"Crossing {c.id} references an unknown arc")
            if c.is_classical and c.sign not in (1, -1):
                raise DiagramError(f"Classical crossing {c.id} needs sign +1 or -1")
            if not c.is_classical and c.sign != 0:
                raise DiagramError(f"Virtual crossing {c.id} must have sign 0")
            x, a, z, y = (c.ports[X], 1), (c.ports[A], 0), (c.ports[Z], 0), (c.ports[Y], 1)
            m.rot[c.id] = [x, a, z, y]
            m.kind[c.id] = c.kind
            for dart in m.rot[c.id]:
                if dart[0] in (m.head if dart[1] else m.tail):
                    raise DiagramError(f"Arc {dart[0]} is attached twice at the same end")
                m.attach(c.id, dart)
            if c.is_classical:
                m.over_in[c.id] = y if c.sign > 0 else x

        for i, (tail, head) in enumerate(d.arcs):
            if m.tail.get(i) != tail or m.head.get(i) != head:
                raise DiagramError(f"Arc {i} endpoints disagree with the crossing ports")

        m.base = 0
        if len(m.traversal()) != len(d.arcs):
            raise DiagramError("Arcs do not form a single closed circuit")
        cycles, _ = m.faces()
        if len(m.rot) - len(m.tail) + len(cycles) != 2:
            raise DiagramError("Rotation system is not planar")
        return m

    def to_diagram(self) -> Diagram:
        """按遍历顺序规范化编号"""
        if self.is_unknot:
            return Diagram()
        order = self.traversal()
        arc_id = {e: i for i, e in enumerate(order)}
        vertex_id: dict[int, int] = {}
        for e in order:
            vertex_id.setdefault(self.head[e], len(vertex_id) + 1)

        crossings = []
        for v, cid in sorted(vertex_id.items(), key=lambda item: item[1]):
            ring = self.rot[v]
            i = next(k for k in range(4) if ring[k][1] == 1 and ring[(k + 1) % 4][1] == 0)
            x, a, z, y = (ring[(i + k) % 4] for k in range(4))
            kind = self.kind[v]
            assert kind is not None
            sign = 0
            if kind is CrossingKind.CLASSICAL:
                sign = -1 if self.over_in[v] == x else 1
            ports = (arc_id[x[0]], arc_id[y[0]], arc_id[z[0]], arc_id[a[0]])
            crossings.append(Crossing(id=cid, kind=kind, sign=sign, ports=ports))

        arcs = tuple((vertex_id[self.tail[e]], vertex_id[self.head[e]]) for e in order)
        return Diagram(crossings=tuple(crossings), arcs=arcs)


# ============ Gauss 码实现 ============

def _place_crossing(m: PlanarMap, pen: int, p: Pass) -> tuple[int, int, int]:
    """首次经过：在笔尖放置交叉点，另一条弧的两个端口留作待接端"""
    c = m.head[pen]
    m.kind[c] = CrossingKind.CLASSICAL
    n = m.new_edge()
    new_pen, in_stub, out_stub = n, n + 1, n + 2
    tip = m.new_vertex(None)
    loose_in = m.new_vertex(None)
    loose_out = m.new_vertex(None)
    m.tail[new_pen], m.head[new_pen] = c, tip
    m.tail[in_stub], m.head[in_stub] = loose_in, c
    m.tail[out_stub], m.head[out_stub] = c, loose_out
    m.rot[tip] = [(new_pen, 1)]
    m.rot[loose_in] = [(in_stub, 0)]
    m.rot[loose_out] = [(out_stub, 1)]

    here_in, here_out = (pen, 1), (new_pen, 0)
    other_in, other_out = (in_stub, 1), (out_stub, 0)
    if (p.role is Role.UNDER) == (p.sign > 0):
        x, z, y, a = here_in, here_out, other_in, other_out
    else:
        y, a, x, z = here_in, here_out, other_in, other_out
    m.rot[c] = [x, a, z, y]
    m.over_in[c] = y if p.sign > 0 else x
    return new_pen, in_stub, out_stub


def realize_diagram(code: GaussCode) -> Diagram:
    """
    把完全标记的 Gauss 码实现为平面图

    沿遍历逐步画出曲线：首次遇到的交叉点放在笔尖；第二次遇到时沿最短对偶路径
    （广度优先，按面边界顺序决定）把笔移到待接端口所在的面，途中穿过的边都成为
    虚拟交叉点；最后以同样方式闭合曲线
    """
    if not code.passes:
        return Diagram()
    if not code.fully_marked:
        raise DiagramError("Realization needs Over/Under roles and signs on every pass")

    m = PlanarMap()
    start = m.new_vertex(None)
    tip = m.new_vertex(None)
    first = 1
    m.tail[first], m.head[first] = start, tip
    m.rot[start] = [(first, 0)]
    m.rot[tip] = [(first, 1)]
    m.base = first

    pen = first
    pending: dict[int, tuple[int, int]] = {}
    for p in code.passes:
        if p.label not in pending:
            pen, in_stub, out_stub = _place_crossing(m, pen, p)
            pending[p.label] = (in_stub, out_stub)
            continue
        in_stub, out_stub = pending.pop(p.label)
        pen = m.route(pen, (in_stub, 0))
        m.join(pen, in_stub)
        pen = out_stub

    pen = m.route(pen, (first, 0))
    m.join(pen, first)
    m.base = pen

    d = m.to_diagram()
    logger.debug(
        "Realized %d classical and %d virtual crossings",
        len(d.classical), len(d.virtual),
    )
    return d
