"""
小有限群

元素为 0..order-1，乘法用 Cayley 表。可由置换生成元（sympy PermutationGroup）、显式乘法表
或直积构造，加载时检查群公理。
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
import json
from pathlib import Path
import re
from typing import Any

from sympy.combinatorics import Permutation, PermutationGroup

from app.core.exceptions import NotFoundException


Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, slots=True)
class FiniteGroup:
    name: str
    table: Table
    identity: int
    inverses: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def multiply(self, a: int, b: int) -> int:
        return self.table[a][b]

    @classmethod
    def from_table(cls, name: str, table: list[list[int]] | Table) -> "FiniteGroup":
        """检查封闭性、结合律、单位元与逆元"""
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        if n == 0 or any(len(row) != n or any(not 0 <= x < n for x in row) for row in rows):
            raise ValueError(f"{name}: multiplication table must be square over 0..{n - 1}")
        for a, b, c in product(range(n), repeat=3):
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise ValueError(f"{name}: multiplication is not associative")
        identity = next((e for e in range(n) if all(rows[e][x] == x == rows[x][e] for x in range(n))), None)
        if identity is None:
            raise ValueError(f"{name}: no identity element")
        inverses = []
        for a in range(n):
            inv = next((b for b in range(n) if rows[a][b] == identity == rows[b][a]), None)
            if inv is None:
                raise ValueError(f"{name}: element {a} has no inverse")
            inverses.append(inv)
        return cls(name, rows, identity, tuple(inverses))

    @classmethod
    def from_sympy(cls, name: str, group: PermutationGroup) -> "FiniteGroup":
        elements = sorted(group.elements, key=lambda p: p.array_form)
        index = {tuple(p.array_form): i for i, p in enumerate(elements)}
        table = [[index[tuple((a * b).array_form)] for b in elements] for a in elements]
        return cls.from_table(name, table)

    @classmethod
    def from_permutations(cls, name: str, generators: list[str], degree: int | None = None) -> "FiniteGroup":
        """生成元用轮换记号给出，例如 "(0 1 2)(3 4)"；点从 0 开始"""
        cycles = [parse_cycles(g) for g in generators]
        points = [x for gen in cycles for cyc in gen for x in cyc]
        size = degree or (max(points) + 1 if points else 1)
        perms = [Permutation(gen, size=size) if gen else Permutation(list(range(size))) for gen in cycles]
        return cls.from_sympy(name, PermutationGroup(perms or [Permutation(list(range(size)))]))


def parse_cycles(text: str) -> list[list[int]]:
    text = text.strip()
    if text in ("", "()"):
        return []
    if not re.fullmatch(r"(\(\s*\d+(\s*[ ,]\s*\d+)*\s*\))+", text):
        raise ValueError(f"Malformed cycle notation: {text!r}")
    return [[int(x) for x in re.split(r"[ ,]+", body.strip())] for body in re.findall(r"\(([^)]*)\)", text)]


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """(a, b) 编号为 a * |H| + b"""
    m = h.order
    table = [
        [g.table[i // m][j // m] * m + h.table[i % m][j % m] for j in range(g.order * m)]
        for i in range(g.order * m)
    ]
    return FiniteGroup.from_table(f"{g.name}x{h.name}", table)


# ============ 面板 ============

_PANEL: dict[str, list[str]] = {
    "trivial": [],
    "Z2": ["(0 1)"],
    "Z3": ["(0 1 2)"],
    "S3": ["(0 1)", "(0 1 2)"],
    "D4": ["(0 1 2 3)", "(0 2)"],
    "A4": ["(0 1 2)", "(1 2 3)"],
    "S4": ["(0 1)", "(0 1 2 3)"],
}

PANEL_NAMES = tuple(_PANEL)


@lru_cache(maxsize=None)
def get_group(name: str) -> FiniteGroup:
    if "x" in name and name not in _PANEL:
        left, _, right = name.partition("x")
        return direct_product(get_group(left), get_group(right))
    if name not in _PANEL:
        raise NotFoundException(f"Unknown finite group {name!r}, expected one of {', '.join(PANEL_NAMES)}")
    if name == "trivial":
        return FiniteGroup.from_table(name, [[0]])
    return FiniteGroup.from_permutations(name, _PANEL[name])


def load_group_file(path: Path) -> FiniteGroup:
    """
    JSON 文件：{"name": ..., "generators": ["(0 1)", ...], "degree": 4} 或 {"name": ..., "table": [[...]]}
    """
    data: dict[str, Any] = json.loads(Path(path).read_text(encoding="utf-8"))
    name = str(data.get("name", Path(path).stem))
    if "table" in data:
        return FiniteGroup.from_table(name, data["table"])
    if "generators" in data:
        return FiniteGroup.from_permutations(name, list(data["generators"]), data.get("degree"))
    raise ValueError(f"{path}: expected 'generators' or 'table'")
