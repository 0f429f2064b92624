from dataclasses import dataclass, field
from enum import Enum


class Role(str, Enum):
    """经过角色"""
    OVER = "O"
    UNDER = "U"
    UNMARKED = ""


class CrossingKind(str, Enum):
    """交叉点类型"""
    CLASSICAL = "C"
    VIRTUAL = "V"


class Parity(str, Enum):
    """交叉点奇偶性"""
    EVEN = "even"
    ODD = "odd"


class MoveKind(str, Enum):
    """定向 Reidemeister / 虚拟移动"""
    R1A = "R1a"
    R1B = "R1b"
    R2CO = "R2co"
    R2CONTRA = "R2contra"
    R3 = "R3"
    VR1 = "VR1"
    VR2 = "VR2"
    VR3 = "VR3"
    VR4 = "VR4"
    DETOUR = "Detour"

    @property
    def is_virtual(self) -> bool:
        return self in (MoveKind.VR1, MoveKind.VR2, MoveKind.VR3, MoveKind.VR4, MoveKind.DETOUR)


class Direction(str, Enum):
    """应用或撤销"""
    APPLY = "apply"
    UNDO = "undo"


# Port positions inside Crossing.ports
X, Y, Z, A = 0, 1, 2, 3


@dataclass(frozen=True, slots=True)
class Pass:
    """Gauss 码中的一次经过"""
    label: int
    role: Role = Role.UNMARKED
    sign: int = 0


@dataclass(frozen=True, slots=True)
class GaussCode:
    """
    Gauss 码

    labels 是 1..n 的稠密整数，按首次出现排序；names[label - 1] 保留原始标记
    """
    passes: tuple[Pass, ...]
    names: tuple[str, ...] = ()

    @property
    def crossing_count(self) -> int:
        return len(self.passes) // 2

    @property
    def roles_marked(self) -> bool:
        return bool(self.passes) and all(p.role is not Role.UNMARKED for p in self.passes)

    @property
    def signs_marked(self) -> bool:
        return bool(self.passes) and all(p.sign != 0 for p in self.passes)

    @property
    def fully_marked(self) -> bool:
        return not self.passes or (self.roles_marked and self.signs_marked)

    def positions(self, label: int) -> tuple[int, int]:
        """标签两次出现的位置"""
        first, second = (i for i, p in enumerate(self.passes) if p.label == label)
        return first, second

    def sign_of(self, label: int) -> int:
        return self.passes[self.positions(label)[0]].sign


@dataclass(frozen=True, slots=True)
class Crossing:
    """
    交叉点

    ports 按 (x, y, z, a) 排列；正交叉 x/y 为进入的下/上弧，z/a 为离开的下/上弧，
    负交叉上下互换。逆时针顺序恒为 (x, a, z, y)
    """
    id: int
    kind: CrossingKind
    sign: int
    ports: tuple[int, int, int, int]

    @property
    def is_classical(self) -> bool:
        return self.kind is CrossingKind.CLASSICAL


@dataclass(frozen=True, slots=True)
class Diagram:
    """定向虚拟纽结图"""
    crossings: tuple[Crossing, ...] = ()
    arcs: tuple[tuple[int | None, int | None], ...] = ((None, None),)

    @property
    def classical(self) -> tuple[Crossing, ...]:
        return tuple(c for c in self.crossings if c.is_classical)

    @property
    def virtual(self) -> tuple[Crossing, ...]:
        return tuple(c for c in self.crossings if not c.is_classical)

    @property
    def is_unknot_circle(self) -> bool:
        return not self.crossings


@dataclass(frozen=True, slots=True)
class MoveSite:
    """
    移动位点

    sides 中 0 表示弧方向左侧的面，1 表示右侧；option 含义随移动类型而定
    （R1 为符号，R2 为上方弧的下标，VR1 不使用）
    """
    kind: MoveKind
    arcs: tuple[int, ...]
    direction: Direction = Direction.APPLY
    sides: tuple[int, ...] = field(default=())
    option: int = 0
