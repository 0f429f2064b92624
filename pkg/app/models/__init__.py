# 导入所有领域模型
from app.models.diagram import (
    Crossing,
    CrossingKind,
    Diagram,
    Direction,
    GaussCode,
    MoveKind,
    MoveSite,
    Parity,
    Pass,
    Role,
)
from app.models.group import InvariantSignature, Letter, Presentation, Word


# 导出所有模型
__all__ = [
    "Crossing",
    "CrossingKind",
    "Diagram",
    "Direction",
    "GaussCode",
    "InvariantSignature",
    "Letter",
    "MoveKind",
    "MoveSite",
    "Parity",
    "Pass",
    "Presentation",
    "Role",
    "Word",
]
