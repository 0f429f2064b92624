"""
Gauss 码解析与奇偶性

文法: 以逗号或空白分隔的 `[OU]?<int>[+-]?`，或单个字母（允许连写，如 abcacb）
"""

from collections import Counter
import logging
import re

from app.core.exceptions import GaussParseError, UnknownLabelError
from app.models.diagram import GaussCode, Parity, Pass, Role


logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"(?P<role>[OU])?(?P<num>\d+)(?P<sign>[+-])?|(?P<letter>[A-Za-z])")
_SEPARATOR = re.compile(r"\s*(?P<comma>,)?\s*")


def _tokenize(text: str) -> list[re.Match[str]]:
    tokens: list[re.Match[str]] = []
    lead = _SEPARATOR.match(text)
    assert lead is not None
    if lead.group("comma"):
        raise GaussParseError("Empty token at start of Gauss code")
    pos = lead.end()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise GaussParseError(f"Unexpected character {text[pos]!r} at offset {pos}")
        tokens.append(match)
        sep = _SEPARATOR.match(text, match.end())
        assert sep is not None
        pos = sep.end()
        if sep.group("comma") and (pos >= len(text) or text[pos] == ","):
            raise GaussParseError(f"Empty token at offset {pos}")
    return tokens


def parse_gauss(text: str) -> GaussCode:
    """
    解析 Gauss 码

    标签按首次出现顺序重编号为 1..n，原始标记保存在 names 中
    """
    tokens = _tokenize(text.strip())
    if not tokens:
        return GaussCode(passes=())

    letters = [t for t in tokens if t.group("letter")]
    if letters and len(letters) != len(tokens):
        raise GaussParseError("Letter and numeric passes cannot be mixed")

    raw: list[tuple[str, Role, int]] = []
    for token in tokens:
        if token.group("letter"):
            raw.append((token.group("letter"), Role.UNMARKED, 0))
            continue
        role = Role(token.group("role")) if token.group("role") else Role.UNMARKED
        sign = {"+": 1, "-": -1}.get(token.group("sign") or "", 0)
        raw.append((str(int(token.group("num"))), role, sign))

    roles = {r for _, r, _ in raw}
    if Role.UNMARKED in roles and len(roles) > 1:
        raise GaussParseError("Over/Under roles must be marked on every pass or on none")
    signs = {s for _, _, s in raw}
    if 0 in signs and len(signs) > 1:
        raise GaussParseError("Signs must be marked on every pass or on none")

    counts = Counter(name for name, _, _ in raw)
    for name, count in counts.items():
        if count != 2:
            raise GaussParseError(f"Crossing {name} occurs {count} times, expected 2")

    names: list[str] = []
    for name, _, _ in raw:
        if name not in names:
            names.append(name)
    dense = {name: i + 1 for i, name in enumerate(names)}

    passes = tuple(Pass(dense[name], role, sign) for name, role, sign in raw)
    for name in names:
        pair = [p for p in passes if p.label == dense[name]]
        if pair[0].role is not Role.UNMARKED and pair[0].role is pair[1].role:
            kind = "Over" if pair[0].role is Role.OVER else "Under"
            raise GaussParseError(f"Crossing {name} has two {kind} passes")
        if pair[0].sign != pair[1].sign:
            raise GaussParseError(f"Crossing {name} has conflicting signs")

    code = GaussCode(passes=passes, names=tuple(names))
    logger.debug("Parsed Gauss code with %d crossings", code.crossing_count)
    return code


def serialize(code: GaussCode) -> str:
    """渲染规范化文本"""
    if code.passes and code.names and all(n.isalpha() for n in code.names):
        return "".join(code.names[p.label - 1] for p in code.passes)
    parts = []
    for p in code.passes:
        sign = {1: "+", -1: "-"}.get(p.sign, "")
        parts.append(f"{p.role.value}{p.label}{sign}")
    return ",".join(parts)


def resolve_label(code: GaussCode, label: str | int) -> int:
    """原始标记 -> 稠密标签"""
    key = str(label)
    if key not in code.names:
        raise UnknownLabelError(f"Crossing {label!r} does not occur in the code")
    return code.names.index(key) + 1


def parity_of(code: GaussCode, label: str | int) -> Parity:
    """两次出现之间的符号数为偶数时为 Even"""
    first, second = code.positions(resolve_label(code, label))
    return Parity.EVEN if (second - first - 1) % 2 == 0 else Parity.ODD


def parities(code: GaussCode) -> dict[str, Parity]:
    """所有交叉点的奇偶性，按原始标记索引"""
    return {name: parity_of(code, name) for name in code.names}
