"""
带形式自同构算子的字

字母形如 f1(f2(...(v)))^±1，算子串按由外到内存放。
规范形：同态律展开、按声明的等同关系改写到代表元、在部分交换群中约化算子串
并取字典序最小代表，最后对字母做自由约化。
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
import re
from typing import Any

from app.core.exceptions import FormalSyntaxError, UnknownOperatorError
from app.core.free_group import ConcreteAutomorphism, Word, apply, apply_inverse, invert, multiply


ALPHABET: tuple[str, ...] = ("theta", "phi", "eta", "E", "O", "e", "o")
ALIASES = {"θ": "theta", "φ": "phi", "ϕ": "phi", "η": "eta"}
IDENTITY = "id"


def canonical_name(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in ALPHABET:
        raise UnknownOperatorError(f"Operator {name!r} is not in the alphabet {ALPHABET}")
    return name


# ============ 类型 ============

@dataclass(frozen=True, slots=True)
class OperatorSymbol:
    """算子符号"""
    name: str
    exponent: int = 1

    def inverse(self) -> "OperatorSymbol":
        return OperatorSymbol(self.name, -self.exponent)

    def sort_key(self) -> tuple[int, int]:
        return ALPHABET.index(self.name), 0 if self.exponent == 1 else 1

    def __str__(self) -> str:
        return self.name if self.exponent == 1 else f"{self.name}^-1"


Ops = tuple[OperatorSymbol, ...]


@dataclass(frozen=True, slots=True)
class FormalLetter:
    ops: Ops
    var: str
    exp: int = 1

    def inverse(self) -> "FormalLetter":
        return FormalLetter(self.ops, self.var, -self.exp)


@dataclass(frozen=True, slots=True)
class FormalWord:
    """形式字"""
    letters: tuple[FormalLetter, ...] = ()

    def __mul__(self, other: "FormalWord") -> "FormalWord":
        return FormalWord(self.letters + other.letters)

    def inverse(self) -> "FormalWord":
        return FormalWord(tuple(letter.inverse() for letter in reversed(self.letters)))

    def variables(self) -> set[str]:
        return {letter.var for letter in self.letters}

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        return format_formal(self)


@dataclass(frozen=True)
class CommutationDecl:
    """
    交换与等同声明

    identify 中的目标可以是 "o^-1"（与逆等同）或 "id"（恒等）
    """
    commute: frozenset[frozenset[str]] = field(default_factory=frozenset)
    identify: tuple[tuple[str, str], ...] = ()

    @classmethod
    def build(
            cls,
            commute: Iterable[Iterable[str]] = (),
            identify: Iterable[tuple[str, str]] = (),
    ) -> "CommutationDecl":
        pairs = frozenset(frozenset(canonical_name(n) for n in pair) for pair in commute)
        idents = []
        for left, right in identify:
            target = right.strip()
            if target != IDENTITY:
                target_name = canonical_name(target.removesuffix("^-1").strip())
                target = f"{target_name}^-1" if target.endswith("^-1") else target_name
            idents.append((canonical_name(left.strip()), target))
        decl = cls(commute=pairs, identify=tuple(idents))
        _closure(decl)
        return decl

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CommutationDecl":
        return cls.build(
            commute=data.get("commute", ()),
            identify=[tuple(pair) for pair in data.get("identify", ())],  # type: ignore[misc]
        )

    def to_dict(self) -> dict[str, list[list[str]]]:
        return {
            "commute": sorted(sorted(pair) for pair in self.commute),
            "identify": [list(pair) for pair in self.identify],
        }

    def merged(self, other: "CommutationDecl") -> "CommutationDecl":
        return CommutationDecl(self.commute | other.commute, self.identify + other.identify)

    def representative(self, name: str) -> tuple[str, int]:
        """(代表元, 符号)；代表元为 "id" 表示恒等"""
        return _closure(self)[0][name]

    def commutes(self, a: str, b: str) -> bool:
        return a == b or frozenset((a, b)) in _closure(self)[1]


@lru_cache(maxsize=256)
def _closure(decl: CommutationDecl) -> tuple[dict[str, tuple[str, int]], frozenset[frozenset[str]]]:
    """带符号的并查集闭包"""
    nodes = (*ALPHABET, IDENTITY)
    parent: dict[str, tuple[str, int]] = {n: (n, 1) for n in nodes}

    def find(n: str) -> tuple[str, int]:
        p, s = parent[n]
        if p == n:
            return n, 1
        root, s2 = find(p)
        parent[n] = (root, s * s2)
        return root, s * s2

    def rank(n: str) -> int:
        return -1 if n == IDENTITY else ALPHABET.index(n)

    for left, right in decl.identify:
        sign = 1
        if right.endswith("^-1"):
            right, sign = right.removesuffix("^-1"), -1
        ra, sa = find(left)
        rb, sb = find(right)
        relation = sa * sb * sign
        if ra == rb:
            if relation != 1 and ra != IDENTITY:
                raise FormalSyntaxError(f"Identifying {left} with {right}^{sign} forces an involution")
            continue
        if rank(ra) < rank(rb):
            parent[rb] = (ra, relation)
        else:
            parent[ra] = (rb, relation)

    reps = {n: find(n) for n in ALPHABET}
    pairs = set()
    for pair in decl.commute:
        names = sorted(pair)
        if len(names) != 2:
            continue
        ra, rb = reps[names[0]][0], reps[names[1]][0]
        if IDENTITY not in (ra, rb) and ra != rb:
            pairs.add(frozenset((ra, rb)))
    return reps, frozenset(pairs)


NO_DECLS = CommutationDecl()


# ============ 解析 ============

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[^\W\d]\w*)|(?P<pow>\^\s*\{?\s*-?\d+\s*\}?|⁻¹)|(?P<punct>[()\[\],]))"
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if match is None:
                raise FormalSyntaxError(f"Unexpected character at offset {pos}: {text!r}")
            kind = match.lastgroup or ""
            self.tokens.append((kind, match.group(kind)))
            pos = match.end()
        self.i = 0

    def peek(self, offset: int = 0) -> tuple[str, str]:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else ("end", "")

    def take(self, value: str | None = None) -> tuple[str, str]:
        token = self.peek()
        if value is not None and token[1] != value:
            raise FormalSyntaxError(f"Expected {value!r} in {self.text!r}")
        self.i += 1
        return token

    def parse(self) -> FormalWord:
        word = self.word()
        if self.peek()[0] != "end":
            raise FormalSyntaxError(f"Unbalanced input near token {self.peek()[1]!r} in {self.text!r}")
        return word

    def word(self) -> FormalWord:
        result = FormalWord()
        while self.peek()[0] == "name" or self.peek()[1] == "(":
            result = result * self.factor()
        return result

    def factor(self) -> FormalWord:
        base = self.primary()
        if self.peek()[0] == "pow":
            n = _power_value(self.take()[1])
            part = base if n >= 0 else base.inverse()
            base = FormalWord(part.letters * abs(n))
        return base

    def primary(self) -> FormalWord:
        kind, value = self.peek()
        if value == "(":
            self.take("(")
            inner = self.word()
            self.take(")")
            return inner
        if value == "O" and self.peek(1)[1] == "[":
            self.take()
            self.take("[")
            ops = [self.opsym()]
            while self.peek()[1] == ",":
                self.take(",")
                ops.append(self.opsym())
            self.take("]")
            return apply_ops(tuple(s for group in ops for s in group), self.argument())
        name = self.take()[1]
        # 只有字母表中的算子名才接参数，其余名字都是变量（`a (b)` 为并置）
        if ALIASES.get(name, name) not in ALPHABET:
            return FormalWord((FormalLetter((), name, 1),))
        applied = self.peek()[1] == "(" or (self.peek()[0] == "pow" and self.peek(1)[1] == "(")
        if not applied:
            raise FormalSyntaxError(f"Operator {name!r} used without an argument in {self.text!r}")
        symbol = canonical_name(name)
        n = _power_value(self.take()[1]) if self.peek()[0] == "pow" else 1
        ops = tuple(OperatorSymbol(symbol, 1 if n > 0 else -1) for _ in range(abs(n)))
        return apply_ops(ops, self.argument())

    def opsym(self) -> Ops:
        symbol = canonical_name(self.take()[1])
        n = _power_value(self.take()[1]) if self.peek()[0] == "pow" else 1
        return tuple(OperatorSymbol(symbol, 1 if n > 0 else -1) for _ in range(abs(n)))

    def argument(self) -> FormalWord:
        self.take("(")
        inner = self.word()
        self.take(")")
        return inner


def _power_value(token: str) -> int:
    if token == "⁻¹":
        return -1
    return int(re.sub(r"[\^{}\s]", "", token))


def parse_formal(text: str) -> FormalWord:
    """
    解析形式字

    支持 `O[phi,theta^-1](x)`、嵌套 `theta(phi(b a^-1))`、`^-1` 与括号
    """
    return _Parser(text).parse()


# ============ 构造与代入 ============

def variable(name: str, exp: int = 1) -> FormalWord:
    return FormalWord((FormalLetter((), name, exp),))


def apply_ops(ops: Ops, w: FormalWord) -> FormalWord:
    """f(uv) = f(u)f(v)，f(u^-1) = f(u)^-1"""
    return FormalWord(tuple(FormalLetter(ops + l.ops, l.var, l.exp) for l in w.letters))


def substitute(w: FormalWord, mapping: Mapping[str, FormalWord]) -> FormalWord:
    letters: list[FormalLetter] = []
    for letter in w.letters:
        if letter.var not in mapping:
            letters.append(letter)
            continue
        image = mapping[letter.var]
        if letter.exp == -1:
            image = image.inverse()
        letters.extend(apply_ops(letter.ops, image).letters)
    return FormalWord(tuple(letters))


def rename_ops(w: FormalWord, renaming: Mapping[str, str]) -> FormalWord:
    """按 renaming 替换算子名"""
    return FormalWord(tuple(
        FormalLetter(
            tuple(OperatorSymbol(renaming.get(s.name, s.name), s.exponent) for s in l.ops),
            l.var,
            l.exp,
        )
        for l in w.letters
    ))


# ============ 规范形 ============

def normalize_ops(ops: Ops, decls: CommutationDecl = NO_DECLS) -> Ops:
    """算子串在部分交换群中的字典序最小约化代表"""
    syms: list[OperatorSymbol] = []
    for s in ops:
        rep, sign = decls.representative(s.name)
        if rep != IDENTITY:
            syms.append(OperatorSymbol(rep, s.exponent * sign))

    changed = True
    while changed:
        changed = False
        for i, left in enumerate(syms):
            for j in range(i + 1, len(syms)):
                right = syms[j]
                if right.name == left.name and right.exponent == -left.exponent:
                    del syms[j]
                    del syms[i]
                    changed = True
                    break
                if not decls.commutes(right.name, left.name):
                    break
            if changed:
                break

    ordered: list[OperatorSymbol] = []
    while syms:
        best = -1
        for i, s in enumerate(syms):
            if all(decls.commutes(syms[k].name, s.name) for k in range(i)):
                if best < 0 or s.sort_key() < syms[best].sort_key():
                    best = i
        ordered.append(syms.pop(best))
    return tuple(ordered)


def normalize(w: FormalWord, decls: CommutationDecl = NO_DECLS) -> FormalWord:
    stack: list[FormalLetter] = []
    for letter in w.letters:
        current = FormalLetter(normalize_ops(letter.ops, decls), letter.var, letter.exp)
        if stack and stack[-1] == current.inverse():
            stack.pop()
        else:
            stack.append(current)
    return FormalWord(tuple(stack))


def equal(u: FormalWord, v: FormalWord, decls: CommutationDecl = NO_DECLS) -> bool:
    return normalize(u, decls) == normalize(v, decls)


def cyclic_normalize(w: FormalWord, decls: CommutationDecl = NO_DECLS) -> FormalWord:
    """规范化后去掉首尾互逆字母"""
    letters = list(normalize(w, decls).letters)
    while len(letters) > 1 and letters[0] == letters[-1].inverse():
        letters = letters[1:-1]
    return FormalWord(tuple(letters))


# ============ 输出与求值 ============

def _format_ops(ops: Ops, inner: str) -> str:
    for s in reversed(ops):
        inner = f"{s}({inner})"
    return inner


def format_formal(w: FormalWord) -> str:
    if not w.letters:
        return "1"
    parts: list[str] = []
    i = 0
    while i < len(w.letters):
        j = i
        while j < len(w.letters) and w.letters[j].ops == w.letters[i].ops:
            j += 1
        run = " ".join(l.var if l.exp == 1 else f"{l.var}^-1" for l in w.letters[i:j])
        parts.append(_format_ops(w.letters[i].ops, run) if w.letters[i].ops else run)
        i = j
    return " ".join(parts)


def evaluate(
        w: FormalWord,
        operators: Mapping[str, ConcreteAutomorphism],
        values: Mapping[str, Word],
) -> Word:
    """在具体自同构与变量取值下求值；未给出的算子视为恒等"""
    pieces: list[Word] = []
    for letter in w.letters:
        image = values[letter.var]
        for s in reversed(letter.ops):
            f = operators.get(s.name)
            if f is None:
                continue
            image = apply(f, image) if s.exponent == 1 else apply_inverse(f, image)
        pieces.append(image if letter.exp == 1 else invert(image))
    return multiply(*pieces)
