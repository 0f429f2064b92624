"""
有限生成自由群中的约化字与具体自同构

字是 (生成元下标, ±1) 的元组；下标从 0 开始，文本中 x1 表示下标 0
"""

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
import re
from typing import Any, Self

from app.core.exceptions import InvalidAutomorphismError, RankMismatchError
from app.models.group import Letter, Word


EMPTY: Word = ()

_TOKEN = re.compile(r"\s*(?P<name>[A-Za-z_][A-Za-z_0-9]*)(?:\^(?P<exp>-?\d+))?\s*")


# ============ 字运算 ============

def reduce(letters: Iterable[Letter]) -> Word:
    """自由约化"""
    stack: list[Letter] = []
    for g, e in letters:
        if stack and stack[-1] == (g, -e):
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


def multiply(*words: Word) -> Word:
    return reduce(letter for w in words for letter in w)


def invert(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def power(w: Word, n: int) -> Word:
    base = w if n >= 0 else invert(w)
    return multiply(*([base] * abs(n)))


def generator(index: int, exponent: int = 1) -> Word:
    return power(((index, 1),), exponent)


def cyclic_reduce(w: Word) -> Word:
    """去掉首尾互逆的字母"""
    w = reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == (w[j][0], -w[j][1]):
        i += 1
        j -= 1
    return w[i:j + 1]


def exponent_sums(w: Word, rank: int) -> list[int]:
    sums = [0] * rank
    for g, e in w:
        sums[g] += e
    return sums


def max_generator(w: Word) -> int:
    return max((g for g, _ in w), default=-1)


# ============ 文本 ============

def default_names(rank: int) -> list[str]:
    return [f"x{i + 1}" for i in range(rank)]


def parse_word(text: str, names: Sequence[str] | None = None) -> Word:
    """
    解析 `x3 x4^-1` 形式的字

    给定 names 时按名称查找生成元，否则只接受 x<k>
    """
    letters: list[Letter] = []
    pos = 0
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ValueError(f"Cannot parse word at offset {pos}: {text!r}")
        name = match.group("name")
        if names is not None:
            if name not in names:
                raise ValueError(f"Unknown generator {name!r}")
            index = list(names).index(name)
        elif re.fullmatch(r"x[1-9]\d*", name):
            index = int(name[1:]) - 1
        else:
            raise ValueError(f"Generator {name!r} is not of the form x<k>")
        exponent = int(match.group("exp") or 1)
        letters.extend(generator(index, exponent))
        pos = match.end()
    return reduce(letters)


def format_word(w: Word, names: Sequence[str] | None = None) -> str:
    if not w:
        return "1"
    label = (lambda g: names[g]) if names is not None else (lambda g: f"x{g + 1}")
    return " ".join(label(g) if e == 1 else f"{label(g)}^-1" for g, e in w)


# ============ 自同构 ============

@dataclass(frozen=True, slots=True)
class ConcreteAutomorphism:
    """
    由生成元像给出的自同构

    构造时验证 image∘inverse_image 与 inverse_image∘image 都固定每个生成元
    """
    rank: int
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.rank or len(self.inverse_images) != self.rank:
            raise InvalidAutomorphismError("Images must be given for every generator")
        for w in (*self.images, *self.inverse_images):
            if max_generator(w) >= self.rank:
                raise InvalidAutomorphismError("Image uses a generator beyond the rank")
        for i in range(self.rank):
            x = generator(i)
            there = _substitute(self.images, self.inverse_images[i])
            back = _substitute(self.inverse_images, self.images[i])
            if there != x or back != x:
                raise InvalidAutomorphismError(f"Inverse images do not invert x{i + 1}")

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    @property
    def is_identity(self) -> bool:
        return all(img == generator(i) for i, img in enumerate(self.images))

    def inverse(self) -> Self:
        return type(self)(self.rank, self.inverse_images, self.images)


def _substitute(images: Sequence[Word], w: Word) -> Word:
    return multiply(*(images[g] if e == 1 else invert(images[g]) for g, e in w))


def apply(f: ConcreteAutomorphism, w: Word) -> Word:
    """同态像"""
    return _substitute(f.images, w)


def apply_inverse(f: ConcreteAutomorphism, w: Word) -> Word:
    return _substitute(f.inverse_images, w)


def compose(f: ConcreteAutomorphism, g: ConcreteAutomorphism) -> ConcreteAutomorphism:
    """f∘g：先 g 后 f"""
    if f.rank != g.rank:
        raise RankMismatchError("Cannot compose automorphisms of different rank")
    images = tuple(apply(f, img) for img in g.images)
    inverse_images = tuple(apply(g.inverse(), img) for img in f.inverse_images)
    return ConcreteAutomorphism(f.rank, images, inverse_images)


def commutes(f: ConcreteAutomorphism, g: ConcreteAutomorphism) -> bool:
    """在每个生成元上 f(g(x)) = g(f(x))"""
    if f.rank != g.rank:
        raise RankMismatchError("Cannot compare automorphisms of different rank")
    return all(apply(f, apply(g, generator(i))) == apply(g, apply(f, generator(i)))
               for i in range(f.rank))


def identity(rank: int) -> ConcreteAutomorphism:
    gens = tuple(generator(i) for i in range(rank))
    return ConcreteAutomorphism(rank, gens, gens)


def inner(rank: int, g: int, exponent: int = 1) -> ConcreteAutomorphism:
    """x ↦ g^e x g^-e"""
    s = generator(g, exponent)
    images = tuple(multiply(s, generator(i), invert(s)) for i in range(rank))
    inverse_images = tuple(multiply(invert(s), generator(i), s) for i in range(rank))
    return ConcreteAutomorphism(rank, images, inverse_images)


def permutation(rank: int, perm: Sequence[int]) -> ConcreteAutomorphism:
    """x_i ↦ x_perm[i]"""
    if sorted(perm) != list(range(rank)):
        raise InvalidAutomorphismError("Not a permutation of the generators")
    back = [0] * rank
    for i, p in enumerate(perm):
        back[p] = i
    return ConcreteAutomorphism(
        rank,
        tuple(generator(p) for p in perm),
        tuple(generator(b) for b in back),
    )


def inversion(rank: int, indices: Iterable[int]) -> ConcreteAutomorphism:
    """x_i ↦ x_i^-1（i ∈ indices）"""
    flip = set(indices)
    images = tuple(generator(i, -1 if i in flip else 1) for i in range(rank))
    return ConcreteAutomorphism(rank, images, images)


def automorphism_from_spec(
        spec: Mapping[str, Any],
        rank: int,
        names: Sequence[str] | None = None,
) -> ConcreteAutomorphism:
    """
    由 JSON 规格构造

    {"rank": k, "images": {...}, "inverse_images": {...}}，未列出的生成元取恒等；
    或 {"inner_by": "x5", "exponent": -1}；或 {"identity": true}
    """
    if spec.get("identity"):
        return identity(rank)
    if "inner_by" in spec:
        g = parse_word(str(spec["inner_by"]), names)
        if len(g) != 1:
            raise InvalidAutomorphismError("inner_by must name a single generator")
        [(index, sign)] = g
        return inner(rank, index, sign * int(spec.get("exponent", 1)))

    declared = int(spec.get("rank", rank))
    if declared != rank:
        raise RankMismatchError(f"Automorphism rank {declared} does not match {rank}")
    labels = list(names) if names is not None else default_names(rank)

    def table(key: str) -> tuple[Word, ...]:
        given = spec.get(key, {})
        unknown = set(given) - set(labels)
        if unknown:
            raise InvalidAutomorphismError(f"Unknown generators in {key}: {sorted(unknown)}")
        return tuple(
            parse_word(given[name], labels) if name in given else generator(i)
            for i, name in enumerate(labels)
        )

    return ConcreteAutomorphism(rank, table("images"), table("inverse_images"))
