"""
具体自同构下的反例搜索

在 F6 上取固定的自同构族（内自同构、分块置换、分块求逆），变量取 shortlex 顺序的约化字，
在预算内寻找使形式方程两边取值不同的实例。
"""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from itertools import islice, product
import logging

from app.core.exceptions import FormalSyntaxError
from app.core.formal import CommutationDecl, FormalWord, evaluate
from app.core.free_group import (
    EMPTY,
    ConcreteAutomorphism,
    commutes,
    format_word,
    identity,
    inner,
    inversion,
    permutation,
)
from app.core.reductions import NO_GO_FAMILIES, OUTPUTS, R3Case, Side, printed_equation, r3_reduce
from app.models.group import Word


logger = logging.getLogger(__name__)

RANK = 6
BLOCKS: tuple[tuple[int, ...], tuple[int, ...]] = ((0, 1, 2), (3, 4, 5))

Labelled = tuple[str, ConcreteAutomorphism]
NamedEquation = tuple[str, FormalWord, FormalWord]


@dataclass(frozen=True, slots=True)
class Counterexample:
    operators: dict[str, str]
    values: dict[str, str]
    component: str
    lhs: str
    rhs: str
    tried: int


# ============ 自同构族 ============

def _block_perm(block: Sequence[int], images: Sequence[int]) -> list[int]:
    perm = list(range(RANK))
    for src, dst in zip(block, images, strict=True):
        perm[src] = dst
    return perm


def block_automorphisms(block: Sequence[int]) -> list[Labelled]:
    """只作用在一个生成元块上的非平凡自同构"""
    first, second, third = block
    names = ", ".join(f"x{g + 1}" for g in block)
    return [
        (f"swap(x{first + 1},x{second + 1})",
         permutation(RANK, _block_perm(block, (second, first, third)))),
        (f"cycle({names})",
         permutation(RANK, _block_perm(block, (second, third, first)))),
        (f"invert({names})", inversion(RANK, block)),
    ]


def candidate_pool() -> list[Labelled]:
    pool: list[Labelled] = [("id", identity(RANK))]
    pool.extend((f"inner(x{g + 1})", inner(RANK, g)) for g in range(RANK))
    for block in BLOCKS:
        pool.extend(block_automorphisms(block))
    return pool


def generic_assignments(
        operators: Sequence[str],
        decls: CommutationDecl | None = None,
) -> list[dict[str, Labelled]]:
    """
    所有算子取值组合；满足 decls 中的交换声明

    非恒等分量多的组合排在前面
    """
    pool = candidate_pool()
    combos = sorted(
        product(range(len(pool)), repeat=len(operators)),
        key=lambda idx: (sum(i == 0 for i in idx), idx),
    )
    result = []
    for idx in combos:
        chosen = {name: pool[i] for name, i in zip(operators, idx, strict=True)}
        if decls is not None and not _respects(chosen, decls):
            continue
        result.append(chosen)
    return result


def _respects(chosen: Mapping[str, Labelled], decls: CommutationDecl) -> bool:
    for pair in decls.commute:
        f, g = sorted(pair)
        if f in chosen and g in chosen and not commutes(chosen[f][1], chosen[g][1]):
            return False
    return True


def family_assignments(family: str) -> list[dict[str, Labelled]]:
    """
    特化族的具体取值：偶算子作用在第一块，奇算子作用在第二块

    两块上的自同构互相交换，因此四个交换子关系都成立
    """
    key = family.upper()
    ident: Labelled = ("id", identity(RANK))
    result = []
    for even, odd in product(block_automorphisms(BLOCKS[0]), block_automorphisms(BLOCKS[1])):
        even_inv = (f"{even[0]}^-1", even[1].inverse())
        odd_inv = (f"{odd[0]}^-1", odd[1].inverse())
        match key:
            case "B":
                chosen = {"E": ident, "O": ident, "e": even, "o": odd}
            case "S":
                chosen = {"E": even, "O": odd, "e": even, "o": odd}
            case "I":
                chosen = {"E": even, "O": odd, "e": even_inv, "o": odd_inv}
            case "Q":
                chosen = {"E": even, "O": odd, "e": ident, "o": ident}
            case _:
                raise FormalSyntaxError(f"Unknown family {family!r}")
        result.append(chosen)
    return result


# ============ 搜索 ============

def shortlex_words(rank: int, max_length: int) -> Iterator[Word]:
    yield EMPTY
    letters = [(g, e) for g in range(rank) for e in (1, -1)]
    layer: list[Word] = [EMPTY]
    for _ in range(max_length):
        nxt: list[Word] = []
        for w in layer:
            for g, e in letters:
                if w and w[-1] == (g, -e):
                    continue
                word = w + ((g, e),)
                nxt.append(word)
                yield word
        layer = nxt


def search_counterexample(
        equations: Sequence[NamedEquation],
        assignments: Iterable[Mapping[str, Labelled]],
        *,
        budget: int,
        max_length: int,
        pool_size: int = 13,
) -> Counterexample | None:
    """在预算内寻找使某个方程两边取值不同的 (算子, 变量) 组合"""
    variables = sorted(set().union(*(l.variables() | r.variables() for _, l, r in equations)))
    pool = list(islice(shortlex_words(RANK, max_length), pool_size))
    tried = 0
    for chosen in assignments:
        operators = {name: aut for name, (_, aut) in chosen.items()}
        for combo in product(pool, repeat=len(variables)):
            if tried >= budget:
                logger.info("🔎 counterexample budget of %d evaluations exhausted", budget)
                return None
            tried += 1
            values = dict(zip(variables, combo, strict=True))
            for name, lhs, rhs in equations:
                left = evaluate(lhs, operators, values)
                right = evaluate(rhs, operators, values)
                if left != right:
                    return Counterexample(
                        operators={op: label for op, (label, _) in chosen.items()},
                        values={v: format_word(w) for v, w in values.items()},
                        component=name,
                        lhs=format_word(left),
                        rhs=format_word(right),
                        tried=tried,
                    )
    return None


def even3_equations() -> list[NamedEquation]:
    left, right = r3_reduce(Side.LHS, R3Case.EVEN3), r3_reduce(Side.RHS, R3Case.EVEN3)
    return [(n, u, v) for n, u, v in zip(OUTPUTS, left.outputs, right.outputs, strict=True)]


def even3_counterexample(budget: int, max_length: int, decls: CommutationDecl | None = None) -> Counterexample | None:
    """偶 R3 两侧在 θ, φ 不交换时的具体反例"""
    return search_counterexample(
        even3_equations(),
        generic_assignments(("theta", "phi"), decls),
        budget=budget,
        max_length=max_length,
    )


def family_counterexample(family: str, budget: int, max_length: int) -> Counterexample | None:
    """偶/奇算子取不同分块自同构时，特化族对应方程不成立的具体实例"""
    spec = NO_GO_FAMILIES[family.upper()]
    lhs, rhs = printed_equation(spec.equation)
    return search_counterexample(
        [(spec.equation, lhs, rhs)],
        family_assignments(family),
        budget=budget,
        max_length=max_length,
    )
