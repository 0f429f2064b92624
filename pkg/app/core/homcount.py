"""
表示到有限群的同态计数

回溯搜索：按贪心顺序给生成元赋值，某个关系子的生成元全部赋值后立即检验。
不出现在任何关系子中的生成元直接乘 |G|。
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
import logging
import math

from app.core.exceptions import BudgetExceededError
from app.core.finite_groups import FiniteGroup
from app.models.group import Presentation, Word


logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class _Problem:
    group: FiniteGroup
    relators: tuple[Word, ...]
    order: tuple[int, ...]
    checks: tuple[tuple[int, ...], ...]
    node_limit: int


def evaluate_relator(group: FiniteGroup, relator: Word, images: dict[int, int] | list[int]) -> int:
    value = group.identity
    for g, e in relator:
        x = images[g]
        value = group.table[value][x if e == 1 else group.inverses[x]]
    return value


def search_order(p: Presentation) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """
    贪心顺序：优先能补全最多关系子的生成元，其次出现次数多的，最后下标小的

    返回 (顺序, 每一步补全的关系子下标)
    """
    supports = [frozenset(g for g, _ in r) for r in p.relators]
    occurrences = [0] * p.rank
    for r in p.relators:
        for g, _ in r:
            occurrences[g] += 1
    constrained = sorted({g for s in supports for g in s})
    assigned: set[int] = set()
    done: set[int] = set()
    order: list[int] = []
    checks: list[tuple[int, ...]] = []
    while len(order) < len(constrained):
        def score(g: int) -> tuple[int, int, int]:
            completes = sum(1 for i, s in enumerate(supports) if i not in done and s <= assigned | {g})
            return completes, occurrences[g], -g
        best = max((g for g in constrained if g not in assigned), key=score)
        assigned.add(best)
        order.append(best)
        now = tuple(i for i, s in enumerate(supports) if i not in done and s <= assigned)
        done.update(now)
        checks.append(now)
    return tuple(order), tuple(checks)


def _search(problem: _Problem, prefix: tuple[int, ...]) -> tuple[int, int]:
    """(解数, 节点数)；prefix 固定前几个生成元的取值"""
    group = problem.group
    images: dict[int, int] = {}
    nodes = 0

    def ok(depth: int) -> bool:
        return all(
            evaluate_relator(group, problem.relators[i], images) == group.identity
            for i in problem.checks[depth]
        )

    for depth, value in enumerate(prefix):
        images[problem.order[depth]] = value
        if not ok(depth):
            return 0, 1

    def backtrack(depth: int) -> int:
        nonlocal nodes
        if depth == len(problem.order):
            return 1
        total = 0
        g = problem.order[depth]
        for value in range(group.order):
            nodes += 1
            if nodes > problem.node_limit:
                raise BudgetExceededError(f"Homomorphism search exceeded {problem.node_limit} nodes")
            images[g] = value
            if ok(depth):
                total += backtrack(depth + 1)
        del images[g]
        return total

    return backtrack(len(prefix)), nodes


def _branch(args: tuple[_Problem, int]) -> tuple[int, int]:
    problem, value = args
    return _search(problem, (value,))


def count_homs(
        p: Presentation,
        group: FiniteGroup,
        *,
        log_budget: float = 40.0,
        node_limit: int = 5_000_000,
        workers: int = 1,
) -> int:
    """满足所有关系子的赋值 生成元 -> G 的个数"""
    cost = p.rank * math.log2(group.order) if group.order > 1 else 0.0
    if cost > log_budget:
        raise BudgetExceededError(
            f"{p.rank} generators into {group.name} (order {group.order}) needs 2^{cost:.1f} "
            f"assignments, budget is 2^{log_budget:g}"
        )
    order, checks = search_order(p)
    free = p.rank - len(order)
    problem = _Problem(group, p.relators, order, checks, node_limit)

    if not order:
        count, nodes = 1, 0
    elif workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_branch, [(problem, v) for v in range(group.order)]))
        count, nodes = sum(r[0] for r in results), sum(r[1] for r in results)
    else:
        count, nodes = _search(problem, ())

    logger.debug("homcount %s: %d constrained, %d free, %d nodes", group.name, len(order), free, nodes)
    return count * group.order ** free


def count_homs_bruteforce(p: Presentation, group: FiniteGroup) -> int:
    """穷举 |G|^rank 个赋值"""
    return sum(
        all(evaluate_relator(group, r, images) == group.identity for r in p.relators)
        for images in (list(t) for t in product(range(group.order), repeat=p.rank))
    )
