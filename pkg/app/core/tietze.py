"""
Tietze 化简

步骤预算内：删除平凡与重复关系子（循环旋转、取逆等价），消去在某个关系子中只出现一次的
生成元，并用长公共循环子字缩短关系子。结果与输入表示同一个群，不保证规范。
"""

import logging

from app.core.free_group import cyclic_reduce, invert, multiply
from app.models.group import Presentation, Word


logger = logging.getLogger(__name__)


def cyclic_key(w: Word) -> Word:
    """循环旋转与取逆下的最小代表"""
    w = cyclic_reduce(w)
    if not w:
        return w
    candidates = []
    for u in (w, invert(w)):
        candidates.extend(u[i:] + u[:i] for i in range(len(u)))
    return min(candidates)


def _clean(relators: list[Word], provenance: list[str]) -> tuple[list[Word], list[str]]:
    seen: set[Word] = set()
    out_r: list[Word] = []
    out_p: list[str] = []
    for r, tag in zip(relators, provenance, strict=True):
        r = cyclic_reduce(r)
        key = cyclic_key(r)
        if not r or key in seen:
            continue
        seen.add(key)
        out_r.append(r)
        out_p.append(tag)
    return out_r, out_p


def _substitute(w: Word, g: int, image: Word) -> Word:
    return multiply(*((image if e == 1 else invert(image)) if h == g else ((h, e),) for h, e in w))


def _find_elimination(relators: list[Word]) -> tuple[int, int, Word] | None:
    """
    (关系子下标, 生成元, 替换字)

    优先最短关系子，其中优先下标最大的生成元
    """
    order = sorted(range(len(relators)), key=lambda i: (len(relators[i]), i))
    for i in order:
        r = relators[i]
        counts: dict[int, int] = {}
        for h, _ in r:
            counts[h] = counts.get(h, 0) + 1
        single = [h for h, c in counts.items() if c == 1]
        if not single:
            continue
        g = max(single)
        pos = next(k for k, (h, _) in enumerate(r) if h == g)
        before, exp, after = r[:pos], r[pos][1], r[pos + 1:]
        # before · g^exp · after = 1
        image = multiply(invert(before), invert(after)) if exp == 1 else multiply(after, before)
        return i, g, image
    return None


def _eliminate(
        generators: tuple[str, ...],
        relators: list[Word],
        provenance: list[str],
        found: tuple[int, int, Word],
) -> tuple[tuple[str, ...], list[Word], list[str]]:
    i, g, image = found
    out_r: list[Word] = []
    out_p: list[str] = []
    for k, (r, tag) in enumerate(zip(relators, provenance, strict=True)):
        if k == i:
            continue
        r = cyclic_reduce(_substitute(r, g, image))
        if r:
            out_r.append(tuple(((h - 1 if h > g else h), e) for h, e in r))
            out_p.append(tag)
    return generators[:g] + generators[g + 1:], out_r, out_p


def _piece_index(relators: list[Word]) -> dict[Word, list[tuple[int, Word]]]:
    """超过一半长度的循环子字 -> [(关系子下标, 替换字)]，两个方向都收录"""
    index: dict[Word, list[tuple[int, Word]]] = {}
    for j, s in enumerate(relators):
        n = len(s)
        for t in (s, invert(s)):
            for rot in range(n):
                u = t[rot:] + t[:rot]
                for k in range(n // 2 + 1, n + 1):
                    index.setdefault(u[:k], []).append((j, invert(u[k:])))
    return index


def _shorten_once(r: Word, i: int, index: dict[Word, list[tuple[int, Word]]], dirty: set[int]) -> Word | None:
    n = len(r)
    doubled = r + r
    for k in range(n, 0, -1):
        for start in range(n):
            for j, replacement in index.get(doubled[start:start + k], ()):
                # 只用本轮未改动的其它关系子
                if j == i or j in dirty:
                    continue
                shorter = cyclic_reduce(multiply(replacement, doubled[start + k:start + n]))
                if len(shorter) < n:
                    return shorter
    return None


def _shorten(relators: list[Word]) -> bool:
    """一轮缩短：把关系子中另一关系子的长段（超过一半）换成其较短的补段"""
    index = _piece_index(relators)
    dirty: set[int] = set()
    for i, r in enumerate(relators):
        while r:
            shorter = _shorten_once(r, i, index, dirty)
            if shorter is None:
                break
            r = shorter
            dirty.add(i)
        relators[i] = r
    return bool(dirty)


def tietze_simplify(p: Presentation, budget: int = 400) -> Presentation:
    generators = p.generators
    relators, provenance = _clean(list(p.relators), list(p.provenance) or [""] * len(p.relators))
    steps = 0
    while steps < budget:
        found = _find_elimination(relators)
        if found is not None:
            # 消元阶段只丢弃平凡关系子，去重留到缩短之前
            generators, relators, provenance = _eliminate(generators, relators, provenance, found)
        else:
            relators, provenance = _clean(relators, provenance)
            if not _shorten(relators):
                break
        steps += 1
    relators, provenance = _clean(relators, provenance)
    logger.debug("tietze: %d steps, %d generators, %d relators", steps, len(generators), len(relators))
    return Presentation(generators, tuple(relators), tuple(provenance))
