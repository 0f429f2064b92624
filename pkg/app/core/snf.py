"""
整数矩阵的 Smith 标准形

精确整数运算，每步选绝对值最小的非零元作为主元
"""

from collections.abc import Sequence


Matrix = list[list[int]]


def _swap(a: Matrix, t: int, i: int, j: int) -> None:
    a[t], a[i] = a[i], a[t]
    for row in a:
        row[t], row[j] = row[j], row[t]


def _smallest(a: Matrix, cells: list[tuple[int, int]]) -> tuple[int, int] | None:
    nonzero = [(abs(a[i][j]), i, j) for i, j in cells if a[i][j]]
    if not nonzero:
        return None
    _, i, j = min(nonzero)
    return i, j


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """
    对角元 d1 | d2 | ...，非负，零在末尾

    长度为 min(行数, 列数)
    """
    a: Matrix = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    size = min(m, n)
    diagonal: list[int] = []

    for t in range(size):
        pivot = _smallest(a, [(i, j) for i in range(t, m) for j in range(t, n)])
        if pivot is None:
            break
        _swap(a, t, *pivot)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t], strict=True)]
                dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                dirty = dirty or a[t][j] != 0
            if dirty:
                cells = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
                found = _smallest(a, cells)
                assert found is not None
                _swap(a, t, *found)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad], strict=True)]
        diagonal.append(abs(a[t][t]))

    return diagonal + [0] * (size - len(diagonal))
