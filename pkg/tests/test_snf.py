from functools import reduce
from math import gcd, prod

from hypothesis import given, strategies as st
import pytest
from sympy import Matrix

from app.core.snf import smith_normal_form


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
)
rectangular = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda mn: st.lists(st.lists(st.integers(-6, 6), min_size=mn[1], max_size=mn[1]),
                        min_size=mn[0], max_size=mn[0])
)


@pytest.mark.parametrize(
    ("matrix", "expected"),
    [
        ([], []),
        ([[0]], [0]),
        ([[-3]], [3]),
        ([[2, 4], [2, 4]], [2, 0]),
        ([[2, 0], [0, 3]], [1, 6]),
        ([[1, -1, 0], [0, 1, -1]], [1, 1]),
        ([[3, 0, 0]], [3]),
    ],
)
def test_examples(matrix: list[list[int]], expected: list[int]):
    assert smith_normal_form(matrix) == expected


def test_input_is_not_modified():
    matrix = [[4, 6], [2, 8]]
    smith_normal_form(matrix)
    assert matrix == [[4, 6], [2, 8]]


@given(square)
def test_determinant(matrix: list[list[int]]):
    """对角元之积等于行列式的绝对值"""
    assert prod(smith_normal_form(matrix)) == abs(int(Matrix(matrix).det()))


@given(rectangular)
def test_divisibility_chain(matrix: list[list[int]]):
    diagonal = smith_normal_form(matrix)
    assert len(diagonal) == min(len(matrix), len(matrix[0]))
    assert all(d >= 0 for d in diagonal)
    for d, e in zip(diagonal, diagonal[1:]):
        assert (e == 0) if d == 0 else (e % d == 0)
    # 第一个对角元为所有元素的最大公约数
    assert diagonal[0] == reduce(gcd, (x for row in matrix for x in row), 0)
    assert sum(d != 0 for d in diagonal) == Matrix(matrix).rank()


operations = st.lists(
    st.tuples(st.booleans(), st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3)), max_size=8
)


def _row_operation(rows: list[list[int]], i: int, j: int, k: int) -> None:
    """取反、交换或把第 j 行的 k 倍加到第 i 行"""
    i, j = i % len(rows), j % len(rows)
    if i == j:
        rows[i] = [-x for x in rows[i]]
    elif k == 0:
        rows[i], rows[j] = rows[j], rows[i]
    else:
        rows[i] = [x + k * y for x, y in zip(rows[i], rows[j], strict=True)]


def _transpose(rows: list[list[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*rows, strict=True)]


@given(rectangular, operations)
def test_invariant_under_unimodular_operations(matrix: list[list[int]], ops: list[tuple[bool, int, int, int]]):
    """整数初等行列变换不改变 Smith 标准形"""
    transformed = [row[:] for row in matrix]
    for on_columns, i, j, k in ops:
        if on_columns:
            columns = _transpose(transformed)
            _row_operation(columns, i, j, k)
            transformed = _transpose(columns)
        else:
            _row_operation(transformed, i, j, k)
    assert smith_normal_form(transformed) == smith_normal_form(matrix)
