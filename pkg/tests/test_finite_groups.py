import orjson
import pytest

from app.core.exceptions import NotFoundException
from app.core.finite_groups import (
    PANEL_NAMES,
    FiniteGroup,
    direct_product,
    get_group,
    load_group_file,
    parse_cycles,
)


@pytest.mark.parametrize(
    ("name", "order"),
    [("trivial", 1), ("Z2", 2), ("Z3", 3), ("S3", 6), ("D4", 8), ("A4", 12), ("S4", 24), ("S3xZ2", 12)],
)
def test_panel_orders(name: str, order: int):
    assert get_group(name).order == order


@pytest.mark.parametrize("name", PANEL_NAMES)
def test_group_axioms(name: str):
    g = get_group(name)
    e = g.identity
    for a in range(g.order):
        assert g.multiply(a, e) == a == g.multiply(e, a)
        assert g.multiply(a, g.inverses[a]) == e


def test_unknown_group():
    with pytest.raises(NotFoundException):
        get_group("Q8")


def test_direct_product():
    g = direct_product(get_group("Z2"), get_group("Z3"))
    assert g.name == "Z2xZ3"
    assert g.order == 6
    # Z6 是交换群
    assert all(g.multiply(a, b) == g.multiply(b, a) for a in range(6) for b in range(6))


def test_s3_is_not_abelian():
    g = get_group("S3")
    assert any(g.multiply(a, b) != g.multiply(b, a) for a in range(6) for b in range(6))


@pytest.mark.parametrize(
    ("table", "message"),
    [
        ([], "square"),
        ([[0, 1], [1]], "square"),
        ([[0, 2], [1, 0]], "square"),
        ([[0, 1, 2], [1, 0, 0], [2, 0, 0]], "associative"),
        ([[1, 1], [1, 1]], "identity"),
        ([[0, 1], [1, 1]], "inverse"),
    ],
)
def test_from_table_errors(table: list[list[int]], message: str):
    with pytest.raises(ValueError, match=message):
        FiniteGroup.from_table("bad", table)


def test_parse_cycles():
    assert parse_cycles("(0 1)(2 3)") == [[0, 1], [2, 3]]
    assert parse_cycles("(0,1,2)") == [[0, 1, 2]]
    assert parse_cycles("()") == []
    with pytest.raises(ValueError):
        parse_cycles("(0 1")


def test_from_permutations_identity_only():
    assert FiniteGroup.from_permutations("one", ["()"]).order == 1


def test_load_group_file(tmp_path):
    path = tmp_path / "k4.json"
    path.write_bytes(orjson.dumps({"name": "K4", "generators": ["(0 1)", "(2 3)"]}))
    g = load_group_file(path)
    assert (g.name, g.order) == ("K4", 4)

    path = tmp_path / "z2.json"
    path.write_bytes(orjson.dumps({"table": [[0, 1], [1, 0]]}))
    g = load_group_file(path)
    assert (g.name, g.order) == ("z2", 2)


def test_load_group_file_without_data(tmp_path):
    path = tmp_path / "empty.json"
    path.write_bytes(orjson.dumps({"name": "nothing"}))
    with pytest.raises(ValueError):
        load_group_file(path)
