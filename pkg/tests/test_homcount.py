from hypothesis import given, settings, strategies as st
import pytest

from app.core.exceptions import BudgetExceededError
from app.core.finite_groups import direct_product, get_group
from app.core.free_group import parse_word
from app.core.homcount import count_homs, count_homs_bruteforce, evaluate_relator, search_order
from app.core.presentation import build, preset
from app.core.tietze import tietze_simplify
from app.models.diagram import Diagram
from app.models.group import Presentation


words = st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=6).map(tuple)
presentations = st.lists(words, max_size=3).map(
    lambda rs: Presentation(("a", "b"), tuple(rs), ("",) * len(rs))
)


def _presentation(generators: tuple[str, ...], *relators: str) -> Presentation:
    return Presentation(generators, tuple(parse_word(r, generators) for r in relators), ("",) * len(relators))


def test_evaluate_relator():
    s3 = get_group("S3")
    images = {0: 1, 1: 2}
    value = evaluate_relator(s3, ((0, 1), (0, -1)), images)
    assert value == s3.identity


def test_free_generators_multiply():
    """不出现在关系子中的生成元贡献 |G|"""
    s3 = get_group("S3")
    assert count_homs(_presentation(("a", "b")), s3) == 36
    assert count_homs(_presentation(("a",), "a^2"), s3) == 4


def test_trivial_group():
    assert count_homs(_presentation(("a", "b"), "a b a^-1 b^-1"), get_group("trivial")) == 1


def test_cyclic_group():
    z3 = _presentation(("a",), "a a a")
    assert count_homs(z3, get_group("S3")) == 3
    assert count_homs(z3, get_group("A4")) == 9


def test_trefoil_into_s3(trefoil: Diagram):
    p = build(trefoil, preset("pi1", trefoil))
    assert count_homs(p, get_group("S3")) == 12
    assert count_homs(tietze_simplify(p), get_group("S3")) == 12


def test_unknot_into_s3(unknot: Diagram):
    assert count_homs(build(unknot, preset("pi1", unknot)), get_group("S3")) == 6


def test_search_order_covers_constrained_generators():
    p = _presentation(("a", "b", "c"), "a b a^-1 b^-1", "b b")
    order, checks = search_order(p)
    assert sorted(order) == [0, 1]
    assert sorted(i for step in checks for i in step) == [0, 1]


def test_log_budget():
    p = _presentation(tuple(f"g{i}" for i in range(10)))
    with pytest.raises(BudgetExceededError):
        count_homs(p, get_group("S4"))
    assert count_homs(p, get_group("Z2"), log_budget=10) == 2**10


def test_node_limit(trefoil: Diagram):
    p = build(trefoil, preset("pi1", trefoil))
    with pytest.raises(BudgetExceededError):
        count_homs(p, get_group("S3"), node_limit=1)


def test_parallel_branches(trefoil: Diagram):
    p = tietze_simplify(build(trefoil, preset("pi1", trefoil)))
    assert count_homs(p, get_group("S3"), workers=2) == 12


@settings(max_examples=40, deadline=None)
@given(presentations)
def test_matches_bruteforce(p: Presentation):
    for name in ("Z3", "S3"):
        group = get_group(name)
        assert count_homs(p, group) == count_homs_bruteforce(p, group)


@settings(max_examples=30, deadline=None)
@given(presentations, st.sampled_from([("Z2", "Z3"), ("S3", "Z2"), ("Z3", "Z3")]))
def test_counts_multiply_over_direct_products(p: Presentation, pair: tuple[str, str]):
    """|Hom(P, G×H)| = |Hom(P, G)| · |Hom(P, H)|"""
    g, h = (get_group(name) for name in pair)
    assert count_homs(p, direct_product(g, h)) == count_homs(p, g) * count_homs(p, h)


def test_trefoil_into_product(trefoil: Diagram):
    p = tietze_simplify(build(trefoil, preset("pi1", trefoil)))
    assert count_homs(p, direct_product(get_group("S3"), get_group("Z2"))) == 12 * 2
