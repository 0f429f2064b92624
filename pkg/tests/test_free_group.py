from hypothesis import given, strategies as st
import pytest

from app.core.exceptions import InvalidAutomorphismError, RankMismatchError
from app.core.free_group import (
    ConcreteAutomorphism,
    apply,
    apply_inverse,
    automorphism_from_spec,
    commutes,
    compose,
    cyclic_reduce,
    exponent_sums,
    format_word,
    generator,
    identity,
    inner,
    invert,
    inversion,
    multiply,
    parse_word,
    permutation,
    reduce,
)
from app.models.group import Word


RANK = 4

words = st.lists(
    st.tuples(st.integers(min_value=0, max_value=RANK - 1), st.sampled_from([1, -1])),
    max_size=12,
).map(lambda letters: reduce(letters))

automorphisms = st.sampled_from([
    identity(RANK),
    inner(RANK, 0),
    inner(RANK, 3, -1),
    permutation(RANK, [1, 2, 3, 0]),
    inversion(RANK, [0, 2]),
    compose(inner(RANK, 1), permutation(RANK, [3, 2, 1, 0])),
])


def test_free_reduction():
    """相邻互逆字母相消"""
    assert parse_word("x1 x2 x2^-1 x1^-1") == ()
    assert multiply(parse_word("x1 x2"), parse_word("x2^-1 x3")) == parse_word("x1 x3")
    assert parse_word("x2^3") == ((1, 1), (1, 1), (1, 1))


def test_parse_and_format():
    w = parse_word("x3 x4^-1")
    assert w == ((2, 1), (3, -1))
    assert format_word(w) == "x3 x4^-1"
    assert format_word(()) == "1"
    assert parse_word("1") == ()
    assert parse_word("s a1^-1", ["a1", "s"]) == ((1, 1), (0, -1))
    assert format_word(((1, 1), (0, -1)), ["a1", "s"]) == "s a1^-1"


@pytest.mark.parametrize("text", ["y1", "x0", "x1 ^", "x1 + x2"])
def test_parse_errors(text: str):
    with pytest.raises(ValueError):
        parse_word(text)


def test_unknown_named_generator():
    with pytest.raises(ValueError, match="Unknown generator"):
        parse_word("q", ["a1", "s"])


def test_cyclic_reduce_and_exponents():
    assert cyclic_reduce(parse_word("x1 x2 x3 x1^-1")) == parse_word("x2 x3")
    assert exponent_sums(parse_word("x1 x2^-1 x1 x3"), 3) == [2, -1, 1]


def test_inner_automorphism():
    """x ↦ s x s^-1"""
    f = inner(RANK, 3)
    assert apply(f, generator(0)) == parse_word("x4 x1 x4^-1")
    assert apply(f, generator(3)) == generator(3)
    assert apply_inverse(f, apply(f, parse_word("x1 x2"))) == parse_word("x1 x2")


def test_inner_commutation():
    """不同生成元的内自同构不交换"""
    assert commutes(inner(RANK, 0), inner(RANK, 0, -1))
    assert not commutes(inner(RANK, 0), inner(RANK, 1))
    assert commutes(identity(RANK), inner(RANK, 2))


def test_invalid_automorphism():
    """逆像不互逆时拒绝构造"""
    images = (generator(1), generator(1), generator(2), generator(3))
    with pytest.raises(InvalidAutomorphismError):
        ConcreteAutomorphism(RANK, images, images)
    with pytest.raises(InvalidAutomorphismError):
        permutation(RANK, [0, 0, 1, 2])


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        compose(identity(2), identity(3))
    with pytest.raises(RankMismatchError):
        automorphism_from_spec({"rank": 3, "images": {}}, 4)


def test_automorphism_from_spec():
    swap = automorphism_from_spec(
        {"rank": 2, "images": {"x1": "x2", "x2": "x1"}, "inverse_images": {"x1": "x2", "x2": "x1"}},
        2,
    )
    assert apply(swap, parse_word("x1 x2^-1")) == parse_word("x2 x1^-1")
    conj = automorphism_from_spec({"inner_by": "s", "exponent": -1}, 3, ["a1", "a2", "s"])
    assert conj == inner(3, 2, -1)
    assert automorphism_from_spec({"identity": True}, 3).is_identity


def test_partial_images_default_to_identity():
    f = automorphism_from_spec(
        {"images": {"x1": "x1 x2"}, "inverse_images": {"x1": "x1 x2^-1"}},
        3,
    )
    assert apply(f, generator(2)) == generator(2)
    with pytest.raises(InvalidAutomorphismError):
        automorphism_from_spec({"images": {"x1": "x1 x2"}}, 3)


@given(words, words, automorphisms)
def test_automorphism_is_homomorphism(u: Word, v: Word, f: ConcreteAutomorphism):
    assert apply(f, multiply(u, v)) == multiply(apply(f, u), apply(f, v))
    assert apply(f, invert(u)) == invert(apply(f, u))


@given(words, automorphisms, automorphisms)
def test_compose_and_inverse(w: Word, f: ConcreteAutomorphism, g: ConcreteAutomorphism):
    assert apply(compose(f, g), w) == apply(f, apply(g, w))
    assert apply(f.inverse(), apply(f, w)) == w
    assert apply_inverse(f, apply(f, w)) == w


@given(words)
def test_words_are_reduced(w: Word):
    assert reduce(w) == w
    assert multiply(w, invert(w)) == ()
