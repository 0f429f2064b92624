import pytest

from app.core.counterexample import (
    candidate_pool,
    even3_counterexample,
    family_assignments,
    family_counterexample,
    generic_assignments,
    search_counterexample,
    shortlex_words,
)
from app.core.exceptions import FormalSyntaxError
from app.core.formal import parse_formal
from app.core.free_group import commutes
from app.core.reductions import NO_GO_FAMILIES, OUTPUTS
from app.services.verification import THETA_PHI


def test_shortlex_order():
    words = list(shortlex_words(2, 1))
    assert words == [(), ((0, 1),), ((0, -1),), ((1, 1),), ((1, -1),)]


def test_shortlex_words_are_reduced():
    words = list(shortlex_words(2, 2))
    assert len(words) == 1 + 4 + 12
    for w in words:
        assert all(w[i] != (w[i + 1][0], -w[i + 1][1]) for i in range(len(w) - 1))


def test_candidate_pool():
    pool = candidate_pool()
    assert len(pool) == 13
    assert pool[0][0] == "id"
    assert pool[0][1].is_identity


def test_generic_assignments_respect_commutation():
    assignments = generic_assignments(("theta", "phi"), THETA_PHI)
    assert assignments
    assert len(assignments) < len(generic_assignments(("theta", "phi")))
    for chosen in assignments:
        assert commutes(chosen["theta"][1], chosen["phi"][1])


@pytest.mark.parametrize("family", sorted(NO_GO_FAMILIES))
def test_family_assignments(family: str):
    assignments = family_assignments(family)
    assert len(assignments) == 9
    for chosen in assignments:
        assert set(chosen) == {"E", "O", "e", "o"}
        assert commutes(chosen["E"][1], chosen["O"][1])


def test_family_assignments_unknown():
    with pytest.raises(FormalSyntaxError):
        family_assignments("Z")


def test_search_finds_simple_difference():
    equations = [("x", parse_formal("theta(a)"), parse_formal("a"))]
    found = search_counterexample(
        equations, generic_assignments(("theta",)), budget=100, max_length=1,
    )
    assert found is not None
    assert found.lhs != found.rhs
    assert found.tried <= 100


def test_search_respects_budget():
    equations = [("x", parse_formal("a b"), parse_formal("a b"))]
    assert search_counterexample(
        equations, generic_assignments(("theta",)), budget=50, max_length=1,
    ) is None


@pytest.mark.slow
def test_even3_counterexample():
    found = even3_counterexample(20_000, 6)
    assert found is not None
    assert found.component in OUTPUTS
    assert set(found.operators) == {"theta", "phi"}


@pytest.mark.slow
def test_even3_holds_for_commuting_choices():
    assert even3_counterexample(2_000, 6, THETA_PHI) is None


@pytest.mark.slow
@pytest.mark.parametrize("family", sorted(NO_GO_FAMILIES))
def test_family_counterexample(family: str):
    found = family_counterexample(family, 20_000, 6)
    assert found is not None
    assert found.component == NO_GO_FAMILIES[family].equation
