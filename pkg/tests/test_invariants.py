import pytest

from app.core.finite_groups import get_group
from app.core.free_group import parse_word
from app.core.invariants import abelian_invariants, presentation_signature, signature
from app.core.presentation import build, preset
from app.models.diagram import Diagram
from app.models.group import InvariantSignature, Presentation


def _presentation(generators: tuple[str, ...], *relators: str) -> Presentation:
    return Presentation(generators, tuple(parse_word(r, generators) for r in relators), ("",) * len(relators))


@pytest.mark.parametrize(
    ("presentation", "expected"),
    [
        (_presentation(("a",), "a a a"), (3,)),
        (_presentation(("a",)), (0,)),
        (_presentation(("a", "b"), "a a", "b b", "a b a^-1 b^-1"), (2, 2)),
        (_presentation(("a", "b"), "a a", "b b b"), (6,)),
        (_presentation(("a", "b"), "a b^-1"), (0,)),
    ],
)
def test_abelian_invariants(presentation: Presentation, expected: tuple[int, ...]):
    assert abelian_invariants(presentation) == expected


def test_knot_groups_abelianize_to_z(trefoil: Diagram, figure_eight: Diagram, unknot: Diagram):
    for d in (trefoil, figure_eight, unknot):
        assert abelian_invariants(build(d, preset("pi1", d))) == (0,)


def test_signature(trefoil: Diagram, settings):
    sig = signature(trefoil, preset("pi1", trefoil), [get_group("S3"), get_group("Z2")], settings)
    assert sig == InvariantSignature((0,), {"S3": 12, "Z2": 2})


def test_signature_key_ignores_group_order():
    a = InvariantSignature((0,), {"S3": 12, "Z2": 2})
    b = InvariantSignature((0,), {"Z2": 2, "S3": 12})
    assert a.as_key() == b.as_key()


def test_presentation_signature(settings):
    sig = presentation_signature(_presentation(("a",), "a a a"), [get_group("S3")], settings)
    assert sig.abelian_invariants == (3,)
    assert sig.hom_counts == {"S3": 3}


def test_trefoil_and_figure_eight_differ(trefoil: Diagram, figure_eight: Diagram, settings):
    """S3 区分三叶结与八字结"""
    s3 = [get_group("S3")]
    left = signature(trefoil, preset("pi1", trefoil), s3, settings)
    right = signature(figure_eight, preset("pi1", figure_eight), s3, settings)
    assert left.as_key() != right.as_key()
