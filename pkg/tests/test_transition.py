"""
Tests for the broken isometry of the slit.
"""

from fractions import Fraction

import pytest

from streetflow.core import Scalar, make_spec
from streetflow.errors import CutPointError, DomainError, NonGenericityError
from streetflow.streets import street_triple
from streetflow.transition import (
    TYPE_PIECES,
    TYPE_SIGMA,
    TransitionType,
    almost_transversal_passes,
    apply,
    build_transition,
    check_conservation,
    classify_type,
    eta,
    inverse_apply,
    piece_index,
    transition_for,
)
from tests.conftest import TYPE_PLANE2, random_specs, type_spec


@pytest.mark.parametrize("kind", list(TransitionType))
def test_trivial_triples_reach_every_type(kind):
    """Each stored plane-2 choice produces its type with the stored pieces."""
    bi = transition_for(type_spec(kind))
    assert bi.type == kind
    assert bi.pieces == TYPE_PIECES[kind]
    assert bi.sigma == TYPE_SIGMA[kind]
    assert check_conservation(bi) == []


def test_type_one_pieces_and_shifts(type_one_spec):
    """Type I refinement in exact numbers."""
    bi = transition_for(type_one_spec)
    assert [str(iv) for iv in bi.tau] == [
        "[0, 2/5)",
        "[2/5, 3/5)",
        "[3/5, 7/10)",
        "[7/10, 9/10)",
        "[9/10, 1)",
    ]
    assert bi.shifts == tuple(
        Scalar(Fraction(r)) for r in ("3/10", "-3/10", "3/10", "0", "-9/10")
    )
    assert bi.sigma == (3, 2, 5, 4, 1)


def test_type_one_pair_measures(type_one_spec):
    """Measures of the street pairs crossed by each piece."""
    bi = transition_for(type_one_spec)
    expected = {(1, 2): "2/5", (0, 2): "1/5", (2, 1): "1/10", (2, 0): "1/5", (2, 2): "1/10"}
    for (alpha, beta), value in expected.items():
        assert bi.pair_measures[alpha][beta] == Scalar.parse(value)
    assert bi.pair_measures[1][1] == 0


def test_apply_and_inverse(type_one_spec):
    """Points move by the shift of their piece."""
    bi = transition_for(type_one_spec)
    assert apply(bi, Fraction(1, 5)) == Fraction(1, 2)
    assert apply(bi, Fraction(1, 2)) == Fraction(1, 5)
    assert inverse_apply(bi, Fraction(1, 2)) == Fraction(1, 5)
    assert bi.letter(Fraction(19, 20)) == 5


def test_apply_at_cut_point(type_one_spec):
    """The map is undefined at the left end of a piece."""
    bi = transition_for(type_one_spec)
    with pytest.raises(CutPointError):
        apply(bi, Fraction(2, 5))
    with pytest.raises(DomainError):
        apply(bi, 1)


def test_orbit_yields_start_and_images(type_one_spec):
    """orbit returns x and then n images."""
    bi = transition_for(type_one_spec)
    assert list(bi.orbit(Fraction(1, 5), 2)) == [Fraction(1, 5), Fraction(1, 2), Fraction(1, 5)]


def test_generic_spec_is_type_three(generic_spec):
    """The irrational example lands in type III."""
    bi = transition_for(generic_spec)
    assert bi.type == TransitionType.III
    assert bi.m == Fraction(9, 10)
    assert check_conservation(bi) == []


def test_printed_permutation_readings():
    """Types III and VI disagree with the stored printed permutation."""
    for kind in TransitionType:
        bi = transition_for(type_spec(kind))
        assert bi.sigma_matches_printed == (kind not in (TransitionType.III, TransitionType.VI))


def test_random_specs_build_consistently():
    """Random generic specs refine into five pieces conserving measure."""
    for spec in random_specs(5, 20):
        bi = transition_for(spec)
        assert len(bi.tau) == 5
        assert sum((iv.measure for iv in bi.tau), Scalar(0)) == spec.m
        assert sorted(bi.sigma) == [1, 2, 3, 4, 5]
        assert check_conservation(bi) == []


def test_inverse_undoes_apply():
    """inverse_apply inverts apply away from cut points."""
    for spec in random_specs(9, 5):
        bi = transition_for(spec)
        for iv in bi.tau:
            x = (iv.lo + iv.hi) / 2
            assert inverse_apply(bi, apply(bi, x)) == x


def test_eta_direction_checks(type_one_spec):
    """Plane and direction must match."""
    t1 = street_triple(type_one_spec, 1)
    assert eta(t1, "12").labels == (1, 0, 2)
    with pytest.raises(DomainError):
        eta(t1, "21")
    with pytest.raises(DomainError):
        eta(t1, "13")


def test_classify_tie():
    """A plane-2 point equal to an image point is a tie."""
    spec = type_spec(TransitionType.I)
    t1 = street_triple(spec, 1)
    # plane 2 with 1' = 2/5 = 3*
    t2 = street_triple(make_spec("3/5", "3/5", "3/5", "4/5", 1), 2)
    with pytest.raises(NonGenericityError):
        classify_type(t1, t2)


def test_build_transition_rejects_swapped_planes(type_one_spec):
    """The plane-1 triple comes first."""
    t1 = street_triple(type_one_spec, 1)
    t2 = street_triple(type_one_spec, 2)
    with pytest.raises(DomainError):
        build_transition(t2, t1)


def test_type_one_passes(type_one_spec):
    """Type I forbids the four negative passes between streets 0 and 1."""
    passes = almost_transversal_passes(transition_for(type_one_spec))
    assert len(passes.phi) == 9
    assert set(passes.phi_star) == {(1, 2), (0, 2), (2, 1), (2, 0), (2, 2)}
    assert passes.matches_printed


def test_pieces_are_passes_both_ways():
    """Every positive-measure piece is a pass in both time directions."""
    for kind in TYPE_PLANE2:
        bi = transition_for(type_spec(kind))
        passes = almost_transversal_passes(bi)
        for pair in bi.pieces:
            assert pair in passes.phi and pair in passes.phi_star


def test_piece_index(type_one_spec):
    """Street pairs map to their 1-based letter."""
    bi = transition_for(type_one_spec)
    assert piece_index(bi, (2, 0)) == 4
    with pytest.raises(DomainError):
        piece_index(bi, (1, 1))


def test_to_dict(type_one_spec):
    """JSON form of the transition."""
    data = transition_for(type_one_spec).to_dict()
    assert data["type"] == "I"
    assert data["sigma"] == "32541"
    assert data["pieces"][0] == "12'"
    assert data["pair_measures"]["2"]["1'"] == "1/10"


@pytest.mark.slow
def test_hundred_random_specs_conserve_measure():
    for spec in random_specs(31, 100):
        bi = transition_for(spec)
        assert len(bi.tau) == 5
        assert sum((iv.measure for iv in bi.tau), Scalar(0)) == spec.m
        assert check_conservation(bi) == []
        for iv in bi.tau:
            x = (iv.lo + iv.hi) / 2
            assert inverse_apply(bi, apply(bi, x)) == x
