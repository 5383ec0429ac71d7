"""
Tests for pass classes, representatives and the surface group.
"""

import pytest

from streetflow.errors import DomainError, InconsistencyError, ZeroMeasurePassError
from streetflow.homotopy import (
    A1,
    A2,
    B1,
    B2,
    SURFACE_RELATOR,
    HomologyClass4,
    abelianize,
    dehn_reduce,
    delta,
    kappa,
    pass_homology,
    phi,
    psi_same_plane,
    represent,
    represent_pairs,
    street_homology,
    surface_equal,
    to_original_basis,
    word_homology,
)
from streetflow.semigroup import enumerate_level
from streetflow.streets import street_triple
from streetflow.transition import TYPE_PIECES, TransitionType, transition_for
from streetflow.words import commutator, word


def test_phi_examples():
    """Two entries of the pass table."""
    assert phi(1, 2) == word([B1, -A2])
    assert phi(2, 1) == word([A1, -B2])
    with pytest.raises(DomainError):
        phi(3, 0)


def test_phi_homology_matches_streets():
    """Every tabulated class abelianizes to its street homology."""
    for alpha in (0, 1, 2):
        for beta in (0, 1, 2):
            assert abelianize(phi(alpha, beta)) == pass_homology(alpha, beta)


def test_psi_same_plane():
    """Three positive passes per plane; the rest have zero measure."""
    assert psi_same_plane(0, 2, 1) == word([A1])
    assert psi_same_plane(2, 1, 2) == word([-B2, A2])
    with pytest.raises(ZeroMeasurePassError):
        psi_same_plane(1, 1, 1)
    with pytest.raises(DomainError):
        psi_same_plane(0, 2, 3)


def test_street_homology():
    """Street 0 carries the sum of the other two."""
    assert street_homology(0, 2) == HomologyClass4((0, 0, 1, 1))
    assert street_homology(1, 1, negative=True) == HomologyClass4((-1, 0, 0, 0))
    with pytest.raises(DomainError):
        street_homology(3, 1)


def test_kappa_and_delta():
    """κ is the commutator of the plane-1 letters and δ its inverse."""
    assert kappa() == commutator(word([A1]), word([B1]))
    assert (kappa() * delta()).is_identity


def test_relator_is_trivial():
    """κ times the plane-2 commutator is the surface relator."""
    relator = kappa() * commutator(word([A2]), word([B2]))
    assert relator.letters == SURFACE_RELATOR
    assert surface_equal(relator, word([]))
    assert surface_equal(kappa(), commutator(word([A2]), word([B2])).inverse())


def test_dehn_reduce_replaces_long_relator_piece():
    """Five letters of the relator become the inverse of the other three."""
    assert dehn_reduce(word([A1, B1, -A1, -B1, A2])) == word([B2, A2, -B2])


def test_distinct_generators_differ():
    assert not surface_equal(word([A1]), word([B1]))


def test_represent_abelianizes_to_word_homology(generic_spec):
    """Representatives and homology agree on every nonzero word."""
    bi = transition_for(generic_spec)
    for w in enumerate_level(bi, 3):
        assert abelianize(represent(w, bi.type)) == word_homology(w, bi.type)


def test_negative_representative_is_inverse(generic_spec):
    bi = transition_for(generic_spec)
    w = enumerate_level(bi, 2)[0]
    assert represent(w, bi.type, negative=True) == represent(w, bi.type).inverse()


def test_represent_type_one_word():
    """Letters 1 then 2 of type I cross (1, 2') and (0, 2')."""
    assert represent([1, 2], TransitionType.I) == phi(1, 2) * phi(0, 2)


def test_zero_measure_pair_is_inconsistent():
    """Type I has no (1, 1') piece."""
    assert (1, 1) not in TYPE_PIECES[TransitionType.I]
    with pytest.raises(InconsistencyError):
        represent_pairs([(1, 1)], TransitionType.I)
    with pytest.raises(InconsistencyError):
        represent([6], TransitionType.I)


def test_to_original_basis(generic_spec):
    """m-basis coordinates map through the minimal pairs."""
    t1, t2 = street_triple(generic_spec, 1), street_triple(generic_spec, 2)
    assert to_original_basis(HomologyClass4((1, 0, 0, 0)), t1, t2) == [2, 1, 0, 0]
    assert to_original_basis(HomologyClass4((0, 1, 0, 1)), t1, t2) == [1, 1, 0, 1]
