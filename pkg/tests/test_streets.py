"""
Tests for minimal lattice pairs and street triples.
"""

from fractions import Fraction

import pytest

from streetflow.core import LatticeVector, Scalar, make_spec
from streetflow.errors import DomainError, NonGenericityError, SpecValidationError
from streetflow.streets import (
    brute_force_pairs,
    mbasis_homology,
    minimal_pairs,
    scan_minimal_pairs,
    street_triple,
)
from tests.conftest import SQRT2, random_specs


def test_minimal_pairs_irrational_example():
    """(1, √2, 9/10) has minimal pairs (2, 1) and (1, 1)."""
    assert minimal_pairs(1, SQRT2, Fraction(9, 10)) == ((2, 1), (1, 1))


def test_minimal_pairs_rational_example():
    """Both unit pairs qualify when a and b are below m."""
    assert minimal_pairs(Fraction(1, 2), Fraction(7, 10), Fraction(9, 10)) == ((1, 0), (0, 1))


def test_minimal_pairs_exact_tie():
    """Equal a and b force a zero-measure pair."""
    with pytest.raises(NonGenericityError):
        minimal_pairs(1, 1, Fraction(1, 2))


def test_minimal_pairs_measure_equal_to_m():
    """A pair with measure exactly m is a tie."""
    with pytest.raises(NonGenericityError):
        minimal_pairs(Fraction(3, 5), Fraction(7, 10), Fraction(3, 5))


def test_minimal_pairs_preconditions():
    """m must stay below a + b."""
    with pytest.raises(DomainError):
        minimal_pairs(1, SQRT2, 3)


def test_record_search_agrees_with_scan():
    """The best-approximation walk finds the same pairs as a linear scan."""
    for spec in random_specs(7, 25):
        for k in (1, 2):
            a, b = spec.plane(k)
            assert minimal_pairs(a, b, spec.m) == scan_minimal_pairs(a, b, spec.m)


def test_minimal_pairs_agree_with_brute_force():
    """Exhaustive search over small pairs confirms minimality."""
    bound = 12
    for spec in random_specs(11, 8):
        a, b = spec.plane(1)
        ua, by = minimal_pairs(a, b, spec.m)
        if max(ua + by) > bound:
            continue
        assert brute_force_pairs(a, b, spec.m, bound) == (ua, by)


def test_irrational_triple_widths():
    """Widths of the (1, √2, 9/10) plane in exact form."""
    spec = make_spec(1, SQRT2, 1, SQRT2, Fraction(9, 10))
    t = street_triple(spec, 1)
    assert t.w0 == Fraction(1, 10)
    assert t.w1 == SQRT2 - Fraction(11, 10)
    assert t.w2 == Fraction(19, 10) - SQRT2
    assert t.h0 == LatticeVector(3, 2)


def test_trivial_triple(type_one_spec):
    """Plane (3/5, 3/5) with m = 1 splits s into 1/5, 2/5, 2/5."""
    t = street_triple(type_one_spec, 1)
    assert (t.ua_pair, t.by_pair) == ((1, 0), (0, 1))
    assert (t.w0, t.w1, t.w2) == (Fraction(1, 5), Fraction(2, 5), Fraction(2, 5))
    assert [(street, str(iv)) for street, iv in t.blocks()] == [
        (1, "[0, 2/5)"),
        (0, "[2/5, 3/5)"),
        (2, "[3/5, 1)"),
    ]
    assert (t.shift(1), t.shift(0), t.shift(2)) == (Fraction(3, 5), 0, Fraction(-3, 5))


def test_triple_identities_on_random_specs():
    """Widths sum to m, heights add up and the lattice basis is unimodular."""
    for spec in random_specs(3, 20):
        for k in (1, 2):
            t = street_triple(spec, k)
            assert t.w0 + t.w1 + t.w2 == spec.m
            assert min(t.w0, t.w1, t.w2) > 0
            assert t.h0 == t.h1 + t.h2
            assert t.w0 + t.w2 == t.shift(1)
            assert mbasis_homology(t).det == 1


def test_mbasis_matrix_and_negative(generic_spec):
    """The m-basis matrix holds the two minimal pairs as columns."""
    basis = mbasis_homology(street_triple(generic_spec, 1))
    assert basis.matrix == ((2, 1), (1, 1))
    assert basis.negative().a_star == LatticeVector(-2, -1)
    assert basis.to_dict()["determinant"] == 1


def test_street_triple_validates_spec():
    """Invalid specs never reach the pair search."""
    with pytest.raises(SpecValidationError):
        street_triple(make_spec(1, 1, 1, 1, 3), 1)


def test_to_dict_uses_exact_strings(generic_spec):
    """Widths are written as exact strings."""
    data = street_triple(generic_spec, 1).to_dict()
    assert data["widths"]["0"] == "1/10"
    assert Scalar.parse(data["widths"]["1"]) == SQRT2 - Fraction(11, 10)
    assert data["pairs"] == {"ua": [2, 1], "by": [1, 1]}


@pytest.mark.slow
def test_triple_identities_on_two_hundred_specs():
    for spec in random_specs(23, 200):
        for k in (1, 2):
            a, b = spec.plane(k)
            assert minimal_pairs(a, b, spec.m) == scan_minimal_pairs(a, b, spec.m)
            t = street_triple(spec, k)
            assert t.w0 + t.w1 + t.w2 == spec.m
            assert min(t.w0, t.w1, t.w2) > 0
            assert t.h0 == t.h1 + t.h2
            assert mbasis_homology(t).det == 1


@pytest.mark.slow
def test_minimal_pairs_agree_with_brute_force_up_to_200():
    bound = 200
    checked = 0
    for spec in random_specs(29, 20):
        for k in (1, 2):
            a, b = spec.plane(k)
            ua, by = minimal_pairs(a, b, spec.m)
            if max(ua + by) > bound:
                continue
            assert brute_force_pairs(a, b, spec.m, bound) == (ua, by)
            checked += 1
    assert checked > 0
