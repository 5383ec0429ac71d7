"""
Tests for Sturm root counting and the transversal class verdicts.
"""

import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from streetflow.errors import AssumptionError, DomainError, EndpointRootError
from streetflow.hyperelliptic import (
    G3_CYCLES,
    ClassVerdict,
    FormSpec,
    RealHyperelliptic,
    as_poly,
    branch_segments,
    classify_class,
    perturbation_bound_note,
    root_count,
    z,
)


@pytest.fixture
def genus_two():
    return RealHyperelliptic.parse("1,2,3,4,5,6")


@pytest.fixture
def genus_three():
    return RealHyperelliptic.parse("1,2,3,4,5,6,7,8")


def test_root_count():
    """Distinct real roots in an open interval."""
    assert root_count("(z-1)*(z-2)", Fraction(3, 2), 3) == 1
    assert root_count("(z-1)*(z-2)") == 2
    assert root_count([1, -3, 2], None, Fraction(3, 2)) == 1
    assert root_count("z**2 + 1") == 0
    assert root_count("(z-1)**2") == 1
    assert root_count("5") == 0


def test_root_count_errors():
    with pytest.raises(EndpointRootError):
        root_count("(z-1)*(z-2)", 1, 3)
    with pytest.raises(DomainError):
        root_count("0")
    with pytest.raises(DomainError):
        root_count("z", 2, 1)
    with pytest.raises(DomainError):
        as_poly("z +* 1")


def test_root_count_agrees_with_numpy():
    """Exact counts match floating point roots away from the endpoints."""
    roots = [Fraction(-5, 2), Fraction(-1), Fraction(1, 2), Fraction(3), Fraction(17, 4)]
    poly = sp.Poly(sp.prod([z - sp.Rational(r.numerator, r.denominator) for r in roots]), z)
    numeric = np.roots([float(c) for c in poly.all_coeffs()])
    real = [x.real for x in numeric if abs(x.imag) < 1e-9]
    for lo, hi in [(-3, 0), (0, 1), (Fraction(1, 3), 5), (-10, 10), (Fraction(7, 2), 4)]:
        expected = sum(1 for x in real if float(lo) < x < float(hi))
        assert root_count(poly, lo, hi) == expected


def test_hyperelliptic_parse():
    assert RealHyperelliptic.parse("1, 2, 3, 4").genus == 1
    for text in ("1,2,3", "1,3,2,4", "1,x,3,4"):
        with pytest.raises(DomainError):
            RealHyperelliptic.parse(text)


def test_branch_segments(genus_two):
    """Odd segments test v, even segments test u."""
    segs = branch_segments(genus_two)
    assert [s.label() for s in segs] == ["[z1z2]", "[z2z3]", "[z3z4]", "[z4z5]", "[z5z6]"]
    assert [s.important for s in segs] == ["v", "u", "v", "u", "v"]


def test_constant_form_genus_two(genus_two):
    """No zeros anywhere gives T with the first two disjoint segments."""
    report = classify_class(genus_two, FormSpec.of("1", "1"))
    assert report.verdict == ClassVerdict.T
    assert report.dropped == []
    assert report.a_cycles == ["[z1z2]", "[z3z4]"]


def test_zero_on_end_segment_gives_t0(genus_two):
    """A zero of u in [z2, z3] drops that segment."""
    report = classify_class(genus_two, FormSpec.of("z - 5/2", "1"))
    assert report.verdict == ClassVerdict.T0
    assert report.dropped == ["[z2z3]"]
    assert report.a_cycles == ["[z1z2]", "[z3z4]"]


def test_zero_of_unimportant_part_is_ignored(genus_two):
    """v vanishing on an even segment does not drop it."""
    report = classify_class(genus_two, FormSpec.of("1", "z - 5/2"))
    assert report.dropped == []
    assert report.verdict == ClassVerdict.T


def test_genus_three_constant(genus_three):
    report = classify_class(genus_three, FormSpec.of("1", "1"))
    assert report.verdict == ClassVerdict.T2
    assert report.cycles == {name: f"[z{i}z{j}]" for name, (i, j) in G3_CYCLES.items()}
    assert report.notes


def test_genus_three_zeros_in_windows(genus_three):
    """Zeros between the cycles keep T^2."""
    report = classify_class(genus_three, FormSpec.of("z - 11/2", "z - 7/2"))
    assert report.verdict == ClassVerdict.T2
    assert report.to_dict()["verdict"] == "T2"


def test_genus_three_inconclusive(genus_three):
    """Zeros outside the windows and too few survivors decide nothing."""
    f = FormSpec.of("(z - 5/2)*(z - 13/2)", "(z - 3/2)*(z - 7/2)")
    report = classify_class(genus_three, f)
    assert report.verdict == ClassVerdict.INCONCLUSIVE
    assert report.surviving == ["[z4z5]", "[z5z6]", "[z7z8]"]
    assert report.a_cycles == []


@pytest.mark.parametrize("u", ["z**2", "0", "z - 3"])
def test_form_assumptions(genus_two, u):
    """Degree above g - 1, identically zero, or zero at a branch point."""
    with pytest.raises(AssumptionError):
        classify_class(genus_two, FormSpec.of(u, "1"))


def test_perturbation_notes(genus_two):
    """Zeros away from the branch points give a positive margin."""
    constant = perturbation_bound_note(genus_two, FormSpec.of("1", "1"))
    assert (constant.stable, constant.margin, constant.flag) == (True, None, "constant")
    isolated = perturbation_bound_note(genus_two, FormSpec.of("z - 5/2", "1"))
    assert isolated.stable
    assert 0 < isolated.margin <= Fraction(1, 2)
    assert isolated.flag == "isolated"
    on_branch = perturbation_bound_note(genus_two, FormSpec.of("z - 3", "1"))
    assert on_branch.to_dict() == {"stable": False, "margin": "0", "flag": "u vanishes at z3"}


@pytest.mark.parametrize(
    "g,verdict",
    [(1, ClassVerdict.T), (2, ClassVerdict.T), (3, ClassVerdict.T2), (4, ClassVerdict.T2), (5, ClassVerdict.T2)],
)
def test_constant_forms(g, verdict):
    """Constant u and v never vanish, whatever the genus."""
    c = RealHyperelliptic(tuple(range(1, 2 * g + 3)))
    assert classify_class(c, FormSpec.of("1", "2")).verdict == verdict


def test_root_counts_on_random_polynomials():
    """Sturm counts agree with numpy on seeded polynomials with separated roots."""
    rng = random.Random(2024)
    for _ in range(100):
        roots = rng.sample(range(-20, 21), rng.randint(1, 5))
        expr = sp.prod([z - sp.Rational(r, 4) for r in roots]) * (z**2 + rng.randint(1, 5))
        poly = sp.Poly(expr, z)
        real = [x.real for x in np.roots([float(c) for c in poly.all_coeffs()]) if abs(x.imag) < 1e-6]
        lo, hi = sorted(Fraction(rng.randint(-24, 24), 4) + Fraction(1, 8) for _ in range(2))
        if lo == hi:
            continue
        expected = sum(1 for x in real if float(lo) < x < float(hi))
        assert root_count(poly, lo, hi) == expected
        assert root_count(poly) == len(roots)
