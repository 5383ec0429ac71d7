"""
Tests for exact scalars, intervals and specs.
"""

from fractions import Fraction

import pytest
import yaml

from streetflow.core import (
    FoliationSpec,
    Interval,
    LatticeVector,
    Scalar,
    interval_intersect,
    load_spec,
    make_spec,
    read_document,
    require_valid,
    scalar_cmp,
    validate_spec,
)
from streetflow.errors import DomainError, FieldMismatchError, SpecValidationError

SQRT2 = Scalar.sqrt(2)


def test_sign_of_quadratic_numbers():
    """Signs are decided exactly, including near-cancelling values."""
    assert SQRT2.sign() == 1
    assert (SQRT2 - Fraction(141, 100)).sign() == 1
    assert (SQRT2 - Fraction(142, 100)).sign() == -1
    assert (3 - 2 * SQRT2).sign() == 1
    assert Scalar(0).sign() == 0


def test_square_factors_are_normalised():
    """√8 is stored as 2√2 and √9 collapses to a rational."""
    assert Scalar.sqrt(8) == 2 * SQRT2
    assert Scalar.sqrt(9) == 3
    assert Scalar.sqrt(9).is_rational
    assert (1 + 3 * Scalar.sqrt(8)).sqrt_part == 6 * SQRT2


def test_arithmetic_and_division():
    """Division goes through the conjugate and stays exact."""
    x = 1 + SQRT2
    assert x * x.conjugate() == -1
    assert x.norm() == -1
    assert (1 / x) == SQRT2 - 1
    assert (x / x) == 1


def test_mixed_fields_raise():
    """Two different radicands cannot be combined."""
    with pytest.raises(FieldMismatchError):
        SQRT2 + Scalar.sqrt(3)


def test_division_by_zero():
    """Exact zero is not a divisor."""
    with pytest.raises(ZeroDivisionError):
        SQRT2 / Scalar(0)


def test_comparisons_and_cmp():
    """Ordering and three-way comparison agree."""
    assert Scalar(1) < SQRT2 < Scalar(Fraction(3, 2))
    assert scalar_cmp(SQRT2, Fraction(7, 5)) == 1
    assert scalar_cmp(2, Scalar(2)) == 0
    assert max(SQRT2, Scalar(1)) == SQRT2


def test_floor():
    """Exact floor of irrational and negative values."""
    assert (10 * SQRT2).floor() == 14
    assert (-SQRT2).floor() == -2
    assert Scalar(Fraction(-3, 2)).floor() == -2
    assert Scalar(4).floor() == 4


@pytest.mark.parametrize(
    "text,expected",
    [
        ("3/5", Scalar(Fraction(3, 5))),
        ("√2", SQRT2),
        ("sqrt(2)", SQRT2),
        ("1/2√2", SQRT2 / 2),
        ("1+√2", 1 + SQRT2),
        ("1/5-2/5√2", Scalar(Fraction(1, 5), Fraction(-2, 5), 2)),
        ("-√2", -SQRT2),
    ],
)
def test_parse(text, expected):
    """Scalar strings in every supported spelling."""
    assert Scalar.parse(text) == expected


def test_str_parse_round_trip():
    """Formatting and parsing invert each other."""
    for value in (SQRT2 / 2, 1 - SQRT2, Scalar(Fraction(-7, 3)), 3 * SQRT2 + Fraction(1, 4)):
        assert Scalar.parse(str(value)) == value


def test_parse_rejects_garbage():
    """Unreadable scalars raise a domain error."""
    with pytest.raises(DomainError):
        Scalar.parse("abc")


def test_from_json_pair_and_float():
    """JSON pairs use the header radicand; floats are refused."""
    assert Scalar.from_json(["1/2", "1"], 2) == Fraction(1, 2) + SQRT2
    with pytest.raises(DomainError):
        Scalar.from_json(0.5)


def test_float_and_mpf_views():
    """Float views approximate the exact value."""
    assert abs(float(SQRT2) - 2**0.5) < 1e-15
    assert abs(float(SQRT2.to_mpf(60)) - 2**0.5) < 1e-15


def test_interval_operations():
    """Half-open intervals intersect, shift and measure exactly."""
    x = Interval(Scalar(0), SQRT2)
    y = Interval(Scalar(1), Scalar(2))
    common = interval_intersect(x, y)
    assert common == Interval(Scalar(1), SQRT2)
    assert common.measure == SQRT2 - 1
    assert x.contains(0) and not x.contains(SQRT2)
    assert x.shift(1).lo == 1
    disjoint = Interval(Scalar(0), Scalar(1)).intersect(Interval(Scalar(2), Scalar(3)))
    assert disjoint.is_empty


def test_interval_rejects_reversed_ends():
    """An end before the start is a domain error."""
    with pytest.raises(DomainError):
        Interval(Scalar(1), Scalar(0))


def test_lattice_vector_measures():
    """Transversal measure and flow cost of a lattice class."""
    v = LatticeVector(2, 1)
    assert v.measure(1, SQRT2) == 2 - SQRT2
    assert v.flow_cost(1, SQRT2) == 2 + SQRT2
    assert (v - LatticeVector(1, 1)) == LatticeVector(1, 0)
    assert (-v).to_list() == [-2, -1]


def test_validate_spec_reports_all_violations():
    """Positivity and the m range are both reported."""
    spec = make_spec(1, 1, "-1/2", 1, 3)
    names = [v.name for v in validate_spec(spec)]
    assert "positivity" in names
    assert names.count("m_range") == 2


def test_require_valid_uses_first_violation_as_code():
    """The error code names the first violated invariant."""
    with pytest.raises(SpecValidationError) as info:
        require_valid(make_spec(1, 1, 1, 1, 5))
    assert info.value.code == "m_range"


def test_make_spec_checks_field():
    """Scalars outside the announced field are rejected."""
    with pytest.raises(FieldMismatchError):
        make_spec(1, Scalar.sqrt(3), 1, 1, "1/2", d=2)


def test_spec_round_trip(generic_spec):
    """to_dict output is accepted by from_dict unchanged."""
    assert FoliationSpec.from_dict(generic_spec.to_dict()) == generic_spec
    assert generic_spec.field_d == 2


def test_spec_pair_form():
    """The pair spelling uses the field header."""
    spec = FoliationSpec.from_dict(
        {"field": {"d": 2}, "a1": "1", "b1": ["0", "1"], "a2": ["0", "1/2"], "b2": "3/5", "m": "9/10"}
    )
    assert spec.b1 == SQRT2
    assert spec.plane(2) == (SQRT2 / 2, Scalar(Fraction(3, 5)))


def test_missing_field():
    """Missing keys are a spec violation."""
    with pytest.raises(SpecValidationError) as info:
        FoliationSpec.from_dict({"a1": "1"})
    assert info.value.code == "missing_field"


def test_plane_out_of_range(generic_spec):
    """Only planes 1 and 2 exist."""
    with pytest.raises(DomainError):
        generic_spec.plane(3)


def test_load_spec_yaml(tmp_path, generic_spec):
    """Specs load from YAML as well as JSON."""
    path = tmp_path / "spec.yaml"
    path.write_text(yaml.safe_dump(generic_spec.to_dict(), allow_unicode=True))
    assert load_spec(path) == generic_spec


def test_load_spec_json(spec_file, generic_spec):
    """Specs load from JSON."""
    assert load_spec(spec_file) == generic_spec


def test_zero_denominators_are_domain_errors():
    with pytest.raises(DomainError):
        Scalar.parse("1/0")
    with pytest.raises(DomainError):
        Scalar.parse("1+1/0√2")
    with pytest.raises(DomainError):
        Scalar.from_json(["1", "1/0"], 2)


@pytest.mark.parametrize(
    "name,content,code",
    [
        ("broken.json", '{"a1": ', "format"),
        ("broken.yaml", "a1: [1, 2", "format"),
        ("list.json", "[1, 2]", "format"),
    ],
)
def test_unparseable_documents(tmp_path, name, content, code):
    """Decode errors and non-mapping documents become spec violations."""
    path = tmp_path / name
    path.write_text(content)
    with pytest.raises(SpecValidationError) as info:
        load_spec(path)
    assert info.value.code == code


def test_missing_document(tmp_path):
    with pytest.raises(SpecValidationError) as info:
        read_document(tmp_path / "absent.yaml")
    assert info.value.code == "unreadable"


def test_bad_field_header():
    with pytest.raises(SpecValidationError) as info:
        FoliationSpec.from_dict({"field": {"d": "x"}, "a1": "1"})
    assert info.value.code == "format"
