import json
import random
from fractions import Fraction

import pytest

from streetflow.core import FoliationSpec, Scalar, make_spec
from streetflow.transition import TransitionType

SQRT2 = Scalar.sqrt(2)

# plane 2 of the trivial triples; plane 1 is (3/5, 3/5) with m = 1
TYPE_PLANE2 = {
    TransitionType.I: ("9/10", "3/10"),
    TransitionType.II: ("7/10", "1/2"),
    TransitionType.III: ("7/10", "7/10"),
    TransitionType.IV: ("1/2", "11/20"),
    TransitionType.V: ("1/2", "7/10"),
    TransitionType.VI: ("3/10", "9/10"),
}


def type_spec(kind: TransitionType) -> FoliationSpec:
    a2, b2 = TYPE_PLANE2[kind]
    return make_spec("3/5", "3/5", a2, b2, 1)


def random_spec(rng: random.Random) -> FoliationSpec:
    """A generic spec over Q(√2): rational a_k, irrational b_k, m in (1/13)Z."""
    a = [Scalar(Fraction(rng.choice([n for n in range(1, 20) if n % 7]), 7)) for _ in range(2)]
    b = [Scalar(Fraction(rng.randint(0, 5), 5), Fraction(rng.randint(1, 5), 5), 2) for _ in range(2)]
    top = min(a[0] + b[0], a[1] + b[1])
    choices = [n for n in range(1, 60) if n % 13 and Scalar(Fraction(n, 13)) < top]
    m = Scalar(Fraction(rng.choice(choices), 13))
    return FoliationSpec(a[0], b[0], a[1], b[1], m)


def random_specs(seed: int, count: int):
    rng = random.Random(seed)
    return [random_spec(rng) for _ in range(count)]


@pytest.fixture
def generic_spec():
    """Type III spec over Q(√2)."""
    return FoliationSpec(Scalar(1), SQRT2, SQRT2 / 2, Scalar(Fraction(3, 5)), Scalar(Fraction(9, 10)))


@pytest.fixture
def type_one_spec():
    return type_spec(TransitionType.I)


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document into tmp_path and return its path."""

    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path

    return _write


@pytest.fixture
def spec_file(write_json, generic_spec):
    return write_json("spec.json", generic_spec.to_dict())


@pytest.fixture
def type_one_file(write_json, type_one_spec):
    return write_json("type_one.json", type_one_spec.to_dict())
