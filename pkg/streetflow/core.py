"""
Exact scalars, intervals and the foliation spec record.

Every measure in Streetflow is an element of the rationals or of a real
quadratic field Q(√d), held as ``p + q√d`` with :class:`fractions.Fraction`
parts. Comparisons are decided by rational arithmetic only, so ties are
detected exactly instead of being hidden by rounding.
"""

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type, Union

import mpmath
import yaml
from sympy import factorint

from streetflow.errors import DomainError, FieldMismatchError, SpecValidationError, StreetflowError

SQRT_SIGN = "√"

Number = Union[int, Fraction, "Scalar"]

_NUMBER = r"(?:\d+(?:/\d+)?|\d*\.\d+)"
_SCALAR_RE = re.compile(
    rf"^(?P<rat>[+-]?{_NUMBER})?"
    rf"(?:(?P<sign>[+-])?(?P<coef>{_NUMBER})?√\(?(?P<d>\d+)\)?)?$"
)


@lru_cache(maxsize=None)
def _split_square(d: int) -> Tuple[int, int]:
    """Write ``d = s**2 * r`` with ``r`` square-free and return ``(s, r)``."""
    s, r = 1, 1
    for prime, exp in factorint(d).items():
        s *= prime ** (exp // 2)
        if exp % 2:
            r *= prime
    return s, r


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class Scalar:
    """
    An exact element ``p + q√d`` of Q or of a real quadratic field.

    Values are immutable. ``d`` is normalised to be square-free, and
    rationals always carry ``q == 0`` and ``d == 1``.

    Args:
        p: Rational part.
        q: Coefficient of the square root.
        d: Positive radicand; square factors are pulled into ``q``.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p: Union[int, Fraction, str] = 0, q: Union[int, Fraction, str] = 0, d: int = 1):
        p, q, d = Fraction(p), Fraction(q), int(d)
        if d < 1:
            raise DomainError(f"radicand must be positive, got {d}")
        if d > 1 and q != 0:
            s, d = _split_square(d)
            q *= s
        if d == 1:
            p, q = p + q, Fraction(0)
        if q == 0:
            d = 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def sqrt(cls, d: int) -> "Scalar":
        """Return ``√d``."""
        return cls(0, 1, d)

    @classmethod
    def coerce(cls, value: Any) -> "Scalar":
        """Turn ints, Fractions and strings into Scalars."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise DomainError(f"cannot use {value!r} as an exact scalar")

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """
        Parse ``"p/q"``, ``"p/q+r/s√d"``, ``"r/s√d"`` or the ``sqrt(d)``
        spelling of the same forms.
        """
        raw = text.replace(" ", "").replace("*", "").replace("sqrt", SQRT_SIGN)
        match = _SCALAR_RE.match(raw)
        if not raw or match is None:
            raise DomainError(f"cannot parse scalar {text!r}")
        rat, sign, coef, d = match.group("rat", "sign", "coef", "d")
        try:
            if d is None:
                return cls(Fraction(rat))
            if rat is not None and sign is None and coef is None:
                # "r/s√d": the leading number is the coefficient
                return cls(0, Fraction(rat), int(d))
            q = Fraction(coef) if coef is not None else Fraction(1)
            if sign == "-":
                q = -q
            return cls(Fraction(rat) if rat is not None else 0, q, int(d))
        except ZeroDivisionError:
            raise DomainError(f"scalar {text!r} has a zero denominator") from None

    @classmethod
    def from_json(cls, value: Any, d: int = 1) -> "Scalar":
        """
        Read a scalar from a JSON value: a string, an int, or the pair
        ``["p/q", "r/s"]`` meaning ``p/q + r/s·√d``.
        """
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise DomainError(f"scalar pair must have two entries, got {value!r}")
            try:
                return cls(Fraction(str(value[0])), Fraction(str(value[1])), d)
            except (ValueError, ZeroDivisionError) as e:
                raise DomainError(f"cannot read scalar pair {value!r}: {e}") from None
        if isinstance(value, bool) or isinstance(value, float):
            raise DomainError(f"inexact scalar {value!r}; use a 'p/q' string")
        return cls.coerce(value)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    @property
    def sqrt_part(self) -> "Scalar":
        """The irrational summand ``q√d``."""
        return Scalar(0, self.q, self.d)

    def _field(self, other: "Scalar") -> int:
        if self.q == 0:
            return other.d
        if other.q == 0 or other.d == self.d:
            return self.d
        raise FieldMismatchError(f"cannot combine Q(√{self.d}) with Q(√{other.d})")

    def __add__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        return Scalar(self.p + other.p, self.q + other.q, self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.p, -self.q, self.d)

    def __sub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        d = self._field(other)
        return Scalar(
            self.p * other.p + self.q * other.q * d,
            self.p * other.q + self.q * other.p,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        """Return ``p - q√d``."""
        return Scalar(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        """Field norm ``p² - q²d``."""
        return self.p * self.p - self.q * self.q * self.d

    def __truediv__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        if other.sign() == 0:
            raise ZeroDivisionError("division by an exact zero scalar")
        self._field(other)
        top = self * other.conjugate()
        n = other.norm()
        return Scalar(top.p / n, top.q / n, top.d)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def sign(self) -> int:
        """
        Exact sign of ``p + q√d``.
        """
        sp, sq = _sign(self.p), _sign(self.q)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        diff = self.p * self.p - self.q * self.q * self.d
        return sp if diff > 0 else sq

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        return (self.p, self.q, self.d) == (other.p, other.q, other.d)

    def __lt__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return (self - Scalar.coerce(other)).sign() < 0

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def to_mpf(self, dps: int = 50) -> mpmath.mpf:
        """High precision float view of the value."""
        with mpmath.workdps(dps):
            return mpmath.mpf(self.p.numerator) / self.p.denominator + (
                mpmath.mpf(self.q.numerator) / self.q.denominator
            ) * mpmath.sqrt(self.d)

    def floor(self) -> int:
        """Exact floor, seeded by a float estimate."""
        n = math.floor(float(self))
        while self < n:
            n -= 1
        while self >= n + 1:
            n += 1
        return n

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        coef = "" if abs(self.q) == 1 else str(abs(self.q))
        root = f"{coef}{SQRT_SIGN}{self.d}"
        if self.p == 0:
            return f"-{root}" if self.q < 0 else root
        return f"{self.p}{'-' if self.q < 0 else '+'}{root}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def scalar_cmp(x: Number, y: Number) -> int:
    """
    Exact three-way comparison: -1, 0 or 1.

    Raises:
        FieldMismatchError: If both arguments are irrational in different fields.
    """
    return (Scalar.coerce(x) - Scalar.coerce(y)).sign()


@dataclass(frozen=True)
class Interval:
    """
    A half-open subsegment ``[lo, hi)`` of the transversal segment.
    """

    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        object.__setattr__(self, "lo", Scalar.coerce(self.lo))
        object.__setattr__(self, "hi", Scalar.coerce(self.hi))
        if self.hi < self.lo:
            raise DomainError(f"interval end {self.hi} precedes start {self.lo}")

    @property
    def measure(self) -> Scalar:
        return self.hi - self.lo

    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Number) -> bool:
        return self.lo <= x < self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if hi < lo:
            hi = lo
        return Interval(lo, hi)

    def shift(self, r: Number) -> "Interval":
        return Interval(self.lo + r, self.hi + r)

    def to_dict(self) -> Dict[str, str]:
        return {"lo": str(self.lo), "hi": str(self.hi)}

    def __str__(self):
        return f"[{self.lo}, {self.hi})"


def interval_intersect(x: Interval, y: Interval) -> Interval:
    """Exact intersection of two half-open intervals, possibly empty."""
    return x.intersect(y)


@dataclass(frozen=True)
class LatticeVector:
    """
    The homology class ``p[a] + q[b]`` of a torus.
    """

    p: int
    q: int

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.p - other.p, self.q - other.q)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.p, -self.q)

    def measure(self, a: Number, b: Number) -> Scalar:
        """Transversal measure ``p|a| - q|b|``."""
        return self.p * Scalar.coerce(a) - self.q * Scalar.coerce(b)

    def flow_cost(self, a: Number, b: Number) -> Scalar:
        """Height reached by the vertical flow, ``p|a| + q|b|``."""
        return self.p * Scalar.coerce(a) + self.q * Scalar.coerce(b)

    def to_list(self) -> List[int]:
        return [self.p, self.q]


@dataclass(frozen=True)
class Violation:
    """A named invariant violation reported as data."""

    name: str
    message: str

    def to_dict(self) -> Dict[str, str]:
        return {"name": self.name, "message": self.message}


SPEC_FIELDS = ("a1", "b1", "a2", "b2", "m")


@dataclass(frozen=True)
class FoliationSpec:
    """
    Genus-2 measure data: the TCB cycle measures of both tori and the
    measure ``m`` of the gluing segment.
    """

    a1: Scalar
    b1: Scalar
    a2: Scalar
    b2: Scalar
    m: Scalar

    def __post_init__(self):
        for name in SPEC_FIELDS:
            object.__setattr__(self, name, Scalar.coerce(getattr(self, name)))

    def plane(self, k: int) -> Tuple[Scalar, Scalar]:
        """Return ``(|a_k|, |b_k|)`` for plane 1 or 2."""
        if k == 1:
            return self.a1, self.b1
        if k == 2:
            return self.a2, self.b2
        raise DomainError(f"plane must be 1 or 2, got {k}")

    @property
    def field_d(self) -> int:
        return max(getattr(self, name).d for name in SPEC_FIELDS)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FoliationSpec":
        """
        Build a spec from its JSON document. Missing keys are reported as a
        ``missing_field`` violation, an unreadable field header as ``format``.
        """
        try:
            d = int((data.get("field") or {}).get("d", 1))
        except (AttributeError, TypeError, ValueError):
            raise SpecValidationError(
                [Violation("format", f"field header {data.get('field')!r} needs an integer 'd'")]
            ) from None
        missing = [name for name in SPEC_FIELDS if name not in data]
        if missing:
            raise SpecValidationError(
                [Violation("missing_field", f"spec is missing {', '.join(missing)}")]
            )
        return cls(**{name: Scalar.from_json(data[name], d) for name in SPEC_FIELDS})

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"field": {"d": self.field_d}}
        for name in SPEC_FIELDS:
            data[name] = str(getattr(self, name))
        return data


def validate_spec(spec: FoliationSpec) -> List[Violation]:
    """
    Check positivity and ``0 < m < |a_k| + |b_k|`` for both planes.

    Returns:
        Every violated invariant; an empty list means the spec is valid.
    """
    violations = []
    for name in SPEC_FIELDS:
        if getattr(spec, name) <= 0:
            violations.append(Violation("positivity", f"{name} = {getattr(spec, name)} is not positive"))
    for k in (1, 2):
        a, b = spec.plane(k)
        if not spec.m < a + b:
            violations.append(Violation("m_range", f"m = {spec.m} is not below |a{k}|+|b{k}| = {a + b}"))
    return violations


def require_valid(spec: FoliationSpec) -> FoliationSpec:
    """Return the spec unchanged or raise :class:`SpecValidationError`."""
    violations = validate_spec(spec)
    if violations:
        raise SpecValidationError(violations)
    return spec


def read_document(path: Union[str, Path], error: Type[StreetflowError] = SpecValidationError) -> Dict[str, Any]:
    """
    Read a JSON or YAML mapping, chosen by file suffix.

    Raises:
        SpecValidationError: If the file cannot be read or parsed, or holds
            something other than a mapping; ``error`` picks another
            violation-carrying error class.
    """
    path = str(path)
    try:
        with open(path, "r") as f:
            if path.endswith(".yaml") or path.endswith(".yml"):
                data = yaml.safe_load(f) or {}
            else:
                data = json.load(f)
    except OSError as e:
        raise error([Violation("unreadable", f"cannot read {path}: {e.strerror or e}")]) from e
    except (json.JSONDecodeError, yaml.YAMLError, UnicodeDecodeError) as e:
        raise error([Violation("format", f"cannot parse {path}: {e}")]) from e
    if not isinstance(data, dict):
        raise error([Violation("format", f"{path} must hold a mapping, got {type(data).__name__}")])
    return data


def load_spec(path: Union[str, Path]) -> FoliationSpec:
    """Load a :class:`FoliationSpec` from a JSON or YAML file."""
    return FoliationSpec.from_dict(read_document(path))


def make_spec(a1: Number, b1: Number, a2: Number, b2: Number, m: Number, d: Optional[int] = None) -> FoliationSpec:
    """Shorthand constructor accepting strings, ints and Fractions."""
    values = [Scalar.coerce(v) for v in (a1, b1, a2, b2, m)]
    if d is not None:
        for v in values:
            if not v.is_rational and v.d != d:
                raise FieldMismatchError(f"{v} does not lie in Q(√{d})")
    return FoliationSpec(*values)
