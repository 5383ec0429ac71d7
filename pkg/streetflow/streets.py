"""
Three-street decomposition of a torus plane relative to the segment s.

The vertical flow started on s reaches a periodic translate of s through
exactly three unextendable strips. Their heights are the minimal
nonnegative lattice pairs whose measures fall in ``(0, m)``; their widths
follow from those measures by exact algebra.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from streetflow.core import FoliationSpec, Interval, LatticeVector, Number, Scalar, require_valid
from streetflow.errors import DomainError, NonGenericityError

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

STREET_ORDER = (1, 0, 2)


def _partial_quotients(x: Scalar) -> Iterator[int]:
    """Continued fraction digits of a positive scalar, computed exactly."""
    while True:
        n = x.floor()
        yield n
        frac = x - n
        if frac == 0:
            return
        x = 1 / frac


def _record_denominators(beta: Scalar, upper: bool) -> Iterator[int]:
    """
    Denominators of the one-sided best approximations of ``beta``.

    With ``upper`` the distance from ``q*beta`` up to the next integer sets a
    new record at each yielded ``q``; otherwise the distance down to the
    previous integer does. The first record is ``0`` (upper) or ``1``.
    """
    last = 0 if upper else 1
    yield last
    k_before, k_cur = 1, 0
    index = -1
    for a in _partial_quotients(beta):
        if (index % 2 == 0) == upper:
            for j in range(1, a + 1):
                q = k_before + j * k_cur
                if q > last:
                    last = q
                    yield q
        k_before, k_cur = k_cur, a * k_cur + k_before
        index += 1


def _a_candidate(a: Scalar, b: Scalar, m: Scalar, v: int) -> Optional[Pair]:
    """Smallest ``u`` with ``u*a > v*b``; the pair if its measure is below ``m``."""
    if v == 0:
        u = 1
    else:
        t = v * b / a
        n = t.floor()
        if t == n:
            raise NonGenericityError(f"{n}|a| - {v}|b| is exactly 0", u=n, v=v)
        u = n + 1
    value = u * a - v * b
    if value == m:
        raise NonGenericityError(f"{u}|a| - {v}|b| equals m exactly", u=u, v=v)
    return (u, v) if value < m else None


def _b_candidate(a: Scalar, b: Scalar, m: Scalar, y: int) -> Optional[Pair]:
    """Smallest ``w >= 0`` with ``y*b - w*a < m``; the pair if that measure is positive."""
    x = (y * b - m) / a
    n = x.floor()
    if x == n and n >= 0:
        raise NonGenericityError(f"{y}|b| - {n}|a| equals m exactly", w=n, y=y)
    w = max(0, n + 1)
    value = y * b - w * a
    if value == 0:
        raise NonGenericityError(f"{y}|b| - {w}|a| is exactly 0", w=w, y=y)
    return (w, y) if value > 0 else None


def minimal_pairs(a: Number, b: Number, m: Number) -> Tuple[Pair, Pair]:
    """
    Minimal nontrivial nonnegative pairs ``(u, v)`` and ``(w, y)``.

    ``0 < u|a| - v|b| < m`` and ``0 < y|b| - w|a| < m``, each pair of
    least flow cost. Only the one-sided best approximations of ``b/a`` can
    be the first qualifying index, so the search walks those.

    Raises:
        NonGenericityError: If an examined pair has measure exactly 0 or m,
            or the rational ratio ``b/a`` runs out of approximations.
        DomainError: If the preconditions ``a, b, m > 0`` and ``m < a + b`` fail.
    """
    a, b, m = Scalar.coerce(a), Scalar.coerce(b), Scalar.coerce(m)
    if min(a, b, m) <= 0 or not m < a + b:
        raise DomainError("minimal pairs need a, b, m > 0 and m < a + b")
    beta = b / a
    ua = None
    for v in _record_denominators(beta, upper=True):
        ua = _a_candidate(a, b, m, v)
        if ua is not None:
            break
    by = None
    for y in _record_denominators(beta, upper=False):
        by = _b_candidate(a, b, m, y)
        if by is not None:
            break
    if ua is None or by is None:
        raise NonGenericityError(f"rational ratio b/a = {beta} leaves an exact tie")
    logger.debug("minimal pairs for (%s, %s, %s): %s %s", a, b, m, ua, by)
    return ua, by


def scan_minimal_pairs(a: Number, b: Number, m: Number, limit: int = 100000) -> Tuple[Pair, Pair]:
    """
    Reference search walking every index in order of increasing flow cost.
    """
    a, b, m = Scalar.coerce(a), Scalar.coerce(b), Scalar.coerce(m)
    ua = next((p for v in range(limit) if (p := _a_candidate(a, b, m, v)) is not None), None)
    by = next((p for y in range(1, limit) if (p := _b_candidate(a, b, m, y)) is not None), None)
    if ua is None or by is None:
        raise NonGenericityError("no qualifying pair below the scan limit")
    return ua, by


def brute_force_pairs(a: Number, b: Number, m: Number, bound: int) -> Tuple[Optional[Pair], Optional[Pair]]:
    """
    Exhaustive search over all pairs with entries up to ``bound``.

    Returns the least flow-cost qualifying pair of each kind, or ``None``.
    """
    a, b, m = Scalar.coerce(a), Scalar.coerce(b), Scalar.coerce(m)
    best_a = best_b = None
    for i in range(bound + 1):
        for j in range(bound + 1):
            cost = i * a + j * b
            if i > 0 and 0 < i * a - j * b < m:
                if best_a is None or cost < best_a[0]:
                    best_a = (cost, (i, j))
            if j > 0 and 0 < j * b - i * a < m:
                if best_b is None or cost < best_b[0]:
                    best_b = (cost, (i, j))
    return (best_a[1] if best_a else None), (best_b[1] if best_b else None)


@dataclass(frozen=True)
class StreetTriple:
    """
    Widths and lattice heights of the three streets of one plane.

    Street 1 sits left of street 0 and street 2 right of it along s.
    """

    plane: int
    a: Scalar
    b: Scalar
    m: Scalar
    w0: Scalar
    w1: Scalar
    w2: Scalar
    h0: LatticeVector
    h1: LatticeVector
    h2: LatticeVector

    @property
    def ua_pair(self) -> Pair:
        return (self.h1.p, self.h1.q)

    @property
    def by_pair(self) -> Pair:
        return (self.h2.p, self.h2.q)

    def width(self, street: int) -> Scalar:
        return {0: self.w0, 1: self.w1, 2: self.w2}[street]

    def height(self, street: int) -> LatticeVector:
        return {0: self.h0, 1: self.h1, 2: self.h2}[street]

    def shift(self, street: int) -> Scalar:
        """Displacement along s made by a trajectory crossing the street."""
        return self.height(street).measure(self.a, self.b)

    def blocks(self) -> List[Tuple[int, Interval]]:
        """The three streets as intervals of s, left to right."""
        out = []
        start = Scalar(0)
        for street in STREET_ORDER:
            end = start + self.width(street)
            out.append((street, Interval(start, end)))
            start = end
        return out

    def check(self) -> None:
        """
        Assert the partition, additivity and measure identities.

        Raises:
            NonGenericityError: If a width vanishes.
            DomainError: If an identity fails.
        """
        if min(self.w0, self.w1, self.w2) <= 0:
            raise NonGenericityError(f"street widths {self.w0}, {self.w1}, {self.w2} are not all positive")
        if self.w0 + self.w1 + self.w2 != self.m:
            raise DomainError("street widths do not sum to m")
        if self.h1 + self.h2 != self.h0:
            raise DomainError("street heights are not additive")
        if self.w0 + self.w2 != self.shift(1) or self.w0 + self.w1 != -self.shift(2):
            raise DomainError("thin parallelogram identities fail")

    def to_dict(self) -> dict:
        return {
            "plane": self.plane,
            "widths": {"0": str(self.w0), "1": str(self.w1), "2": str(self.w2)},
            "heights": {"0": self.h0.to_list(), "1": self.h1.to_list(), "2": self.h2.to_list()},
            "pairs": {"ua": list(self.ua_pair), "by": list(self.by_pair)},
            "determinant": mbasis_homology(self).det,
        }


def triple_from_pairs(plane: int, a: Scalar, b: Scalar, m: Scalar, ua: Pair, by: Pair) -> StreetTriple:
    """Assemble a :class:`StreetTriple` from the two minimal pairs."""
    h1 = LatticeVector(*ua)
    h2 = LatticeVector(*by)
    mu1 = h1.measure(a, b)
    mu2 = -h2.measure(a, b)
    return StreetTriple(
        plane=plane,
        a=a,
        b=b,
        m=m,
        w0=mu1 + mu2 - m,
        w1=m - mu1,
        w2=m - mu2,
        h0=h1 + h2,
        h1=h1,
        h2=h2,
    )


def street_triple(spec: FoliationSpec, plane: int) -> StreetTriple:
    """
    Three-street decomposition of ``plane`` for a valid spec.

    Raises:
        SpecValidationError: If the spec is invalid.
        NonGenericityError: If the data has an exact tie.
    """
    require_valid(spec)
    a, b = spec.plane(plane)
    ua, by = minimal_pairs(a, b, spec.m)
    triple = triple_from_pairs(plane, a, b, spec.m, ua, by)
    triple.check()
    return triple


@dataclass(frozen=True)
class MBasis:
    """
    The m-dependent basis classes in the original basis of one torus.
    """

    a_star: LatticeVector
    b_star: LatticeVector

    @property
    def matrix(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        """Change-of-basis matrix ``((u, w), (v, y))``."""
        return ((self.a_star.p, self.b_star.p), (self.a_star.q, self.b_star.q))

    @property
    def det(self) -> int:
        return self.a_star.p * self.b_star.q - self.b_star.p * self.a_star.q

    def negative(self) -> "MBasis":
        """Classes of the negative-time paths, opposite to the positive ones."""
        return MBasis(-self.a_star, -self.b_star)

    def to_dict(self) -> dict:
        return {
            "a_star": self.a_star.to_list(),
            "b_star": self.b_star.to_list(),
            "matrix": [list(row) for row in self.matrix],
            "determinant": self.det,
        }


def mbasis_homology(t: StreetTriple) -> MBasis:
    """``[a*] = (u, v)`` and ``[b*] = (w, y)`` of a street triple."""
    return MBasis(t.h1, t.h2)
