"""
Geometric ground truth for the combinatorial model.

A plane is realised with the flow pointing straight up, the slit s running
from ``(0, 0)`` to ``(m, 0)`` and lattice vectors ``e_a = (-|a|, |a|)`` and
``e_b = (|b|, |b|)``. The horizontal coordinate is the transversal measure,
so the translate ``p e_a + q e_b`` of the slit is hit from ``x`` exactly when
``x + μ`` lies on s, with ``μ = p|a| - q|b|`` and flow height
``p|a| + q|b|``. Rays are shot exactly against that periodic family.
"""

import logging
import math
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from streetflow.core import FoliationSpec, Interval, LatticeVector, Number, Scalar
from streetflow.errors import (
    DomainError,
    ModelViolationError,
    NonGenericityError,
    OrbitTruncationError,
    ResourceLimitError,
)
from streetflow.semigroup import code_trajectory
from streetflow.streets import STREET_ORDER, StreetTriple, street_triple
from streetflow.transition import transition_for

logger = logging.getLogger(__name__)

DEFAULT_MAX_DOUBLINGS = 40


@dataclass(frozen=True)
class PlanarRealization:
    """
    Canonical flat placement of one torus plane.
    """

    a: Scalar
    b: Scalar
    m: Scalar
    plane: int = 1

    @classmethod
    def from_spec(cls, spec: FoliationSpec, plane: int) -> "PlanarRealization":
        a, b = spec.plane(plane)
        return cls(a, b, spec.m, plane)

    @property
    def e_a(self) -> Tuple[Scalar, Scalar]:
        return (-self.a, self.a)

    @property
    def e_b(self) -> Tuple[Scalar, Scalar]:
        return (self.b, self.b)

    @property
    def direction(self) -> Tuple[int, int]:
        return (0, 1)

    def translate(self, v: LatticeVector) -> Tuple[Scalar, Scalar]:
        """Offset of the slit translate ``p e_a + q e_b``."""
        (ax, ay), (bx, by) = self.e_a, self.e_b
        return (v.p * ax + v.q * bx, v.p * ay + v.q * by)

    def calibration(self) -> Dict[str, Scalar]:
        """Measures of the cycles a, b and of the slit read off the placement."""
        return {"a": abs(self.e_a[0]), "b": abs(self.e_b[0]), "m": self.m}


@dataclass(frozen=True)
class ReturnHit:
    """Landing point, lattice displacement and flow height of a return."""

    landing: Scalar
    displacement: LatticeVector
    height: Scalar


def _candidates(pr: PlanarRealization, bound: Scalar):
    """All nonzero ``(p, q) >= 0`` whose translate lies at height ``<= bound``."""
    for p in range((bound / pr.a).floor() + 1):
        rest = bound - p * pr.a
        for q in range((rest / pr.b).floor() + 1):
            if p or q:
                yield LatticeVector(p, q)


def _shoot(pr: PlanarRealization, x: Scalar, sign: int, max_doublings: int) -> ReturnHit:
    if not (0 <= x < pr.m):
        raise DomainError(f"{x} is not a point of the slit [0, {pr.m})")
    bound = pr.a + pr.b
    for _ in range(max_doublings):
        best: Optional[ReturnHit] = None
        touches: List[Tuple[Scalar, LatticeVector]] = []
        for v in _candidates(pr, bound):
            ox, height = pr.translate(v)
            landing = x - sign * ox
            if landing == 0 or landing == pr.m:
                touches.append((height, v))
            elif 0 < landing < pr.m and (best is None or height < best.height):
                best = ReturnHit(landing, v if sign > 0 else -v, height)
        if best is not None:
            for height, v in touches:
                if height < best.height:
                    raise NonGenericityError(
                        f"ray from {x} meets an end of translate {v.to_list()}", displacement=v.to_list()
                    )
            return best
        bound = 2 * bound
        logger.debug("raising ray-shooting bound to %s", bound)
    raise ResourceLimitError(f"no return found from {x} after {max_doublings} doublings")


def first_return(pr: PlanarRealization, x: Number, max_doublings: int = DEFAULT_MAX_DOUBLINGS) -> ReturnHit:
    """
    First translate of s met by the upward ray from ``x``.

    Raises:
        NonGenericityError: If the ray meets a translate endpoint first.
    """
    return _shoot(pr, Scalar.coerce(x), 1, max_doublings)


def first_return_backward(pr: PlanarRealization, x: Number, max_doublings: int = DEFAULT_MAX_DOUBLINGS) -> ReturnHit:
    """Same as :func:`first_return` for the downward ray."""
    return _shoot(pr, Scalar.coerce(x), -1, max_doublings)


def _end_cuts(pr: PlanarRealization, bound: Scalar) -> List[Scalar]:
    """Points of s lying straight below an end of a translate at height ``<= bound``."""
    cuts = {Scalar(0), pr.m}
    for v in _candidates(pr, bound):
        ox, _ = pr.translate(v)
        cuts.update(c for c in (ox, ox + pr.m) if 0 < c < pr.m)
    return sorted(cuts)


def empirical_streets(pr: PlanarRealization, max_doublings: int = DEFAULT_MAX_DOUBLINGS) -> StreetTriple:
    """
    Partition s by the displacement of the first return and read off the
    three streets.

    The return map can only jump below an end of a translate lower than the
    return itself, so s is cut at the ends of all translates up to a height
    bound and one ray is shot from the middle of each piece. The bound
    doubles until it exceeds every return height.

    Raises:
        ModelViolationError: If the partition does not have exactly three parts.
    """
    m = pr.m
    bound = pr.a + pr.b
    for _ in range(max_doublings):
        cuts = _end_cuts(pr, bound)
        hits = [(lo, hi, first_return(pr, (lo + hi) / 2, max_doublings)) for lo, hi in zip(cuts, cuts[1:])]
        if all(hit.height <= bound for _, _, hit in hits):
            break
        bound = 2 * bound
        logger.debug("raising street cut bound to %s", bound)
    else:
        raise ResourceLimitError("returns from s did not settle below the height bound")
    parts: List[Tuple[Interval, LatticeVector]] = []
    for lo, hi, hit in hits:
        if parts and parts[-1][1] == hit.displacement:
            parts[-1] = (Interval(parts[-1][0].lo, hi), hit.displacement)
        else:
            parts.append((Interval(lo, hi), hit.displacement))
    if len(parts) != 3:
        raise ModelViolationError(f"slit splits into {len(parts)} parts instead of 3", parts=len(parts))
    (left, h1), (middle, h0), (right, h2) = parts
    if h1 + h2 != h0:
        raise ModelViolationError("middle street height is not the sum of the side heights")
    return StreetTriple(
        plane=pr.plane,
        a=pr.a,
        b=pr.b,
        m=m,
        w0=middle.measure,
        w1=left.measure,
        w2=right.measure,
        h0=h0,
        h1=h1,
        h2=h2,
    )


def oracle_transition(spec: FoliationSpec, x: Number, max_doublings: int = DEFAULT_MAX_DOUBLINGS) -> Scalar:
    """
    Composite of the plane-1 and plane-2 first returns through the slit
    identification.
    """
    middle = first_return(PlanarRealization.from_spec(spec, 1), x, max_doublings).landing
    return first_return(PlanarRealization.from_spec(spec, 2), middle, max_doublings).landing


def oracle_itinerary(spec: FoliationSpec, locate, x0: Number, steps: int) -> List[int]:
    """
    Orbit coding produced by the geometric return map; ``locate`` maps a
    point to the index of the sub-segment containing it.
    """
    x = Scalar.coerce(x0)
    letters = []
    for _ in range(steps):
        letters.append(locate(x))
        x = oracle_transition(spec, x)
    return letters


@dataclass(frozen=True)
class CheckResult:
    """One named comparison of the simulate report."""

    name: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def compare_streets(spec: FoliationSpec) -> List[CheckResult]:
    """Street triples from the arithmetic and from ray shooting, per plane."""
    results = []
    for plane in (1, 2):
        derived = street_triple(spec, plane)
        seen = empirical_streets(PlanarRealization.from_spec(spec, plane))
        same = derived == seen
        results.append(CheckResult(f"streets_plane_{plane}", same, "" if same else f"{derived} != {seen}"))
    return results


def compare_transition(spec: FoliationSpec, points: List[Scalar]) -> CheckResult:
    """The broken isometry against the composite geometric return on sample points."""
    bi = transition_for(spec)
    cuts = set(bi.exchange.singularities())
    mismatches = []
    for x in points:
        if x in cuts:
            continue
        expected = oracle_transition(spec, x)
        got = bi.exchange(x)
        if got != expected:
            mismatches.append(f"{x}: {got} != {expected}")
    return CheckResult("transition", not mismatches, "; ".join(mismatches[:5]))


def compare_coding(spec: FoliationSpec, x0: Number, steps: int) -> CheckResult:
    """Orbit coding by the broken isometry against the geometric itinerary."""
    bi = transition_for(spec)
    x0 = Scalar.coerce(x0)
    try:
        combinatorial = code_trajectory(bi, x0, steps)
    except OrbitTruncationError as e:
        return CheckResult("coding", True, f"orbit truncated at step {e.step}")
    geometric = oracle_itinerary(spec, bi.letter, x0, steps)
    same = combinatorial == geometric
    return CheckResult("coding", same, "" if same else f"{combinatorial} != {geometric}")


def sample_points(m: Scalar, count: int, seed: int) -> List[Scalar]:
    """Seeded rational sample points inside ``(0, m)``."""
    rng = random.Random(seed)
    points = []
    scale = 10007
    top = (m * scale).floor()
    for _ in range(count):
        points.append(Scalar(rng.randint(1, max(1, top - 1))) / scale)
    return points


@dataclass(frozen=True)
class TimeProfile:
    """
    Passage time across a street as a function of the entry point.

    ``t(x) = -c_near0 ln(x/w) - c_nearW ln(1 - x/w) + t0``; the constants
    come from the saddles at both sides of the street.
    """

    width: float
    c_near0: float
    c_nearW: float
    street: int
    t0: float = 0.0

    @classmethod
    def for_street(cls, width: Number, street: int, c1: float, c2: float, t0: float = 0.0) -> "TimeProfile":
        """Assign the saddle constants by street role."""
        if c1 <= 0 or c2 <= 0:
            raise DomainError("saddle constants must be positive")
        w = float(width)
        if street == 0:
            return cls(w, c2, c1, street, t0)
        if street == 1:
            return cls(w, c2 / 2, c1 / 2, street, t0)
        if street == 2:
            return cls(w, c1 / 2, c2 / 2, street, t0)
        raise DomainError(f"street must be 0, 1 or 2, got {street}")

    def to_dict(self) -> dict:
        return {
            "model": "log-saddle",
            "street": self.street,
            "width": self.width,
            "c_near0": self.c_near0,
            "c_nearW": self.c_nearW,
            "t0": self.t0,
        }


def time_profile_eval(tp: TimeProfile, x: Number) -> float:
    """
    Model passage time at entry point ``x``.

    Raises:
        DomainError: If ``x`` is not strictly inside ``(0, w)``.
    """
    x = float(x)
    if not 0 < x < tp.width:
        raise DomainError(f"{x} lies outside (0, {tp.width})")
    ratio = x / tp.width
    return -tp.c_near0 * math.log(ratio) - tp.c_nearW * math.log1p(-ratio) + tp.t0


def fit_log_slope(tp: TimeProfile, fractions: Optional[List[float]] = None) -> float:
    """
    Slope of ``t`` against ``ln(1/x)`` near the left end of the street.
    """
    if fractions is None:
        fractions = [10.0 ** (-k) for k in range(6, 13)]
    xs = np.array([f * tp.width for f in fractions])
    ts = np.array([time_profile_eval(tp, x) for x in xs])
    slope, _ = np.polyfit(np.log(1.0 / xs), ts, 1)
    return float(slope)


def street_profiles(t: StreetTriple, c1: float, c2: float, t0: float = 0.0) -> List[TimeProfile]:
    """Time profiles of the three streets of a plane, in s order."""
    return [TimeProfile.for_street(t.width(street), street, c1, c2, t0) for street in STREET_ORDER]
