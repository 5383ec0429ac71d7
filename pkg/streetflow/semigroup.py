"""
Word semigroup of the transition map.

A word over the letters ``1..5`` names the sub-segments visited by
consecutive iterates. Its carrier is the set of points whose itinerary
starts with the word and its shift is the total displacement along s.
Words are stored newest letter first, so left multiplication by a letter
appends one step to the itinerary.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from streetflow.core import Interval, Number, Scalar
from streetflow.errors import (
    CutPointError,
    DomainError,
    NonGenericityError,
    OrbitTruncationError,
    ResourceLimitError,
)
from streetflow.transition import BrokenIsometry

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEPTH = 16


@dataclass(frozen=True)
class SemigroupWord:
    """
    A word with its carrier interval and shift.

    ``letters`` runs newest first; :attr:`itinerary` gives the time order.
    An empty carrier marks the zero element.
    """

    letters: Tuple[int, ...]
    carrier: Interval
    shift: Scalar

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def itinerary(self) -> Tuple[int, ...]:
        return tuple(reversed(self.letters))

    @property
    def is_zero(self) -> bool:
        return self.carrier.is_empty

    @property
    def measure(self) -> Scalar:
        return self.carrier.measure

    def to_dict(self) -> dict:
        return {
            "letters": list(self.itinerary),
            "carrier": self.carrier.to_dict(),
            "shift": str(self.shift),
            "measure": str(self.measure),
        }


def empty_word(bi: BrokenIsometry) -> SemigroupWord:
    """The unit: carrier all of s and zero shift."""
    return SemigroupWord((), Interval(Scalar(0), bi.m), Scalar(0))


def _check_letter(bi: BrokenIsometry, q: int) -> None:
    if not 1 <= q <= len(bi.tau):
        raise DomainError(f"letter must lie in 1..{len(bi.tau)}, got {q}")


def left_multiply(bi: BrokenIsometry, q: int, w: SemigroupWord) -> SemigroupWord:
    """
    ``R_q · w``: points of the carrier of ``w`` whose next visit after the
    word lies in ``τ_q``.
    """
    _check_letter(bi, q)
    pulled_back = bi.tau[q - 1].shift(-w.shift)
    carrier = w.carrier.intersect(pulled_back)
    return SemigroupWord((q,) + w.letters, carrier, bi.shifts[q - 1] + w.shift)


def word_from_itinerary(bi: BrokenIsometry, letters: Iterable[int]) -> SemigroupWord:
    """Build the word of a time-ordered letter sequence."""
    w = empty_word(bi)
    for q in letters:
        w = left_multiply(bi, q, w)
    return w


def multiply(bi: BrokenIsometry, x: SemigroupWord, y: SemigroupWord) -> SemigroupWord:
    """``x · y``: the itinerary of ``y`` followed by that of ``x``."""
    return word_from_itinerary(bi, y.itinerary + x.itinerary)


def enumerate_level(bi: BrokenIsometry, n: int, max_depth: int = DEFAULT_MAX_DEPTH) -> List[SemigroupWord]:
    """
    All nonzero words of length ``n``, left to right along s.

    Carriers are refined depth first; zero words are pruned as soon as they
    appear.

    Raises:
        ResourceLimitError: If ``n`` exceeds ``max_depth``.
    """
    if n < 1:
        raise DomainError(f"depth must be at least 1, got {n}")
    if n > max_depth:
        raise ResourceLimitError(f"depth {n} exceeds the bound {max_depth}", depth=n, max_depth=max_depth)
    level = [empty_word(bi)]
    for depth in range(n):
        refined = []
        for w in level:
            for q in range(1, len(bi.tau) + 1):
                child = left_multiply(bi, q, w)
                if not child.is_zero:
                    refined.append(child)
        level = refined
        logger.debug("level %d has %d nonzero words", depth + 1, len(level))
    return level


class ClosedCurve(str, Enum):
    """Orientation of the transversal closed curve made by a word."""

    POSITIVE = "positive-closed"
    NEGATIVE = "negative-closed"


@dataclass(frozen=True)
class CurveVerdict:
    kind: ClosedCurve
    measure: Scalar

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "measure": str(self.measure)}


def closed_curve_verdict(w: SemigroupWord) -> CurveVerdict:
    """
    Negative shifts close to positive transversal curves and vice versa.

    Raises:
        DomainError: For the zero word.
        NonGenericityError: If the shift is exactly zero.
    """
    if w.is_zero:
        raise DomainError("the zero word has no closed curve")
    sign = w.shift.sign()
    if sign == 0:
        raise NonGenericityError(f"word {list(w.itinerary)} has zero shift")
    if sign < 0:
        return CurveVerdict(ClosedCurve.POSITIVE, -w.shift)
    return CurveVerdict(ClosedCurve.NEGATIVE, w.shift)


def code_trajectory(bi: BrokenIsometry, x0: Number, n: int) -> List[int]:
    """
    Itinerary of ``x0`` over ``n`` steps.

    Raises:
        OrbitTruncationError: If the orbit reaches a cut point; ``step`` is
            the index of the offending iterate.
    """
    x = Scalar.coerce(x0)
    letters = []
    for step in range(n):
        try:
            q = bi.letter(x)
        except CutPointError:
            raise OrbitTruncationError(f"orbit of {x0} meets cut point {x} at step {step}", step=step) from None
        letters.append(q)
        x = x + bi.shifts[q - 1]
    return letters


def windows(letters: Sequence[int], size: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """Start index and contents of every window of ``size`` letters."""
    return [(i, tuple(letters[i : i + size])) for i in range(len(letters) - size + 1)]


@dataclass(frozen=True)
class CylinderCheck:
    """Orbit-sampled frequency of a cylinder against its carrier measure."""

    itinerary: Tuple[int, ...]
    frequency: float
    expected: float
    samples: int

    @property
    def sigma(self) -> float:
        return math.sqrt(max(self.expected * (1 - self.expected), 0.0) / self.samples)

    @property
    def within_three_sigma(self) -> bool:
        return abs(self.frequency - self.expected) <= 3 * self.sigma + 1e-12

    def to_dict(self) -> dict:
        return {
            "letters": list(self.itinerary),
            "frequency": self.frequency,
            "expected": self.expected,
            "samples": self.samples,
            "within_three_sigma": self.within_three_sigma,
        }


def cylinder_frequencies(
    bi: BrokenIsometry,
    words: Sequence[SemigroupWord],
    points: Sequence[Scalar],
    progress: bool = False,
) -> List[CylinderCheck]:
    """
    Fraction of sample points whose itinerary starts with each word,
    compared with ``measure / m``.
    """
    depth = max((w.length for w in words), default=0)
    codes: List[Optional[Tuple[int, ...]]] = []
    for x in tqdm(points, desc="coding", disable=not progress):
        try:
            codes.append(tuple(code_trajectory(bi, x, depth)))
        except OrbitTruncationError:
            codes.append(None)
    usable = [c for c in codes if c is not None]
    results = []
    for w in words:
        hits = sum(1 for c in usable if c[: w.length] == w.itinerary)
        results.append(
            CylinderCheck(
                itinerary=w.itinerary,
                frequency=hits / len(usable) if usable else 0.0,
                expected=float(w.measure / bi.m),
                samples=len(usable),
            )
        )
    return results
