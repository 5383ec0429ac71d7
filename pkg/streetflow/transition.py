"""
The broken isometry of the slit and its topological type.

Each plane carries a three-piece exchange moving its streets; the
transition map of s is the plane-2 exchange after the plane-1 exchange,
computed as the common refinement of the plane-1 images with the plane-2
domains. The five resulting pieces are labelled by the pair of streets
``(alpha, beta)`` they cross.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Set, Tuple

from streetflow.core import FoliationSpec, Interval, Number, Scalar
from streetflow.errors import CutPointError, DomainError, InternalConsistencyError, NonGenericityError
from streetflow.streets import STREET_ORDER, StreetTriple, street_triple

logger = logging.getLogger(__name__)

StreetPair = Tuple[int, int]

# image order of the streets of one plane: [23] first, [12] second, [01] third
IMAGE_ORDER = (2, 0, 1)


class TransitionType(str, Enum):
    """Topological types of the transition map."""

    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"


# pieces in domain order, as (plane-1 street, plane-2 street)
TYPE_PIECES: Dict[TransitionType, Tuple[StreetPair, ...]] = {
    TransitionType.I: ((1, 2), (0, 2), (2, 1), (2, 0), (2, 2)),
    TransitionType.II: ((1, 2), (0, 0), (0, 2), (2, 1), (2, 0)),
    TransitionType.III: ((1, 0), (1, 2), (0, 0), (2, 1), (2, 0)),
    TransitionType.IV: ((1, 2), (0, 1), (0, 0), (0, 2), (2, 1)),
    TransitionType.V: ((1, 0), (1, 2), (0, 1), (0, 0), (2, 1)),
    TransitionType.VI: ((1, 1), (1, 0), (1, 2), (0, 1), (2, 1)),
}

TYPE_SIGMA: Dict[TransitionType, Tuple[int, ...]] = {
    TransitionType.I: (3, 2, 5, 4, 1),
    TransitionType.II: (2, 4, 1, 5, 3),
    TransitionType.III: (4, 1, 3, 5, 2),
    TransitionType.IV: (2, 5, 3, 1, 4),
    TransitionType.V: (3, 1, 5, 2, 4),
    TransitionType.VI: (5, 2, 1, 4, 3),
}

PRINTED_SIGMA: Dict[TransitionType, Tuple[int, ...]] = {
    TransitionType.I: (3, 2, 5, 4, 1),
    TransitionType.II: (2, 4, 1, 5, 3),
    TransitionType.III: (4, 1, 5, 2, 3),
    TransitionType.IV: (2, 5, 3, 1, 4),
    TransitionType.V: (3, 1, 5, 2, 4),
    TransitionType.VI: (5, 2, 1, 3, 4),
}

# (phi, phi*) pairs reported absent for each type
PRINTED_EXCLUSIONS: Dict[TransitionType, Tuple[Set[StreetPair], Set[StreetPair]]] = {
    TransitionType.I: (set(), {(1, 1), (1, 0), (0, 1), (0, 0)}),
    TransitionType.II: ({(2, 2)}, {(1, 1), (1, 0), (0, 1)}),
    TransitionType.III: ({(2, 2), (0, 2)}, {(1, 1), (0, 1)}),
    TransitionType.IV: ({(2, 0), (2, 2)}, {(1, 1), (1, 0)}),
    TransitionType.V: ({(2, 2), (2, 0), (0, 2)}, {(1, 1)}),
    TransitionType.VI: ({(2, 0), (2, 2), (0, 0), (0, 2)}, set()),
}

ALL_PAIRS = tuple((alpha, beta) for alpha in STREET_ORDER for beta in STREET_ORDER)


@dataclass(frozen=True)
class IntervalExchange:
    """
    A piecewise translation of ``[0, total)``.

    Args:
        labels: One label per piece, in domain order.
        domain: Half-open domain pieces, consecutive from 0.
        shifts: Translation applied on each piece.
    """

    labels: Tuple[Hashable, ...]
    domain: Tuple[Interval, ...]
    shifts: Tuple[Scalar, ...]

    @property
    def total(self) -> Scalar:
        return self.domain[-1].hi

    def images(self) -> Tuple[Interval, ...]:
        return tuple(iv.shift(r) for iv, r in zip(self.domain, self.shifts))

    def singularities(self) -> List[Scalar]:
        """Left ends of the domain pieces; the map is undefined there."""
        return [iv.lo for iv in self.domain]

    def range_singularities(self) -> List[Scalar]:
        return sorted(iv.lo for iv in self.images())

    def in_which_interval(self, x: Number) -> int:
        """
        Index of the piece whose interior contains ``x``.

        Raises:
            CutPointError: If ``x`` is a piece end.
            DomainError: If ``x`` lies outside ``[0, total)``.
        """
        x = Scalar.coerce(x)
        if not (0 <= x < self.total):
            raise DomainError(f"{x} lies outside [0, {self.total})")
        for index, iv in enumerate(self.domain):
            if x == iv.lo:
                raise CutPointError(f"{x} is a cut point", point=str(x))
            if iv.contains(x):
                return index
        raise InternalConsistencyError(f"pieces do not cover {x}")

    def __call__(self, x: Number) -> Scalar:
        x = Scalar.coerce(x)
        return x + self.shifts[self.in_which_interval(x)]

    def inverse(self) -> "IntervalExchange":
        """The inverse exchange, pieces reordered by image position."""
        order = sorted(range(len(self.domain)), key=lambda i: self.images()[i].lo)
        return IntervalExchange(
            tuple(self.labels[i] for i in order),
            tuple(self.images()[i] for i in order),
            tuple(-self.shifts[i] for i in order),
        )

    def then(self, after: "IntervalExchange") -> "IntervalExchange":
        """
        ``after`` composed with this exchange, on the common refinement.

        Labels of the composite are pairs ``(own label, label of after)``.
        """
        if self.total != after.total:
            raise DomainError("exchanges act on segments of different length")
        pieces = []
        for label, iv, r in zip(self.labels, self.domain, self.shifts):
            image = iv.shift(r)
            for other_label, other_iv, other_r in zip(after.labels, after.domain, after.shifts):
                common = image.intersect(other_iv)
                if not common.is_empty:
                    pieces.append((common.shift(-r), (label, other_label), r + other_r))
        pieces.sort(key=lambda item: item[0].lo)
        return IntervalExchange(
            tuple(p[1] for p in pieces),
            tuple(p[0] for p in pieces),
            tuple(p[2] for p in pieces),
        )

    def permutation(self) -> Tuple[int, ...]:
        """One-line notation: entry ``q`` is the image rank of domain piece ``q``."""
        ranks = sorted(range(len(self.domain)), key=lambda i: self.images()[i].lo)
        sigma = [0] * len(ranks)
        for rank, index in enumerate(ranks, start=1):
            sigma[index] = rank
        return tuple(sigma)


def eta(t: StreetTriple, direction: str) -> IntervalExchange:
    """
    Three-block exchange of one plane: block [23] lands first, [12]
    second and [01] third.

    Args:
        t: Street triple of the source plane.
        direction: ``"12"`` for plane 1, ``"21"`` for plane 2.
    """
    source = {"12": 1, "21": 2}.get(direction)
    if source is None:
        raise DomainError(f"direction must be '12' or '21', got {direction!r}")
    if source != t.plane:
        raise DomainError(f"direction {direction} needs the plane-{source} triple, got plane {t.plane}")
    labels, domain, shifts = [], [], []
    for street, iv in t.blocks():
        labels.append(street)
        domain.append(iv)
        shifts.append(t.shift(street))
    exchange = IntervalExchange(tuple(labels), tuple(domain), tuple(shifts))
    images = [(street, iv) for street, iv in zip(exchange.labels, exchange.images())]
    if [s for s, _ in sorted(images, key=lambda item: item[1].lo)] != list(IMAGE_ORDER):
        raise InternalConsistencyError("street shifts do not reverse the blocks")
    return exchange


def image_points(t: StreetTriple) -> Dict[str, Scalar]:
    """Images of the block points under the plane's exchange."""
    return {"3": t.width(2), "0": t.width(2) + t.width(0)}


def domain_points(t: StreetTriple) -> Dict[str, Scalar]:
    """Block points 1 and 2 of a plane's own street partition."""
    return {"1": t.width(1), "2": t.width(1) + t.width(0)}


def classify_type(t1: StreetTriple, t2: StreetTriple) -> TransitionType:
    """
    Decide the type from the order of ``1', 2'`` against ``3*, 0*``.

    Raises:
        NonGenericityError: If two comparison points coincide.
    """
    star = image_points(t1)
    prime = domain_points(t2)
    s3, s0 = star["3"], star["0"]
    p1, p2 = prime["1"], prime["2"]
    for p in (p1, p2):
        if p == s3 or p == s0:
            raise NonGenericityError(f"point {p} of plane 2 meets an image point of plane 1", point=str(p))
    if p2 < s3:
        return TransitionType.I
    if p1 < s3:
        return TransitionType.II if p2 < s0 else TransitionType.III
    if p1 < s0:
        return TransitionType.IV if p2 < s0 else TransitionType.V
    return TransitionType.VI


def _readings(printed: Tuple[int, ...]) -> Dict[str, Tuple[int, ...]]:
    """A printed permutation read in one-line and in cycle notation."""
    cycle = [0] * len(printed)
    for i, x in enumerate(printed):
        cycle[x - 1] = printed[(i + 1) % len(printed)]
    return {"one-line": printed, "cycle": tuple(cycle)}


@dataclass(frozen=True)
class BrokenIsometry:
    """
    The five-piece transition map of s with its type data.

    ``pair_measures[alpha][beta]`` is the measure of the part of s crossing
    plane-1 street ``alpha`` and then plane-2 street ``beta``.
    """

    type: TransitionType
    exchange: IntervalExchange
    sigma: Tuple[int, ...]
    printed_sigma: Tuple[int, ...]
    sigma_reading: Optional[str]
    cut_points: Tuple[Tuple[str, Scalar], ...]
    pair_measures: Tuple[Tuple[Scalar, ...], ...]
    t1: StreetTriple
    t2: StreetTriple

    @property
    def m(self) -> Scalar:
        return self.exchange.total

    @property
    def pieces(self) -> Tuple[StreetPair, ...]:
        return self.exchange.labels

    @property
    def tau(self) -> Tuple[Interval, ...]:
        return self.exchange.domain

    @property
    def shifts(self) -> Tuple[Scalar, ...]:
        return self.exchange.shifts

    @property
    def sigma_matches_printed(self) -> bool:
        return self.sigma_reading is not None

    def letter(self, x: Number) -> int:
        """1-based index of the sub-segment containing ``x``."""
        return self.exchange.in_which_interval(x) + 1

    def orbit(self, x: Number, n: int) -> Iterator[Scalar]:
        """``x`` followed by its first ``n`` images."""
        x = Scalar.coerce(x)
        yield x
        for _ in range(n):
            x = self.exchange(x)
            yield x

    def to_dict(self) -> dict:
        return {
            "type": self.type.value,
            "sigma": "".join(str(i) for i in self.sigma),
            "printed_sigma": "".join(str(i) for i in self.printed_sigma),
            "sigma_reading": self.sigma_reading,
            "pieces": [f"{a}{b}'" for a, b in self.pieces],
            "tau": [iv.to_dict() | {"measure": str(iv.measure)} for iv in self.tau],
            "shifts": [str(r) for r in self.shifts],
            "cut_points": [{"name": name, "value": str(v)} for name, v in self.cut_points],
            "pair_measures": {
                str(alpha): {f"{beta}'": str(self.pair_measures[alpha][beta]) for beta in STREET_ORDER}
                for alpha in STREET_ORDER
            },
        }


def build_transition(t1: StreetTriple, t2: StreetTriple) -> BrokenIsometry:
    """
    Compose the two plane exchanges and classify the result.

    Raises:
        NonGenericityError: If comparison points coincide.
        InternalConsistencyError: If the refinement disagrees with the
            stored type tables.
    """
    if t1.plane != 1 or t2.plane != 2 or t1.m != t2.m:
        raise DomainError("build_transition needs the plane-1 and plane-2 triples of one spec")
    kind = classify_type(t1, t2)
    exchange = eta(t1, "12").then(eta(t2, "21"))
    if exchange.labels != TYPE_PIECES[kind]:
        raise InternalConsistencyError(
            f"pieces {exchange.labels} do not match type {kind.value}", type=kind.value
        )
    sigma = exchange.permutation()
    if sigma != TYPE_SIGMA[kind]:
        raise InternalConsistencyError(f"permutation {sigma} does not match type {kind.value}")
    printed = PRINTED_SIGMA[kind]
    reading = next((name for name, value in _readings(printed).items() if value == sigma), None)
    if reading is None:
        logger.warning(
            "type %s: printed permutation %s differs from the computed %s",
            kind.value,
            "".join(map(str, printed)),
            "".join(map(str, sigma)),
        )
    matrix = [[Scalar(0)] * 3 for _ in range(3)]
    for (alpha, beta), iv in zip(exchange.labels, exchange.domain):
        matrix[alpha][beta] = iv.measure
    star, prime = image_points(t1), domain_points(t2)
    named = [
        ("2*", Scalar(0)),
        ("3*", star["3"]),
        ("0*", star["0"]),
        ("1'", prime["1"]),
        ("2'", prime["2"]),
        ("1*", t1.m),
    ]
    named.sort(key=lambda item: item[1])
    return BrokenIsometry(
        type=kind,
        exchange=exchange,
        sigma=sigma,
        printed_sigma=printed,
        sigma_reading=reading,
        cut_points=tuple(named),
        pair_measures=tuple(tuple(row) for row in matrix),
        t1=t1,
        t2=t2,
    )


def transition_for(spec: FoliationSpec) -> BrokenIsometry:
    """Broken isometry of a spec, both street triples computed on the way."""
    return build_transition(street_triple(spec, 1), street_triple(spec, 2))


def apply(bi: BrokenIsometry, x: Number) -> Scalar:
    """
    ``x + r_q`` for the sub-segment ``τ_q`` containing ``x``.

    Raises:
        CutPointError: If ``x`` is a cut point.
    """
    return bi.exchange(x)


def inverse_apply(bi: BrokenIsometry, y: Number) -> Scalar:
    """Preimage of ``y``; undefined at the image cut points."""
    return bi.exchange.inverse()(y)


def check_conservation(bi: BrokenIsometry) -> List[str]:
    """
    Names of the failed row and column sum identities; empty if all hold.
    """
    failures = []
    for alpha in STREET_ORDER:
        if sum(bi.pair_measures[alpha], Scalar(0)) != bi.t1.width(alpha):
            failures.append(f"row_{alpha}")
    for beta in STREET_ORDER:
        if sum((bi.pair_measures[a][beta] for a in STREET_ORDER), Scalar(0)) != bi.t2.width(beta):
            failures.append(f"column_{beta}")
    return failures


@dataclass(frozen=True)
class PassTable:
    """Two-street passes present for the transition, in both time directions."""

    phi: Tuple[StreetPair, ...]
    phi_star: Tuple[StreetPair, ...]
    matches_printed: bool

    def to_dict(self) -> dict:
        return {
            "phi": [f"{a}{b}'" for a, b in self.phi],
            "phi_star": [f"{a}{b}'" for a, b in self.phi_star],
            "matches_printed": self.matches_printed,
        }


def almost_transversal_passes(bi: BrokenIsometry) -> PassTable:
    """
    Street pairs joined by a nonnegative almost transversal path.

    ``phi`` holds when plane-2 street ``beta`` starts before the image of
    plane-1 street ``alpha`` ends; ``phi_star`` when the image of ``alpha``
    starts before ``beta`` ends.
    """
    exchange = eta(bi.t1, "12")
    image = dict(zip(exchange.labels, exchange.images()))
    own = dict(bi.t2.blocks())
    phi = tuple(p for p in ALL_PAIRS if own[p[1]].lo < image[p[0]].hi)
    phi_star = tuple(p for p in ALL_PAIRS if image[p[0]].lo < own[p[1]].hi)
    excluded, excluded_star = PRINTED_EXCLUSIONS[bi.type]
    matches = set(ALL_PAIRS) - set(phi) == excluded and set(ALL_PAIRS) - set(phi_star) == excluded_star
    if not matches:
        logger.warning("pass table of type %s differs from the stored exclusions", bi.type.value)
    return PassTable(phi, phi_star, matches)


def piece_index(bi: BrokenIsometry, pair: Sequence[int]) -> int:
    """1-based letter of the piece crossing the street pair ``(alpha, beta)``."""
    try:
        return bi.pieces.index(tuple(pair)) + 1
    except ValueError:
        raise DomainError(f"pair {tuple(pair)} has zero measure for type {bi.type.value}") from None
