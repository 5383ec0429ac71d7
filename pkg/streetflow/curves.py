"""
Non-self-intersecting transversal curves on the punctured torus.

A primitive class ``k[a'] + l[b']`` is drawn in standard form as ``k + l``
segments of slope ``l/k`` in the unit square. Chaining the segments gives
the curve's positive word; the nonnegative unimodular matrices act on such
words through two lifted substitutions.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from streetflow.errors import CommonPowerError, DomainError
from streetflow.words import CURVE, GroupWord

logger = logging.getLogger(__name__)

A, B = 1, 2


def _curve_word(letters) -> GroupWord:
    return GroupWord(tuple(letters), CURVE)


@dataclass(frozen=True)
class CurveClass:
    """
    A primitive homology class ``k[a'] + l[b']`` with an optional marker
    ``r`` in ``1..k+l`` for the upper-triangle decomposition.
    """

    k: int
    l: int  # noqa: E741
    r: Optional[int] = None

    def __post_init__(self):
        if math.gcd(self.k, self.l) != 1:
            raise DomainError(f"k = {self.k} and l = {self.l} are not coprime", code="divisibility")
        if self.r is not None and not 1 <= self.r <= abs(self.k) + abs(self.l):
            raise DomainError(f"marker r must lie in 1..{abs(self.k) + abs(self.l)}, got {self.r}")

    @property
    def is_standard(self) -> bool:
        return self.k >= self.l >= 1


@dataclass(frozen=True)
class ChainSegment:
    """Segment ``t_j`` from point ``j`` to point ``end'``."""

    index: int
    end: int
    group: str

    @property
    def letter(self) -> int:
        return B if self.group == "I" else A

    def to_dict(self) -> dict:
        return {"index": self.index, "segment": [self.index, f"{self.end}'"], "group": self.group}


def _standard(c: CurveClass) -> CurveClass:
    if not c.is_standard:
        raise DomainError(f"({c.k}, {c.l}) is not in standard form k >= l >= 1")
    return c


def segments(c: CurveClass) -> List[ChainSegment]:
    """The ``k + l`` segments of the standard form in index order."""
    k, l = _standard(c).k, c.l
    out = []
    for j in range(1, k + l + 1):
        if j <= l:
            out.append(ChainSegment(j, j + k, "I"))
        elif j <= k:
            out.append(ChainSegment(j, j - l, "II"))
        else:
            out.append(ChainSegment(j, j - l, "III"))
    return out


def segment_chain(c: CurveClass) -> List[ChainSegment]:
    """
    Segments in the order the curve runs through them, starting at ``t_1``.

    Raises:
        DomainError: If the chain does not close into one cycle.
    """
    by_index = {s.index: s for s in segments(c)}
    chain = [by_index[1]]
    while True:
        nxt = by_index[chain[-1].end]
        if nxt.index == 1:
            break
        chain.append(nxt)
        if len(chain) > len(by_index):
            break
    if len(chain) != len(by_index):
        raise DomainError(f"segments of ({c.k}, {c.l}) split into several cycles")
    return chain


def curve_word(c: CurveClass) -> GroupWord:
    """
    Positive word of the class, one cyclic representative.

    Trivial classes return a single generator; ``l < 0`` mirrors the
    standard case by inverting ``b'`` and ``l > k`` swaps the letters.
    """
    k, l = c.k, c.l
    if k < 0 or (k == 0 and l < 0):
        return curve_word(CurveClass(-k, -l)).inverse()
    if l == 0:
        return _curve_word([A])
    if k == 0:
        return _curve_word([B])
    if l < 0:
        return _curve_word([x if x == A else -B for x in curve_word(CurveClass(k, -l)).letters])
    if l > k:
        return _curve_word([B if x == A else A for x in curve_word(CurveClass(l, k)).letters])
    return _curve_word([s.letter for s in segment_chain(c)])


def kappa_ab() -> GroupWord:
    """``b^-1 a b a^-1``."""
    return _curve_word([-B, A, B, -A])


@dataclass(frozen=True)
class TriangleDomain:
    """Assignment of one domain of the upper-triangle decomposition."""

    index: int
    has_a: bool
    marked: bool
    has_b: bool

    def factor(self) -> GroupWord:
        letters: List[int] = []
        if self.has_a:
            letters.append(A)
        if self.marked:
            letters.extend(kappa_ab().letters)
        if self.has_b:
            letters.append(-B)
        return _curve_word(letters)

    def to_dict(self) -> dict:
        return {"index": self.index, "a": self.has_a, "kappa": int(self.marked), "b": self.has_b}


def triangle_domains(c: CurveClass, r: Optional[int] = None) -> List[TriangleDomain]:
    """
    The ``k + l - 1`` domains in the order the curve meets them.

    The curve is pushed through the corner of the square, so it runs along
    the line ``y = l x / k`` from ``(0, 0)`` to ``(k, l)``. Each piece
    between two side crossings bounds one domain, indexed by its position
    ``l x - k y`` in the square; the piece holds ``a`` when it ends on a
    vertical side and ``b`` when it ends on a horizontal one. Only the last
    piece ends in the corner and holds both. Domains with index ``>= r``
    contain the puncture.
    """
    k, l = _standard(c).k, c.l
    r = r if r is not None else (c.r if c.r is not None else k + l)
    if not 1 <= r <= k + l:
        raise DomainError(f"marker r must lie in 1..{k + l}, got {r}")
    vertical = {Fraction(i) for i in range(1, k + 1)}
    horizontal = {Fraction(j * k, l) for j in range(1, l + 1)}
    stops = sorted(vertical | horizontal)
    domains = []
    start = Fraction(0)
    for stop in stops:
        x = (start + stop) / 2
        index = l * math.floor(x) - k * math.floor(l * x / k) + l
        domains.append(TriangleDomain(index, stop in vertical, index >= r, stop in horizontal))
        start = stop
    return domains


def upper_triangle(c: CurveClass, r: Optional[int] = None) -> GroupWord:
    """
    Product of the domain factors ``a^e κ^c b^-f`` along the curve,
    written in the letters ``a`` and ``b``.

    With ``r = k + l`` no domain is marked and the word is the curve's
    positive word in ``a`` and ``b^-1``, up to rotation.
    """
    result = _curve_word([])
    for domain in triangle_domains(c, r):
        result = result * domain.factor()
    return result


def standard_form(c: CurveClass) -> List[Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]]:
    """
    Segments of the curve inside the unit square, one per offset
    ``l x - k y = n + 1/2`` with ``-k <= n < l``.
    """
    k, l = _standard(c).k, c.l
    out = []
    for n in range(-k, l):
        offset = Fraction(2 * n + 1, 2)
        x0 = max(Fraction(0), offset / l)
        x1 = min(Fraction(1), (offset + k) / l)
        out.append(((x0, (l * x0 - offset) / k), (x1, (l * x1 - offset) / k)))
    return out


def is_embedded(c: CurveClass) -> bool:
    """True when no two standard-form segments meet."""
    segs = standard_form(c)
    offsets = {c.l * p[0] - c.k * p[1] for p, _ in segs}
    ends = [pt for seg in segs for pt in seg]
    return len(offsets) == len(segs) and len(set(ends)) == len(ends)


def cutting_word(c: CurveClass, r: int) -> GroupWord:
    """
    Edge crossings of the universal-cover lift started on segment ``r``:
    ``a`` for a vertical side and ``b^-1`` for a horizontal one.
    """
    k, l = _standard(c).k, c.l
    if not 1 <= r <= k + l:
        raise DomainError(f"marker r must lie in 1..{k + l}, got {r}")
    (x0, y0), (x1, y1) = standard_form(c)[r - 1]
    x, y = (x0 + x1) / 2, (y0 + y1) / 2
    events = [(Fraction(i) - x) / k for i in range(1, k + 1)]
    crossings = [(t, A) for t in events] + [((Fraction(j) - y) / l, -B) for j in range(1, l + 1)]
    crossings.sort()
    return _curve_word([letter for _, letter in crossings])


@dataclass(frozen=True)
class UniMatrix:
    """
    The matrix ``((k, l), (p, q))``; its rows are the letter counts of the
    images of ``a'`` and ``b'``.
    """

    k: int
    l: int  # noqa: E741
    p: int
    q: int

    def __post_init__(self):
        if min(self.k, self.l, self.p, self.q) < 0:
            raise DomainError(f"matrix {self.entries} has a negative entry")
        if self.det != 1:
            raise DomainError(f"matrix {self.entries} has determinant {self.det}, not 1")

    @classmethod
    def parse(cls, text: str) -> "UniMatrix":
        try:
            parts = [int(x) for x in text.replace(" ", "").split(",") if x]
        except ValueError:
            raise DomainError(f"matrix entries must be integers, got {text!r}") from None
        if len(parts) != 4:
            raise DomainError(f"expected four entries k,l,p,q, got {text!r}")
        return cls(*parts)

    @property
    def entries(self) -> Tuple[int, int, int, int]:
        return (self.k, self.l, self.p, self.q)

    @property
    def det(self) -> int:
        return self.k * self.q - self.l * self.p

    @property
    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def __matmul__(self, other: "UniMatrix") -> "UniMatrix":
        return UniMatrix(
            self.k * other.k + self.l * other.p,
            self.k * other.l + self.l * other.q,
            self.p * other.k + self.q * other.p,
            self.p * other.l + self.q * other.q,
        )

    def to_list(self) -> List[List[int]]:
        return [[self.k, self.l], [self.p, self.q]]


IDENTITY = UniMatrix(1, 0, 0, 1)
T1 = UniMatrix(1, 1, 0, 1)
T2 = UniMatrix(1, 0, 1, 1)
GENERATORS: Dict[str, UniMatrix] = {"T1": T1, "T2": T2}


def compose(*factors: UniMatrix) -> UniMatrix:
    """Product of matrices, left to right."""
    result = IDENTITY
    for f in factors:
        result = result @ f
    return result


def matrix_factor(t: UniMatrix) -> List[str]:
    """
    Names of the generators whose product, left to right, is ``t``.

    Columns are peeled off the right end: ``T2`` when the first column
    dominates, ``T1`` when the second does.
    """
    k, l, p, q = t.entries
    reversed_factors = []
    while (k, l, p, q) != (1, 0, 0, 1):
        if k >= l and p >= q:
            reversed_factors.append("T2")
            k, p = k - l, p - q
        elif l >= k and q >= p:
            reversed_factors.append("T1")
            l, q = l - k, q - p
        else:
            raise DomainError(f"matrix {t.entries} has no factorization")
    return list(reversed(reversed_factors))


SUBSTITUTIONS: Dict[str, Dict[int, Tuple[int, ...]]] = {
    "T1": {A: (A, B), B: (B,)},
    "T2": {A: (A,), B: (B, A)},
}


@dataclass(frozen=True)
class BasisPair:
    """Two positive words ``A`` and ``B`` in the letters ``a'`` and ``b'``."""

    first: GroupWord
    second: GroupWord

    def __post_init__(self):
        if not (self.first.is_positive and self.second.is_positive):
            raise DomainError("basis pair words must be positive")

    @classmethod
    def parse(cls, first: str, second: str) -> "BasisPair":
        return cls(GroupWord.parse(first, CURVE), GroupWord.parse(second, CURVE))

    def commutator(self) -> GroupWord:
        x, y = self.first, self.second
        return x * y * x.inverse() * y.inverse()

    def to_dict(self) -> dict:
        return {"A": self.first.to_string(""), "B": self.second.to_string("")}


def _substitute(w: GroupWord, name: str) -> GroupWord:
    rule = SUBSTITUTIONS[name]
    return _curve_word([x for letter in w.letters for x in rule[letter]])


def lift(t: UniMatrix) -> BasisPair:
    """Images of ``a'`` and ``b'`` under the positive automorphism over ``t``."""
    first, second = _curve_word([A]), _curve_word([B])
    for name in matrix_factor(t):
        first, second = _substitute(first, name), _substitute(second, name)
    return BasisPair(first, second)


def pair_matrix(pair: BasisPair) -> Tuple[int, int, int, int]:
    """Letter counts ``(k, l, p, q)`` of the pair; the determinant may be -1."""
    return pair.first.abelianize() + pair.second.abelianize()


def _commutes(pair: BasisPair) -> bool:
    return (pair.first * pair.second).letters == (pair.second * pair.first).letters


def reduce_pair(pair: BasisPair) -> Tuple[BasisPair, int]:
    """
    Move a common first letter to the end of both words until the first
    letters differ.

    Raises:
        CommonPowerError: If both words are powers of one word.
    """
    if _commutes(pair):
        raise CommonPowerError(f"{pair.first.to_string('')} and {pair.second.to_string('')} commute")
    x, y = pair.first.letters, pair.second.letters
    steps = 0
    limit = len(x) * len(y)
    while x[0] == y[0]:
        x, y = x[1:] + x[:1], y[1:] + y[:1]
        steps += 1
        if steps > limit:
            raise CommonPowerError("cyclic moves do not terminate")
    return BasisPair(_curve_word(x), _curve_word(y)), steps


@dataclass(frozen=True)
class Fiber:
    """Positive automorphisms over one matrix."""

    matrix: UniMatrix
    pairs: Tuple[BasisPair, ...]

    @property
    def count(self) -> int:
        return len(self.pairs)

    @property
    def expected(self) -> int:
        return sum(self.matrix.entries) - 2

    def to_dict(self) -> dict:
        return {
            "matrix": self.matrix.to_list(),
            "count": self.count,
            "expected": self.expected,
            "pairs": [p.to_dict() for p in self.pairs],
        }


def fiber(t: UniMatrix) -> Fiber:
    """
    Pairs reached from the lift by moving a common last letter to the front
    of both words.
    """
    if sum(t.entries) < 3:
        raise DomainError("the identity has no positive automorphisms to enumerate")
    start = lift(t)
    x, y = start.first.letters, start.second.letters
    pairs = []
    while x[-1] == y[-1]:
        x, y = x[-1:] + x[:-1], y[-1:] + y[:-1]
        pairs.append(BasisPair(_curve_word(x), _curve_word(y)))
        if len(pairs) > len(x) * len(y):
            raise CommonPowerError("cyclic moves do not terminate")
    logger.debug("fiber of %s has %d pairs", t.entries, len(pairs))
    return Fiber(t, tuple(pairs))


def fiber_count(t: UniMatrix) -> int:
    return fiber(t).count
