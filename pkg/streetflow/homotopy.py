"""
Fundamental group bookkeeping in the m-dependent basis.

Letters ``1..4`` stand for ``a*_1, b*_1, a*_2, b*_2``. Passes through a
pair of streets are read off fixed tables, products are freely reduced,
and equality in the genus-2 surface group is decided by Dehn's algorithm.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from streetflow.core import LatticeVector
from streetflow.errors import DomainError, InconsistencyError, ZeroMeasurePassError
from streetflow.semigroup import SemigroupWord
from streetflow.streets import StreetTriple
from streetflow.transition import TYPE_PIECES, StreetPair, TransitionType
from streetflow.words import M_BASIS, GroupWord, commutator, word

logger = logging.getLogger(__name__)

A1, B1, A2, B2 = 1, 2, 3, 4

SURFACE_RELATOR = (A1, B1, -A1, -B1, A2, B2, -A2, -B2)


def kappa() -> GroupWord:
    """``a*_1 b*_1 (a*_1)^-1 (b*_1)^-1``."""
    return commutator(word([A1]), word([B1]))


def delta() -> GroupWord:
    return kappa().inverse()


def _phi_table() -> Dict[StreetPair, GroupWord]:
    k = kappa()
    a1, b1, a2, b2 = (word([x]) for x in (A1, B1, A2, B2))
    return {
        (1, 1): a1 * k.inverse() * a2.inverse(),
        (1, 0): a1 * b1 * a2.inverse(),
        (1, 2): b1 * a2.inverse(),
        (0, 1): a1 * b2.inverse() * a2.inverse(),
        (0, 0): a1 * b1 * k * b2.inverse() * a2.inverse(),
        (0, 2): b1 * k * b2.inverse() * a2.inverse(),
        (2, 1): a1 * b2.inverse(),
        (2, 0): a1 * b1 * k * b2.inverse(),
        (2, 2): b1 * k * b2.inverse(),
    }


PHI_TABLE = _phi_table()

PSI_TABLE: Dict[int, Dict[StreetPair, GroupWord]] = {
    1: {
        (0, 2): word([A1]),
        (1, 0): word([-B1]),
        (1, 2): word([-B1, A1]),
    },
    2: {
        (0, 1): word([A2]),
        (2, 0): word([-B2]),
        (2, 1): word([-B2, A2]),
    },
}


def phi(alpha: int, beta: int) -> GroupWord:
    """Homotopy class of the pass from street ``alpha`` to street ``beta'``."""
    try:
        return PHI_TABLE[(alpha, beta)]
    except KeyError:
        raise DomainError(f"streets are 0, 1 or 2, got ({alpha}, {beta})") from None


def psi_same_plane(src: int, dst: int, plane: int) -> GroupWord:
    """
    Class of a pass between two streets of the same plane.

    Raises:
        ZeroMeasurePassError: If the pair is not one of the three passes
            of positive measure.
    """
    if plane not in PSI_TABLE:
        raise DomainError(f"plane must be 1 or 2, got {plane}")
    try:
        return PSI_TABLE[plane][(src, dst)]
    except KeyError:
        raise ZeroMeasurePassError(
            f"no pass of positive measure from street {src} to street {dst} in plane {plane}",
            src=src,
            dst=dst,
            plane=plane,
        ) from None


@dataclass(frozen=True)
class HomologyClass4:
    """Integer coordinates in the basis ``[a*_1], [b*_1], [a*_2], [b*_2]``."""

    coords: Tuple[int, int, int, int] = (0, 0, 0, 0)

    def __add__(self, other: "HomologyClass4") -> "HomologyClass4":
        return HomologyClass4(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "HomologyClass4":
        return HomologyClass4(tuple(-x for x in self.coords))

    def __sub__(self, other: "HomologyClass4") -> "HomologyClass4":
        return self + (-other)

    def to_list(self) -> List[int]:
        return list(self.coords)


def abelianize(w: GroupWord) -> HomologyClass4:
    return HomologyClass4(w.abelianize())


def street_homology(alpha: int, plane: int, negative: bool = False) -> HomologyClass4:
    """
    Street 1 carries ``[a*_k]``, street 2 ``[b*_k]`` and street 0 their sum;
    negative time flips the sign.
    """
    if plane not in (1, 2):
        raise DomainError(f"plane must be 1 or 2, got {plane}")
    if alpha not in (0, 1, 2):
        raise DomainError(f"street must be 0, 1 or 2, got {alpha}")
    a, b = (0, 1) if plane == 1 else (2, 3)
    coords = [0, 0, 0, 0]
    if alpha in (1, 0):
        coords[a] = 1
    if alpha in (2, 0):
        coords[b] = 1
    h = HomologyClass4(tuple(coords))
    return -h if negative else h


def pass_homology(alpha: int, beta: int) -> HomologyClass4:
    """
    Homology of the tabulated pass ``(alpha, beta')``: the plane-1 class of
    ``beta`` minus the plane-2 class of ``alpha``.
    """
    return street_homology(beta, 1) + street_homology(alpha, 2, negative=True)


def _letters(w: Union[SemigroupWord, Sequence[int]]) -> Tuple[int, ...]:
    return w.itinerary if isinstance(w, SemigroupWord) else tuple(w)


def pairs_of(w: Union[SemigroupWord, Sequence[int]], kind: TransitionType) -> List[StreetPair]:
    """Street pairs crossed by a word, in time order."""
    pieces = TYPE_PIECES[TransitionType(kind)]
    out = []
    for q in _letters(w):
        if not 1 <= q <= len(pieces):
            raise InconsistencyError(f"letter {q} does not name a piece of type {TransitionType(kind).value}")
        out.append(pieces[q - 1])
    return out


def represent_pairs(pairs: Iterable[StreetPair], kind: TransitionType, negative: bool = False) -> GroupWord:
    """
    Product of the tabulated classes along explicit street pairs.

    Raises:
        InconsistencyError: If a pair has zero measure for the type.
    """
    kind = TransitionType(kind)
    allowed = set(TYPE_PIECES[kind])
    result = GroupWord((), M_BASIS)
    for pair in pairs:
        pair = tuple(pair)
        if pair not in allowed:
            raise InconsistencyError(
                f"pass {pair[0]}{pair[1]}' has zero measure for type {kind.value}", pair=list(pair)
            )
        result = result * phi(*pair)
    return result.inverse() if negative else result


def represent(w: Union[SemigroupWord, Sequence[int]], kind: TransitionType, negative: bool = False) -> GroupWord:
    """
    Fundamental group element of a nonzero semigroup word.

    With ``negative`` the trajectory is read backwards in time and every
    pass contributes the inverse class.
    """
    if isinstance(w, SemigroupWord) and w.is_zero:
        raise InconsistencyError("the zero word has no representative")
    return represent_pairs(pairs_of(w, kind), kind, negative)


def word_homology(w: Union[SemigroupWord, Sequence[int]], kind: TransitionType) -> HomologyClass4:
    """Sum of the pass homology classes along a word."""
    total = HomologyClass4()
    for alpha, beta in pairs_of(w, kind):
        total = total + pass_homology(alpha, beta)
    return total


def to_original_basis(h: HomologyClass4, t1: StreetTriple, t2: StreetTriple) -> List[int]:
    """
    Coordinates of ``h`` in the original basis ``a_1, b_1, a_2, b_2``.
    """
    out: List[int] = []
    for (x_a, x_b), t in ((h.coords[:2], t1), (h.coords[2:], t2)):
        v: LatticeVector = LatticeVector(0, 0)
        for coef, basis in ((x_a, t.h1), (x_b, t.h2)):
            v = v + LatticeVector(coef * basis.p, coef * basis.q)
        out.extend(v.to_list())
    return out


def _relator_pieces() -> List[Tuple[int, ...]]:
    rel = SURFACE_RELATOR
    inv = tuple(-x for x in reversed(rel))
    out = []
    for r in (rel, inv):
        for k in range(len(r)):
            out.append(r[k:] + r[:k])
    return out


RELATOR_CONJUGATES = _relator_pieces()


def dehn_reduce(w: GroupWord) -> GroupWord:
    """
    Shorten ``w`` by replacing more than half of a relator conjugate
    ``s t`` with ``t^-1`` until no such subword remains.
    """
    letters = list(w.letters)
    half = len(SURFACE_RELATOR) // 2
    changed = True
    while changed:
        changed = False
        for c in RELATOR_CONJUGATES:
            for size in range(len(c), half, -1):
                s = c[:size]
                t_inv = tuple(-x for x in reversed(c[size:]))
                for i in range(len(letters) - size + 1):
                    if tuple(letters[i : i + size]) == s:
                        letters = list(GroupWord(tuple(letters[:i]) + t_inv + tuple(letters[i + size :])).letters)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return GroupWord(tuple(letters), w.alphabet)


def surface_equal(x: GroupWord, y: GroupWord) -> bool:
    """Equality in the genus-2 surface group."""
    return dehn_reduce(x * y.inverse()).is_identity
