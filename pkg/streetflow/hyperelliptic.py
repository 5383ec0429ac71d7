"""
Transversal class tests for real hyperelliptic curves.

The curve is ``w^2 = (z - z_1) ... (z - z_{2g+2})`` with real branch points
and the form is ``(u + i v) dz / w``. Which closed segments between branch
points survive as transversal cycles depends only on where the real zeros
of ``u`` and ``v`` fall, and those are counted exactly with Sturm
sequences.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import sympy as sp

from streetflow.errors import AssumptionError, DomainError, EndpointRootError

logger = logging.getLogger(__name__)

z = sp.Symbol("z")

Bound = Union[Fraction, int, None]
PolyLike = Union[sp.Poly, str, Sequence[Any]]

G3_CYCLES = {"a1": (2, 3), "a2": (7, 8), "a3": (4, 5), "b1": (1, 2), "b2": (6, 7)}


def _rational(x: Union[Fraction, int]) -> sp.Rational:
    x = Fraction(x)
    return sp.Rational(x.numerator, x.denominator)


def as_poly(value: PolyLike) -> sp.Poly:
    """
    Exact rational polynomial in ``z`` from a sympy Poly, an expression
    string, or a coefficient list with the leading coefficient first.
    """
    try:
        if isinstance(value, sp.Poly):
            poly = sp.Poly(value.as_expr(), z)
        elif isinstance(value, str):
            poly = sp.Poly(sp.sympify(value, locals={"z": z}), z)
        else:
            poly = sp.Poly([sp.nsimplify(str(c), rational=True) for c in value], z)
    except (sp.SympifyError, sp.PolynomialError, TypeError) as e:
        raise DomainError(f"cannot read {value!r} as a polynomial in z: {e}") from e
    if not all(c.is_Rational for c in poly.all_coeffs()):
        raise DomainError(f"coefficients of {poly.as_expr()} must be rational")
    return poly.set_domain(sp.QQ)


def _sign_changes(values: Sequence[sp.Expr]) -> int:
    signs = [sp.sign(v) for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def _values_at(seq: List[sp.Poly], x: Bound, toward: int) -> List[sp.Expr]:
    if x is not None:
        return [p.eval(_rational(x)) for p in seq]
    # behaviour at -inf (toward < 0) or +inf from the leading terms
    return [p.LC() * (toward ** p.degree() if toward < 0 else 1) for p in seq]


def root_count(poly: PolyLike, lo: Bound = None, hi: Bound = None) -> int:
    """
    Number of distinct real roots in the open interval ``(lo, hi)``.

    ``None`` stands for an infinite endpoint.

    Raises:
        EndpointRootError: If a finite endpoint is a root.
        DomainError: For the zero polynomial or an empty interval.
    """
    p = as_poly(poly)
    if p.is_zero:
        raise DomainError("the zero polynomial has no isolated roots")
    if lo is not None and hi is not None and not Fraction(lo) < Fraction(hi):
        raise DomainError(f"empty interval ({lo}, {hi})")
    for x in (lo, hi):
        if x is not None and p.eval(_rational(x)) == 0:
            raise EndpointRootError(f"{p.as_expr()} vanishes at the endpoint {x}", endpoint=str(x))
    if p.degree() < 1:
        return 0
    seq = sp.sturm(p)
    return _sign_changes(_values_at(seq, lo, -1)) - _sign_changes(_values_at(seq, hi, 1))


@dataclass(frozen=True)
class RealHyperelliptic:
    """Real branch points ``z_1 < ... < z_{2g+2}``."""

    roots: Tuple[Fraction, ...]

    def __post_init__(self):
        roots = tuple(Fraction(r) for r in self.roots)
        object.__setattr__(self, "roots", roots)
        if len(roots) < 4 or len(roots) % 2:
            raise DomainError(f"need an even number of at least 4 branch points, got {len(roots)}")
        if any(not x < y for x, y in zip(roots, roots[1:])):
            raise DomainError("branch points must be strictly increasing")

    @classmethod
    def parse(cls, text: str) -> "RealHyperelliptic":
        """Read ``"1,2,3,4"``."""
        try:
            return cls(tuple(Fraction(part.strip()) for part in text.split(",") if part.strip()))
        except ValueError as e:
            raise DomainError(f"cannot read branch points {text!r}: {e}") from e

    @property
    def genus(self) -> int:
        return len(self.roots) // 2 - 1

    def z(self, k: int) -> Fraction:
        """1-based branch point."""
        return self.roots[k - 1]

    @property
    def segment_count(self) -> int:
        return len(self.roots) - 1


@dataclass(frozen=True)
class FormSpec:
    """``P = u + i v`` with rational real and imaginary parts."""

    u: sp.Poly
    v: sp.Poly

    @classmethod
    def of(cls, u: PolyLike, v: PolyLike) -> "FormSpec":
        return cls(as_poly(u), as_poly(v))

    def to_dict(self) -> dict:
        return {"u": str(self.u.as_expr()), "v": str(self.v.as_expr())}


def check_form(c: RealHyperelliptic, f: FormSpec) -> None:
    """
    Raises:
        AssumptionError: If ``u`` or ``v`` vanishes identically or at a
            branch point, or has degree above ``g - 1``.
    """
    g = c.genus
    for name, p in (("u", f.u), ("v", f.v)):
        if p.is_zero:
            raise AssumptionError(f"{name} must not vanish identically", part=name)
        if p.degree() > g - 1:
            raise AssumptionError(f"{name} has degree {p.degree()} > g - 1 = {g - 1}", part=name)
        for k, r in enumerate(c.roots, start=1):
            if p.eval(_rational(r)) == 0:
                raise AssumptionError(f"{name}(z_{k}) = 0", part=name, branch_point=k)


class ClassVerdict(str, Enum):
    T0 = "T0"
    T = "T"
    T2 = "T2"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class BranchSegment:
    """``[z_index, z_{index+1}]``; odd ones are tested against ``v``, even ones against ``u``."""

    index: int
    lo: Fraction
    hi: Fraction

    @property
    def important(self) -> str:
        return "v" if self.index % 2 else "u"

    def label(self) -> str:
        return f"[z{self.index}z{self.index + 1}]"


def branch_segments(c: RealHyperelliptic) -> List[BranchSegment]:
    return [BranchSegment(i, c.z(i), c.z(i + 1)) for i in range(1, c.segment_count + 1)]


def _zeros_in(f: FormSpec, s: BranchSegment) -> int:
    return root_count(f.v if s.important == "v" else f.u, s.lo, s.hi)


def choose_cycles(surviving: Sequence[BranchSegment]) -> List[BranchSegment]:
    """Leftmost pairwise disjoint segments, greedily."""
    chosen: List[BranchSegment] = []
    for s in surviving:
        if not chosen or s.index >= chosen[-1].index + 2:
            chosen.append(s)
    return chosen


def _windows(c: RealHyperelliptic, first: int) -> List[Tuple[Bound, Bound]]:
    g = c.genus
    out: List[Tuple[Bound, Bound]] = [(None, c.z(first))]
    out += [(c.z(2 * j - 1), c.z(2 * j)) for j in range(2, g + 1)]
    out.append((c.z(2 * g + 2), None))
    return out


def _zeros_in_windows(p: sp.Poly, c: RealHyperelliptic, first: int) -> bool:
    if p.degree() < 1:
        return True
    total = root_count(p)
    inside = sum(root_count(p, lo, hi) for lo, hi in _windows(c, first))
    return inside == total


@dataclass
class ClassReport:
    verdict: ClassVerdict
    genus: int
    surviving: List[str]
    dropped: List[str]
    a_cycles: List[str] = field(default_factory=list)
    cycles: Dict[str, str] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "genus": self.genus,
            "surviving": self.surviving,
            "dropped": self.dropped,
            "a_cycles": self.a_cycles,
            "cycles": self.cycles,
            "notes": self.notes,
        }


def classify_class(c: RealHyperelliptic, f: FormSpec) -> ClassReport:
    """
    Decide T, T^2, T^0 or inconclusive from the real zeros of ``u`` and ``v``.

    Segments holding a zero of their important part are dropped; ``g``
    pairwise disjoint survivors give T^0. For ``g <= 2`` the end segments
    free of zeros give T, for ``g > 2`` zeros confined to the windows
    between the cycles give T^2.

    Raises:
        AssumptionError: If the form violates :func:`check_form`.
    """
    check_form(c, f)
    g = c.genus
    segments = branch_segments(c)
    surviving = [s for s in segments if _zeros_in(f, s) == 0]
    dropped = [s for s in segments if s not in surviving]
    chosen = choose_cycles(surviving)
    report = ClassReport(
        verdict=ClassVerdict.INCONCLUSIVE,
        genus=g,
        surviving=[s.label() for s in surviving],
        dropped=[s.label() for s in dropped],
    )
    last = c.segment_count
    if g <= 2:
        clean = {1, 2, last - 1, last}
        if all(s.index not in clean for s in dropped):
            report.verdict = ClassVerdict.T
    else:
        report.notes.append("u-window list rebuilt from the v-window pattern")
        if _zeros_in_windows(f.v, c, 1) and _zeros_in_windows(f.u, c, 2):
            report.verdict = ClassVerdict.T2
            if g == 3:
                report.cycles = {name: f"[z{i}z{j}]" for name, (i, j) in G3_CYCLES.items()}
    if len(chosen) >= g:
        report.a_cycles = [s.label() for s in chosen[:g]]
        if report.verdict == ClassVerdict.INCONCLUSIVE:
            report.verdict = ClassVerdict.T0
    logger.debug("genus %d form classified as %s", g, report.verdict.value)
    return report


@dataclass(frozen=True)
class PerturbationNote:
    stable: bool
    margin: Optional[Fraction]
    flag: str

    def to_dict(self) -> dict:
        margin = str(self.margin) if self.margin is not None else None
        return {"stable": self.stable, "margin": margin, "flag": self.flag}


def _isolating_intervals(p: sp.Poly) -> List[Tuple[Fraction, Fraction]]:
    if p.is_zero or p.degree() < 1:
        return []
    return [(Fraction(str(a)), Fraction(str(b))) for (a, b), _ in p.intervals(eps=sp.Rational(1, 10**6))]


def perturbation_bound_note(c: RealHyperelliptic, f: FormSpec) -> PerturbationNote:
    """
    Whether the verdict survives a small perturbation of ``P``.

    The margin is a rational lower bound on the distance from every real
    zero of ``u`` and ``v`` to the nearest branch point; a zero sitting on
    a branch point is flagged unstable.
    """
    margin: Optional[Fraction] = None
    for name, p in (("u", f.u), ("v", f.v)):
        if p.is_zero:
            return PerturbationNote(False, None, f"{name} vanishes identically")
        for k, r in enumerate(c.roots, start=1):
            if p.eval(_rational(r)) == 0:
                return PerturbationNote(False, Fraction(0), f"{name} vanishes at z{k}")
        for a, b in _isolating_intervals(p):
            for r in c.roots:
                gap = a - r if r < a else (r - b if r > b else Fraction(0))
                margin = gap if margin is None else min(margin, gap)
    if margin is None:
        return PerturbationNote(True, None, "constant")
    return PerturbationNote(margin > 0, margin, "isolated" if margin > 0 else "unresolved")
