"""
Building data: plane diagrams on the sphere glued to tori.

A plane diagram is a trivalent tree carrying a height function (the Morse
tree of the sphere foliation: ends are centers, inner vertices saddles)
and ``g`` vertical segments running up along its edges. Gluing a torus to
each segment produces a genus ``g`` foliation whose saddles are read off
the segment ends, the centers and the tree saddles.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from streetflow.core import Number, Scalar, Violation, read_document
from streetflow.errors import (
    BuildingDataError,
    ClassificationError,
    DomainError,
    InconsistentMeasuresError,
    InternalConsistencyError,
    SpecValidationError,
)

logger = logging.getLogger(__name__)

Edge = FrozenSet[str]


def edge_key(u: str, v: str) -> Edge:
    return frozenset((u, v))


@dataclass(frozen=True)
class Segment:
    """
    Transversal segment ``t_index`` climbing from ``low`` to ``high`` along
    the tree path ``path``.
    """

    index: int
    path: Tuple[str, ...]
    low: Scalar
    high: Scalar

    @property
    def measure(self) -> Scalar:
        return self.high - self.low

    def edges(self) -> List[Edge]:
        return [edge_key(u, v) for u, v in zip(self.path, self.path[1:])]

    def to_dict(self) -> dict:
        return {"index": self.index, "path": list(self.path), "low": str(self.low), "high": str(self.high)}


class MorseTree:
    """
    A finite tree with distinct vertex heights.

    Args:
        heights: Height of every vertex.
        edges: Pairs of adjacent vertices.
    """

    def __init__(self, heights: Mapping[str, Number], edges: Sequence[Tuple[str, str]]):
        self.graph = nx.Graph()
        for name, h in heights.items():
            self.graph.add_node(name, height=Scalar.coerce(h))
        for u, v in edges:
            if u not in self.graph or v not in self.graph:
                raise DomainError(f"edge ({u}, {v}) names an unknown vertex")
            self.graph.add_edge(u, v)

    def height(self, v: str) -> Scalar:
        return self.graph.nodes[v]["height"]

    @property
    def vertices(self) -> List[str]:
        return sorted(self.graph.nodes, key=self.height)

    def is_center(self, v: str) -> bool:
        return self.graph.degree[v] == 1

    def centers(self) -> List[str]:
        return [v for v in self.vertices if self.is_center(v)]

    def saddles(self) -> List[str]:
        return [v for v in self.vertices if self.graph.degree[v] == 3]

    def edge_range(self, e: Edge) -> Tuple[Scalar, Scalar]:
        u, v = sorted(e, key=self.height)
        return self.height(u), self.height(v)

    def edges(self) -> List[Edge]:
        return sorted((edge_key(u, v) for u, v in self.graph.edges), key=lambda e: sorted(e))

    def lobes(self, q: str) -> Tuple[Edge, Edge]:
        """The two edges of an inner vertex lying on the same side of its level."""
        h = self.height(q)
        below = sorted((n for n in self.graph.neighbors(q) if self.height(n) < h), key=str)
        above = sorted((n for n in self.graph.neighbors(q) if self.height(n) > h), key=str)
        side = below if len(below) == 2 else above
        if len(side) != 2:
            raise DomainError(f"vertex {q} is not a saddle of the height function")
        return edge_key(q, side[0]), edge_key(q, side[1])


@dataclass
class PlaneDiagram:
    """
    Morse tree, segments, and the cyclic order of the segments met on each
    edge.
    """

    tree: MorseTree
    segments: List[Segment]
    orders: Dict[Edge, List[int]] = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return len(self.segments)

    def segment(self, index: int) -> Segment:
        for s in self.segments:
            if s.index == index:
                return s
        raise DomainError(f"no segment t{index}")

    def span_on(self, s: Segment, e: Edge) -> Optional[Tuple[Scalar, Scalar]]:
        """Closed height range of ``s`` on edge ``e``, or None if it avoids the edge."""
        if e not in s.edges():
            return None
        lo, hi = self.tree.edge_range(e)
        return max(lo, s.low), min(hi, s.high)

    def present(self, e: Edge, h: Scalar) -> List[int]:
        """Segments on ``e`` at height ``h``, in the edge's cyclic order."""
        out = []
        for index in self.orders.get(e, []):
            span = self.span_on(self.segment(index), e)
            if span is not None and span[0] <= h <= span[1]:
                out.append(index)
        return out


@dataclass(frozen=True)
class TorusData:
    """One torus of the torical data: ``|a_j|, |b_j|`` and the slit measure ``m_j``."""

    index: int
    a: Scalar
    b: Scalar
    m: Scalar

    def to_dict(self) -> dict:
        return {"index": self.index, "a": str(self.a), "b": str(self.b), "m": str(self.m)}


@dataclass
class BuildingData:
    """A plane diagram together with its torical data."""

    diagram: PlaneDiagram
    tori: List[TorusData]

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BuildingData":
        """
        Read ``{"vertices": {name: height}, "edges": [{"ends": [u, v],
        "order": [...]}], "segments": [...], "tori": [...]}``.
        """
        try:
            tree = MorseTree(
                {name: Scalar.from_json(h) for name, h in data["vertices"].items()},
                [tuple(e["ends"]) for e in data["edges"]],
            )
            segments = [
                Segment(int(s["index"]), tuple(s["path"]), Scalar.from_json(s["low"]), Scalar.from_json(s["high"]))
                for s in data["segments"]
            ]
            orders = {edge_key(*e["ends"]): [int(i) for i in e.get("order", [])] for e in data["edges"]}
            tori = [
                TorusData(int(t["index"]), Scalar.from_json(t["a"]), Scalar.from_json(t["b"]), Scalar.from_json(t["m"]))
                for t in data["tori"]
            ]
        except (KeyError, TypeError, ValueError) as e:
            raise BuildingDataError([Violation("format", f"malformed building data: {e}")]) from e
        return cls(PlaneDiagram(tree, segments, orders), tori)

    def to_dict(self) -> Dict[str, Any]:
        tree = self.diagram.tree
        return {
            "vertices": {v: str(tree.height(v)) for v in tree.vertices},
            "edges": [
                {"ends": sorted(e, key=tree.height), "order": list(self.diagram.orders.get(e, []))}
                for e in tree.edges()
            ],
            "segments": [s.to_dict() for s in self.diagram.segments],
            "tori": [t.to_dict() for t in self.tori],
        }


def load_building(path: Union[str, Path]) -> BuildingData:
    """Load building data from a JSON or YAML file."""
    return BuildingData.from_dict(read_document(path, BuildingDataError))


def _check_tree(tree: MorseTree) -> List[Violation]:
    out = []
    g = tree.graph
    if g.number_of_nodes() < 2 or not nx.is_tree(g):
        out.append(Violation("tree", "the diagram graph is not a tree"))
        return out
    bad = [v for v in g.nodes if g.degree[v] not in (1, 3)]
    if bad:
        out.append(Violation("tree", f"vertices {', '.join(sorted(bad))} are neither ends nor trivalent"))
    heights = [tree.height(v) for v in g.nodes]
    if len(set(heights)) != len(heights):
        out.append(Violation("distinct_heights", "two vertices share a height"))
    for q in tree.saddles():
        around = [tree.height(n) for n in g.neighbors(q)]
        if not min(around) < tree.height(q) < max(around):
            out.append(Violation("saddle_height", f"saddle {q} is not between its neighbours"))
    return out


def _check_segment(tree: MorseTree, s: Segment) -> List[Violation]:
    out = []
    path = s.path
    if len(path) < 2 or any(v not in tree.graph for v in path):
        return [Violation("monotone", f"t{s.index} has no valid path")]
    for u, v in zip(path, path[1:]):
        if not tree.graph.has_edge(u, v):
            out.append(Violation("monotone", f"t{s.index} jumps from {u} to {v}"))
        elif not tree.height(u) < tree.height(v):
            out.append(Violation("monotone", f"t{s.index} descends from {u} to {v}"))
    if out:
        return out
    if not (tree.height(path[0]) <= s.low < tree.height(path[1])):
        out.append(Violation("monotone", f"t{s.index} starts outside its first edge"))
    if not (tree.height(path[-2]) < s.high <= tree.height(path[-1])):
        out.append(Violation("monotone", f"t{s.index} ends outside its last edge"))
    if not s.low < s.high:
        out.append(Violation("measure", f"t{s.index} has non-positive measure"))
    for end, v in ((s.low, path[0]), (s.high, path[-1])):
        if end == tree.height(v) and not tree.is_center(v):
            out.append(Violation("saddle_endpoint", f"t{s.index} ends at saddle {v}"))
    return out


def _end_vertex(tree: MorseTree, s: Segment, which: int) -> Optional[str]:
    """Center hit by an end of ``s`` (0 for low, 1 for high), if any."""
    v = s.path[0] if which == 0 else s.path[-1]
    h = s.low if which == 0 else s.high
    return v if h == tree.height(v) and tree.is_center(v) else None


def _covered(spans: List[Tuple[Scalar, Scalar]], lo: Scalar, hi: Scalar) -> bool:
    reach = None
    for a, b in sorted(spans, key=lambda s: s[0]):
        if reach is None:
            if a > lo:
                return False
            reach = b
        elif a > reach:
            return False
        else:
            reach = max(reach, b)
    return reach is not None and reach >= hi


def validate_building_data(data: BuildingData) -> List[Violation]:
    """
    Every violated condition of the building data; empty means valid.
    """
    pd, tree = data.diagram, data.diagram.tree
    violations = _check_tree(tree)
    if any(v.name == "tree" for v in violations):
        return violations
    indices = [s.index for s in pd.segments]
    if len(set(indices)) != len(indices):
        violations.append(Violation("segments", "segment indices repeat"))
    for s in pd.segments:
        violations.extend(_check_segment(tree, s))
    if any(v.name in ("monotone", "segments") for v in violations):
        return violations

    ends: Dict[str, int] = defaultdict(int)
    free_heights = []
    for s in pd.segments:
        for which, h in ((0, s.low), (1, s.high)):
            center = _end_vertex(tree, s, which)
            if center is not None:
                ends[center] += 1
            else:
                free_heights.append(h)
    for c in tree.centers():
        if ends[c] != 2:
            violations.append(Violation("center_degree", f"center {c} meets {ends[c]} segment ends instead of 2"))
    vertex_heights = {tree.height(v) for v in tree.vertices}
    if len(set(free_heights)) != len(free_heights) or vertex_heights & set(free_heights):
        violations.append(Violation("distinct_heights", "segment ends share a height"))

    for e in tree.edges():
        using = sorted(s.index for s in pd.segments if e in s.edges())
        if sorted(pd.orders.get(e, [])) != using:
            violations.append(Violation("order", f"edge {'-'.join(sorted(e))} lists {pd.orders.get(e, [])}"))
        lo, hi = tree.edge_range(e)
        spans = [pd.span_on(s, e) for s in pd.segments if e in s.edges()]
        if not _covered(spans, lo, hi):
            name = "-".join(sorted(e))
            violations.append(Violation("coverage", f"edge {name} has trajectories missing every segment"))

    g = pd.genus
    if len(data.tori) != g:
        violations.append(Violation("tori_count", f"{len(data.tori)} tori for {g} segments"))
    tori = {t.index: t for t in data.tori}
    for s in pd.segments:
        t = tori.get(s.index)
        if t is None:
            violations.append(Violation("tori_count", f"no torus for t{s.index}"))
            continue
        if t.m != s.measure:
            violations.append(Violation("measure_match", f"torus {t.index} has m = {t.m}, segment has {s.measure}"))
        if min(t.a, t.b, t.m) <= 0 or not t.a + t.b > t.m:
            violations.append(Violation("torus_range", f"torus {t.index} needs |a|+|b| > m > 0"))
    if len(tree.centers()) == g and g % 2 == 1:
        violations.append(Violation("maximal_odd_genus", f"a maximal diagram cannot exist for odd genus {g}"))
    return violations


class SaddleKind(str, Enum):
    DOUBLE_BOUNDARY = "double_boundary"
    BOUNDARY = "boundary"
    INTERIOR = "interior"


def _canonical(indices: Tuple[int, ...]) -> Tuple[int, ...]:
    return min(indices[k:] + indices[:k] for k in range(len(indices)))


@dataclass(frozen=True)
class Saddle:
    """
    A saddle of the glued surface with its cyclic type ``<j k l m>``.

    Two saddles with cyclically rotated types compare equal by :attr:`type`.
    """

    kind: SaddleKind
    indices: Tuple[int, int, int, int]
    source: str

    @property
    def type(self) -> Tuple[int, ...]:
        return _canonical(self.indices)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "type": "<" + "".join(map(str, self.indices)) + ">", "source": self.source}


@dataclass(frozen=True)
class GluedSurface:
    genus: int
    saddles: Tuple[Saddle, ...]
    segment_pairs: Tuple[Tuple[int, int], ...] = ()

    def count(self, kind: SaddleKind) -> int:
        return sum(1 for s in self.saddles if s.kind == kind)

    @property
    def t(self) -> int:
        return self.count(SaddleKind.DOUBLE_BOUNDARY)

    @property
    def r(self) -> int:
        return self.count(SaddleKind.INTERIOR)

    @property
    def boundary(self) -> int:
        return self.count(SaddleKind.BOUNDARY)


def glue(data: BuildingData) -> GluedSurface:
    """
    Measure-preserving gluing of the tori onto the plane diagram.

    Raises:
        BuildingDataError: If the data does not validate.
        InternalConsistencyError: If the saddle count is not ``2g - 2``.
    """
    violations = validate_building_data(data)
    if violations:
        raise BuildingDataError(violations)
    pd, tree = data.diagram, data.diagram.tree
    saddles: List[Saddle] = []
    pairs = []
    for c in tree.centers():
        meeting = sorted(
            s.index for s in pd.segments for which in (0, 1) if _end_vertex(tree, s, which) == c
        )
        j, k = meeting
        pairs.append((j, k))
        saddles.append(Saddle(SaddleKind.DOUBLE_BOUNDARY, (j, j, k, k), f"center {c}"))
    for s in pd.segments:
        for which, h in ((0, s.low), (1, s.high)):
            if _end_vertex(tree, s, which) is not None:
                continue
            e = s.edges()[0] if which == 0 else s.edges()[-1]
            around = pd.present(e, h)
            i = around.index(s.index)
            prev, nxt = around[i - 1], around[(i + 1) % len(around)]
            end = "low" if which == 0 else "high"
            saddles.append(Saddle(SaddleKind.BOUNDARY, (s.index, s.index, prev, nxt), f"t{s.index} {end}"))
    for q in tree.saddles():
        h = tree.height(q)
        first, second = (pd.present(e, h) for e in tree.lobes(q))
        indices = (first[-1], second[0], second[-1], first[0])
        saddles.append(Saddle(SaddleKind.INTERIOR, indices, f"saddle {q}"))
    g = pd.genus
    if len(saddles) != 2 * g - 2:
        raise InternalConsistencyError(f"{len(saddles)} saddles glued for genus {g}", saddles=len(saddles))
    logger.debug("glued genus %d surface with %d saddles", g, len(saddles))
    return GluedSurface(g, tuple(saddles), tuple(pairs))


def segment_cycles(gs: GluedSurface) -> List[List[int]]:
    """
    Components of the graph joining the two segments met at each center,
    each listed in traversal order.
    """
    graph = nx.MultiGraph()
    for j, k in gs.segment_pairs:
        graph.add_edge(j, k)
    out = []
    for component in sorted(nx.connected_components(graph), key=min):
        sub = graph.subgraph(component)
        if nx.is_eulerian(sub):
            walk = [u for u, _ in nx.eulerian_circuit(sub, source=min(component))]
        else:
            walk = sorted(component)
        out.append(walk)
    return out


@dataclass(frozen=True)
class Classification:
    genus: int
    t: int
    r: int
    boundary: int
    minimal: bool
    simple: bool
    maximal: bool
    selected_indices: Tuple[int, ...]
    cycle_type: Optional[Tuple[int, ...]]
    saddles: Tuple[Saddle, ...]

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "t": self.t,
            "r": self.r,
            "boundary": self.boundary,
            "minimal": self.minimal,
            "simple": self.simple,
            "maximal": self.maximal,
            "selected_indices": list(self.selected_indices),
            "cycle_type": list(self.cycle_type) if self.cycle_type is not None else None,
            "saddles": [s.to_dict() for s in self.saddles],
        }


def classify(gs: GluedSurface) -> Classification:
    """
    Minimal, simple and maximal flags of a glued surface.

    Raises:
        ClassificationError: If the surface is maximal with odd genus.
    """
    g, t, r = gs.genus, gs.t, gs.r
    if t - r != 2:
        raise InternalConsistencyError(f"t - r = {t - r}, expected 2")
    maximal = r == g - 2 and t == g
    if maximal and g % 2 == 1:
        raise ClassificationError(f"a maximal foliation of genus {g} cannot exist", genus=g)
    minimal = r == 0
    doubles = [set(s.indices) for s in gs.saddles if s.kind == SaddleKind.DOUBLE_BOUNDARY]
    if maximal:
        selected = tuple(range(1, g + 1))
    elif minimal:
        selected = tuple(sorted(set.intersection(*doubles)))
    else:
        selected = tuple(sorted(set.union(*doubles)))
    cycle_type = None
    if maximal:
        cycle_type = tuple(sorted(len(c) // 2 for c in segment_cycles(gs)))
    return Classification(g, t, r, gs.boundary, minimal, minimal, maximal, selected, cycle_type, gs.saddles)


class MinimalKind(str, Enum):
    """Minimal foliation types by how the two centers pair the segments."""

    A = "a"
    B = "b"
    C = "c"


MINIMAL_GENUS = {MinimalKind.A: 2, MinimalKind.B: 4, MinimalKind.C: 3}


def _single_edge(spans: List[Tuple[Number, Number]], top: int) -> BuildingData:
    tree = MorseTree({"0": 0, "inf": top}, [("0", "inf")])
    segments = []
    tori = []
    for index, (lo, hi) in enumerate(spans, start=1):
        s = Segment(index, ("0", "inf"), Scalar.coerce(lo), Scalar.coerce(hi))
        segments.append(s)
        tori.append(TorusData(index, s.measure, Scalar(1) / index, s.measure))
    orders = {edge_key("0", "inf"): [s.index for s in segments]}
    return BuildingData(PlaneDiagram(tree, segments, orders), tori)


def minimal_diagram(kind: MinimalKind, g: int) -> BuildingData:
    """
    Building data of minimal type ``kind`` and genus ``g`` on the single
    edge ``0 - inf``; extra segments are short and pairwise disjoint in
    height.
    """
    kind = MinimalKind(kind)
    if g < MINIMAL_GENUS[kind]:
        raise DomainError(f"type {kind.value} needs genus at least {MINIMAL_GENUS[kind]}, got {g}")
    top = 4 * g + 10
    if kind == MinimalKind.A:
        spans = [(0, top), (0, top)]
    elif kind == MinimalKind.B:
        spans = [(0, top - 3), (0, top - 2), (3, top), (2, top)]
    else:
        spans = [(0, top - 2), (0, top), (2, top)]
    base = len(spans)
    for i in range(g - base):
        lo = 4 + 4 * i
        spans.append((Scalar(Fraction(2 * lo + 1, 2)), Scalar(Fraction(3 * lo + 7, 3))))
    return _single_edge(spans, top)


def minimal_types(g: int) -> List[MinimalKind]:
    """Minimal types available in genus ``g``."""
    if g < 2:
        raise DomainError(f"genus must be at least 2, got {g}")
    return [kind for kind in MinimalKind if g >= MINIMAL_GENUS[kind]]


def maximal_diagram(cycle_type: Sequence[int]) -> BuildingData:
    """
    Genus 4 maximal building data with cycle type ``(2)`` or ``(1, 1)``.
    """
    cycle_type = tuple(sorted(cycle_type))
    heights = {"L1": 0, "L2": 1, "Q1": 2, "Q2": 3, "U1": 4, "U2": 5}
    edges = [("L1", "Q1"), ("L2", "Q1"), ("Q1", "Q2"), ("Q2", "U1"), ("Q2", "U2")]
    if cycle_type == (2,):
        ends = [("L1", "U1"), ("L1", "U2"), ("L2", "U1"), ("L2", "U2")]
    elif cycle_type == (1, 1):
        ends = [("L1", "U1"), ("L1", "U1"), ("L2", "U2"), ("L2", "U2")]
    else:
        raise DomainError(f"genus 4 maximal cycle types are (2) and (1, 1), got {cycle_type}")
    tree = MorseTree(heights, edges)
    segments = []
    tori = []
    for index, (lo, hi) in enumerate(ends, start=1):
        s = Segment(index, (lo, "Q1", "Q2", hi), tree.height(lo), tree.height(hi))
        segments.append(s)
        tori.append(TorusData(index, s.measure, Scalar(1) / index, s.measure))
    orders = {}
    for u, v in edges:
        e = edge_key(u, v)
        orders[e] = [s.index for s in segments if e in s.edges()]
    return BuildingData(PlaneDiagram(tree, segments, orders), tori)


@dataclass(frozen=True)
class PsiEvent:
    """A change of the marker sets along the height function."""

    height: Scalar
    kind: str
    where: str
    before: Tuple[Tuple[int, ...], ...]
    after: Tuple[Tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "height": str(self.height),
            "kind": self.kind,
            "where": self.where,
            "before": [list(x) for x in self.before],
            "after": [list(x) for x in self.after],
        }


def psi_events(data: BuildingData) -> List[PsiEvent]:
    """
    Events of the set-valued marker function in increasing height: centers,
    segment ends appearing or disappearing on an edge, and splits or merges
    at the tree saddles.

    Raises:
        InternalConsistencyError: If an event breaks its cardinality rule.
    """
    pd, tree = data.diagram, data.diagram.tree
    events: List[PsiEvent] = []

    def on(e: Edge, h: Scalar, strict_side: int) -> Tuple[int, ...]:
        out = []
        for index in pd.orders.get(e, []):
            span = pd.span_on(pd.segment(index), e)
            if span is None:
                continue
            lo, hi = span
            if (strict_side < 0 and lo < h <= hi) or (strict_side > 0 and lo <= h < hi):
                out.append(index)
        return tuple(out)

    for v in tree.vertices:
        h = tree.height(v)
        incident = [edge_key(v, n) for n in sorted(tree.graph.neighbors(v), key=tree.height)]
        if tree.is_center(v):
            e = incident[0]
            events.append(PsiEvent(h, "center", v, (on(e, h, -1),), (on(e, h, 1),)))
            continue
        low_edges = [e for e in incident if tree.edge_range(e)[1] == h]
        high_edges = [e for e in incident if tree.edge_range(e)[0] == h]
        before = tuple(on(e, h, -1) for e in low_edges)
        after = tuple(on(e, h, 1) for e in high_edges)
        kind = "merge" if len(low_edges) == 2 else "split"
        if sum(map(len, before)) != sum(map(len, after)):
            raise InternalConsistencyError(f"{kind} at {v} changes the number of markers")
        events.append(PsiEvent(h, kind, v, before, after))
    for s in pd.segments:
        for which, h in ((0, s.low), (1, s.high)):
            if _end_vertex(tree, s, which) is not None:
                continue
            e = s.edges()[0] if which == 0 else s.edges()[-1]
            before, after = on(e, h, -1), on(e, h, 1)
            if abs(len(after) - len(before)) != 1:
                raise InternalConsistencyError(f"end of t{s.index} does not change the markers by one")
            kind = "appear" if which == 0 else "disappear"
            events.append(PsiEvent(h, kind, f"t{s.index}", (before,), (after,)))
    events.sort(key=lambda ev: ev.height)
    return events


VISIBLE = tuple((k, l) for k in range(1, 5) for l in range(1, 5) if (k + l) % 2 == 1)  # noqa: E741


@dataclass(frozen=True)
class FluxReport:
    m: Scalar
    direction: str

    @property
    def degenerate(self) -> bool:
        return self.m == 0

    def to_dict(self) -> dict:
        return {"m": str(self.m), "direction": self.direction, "degenerate": self.degenerate}


def _key(k: int, l: int) -> str:  # noqa: E741
    return f"{k}{l}"


def flux_check(measures: Mapping[str, Number], areas: Sequence[Number]) -> FluxReport:
    """
    Check the genus 4 flux identities between the four squares ``A_k``.

    ``measures`` maps ``"kl"`` to the measure of the visible transitions
    ``A_k+ -> A_l-`` (odd to even and even to odd).

    Raises:
        InconsistentMeasuresError: Naming the first identity that fails:
            ``visibility``, ``alternating_sum``, ``conservation`` or
            ``asymmetry``.
    """
    if len(areas) != 4:
        raise DomainError(f"expected four square measures, got {len(areas)}")
    visible = {_key(k, l) for k, l in VISIBLE}
    extra = sorted(set(measures) - visible)
    missing = sorted(visible - set(measures))
    if extra or missing:
        raise InconsistentMeasuresError(
            f"transitions must be exactly the visible ones; extra {extra}, missing {missing}", "visibility"
        )
    m_kl = {key: Scalar.coerce(v) for key, v in measures.items()}
    a = [Scalar.coerce(x) for x in areas]
    if a[0] - a[1] + a[2] - a[3] != 0:
        raise InconsistentMeasuresError("A1 - A2 + A3 - A4 is not zero", "alternating_sum")
    for k in range(1, 5):
        out_sum = sum((m_kl[_key(k, l)] for l in range(1, 5) if (k, l) in VISIBLE), Scalar(0))  # noqa: E741
        in_sum = sum((m_kl[_key(j, k)] for j in range(1, 5) if (j, k) in VISIBLE), Scalar(0))
        if out_sum != a[k - 1] or in_sum != a[k - 1]:
            raise InconsistentMeasuresError(f"flux through A{k} is not conserved", "conservation")
    cycle = [(1, 2), (2, 3), (3, 4), (4, 1)]
    diffs = [m_kl[_key(k, l)] - m_kl[_key(l, k)] for k, l in cycle]
    if len(set(diffs)) != 1:
        raise InconsistentMeasuresError("asymmetries m_kl - m_lk differ around the cycle", "asymmetry")
    m = diffs[0]
    direction = "clockwise" if m > 0 else ("counterclockwise" if m < 0 else "degenerate")
    if m == 0:
        logger.warning("flux asymmetry is zero; the measures are not generic")
    return FluxReport(m, direction)


def planted_flux(m: Number, base: Sequence[Number] = (3, 2, 4, 1)) -> Tuple[Dict[str, Scalar], List[Scalar]]:
    """
    Measures and square sizes realising asymmetry ``m`` around the cycle
    ``1 -> 2 -> 3 -> 4 -> 1``.
    """
    m = Scalar.coerce(m)
    b12, b23, b34, b41 = (Scalar.coerce(x) for x in base)
    measures = {
        "12": b12,
        "21": b12 - m,
        "23": b23,
        "32": b23 - m,
        "34": b34,
        "43": b34 - m,
        "41": b41,
        "14": b41 - m,
    }
    areas = [
        measures["12"] + measures["14"],
        measures["21"] + measures["23"],
        measures["32"] + measures["34"],
        measures["41"] + measures["43"],
    ]
    return measures, areas


def load_flux(path: Union[str, Path]) -> Tuple[Dict[str, Any], List[Any]]:
    """
    Read ``{"measures": {"kl": ...}, "areas": [...]}`` for :func:`flux_check`.

    Raises:
        SpecValidationError: If the file is unreadable or either key is
            missing or of the wrong shape.
    """
    doc = read_document(path)
    problems = []
    if not isinstance(doc.get("measures"), dict):
        problems.append(Violation("missing_field", "flux document needs a 'measures' mapping"))
    if not isinstance(doc.get("areas"), list):
        problems.append(Violation("missing_field", "flux document needs an 'areas' list"))
    if problems:
        raise SpecValidationError(problems)
    return {str(key): value for key, value in doc["measures"].items()}, doc["areas"]
