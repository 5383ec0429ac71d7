"""
Static SVG drawings of street triples and plane diagrams.
"""

from typing import List, Sequence

from streetflow.builder import BuildingData
from streetflow.streets import StreetTriple

STREET_COLORS = {0: "#8da0cb", 1: "#66c2a5", 2: "#fc8d62"}
WIDTH = 480


def _document(width: int, height: int, body: Sequence[str]) -> str:
    return (
        f'<svg version="1.1" width="{width}" height="{height}" xmlns="http://www.w3.org/2000/svg">'
        + "".join(body)
        + "</svg>\n"
    )


def streets_svg(triples: Sequence[StreetTriple], width: int = WIDTH) -> str:
    """
    One row per plane: the three streets drawn along s with widths to scale
    and heights proportional to their flow height ``p|a| + q|b|``.
    """
    body: List[str] = []
    row = 140
    y = 20
    for t in triples:
        scale = width / float(t.m)
        tallest = max(float(t.height(s).flow_cost(t.a, t.b)) for s in (0, 1, 2))
        body.append(f'<text x="4" y="{y - 6}" font-size="12">plane {t.plane}</text>')
        for street, iv in t.blocks():
            x = float(iv.lo) * scale
            w = float(iv.measure) * scale
            h = 100 * float(t.height(street).flow_cost(t.a, t.b)) / tallest
            body.append(
                f'<rect x="{x:.2f}" y="{y + 100 - h:.2f}" width="{w:.2f}" height="{h:.2f}" '
                f'fill="{STREET_COLORS[street]}" stroke="black"/>'
            )
            body.append(f'<text x="{x + w / 2:.2f}" y="{y + 115}" font-size="11">{street}</text>')
        y += row
    return _document(width, y, body)


def tree_svg(data: BuildingData, width: int = WIDTH, height: int = 360) -> str:
    """
    The Morse tree with height running upward and every segment drawn as a
    vertical bar beside the edges it climbs.
    """
    tree = data.diagram.tree
    order = {v: i for i, v in enumerate(sorted(tree.vertices, key=lambda v: (tree.is_center(v), str(v))))}
    lo = float(tree.height(tree.vertices[0]))
    hi = float(tree.height(tree.vertices[-1]))
    span = hi - lo or 1.0

    def px(v: str) -> float:
        return 40 + (width - 80) * order[v] / max(1, len(order) - 1)

    def py(h) -> float:
        return height - 30 - (height - 60) * (float(h) - lo) / span

    body: List[str] = []
    for e in tree.edges():
        u, v = sorted(e, key=tree.height)
        body.append(
            f'<line x1="{px(u):.2f}" y1="{py(tree.height(u)):.2f}" x2="{px(v):.2f}" '
            f'y2="{py(tree.height(v)):.2f}" stroke="black"/>'
        )
    for v in tree.vertices:
        r = 4 if tree.is_center(v) else 6
        body.append(f'<circle cx="{px(v):.2f}" cy="{py(tree.height(v)):.2f}" r="{r}" fill="white" stroke="black"/>')
        body.append(f'<text x="{px(v) + 8:.2f}" y="{py(tree.height(v)):.2f}" font-size="11">{v}</text>')
    for k, s in enumerate(data.diagram.segments):
        x = px(s.path[0]) + 6 + 5 * k
        body.append(
            f'<line x1="{x:.2f}" y1="{py(s.low):.2f}" x2="{x:.2f}" y2="{py(s.high):.2f}" '
            f'stroke="{STREET_COLORS[k % 3]}" stroke-width="3"/>'
        )
        body.append(f'<text x="{x + 3:.2f}" y="{py(s.high) - 3:.2f}" font-size="10">t{s.index}</text>')
    return _document(width, height, body)
