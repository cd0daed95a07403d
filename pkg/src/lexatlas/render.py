"""Static rendering of a semantic map: SVG scatter and coordinate TSV.

Kept dependency-free: an SVG is just text, and desk-scale inspection
should not require a plotting stack or a browser build.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .atlas import SemanticMap
from .ca import project

PALETTE = (
    "#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#3ca951",
    "#ff8ab7", "#a463f2", "#97bbf5", "#9c6b4e", "#9498a0",
)


def _hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Convex hull by monotone chain; returns vertices in CCW order."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class _Scale:
    """Data rectangle to pixel rectangle, y flipped for SVG."""

    def __init__(self, xs, ys, width, height, margin):
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        if self.x1 == self.x0:
            self.x0, self.x1 = self.x0 - 1.0, self.x1 + 1.0
        if self.y1 == self.y0:
            self.y0, self.y1 = self.y0 - 1.0, self.y1 + 1.0
        self.width, self.height, self.margin = width, height, margin

    def px(self, x: float) -> float:
        usable = self.width - 2 * self.margin
        return self.margin + (x - self.x0) / (self.x1 - self.x0) * usable

    def py(self, y: float) -> float:
        usable = self.height - 2 * self.margin
        return self.height - self.margin - (y - self.y0) / (self.y1 - self.y0) * usable


def render_svg(m: SemanticMap, k1: int = 1, k2: int = 2, width: int = 900, height: int = 640) -> str:
    """Cliques as dots, contexonym labels at column coordinates, cluster hulls."""
    proj = project(m.ca, k1, k2)
    xs = [p[0] for p in proj.points] + [p[0] for p in proj.labels]
    ys = [p[1] for p in proj.points] + [p[1] for p in proj.labels]
    sc = _Scale(xs, ys, width, height, margin=48)

    cluster_of = {qid: c.cluster_id for c in m.clusters for qid in c.clique_ids}
    row_pos = {qid: i for i, qid in enumerate(m.ca.row_ids)}

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]

    def share(k: int) -> float:
        return float(m.ca.inertia_share[k - 1]) if k <= m.ca.n_axes else 0.0

    parts.append(
        f'<text x="{width - 8}" y="{height - 10}" text-anchor="end" font-size="11" fill="#666">'
        f"axis {k1} ({share(k1):.1%})  /  axis {k2} ({share(k2):.1%})</text>"
    )
    parts.append(
        f'<text x="8" y="18" font-size="13" fill="#333">{escape(str(m.headword))}'
        f" &#183; {len(m.cliques)} cliques &#183; {len(m.clusters)} clusters</text>"
    )

    # Hulls under everything else.
    for c in m.clusters:
        pts = [
            (sc.px(proj.points[row_pos[qid]][0]), sc.py(proj.points[row_pos[qid]][1]))
            for qid in c.clique_ids
            if qid in row_pos
        ]
        color = PALETTE[c.cluster_id % len(PALETTE)]
        hull = _hull(pts)
        if len(hull) >= 3:
            d = " ".join(f"{x:.1f},{y:.1f}" for x, y in hull)
            parts.append(f'<polygon points="{d}" fill="{color}" fill-opacity="0.12" stroke="{color}" stroke-opacity="0.4"/>')
        elif len(hull) == 2:
            (xa, ya), (xb, yb) = hull
            parts.append(
                f'<line x1="{xa:.1f}" y1="{ya:.1f}" x2="{xb:.1f}" y2="{yb:.1f}" '
                f'stroke="{color}" stroke-opacity="0.4" stroke-width="10" stroke-linecap="round"/>'
            )

    for u, (lx, ly) in zip(m.ca.col_units, proj.labels):
        parts.append(
            f'<text x="{sc.px(lx):.1f}" y="{sc.py(ly):.1f}" font-size="11" fill="#555" '
            f'text-anchor="middle">{escape(u.key)}</text>'
        )

    for q in m.cliques:
        if q.clique_id not in row_pos:
            continue
        x, y = proj.points[row_pos[q.clique_id]]
        color = PALETTE[cluster_of.get(q.clique_id, 0) % len(PALETTE)]
        parts.append(f'<circle cx="{sc.px(x):.1f}" cy="{sc.py(y):.1f}" r="5" fill="{color}"/>')
        parts.append(
            f'<text x="{sc.px(x) + 7:.1f}" y="{sc.py(y) + 4:.1f}" font-size="10" fill="#222">{q.clique_id}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def coords_tsv(m: SemanticMap, k1: int = 1, k2: int = 2) -> str:
    """Raw projected coordinates, one row per clique point and per label."""
    proj = project(m.ca, k1, k2)
    row_pos = {qid: i for i, qid in enumerate(m.ca.row_ids)}
    lines = [f"# headword={m.headword} axes={k1},{k2}", "type\tid\tx\ty\tdetail"]
    for q in m.cliques:
        if q.clique_id not in row_pos:
            continue
        x, y = proj.points[row_pos[q.clique_id]]
        members = "|".join(str(u) for u in q.members)
        lines.append(f"clique\t{q.clique_id}\t{float(x)!r}\t{float(y)!r}\t{members}")
    for u, (x, y) in zip(m.ca.col_units, proj.labels):
        lines.append(f"contexonym\t{u}\t{float(x)!r}\t{float(y)!r}\t")
    return "\n".join(lines) + "\n"
