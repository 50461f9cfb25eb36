"""Schematic SVG pictures of diagrams.

Each surface gets a panel.  The first binding circle is placed on a circle,
further boundary circles on smaller circles inside it, and the remaining
vertices at the barycentre of their neighbours (a few hundred Tutte
relaxation sweeps).  Faces are drawn as light polygons and every curve
family as a coloured polyline.  Link diagrams are drawn as Gauss diagrams:
one circle per component, a chord per crossing, coloured by sign.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .fileformat import Diagram, kind_of
from .links import LinkDiagram
from .surfmap import CombinatorialSurface, CurveSystem

PANEL = 320
MARGIN = 20
SWEEPS = 300
COLORS = {
    "alpha_1": "#d62728",
    "alpha_2": "#2ca02c",
    "alpha_3": "#1f77b4",
    "delta_1": "#ff7f0e",
    "delta_2": "#9467bd",
    "delta_3": "#8c564b",
    "tau_1": "#e377c2",
    "tau_2": "#17becf",
    "tau_3": "#bcbd22",
    "L_1": "#000000",
    "L_2": "#444444",
    "L_3": "#888888",
}


def layout(S: CombinatorialSurface) -> dict[int, tuple[float, float]]:
    """Positions in the unit square for every vertex of ``S``."""
    pos: dict[int, tuple[float, float]] = {}
    circles = S.boundary_circles
    for k, circ in enumerate(circles):
        vs = circ.vertices
        if k == 0:
            cx, cy, r = 0.5, 0.5, 0.45
        else:
            ang = 2 * math.pi * (k - 1) / max(1, len(circles) - 1)
            cx, cy, r = 0.5 + 0.2 * math.cos(ang), 0.5 + 0.2 * math.sin(ang), 0.08
        for j, v in enumerate(vs):
            t = 2 * math.pi * j / len(vs)
            pos[v] = (cx + r * math.cos(t), cy + r * math.sin(t))
    nbrs: dict[int, set[int]] = {v: set() for v in S.vertices}
    for u, v in S.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    free = sorted(v for v in S.vertices if v not in pos)
    for j, v in enumerate(free):
        t = 2 * math.pi * j / max(1, len(free))
        pos[v] = (0.5 + 0.1 * math.cos(t), 0.5 + 0.1 * math.sin(t))
    if not circles and free:
        pos[free[0]] = (0.05, 0.05)
        free = free[1:]
    for _ in range(SWEEPS):
        for v in free:
            xs = [pos[w] for w in nbrs[v]]
            if xs:
                pos[v] = (sum(x for x, _ in xs) / len(xs), sum(y for _, y in xs) / len(xs))
    return pos


def _polyline(points, color: str, closed: bool, width: float = 2.0) -> str:
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    tag = "polygon" if closed else "polyline"
    return f'<{tag} points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"/>'


def _panel(S: CombinatorialSurface, families, title: str, x0: float) -> list[str]:
    pos = layout(S)
    size = PANEL - 2 * MARGIN

    def at(v: int) -> tuple[float, float]:
        x, y = pos[v]
        return x0 + MARGIN + x * size, MARGIN + 20 + y * size

    out = [f'<text x="{x0 + MARGIN}" y="16" font-size="13">{escape(title)}</text>']
    for f in S.faces:
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in map(at, f))
        out.append(f'<polygon points="{pts}" fill="#f4f4f4" stroke="#cccccc" stroke-width="0.5"/>')
    for circ in S.boundary_circles:
        out.append(_polyline([at(v) for v in circ.vertices], "#555555", True, 1.5))
    verts = set(S.vertices)
    for fam in families:
        color = COLORS.get(fam.family, "#000000")
        for c in fam.curves:
            run: list[int] = []
            seq = list(c.vertices) + ([c.vertices[0]] if c.closed else [])
            for v in seq + [None]:
                if v is not None and v in verts:
                    run.append(v)
                    continue
                if len(run) > 1:
                    pts = [at(w) for w in run]
                    edges_ok = all(S.has_edge(a, b) for a, b in zip(run, run[1:]))
                    if edges_ok:
                        out.append(_polyline(pts, color, False))
                run = []
    return out


def _svg(width: float, height: float, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">'
    )
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>'] + body + ["</svg>"]) + "\n"


def _surface_panels(surfaces, titles, families: list[CurveSystem]) -> str:
    body = []
    for k, (S, title) in enumerate(zip(surfaces, titles)):
        body += _panel(S, families, title, k * PANEL)
    return _svg(PANEL * len(surfaces), PANEL + 20, body)


def render_link(LD: LinkDiagram) -> str:
    body = []
    n = len(LD.components)
    spots: dict[int, tuple[float, float]] = {}
    for k, comp in enumerate(LD.components):
        cx, cy, r = k * PANEL + PANEL / 2, PANEL / 2 + 10, PANEL / 2 - 2 * MARGIN
        body.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="none" stroke="#333333"/>')
        for j, visit in enumerate(comp):
            t = 2 * math.pi * j / len(comp)
            spots[visit] = (cx + r * math.cos(t), cy + r * math.sin(t))
            label = ("O" if visit > 0 else "U") + str(abs(visit))
            lx, ly = cx + (r + 12) * math.cos(t), cy + (r + 12) * math.sin(t)
            body.append(f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="10" text-anchor="middle">{label}</text>')
    for k, sign in enumerate(LD.signs, start=1):
        color = "#1f77b4" if sign > 0 else "#d62728"
        (x1, y1), (x2, y2) = spots[k], spots[-k]
        body.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="{color}" stroke-width="1.5"/>')
    body.append(f'<text x="{MARGIN}" y="16" font-size="13">{escape(LD.name)}</text>')
    return _svg(PANEL * max(1, n), PANEL + 20, body)


def render_svg(diagram: Diagram) -> str:
    kind = kind_of(diagram)
    if kind == "triheeg":
        return _surface_panels(diagram.surfaces, [f"Σ_{k + 1}" for k in range(3)], list(diagram.deltas))
    titles = ["Σ_C", "Σ_1", "Σ_2", "Σ_3"]
    if kind == "ptri":
        return _surface_panels(diagram.surfaces, titles, list(diagram.families))
    if kind == "shadow":
        fams = list(diagram.base.families) + list(diagram.families)
        return _surface_panels(diagram.base.surfaces, titles, fams)
    return render_link(diagram)
