"""Triple Heegaard diagrams of trisected closed 3-manifolds.

A diagram consists of three surfaces ``Σ_1, Σ_2, Σ_3`` with a common binding
and three curve families; ``δ_i`` lives on ``Σ_i ∪ Σ_{i+1}`` and must glue to
a cut system there.  Indices are ``p_i = genus(Σ_i)``, ``b`` = number of
binding circles and ``y_i = p_i + p_{i+1} + b - 1``, the genus of the glued
pair.  Sector indices are 0-based in code: ``i`` runs over ``0, 1, 2`` and
``i + 1`` is taken mod 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import diagram_ops as ops
from .errors import BandObstructed, DiskSector, InvalidSite, SeparatingArc
from .homology import AbelianGroup, cw_from_realization, homology_all
from .report import CheckReport
from .surfmap import (
    Assembly,
    CombinatorialSurface,
    Curve,
    CurveSystem,
    _left_corners,
    classify_surface,
    curve_intersections,
    cut_along,
    glue_pair,
    glue_surfaces,
)


@dataclass(frozen=True)
class TrisectionIndices3:
    y: tuple[int, int, int]
    b: int
    p: tuple[int, int, int]

    @property
    def complexity(self) -> int:
        return sum(self.y)

    def consistent(self) -> bool:
        y, p, b = self.y, self.p, self.b
        ok = all(y[i] == p[i] + p[(i + 1) % 3] + b - 1 for i in range(3))
        ok &= all(
            2 * p[i] == y[i - 1] + y[i] - y[(i + 1) % 3] - b + 1 for i in range(3)
        )
        return ok and all(v >= b - 1 for v in y)


@dataclass(frozen=True)
class TripleHeegaardDiagram:
    surfaces: tuple[CombinatorialSurface, CombinatorialSurface, CombinatorialSurface]
    deltas: tuple[CurveSystem, CurveSystem, CurveSystem]
    name: str = ""
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if len(self.surfaces) != 3 or len(self.deltas) != 3:
            raise ValueError("a triple Heegaard diagram has three surfaces and three families")
        for k, fam in enumerate(self.deltas):
            if fam.family != f"delta_{k + 1}":
                raise ValueError(f"family {k} must be tagged delta_{k + 1}")
        object.__setattr__(self, "surfaces", tuple(self.surfaces))
        object.__setattr__(self, "deltas", tuple(self.deltas))

    @property
    def binding(self) -> tuple[tuple[int, ...], ...]:
        return ops.binding_of(self.surfaces)

    def pair(self, i: int) -> CombinatorialSurface:
        """The closed surface ``(-Σ_i) ∪ Σ_{i+1}`` carrying ``δ_i``."""
        return glue_pair(self.surfaces[i], self.surfaces[(i + 1) % 3])

    def fresh(self) -> Iterator[int]:
        return ops.fresh_counter(self.surfaces, self.deltas)

    def canonical_key(self) -> tuple:
        """Relabeling-invariant key; equal keys mean equal diagrams."""
        return ops.canonical_key(self.surfaces, self.deltas)


def empty_deltas() -> tuple[CurveSystem, CurveSystem, CurveSystem]:
    return tuple(CurveSystem(f"delta_{k + 1}") for k in range(3))


def indices_3(D: TripleHeegaardDiagram) -> TrisectionIndices3:
    """Indices read from the surfaces (curve counts are checked by validation)."""
    p = tuple(classify_surface(s).genus for s in D.surfaces)
    b = len(D.surfaces[0].boundary_circles)
    y = tuple(p[i] + p[(i + 1) % 3] + b - 1 for i in range(3))
    return TrisectionIndices3(y, b, p)


def complexity_3(D: TripleHeegaardDiagram) -> int:
    return indices_3(D).complexity


def validate_triheeg(D: TripleHeegaardDiagram) -> CheckReport:
    """Check binding identification, disjointness and the three cut systems."""
    report = CheckReport()
    names = [f"Σ_{k + 1}" for k in range(3)]
    for msg in ops.check_surfaces(D.surfaces, names):
        report.fail(msg)
    if not report.ok:
        return report
    idx = indices_3(D)
    report.info["indices"] = idx
    for i in range(3):
        A, B = D.surfaces[i], D.surfaces[(i + 1) % 3]
        for msg in ops.check_family_on_pair(A, B, D.deltas[i], idx.y[i], f"δ_{i + 1}"):
            report.fail(msg)
    if report.ok and not idx.consistent():
        report.fail("index relations do not hold")
    return report


def realization_complex(D: TripleHeegaardDiagram):
    W = glue_surfaces(Assembly.shared_ids(D.surfaces))
    return cw_from_realization(W, [list(f) for f in D.deltas], [(0, 1), (1, 2), (2, 0)])


def realize_homology_3(D: TripleHeegaardDiagram) -> list[AbelianGroup]:
    """``H_0 .. H_3`` of the realized closed 3-manifold."""
    return homology_all(realization_complex(D))


# ---------------------------------------------------------------------------
# Arc preparation shared with band stabilisation
# ---------------------------------------------------------------------------


def prepare_arc(
    surfaces: list[CombinatorialSurface],
    families: list[CurveSystem],
    cut_index: int,
    arc: Curve,
    fresh: Iterator[int],
) -> tuple[list[CombinatorialSurface], list[CurveSystem], Curve]:
    """Normalize a stabilisation site.

    The first edge of the arc is subdivided, giving an interior arc vertex
    off every curve.  Edges that would join two binding vertices after the
    cut are subdivided, and binding edges next to the endpoints are subdivided
    until the endpoints and their binding neighbours are six distinct
    vertices.  Both steps are isotopies of the diagram.
    """
    S = surfaces[cut_index]
    ops.check_neat_arc(S, arc)
    vs = list(arc.vertices)
    m = next(fresh)
    S2, families, (arc2,) = ops.subdivide_interior_edge(S, families, vs[0], vs[1], m, [arc])
    # Edges that would become chords once the arc joins the binding.
    future = S2.boundary_vertices() | set(arc2.vertices)
    arc_edges = {frozenset(e) for e in arc2.edges()}
    for u, v in sorted(S2.edges):
        if u < v and u in future and v in future:
            if frozenset((u, v)) in arc_edges or S2.is_boundary_edge(u, v):
                continue
            if S2.is_boundary_edge(v, u):
                continue
            S2, families, (arc2,) = ops.subdivide_interior_edge(
                S2, families, u, v, next(fresh), [arc2]
            )
    surfaces = list(surfaces)
    surfaces[cut_index] = S2
    arc = arc2
    for _ in range(4):
        circle_of = {}
        for circ in surfaces[0].boundary_circles:
            for k, v in enumerate(circ.vertices):
                circle_of[v] = (circ.vertices, k)
        a0, am = arc.vertices[0], arc.vertices[-1]
        nb = {}
        for v in (a0, am):
            cyc, k = circle_of[v]
            nb[v] = (cyc[k - 1], cyc[(k + 1) % len(cyc)])
        if len({a0, am, *nb[a0], *nb[am]}) == 6:
            break
        for v in (a0, am):
            for w in nb[v]:
                surfaces = ops.subdivide_binding_edge(surfaces, v, w, next(fresh))
    return surfaces, families, arc


def _require_nonseparating(S: CombinatorialSurface, arc: Curve) -> None:
    st = classify_surface(S)
    if st.genus == 0 and st.boundary_count == 1:
        raise DiskSector("every neat arc in a disk separates it")
    if len(cut_along(S, [arc]).components) != 1:
        raise SeparatingArc("the arc separates its surface")


# ---------------------------------------------------------------------------
# Moves
# ---------------------------------------------------------------------------


def stabilize_3(D: TripleHeegaardDiagram, i: int, arc: Curve) -> TripleHeegaardDiagram:
    """Stabilise along a neat non-separating arc in ``Σ_i``.

    A band around the arc is removed from ``Σ_i`` and attached to
    ``Σ_{i+1}`` and ``Σ_{i+2}``.  Curves of ``δ_i`` crossing the arc run
    over the band in ``Σ_{i+1}``; curves of ``δ_{i-1}`` over the band in
    ``Σ_{i+2}``.  The cocore of the two bands is added to ``δ_{i+1}``.
    """
    i %= 3
    S = D.surfaces[i]
    ops.check_neat_arc(S, arc)
    _require_nonseparating(S, arc)
    fresh = D.fresh()
    surfaces, families, arc = prepare_arc(list(D.surfaces), list(D.deltas), i, arc, fresh)
    r1, r2 = (i + 1) % 3, (i + 2) % 3
    surfaces, families, record = ops.band_surgery(
        surfaces, i, [r1, r2], arc, families, {i: r1, (i - 1) % 3: r2}, fresh
    )
    gamma = ops.rung_curve(record, 0, r1, r2)
    families[r1] = families[r1].with_curves(list(families[r1]) + [gamma])
    return TripleHeegaardDiagram(tuple(surfaces), tuple(families), D.name)


def heegaard_stabilize_3(
    D: TripleHeegaardDiagram, i: int, site: int = 0
) -> TripleHeegaardDiagram:
    """Heegaard stabilisation of sector ``i`` with the new handle in face ``site`` of ``Σ_i``.

    A meridian is added to ``δ_i`` and a longitude meeting it once to
    ``δ_{i-1}``.
    """
    i %= 3
    S = D.surfaces[i]
    if not 0 <= site < len(S.faces):
        raise InvalidSite(f"face {site} does not exist in Σ_{i + 1}")
    new, curves = ops.torus_handle(S, site, D.fresh())
    surfaces = list(D.surfaces)
    surfaces[i] = new
    fams = list(D.deltas)
    fams[i] = fams[i].with_curves(list(fams[i]) + [curves["mu1"]])
    j = (i - 1) % 3
    fams[j] = fams[j].with_curves(list(fams[j]) + [curves["lam"]])
    return TripleHeegaardDiagram(tuple(surfaces), tuple(fams), D.name)


def connected_sum_3(
    D1: TripleHeegaardDiagram,
    D2: TripleHeegaardDiagram,
    q1: int = 0,
    q2: int = 0,
    rotation: int = 0,
) -> TripleHeegaardDiagram:
    """Connected sum at binding points; ``Σ_i`` of ``D1`` meets ``Σ_{i+rotation}`` of ``D2``."""
    b1, b2 = len(D1.binding), len(D2.binding)
    if not (0 <= q1 < b1 and 0 <= q2 < b2):
        raise InvalidSite("binding component label out of range")
    if rotation not in (0, 1, 2):
        raise InvalidSite("rotation must be 0, 1 or 2")
    start = next(D1.fresh())
    order = [(k + rotation) % 3 for k in range(3)]
    s2, f2, end = ops.relabel_apart(
        [D2.surfaces[k] for k in order], [D2.deltas[k] for k in order], start
    )
    fresh = iter(range(end, end + 10**9))
    surfaces = ops.boundary_sum(list(D1.surfaces), s2, q1, q2, fresh)
    fams = tuple(
        CurveSystem(f"delta_{k + 1}", tuple(D1.deltas[k]) + tuple(f2[k])) for k in range(3)
    )
    return TripleHeegaardDiagram(tuple(surfaces), fams, f"{D1.name}#{D2.name}")


def _side_corner_faces(
    G: CombinatorialSurface, curve: Curve, left: bool
) -> set[int]:
    faces = set()
    for v in curve.vertices:
        p, n = curve.neighbours(v)
        lset = _left_corners(G, v, p, n)
        corners = G.corners_at(v)
        for k, (f, _) in enumerate(corners):
            if (k in lset) == left:
                faces.add(f)
    return faces


def _departs_left(G: CombinatorialSurface, curve: Curve, v: int, w: int) -> bool:
    p, n = curve.neighbours(v)
    lset = _left_corners(G, v, p, n)
    for k, c in enumerate(G.corners_at(v)):
        if G.corner_out(c) == w:
            return k in lset
    raise BandObstructed(f"{w} is not adjacent to {v}")


def band_sum_curve(
    G: CombinatorialSurface, family: Sequence[Curve], slider: int, over: int, arc: Curve
) -> Curve:
    """Band sum of ``family[slider]`` with ``family[over]`` along ``arc`` on ``G``.

    The result is the third boundary circle of the pair of pants formed by a
    one-sided collar of each curve and the faces around the arc.
    """
    c1, c2 = family[slider], family[over]
    vs = arc.vertices
    if vs[0] not in c1.vertices or vs[-1] not in c2.vertices:
        raise BandObstructed("band must run from the slider to the curve slid over")
    others = set()
    for k, c in enumerate(family):
        others |= set(c.vertices)
    if any(v in others for v in vs[1:-1]):
        raise BandObstructed("band meets a curve of the family")
    side1 = _departs_left(G, c1, vs[0], vs[1])
    side2 = _departs_left(G, c2, vs[-1], vs[-2])
    faces = _side_corner_faces(G, c1, side1) | _side_corner_faces(G, c2, side2)
    inner = set(vs[1:-1])
    for f, face in enumerate(G.faces):
        if inner & set(face):
            faces.add(f)
    try:
        R = CombinatorialSurface.from_faces([G.faces[f] for f in sorted(faces)])
    except Exception as exc:
        raise BandObstructed(f"band neighbourhood is not a surface: {exc}") from exc
    if tuple(classify_surface(R)) != (0, 3, 1):
        raise BandObstructed("band neighbourhood is not a pair of pants")
    for circ in R.boundary_circles:
        verts = set(circ.vertices)
        if verts == set(c1.vertices) or verts == set(c2.vertices):
            continue
        if verts & others:
            raise BandObstructed("band sum touches another curve")
        return Curve(circ.vertices)
    raise BandObstructed("band sum curve not found")


def handleslide_3(
    D: TripleHeegaardDiagram, i: int, slider: int, over: int, arc: Curve, refinements: int = 2
) -> TripleHeegaardDiagram:
    """Slide curve ``slider`` of ``δ_i`` over curve ``over`` along ``arc``.

    ``arc`` is a vertex path on ``(-Σ_i) ∪ Σ_{i+1}`` from a vertex of the
    slider to a vertex of the other curve, avoiding the rest of the family.
    The diagram is refined first so that collars of the curves are embedded.
    """
    i %= 3
    fam = list(D.deltas[i])
    if slider == over or not (0 <= slider < len(fam) and 0 <= over < len(fam)):
        raise BandObstructed("slider and target must be distinct curves of the family")
    surfaces, families, extra = list(D.surfaces), list(D.deltas), [arc]
    for _ in range(refinements):
        surfaces, families, extra = ops.refine_all(surfaces, families, extra)
    G = glue_pair(surfaces[i], surfaces[(i + 1) % 3])
    new_curve = band_sum_curve(G, list(families[i]), slider, over, extra[0])
    binding = surfaces[0].boundary_vertices()
    for u, v in new_curve.edges():
        if u in binding and v in binding:
            raise BandObstructed("band sum runs along the binding")
    curves = list(families[i])
    curves[slider] = new_curve
    families[i] = families[i].with_curves(curves)
    return TripleHeegaardDiagram(tuple(surfaces), tuple(families), D.name)


# ---------------------------------------------------------------------------
# Site enumeration
# ---------------------------------------------------------------------------


def candidate_arcs(
    S: CombinatorialSurface, curves: Sequence[Curve] = (), limit: int = 8
) -> list[Curve]:
    """Neat non-separating arcs of ``S`` usable as stabilisation sites.

    Endpoints avoid every curve, and the arc crosses the curves
    transversally without sharing edges.

    Arcs are built as shortest paths from a binding vertex through an
    interior vertex ``z`` to another binding vertex, for increasing ``z``.
    """
    binding = S.boundary_vertices()
    forbidden = {v for c in curves for v in c.vertices}
    if len(S.boundary_circles) == 1 and classify_surface(S).genus == 0:
        return []
    adj = {v: [w for w in S.neighbours_ccw(v)] for v in S.vertices}
    ends = sorted(v for v in binding if v not in forbidden)
    interior = sorted(S.interior_vertices())
    found: list[Curve] = []
    seen = set()
    from collections import deque

    def path(src: int, dst_set: set[int], blocked: set[int]) -> list[int] | None:
        prev = {src: None}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w in prev or w in blocked:
                    continue
                if w in binding:
                    if w in dst_set and v != src:
                        prev[w] = v
                        out = [w]
                        while prev[out[-1]] is not None:
                            out.append(prev[out[-1]])
                        return out[::-1]
                    continue
                prev[w] = v
                queue.append(w)
        return None

    for z in interior:
        first = path(z, set(ends), set())
        if first is None:
            continue
        a0 = first[-1]
        blocked = set(first)
        second = path(z, set(ends) - {a0}, blocked - {z})
        if second is None:
            continue
        vs = list(reversed(first)) + second[1:]
        if len(set(vs)) != len(vs) or len(vs) < 3:
            continue
        arc = Curve(tuple(vs), False)
        key = arc.canonical()
        if key in seen:
            continue
        seen.add(key)
        try:
            ops.check_neat_arc(S, arc)
            if len(cut_along(S, [arc]).components) != 1:
                continue
            for c in curves:
                if set(c.vertices) & set(arc.vertices):
                    curve_intersections(S, arc, c)
        except Exception:
            continue
        found.append(arc)
        if len(found) >= limit:
            break
    return found


def all_curves(families: Sequence[CurveSystem]) -> list[Curve]:
    return [c for f in families for c in f]


def candidate_bands(
    G: CombinatorialSurface, family: Sequence[Curve], slider: int, over: int
) -> Curve | None:
    """Shortest band from ``family[slider]`` to ``family[over]`` avoiding the others."""
    from collections import deque

    c1, c2 = set(family[slider].vertices), set(family[over].vertices)
    blocked = set()
    for k, c in enumerate(family):
        if k not in (slider, over):
            blocked |= set(c.vertices)
    prev = {v: None for v in c1}
    queue = deque(sorted(c1))
    while queue:
        v = queue.popleft()
        for w in G.neighbours_ccw(v):
            if w in prev or w in blocked:
                continue
            if w in c1:
                continue
            prev[w] = v
            if w in c2:
                out = [w]
                while prev[out[-1]] is not None:
                    out.append(prev[out[-1]])
                return Curve(tuple(reversed(out)), False)
            queue.append(w)
    return None



def refine_diagram(D: TripleHeegaardDiagram) -> TripleHeegaardDiagram:
    """Quad-subdivide every surface; an isotopy of the diagram."""
    surfaces, families, _ = ops.refine_all(D.surfaces, D.deltas)
    return TripleHeegaardDiagram(tuple(surfaces), tuple(families), D.name, D.notes)


def stabilization_sites(
    D: TripleHeegaardDiagram, i: int, limit: int = 8, max_refinements: int = 2
) -> tuple[TripleHeegaardDiagram, list[Curve]]:
    """Candidate arcs for :func:`stabilize_3` in ``Σ_i``, refining when needed.

    Returns the (possibly refined) diagram together with the arcs.  The
    list is empty only when ``Σ_i`` is a disk or no site was found after
    ``max_refinements`` refinements.
    """
    i %= 3
    S = D.surfaces[i]
    st = classify_surface(S)
    if st.genus == 0 and st.boundary_count == 1:
        return D, []
    for _ in range(max_refinements + 1):
        arcs = candidate_arcs(D.surfaces[i], all_curves(D.deltas), limit)
        if arcs:
            return D, arcs
        D = refine_diagram(D)
    return D, []
