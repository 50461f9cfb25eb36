"""Operations shared by triple Heegaard and pseudo-trisection diagrams.

All diagram surfaces use one global vertex namespace.  Binding vertices are
shared by every surface; every other vertex belongs to exactly one surface.
Every surface induces the same orientation on the binding, so each stores
identical boundary circles.  Interior edges joining two binding vertices
(chords) are forbidden, which makes every curve edge belong to exactly one
surface or to the binding.
"""

from __future__ import annotations

from collections import deque
from itertools import count
from typing import Iterable, Iterator, Sequence

from .errors import InvalidSite, NonTransverse, SeparatingArc
from .surfmap import (
    CombinatorialSurface,
    Curve,
    CurveSystem,
    cut_along_map,
    glue_pair,
    grid_torus_faces,
    verify_cut_system,
)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def binding_of(surfaces: Sequence[CombinatorialSurface]) -> tuple[tuple[int, ...], ...]:
    """Binding circles (vertex sequences) of the first surface."""
    return tuple(c.vertices for c in surfaces[0].boundary_circles)


def check_surfaces(surfaces: Sequence[CombinatorialSurface], names: Sequence[str]) -> list[str]:
    """Structural checks common to all diagram kinds."""
    failures = []
    circles = [tuple(sorted(c.vertices for c in s.boundary_circles)) for s in surfaces]
    for s, name in zip(surfaces, names):
        if len(s.components) != 1:
            failures.append(f"{name} is disconnected")
    if not circles[0]:
        failures.append(f"{names[0]} has no boundary (the binding is empty)")
    for k in range(1, len(surfaces)):
        if circles[k] != circles[0]:
            lengths = sorted(len(c) for c in circles[k])
            ref = sorted(len(c) for c in circles[0])
            detail = "lengths differ" if lengths != ref else "vertex sequences differ"
            failures.append(f"binding of {names[k]} does not match {names[0]}: {detail}")
    if failures:
        return failures
    binding = surfaces[0].boundary_vertices()
    owner: dict[int, str] = {}
    for s, name in zip(surfaces, names):
        for v in s.interior_vertices():
            if v in owner:
                failures.append(f"interior vertex {v} is shared by {owner[v]} and {name}")
            owner[v] = name
        for u, v in s.edges:
            if u in binding and v in binding and not s.is_boundary_edge(u, v):
                failures.append(f"{name} has a chord ({u}, {v}) between binding vertices")
    return failures


def check_family_on_pair(
    A: CombinatorialSurface,
    B: CombinatorialSurface,
    family: CurveSystem,
    expected: int,
    label: str,
) -> list[str]:
    """Check that ``family`` glues to a cut system of ``expected`` curves on ``(-A) ∪ B``."""
    failures = []
    try:
        glued = glue_pair(A, B)
    except Exception as exc:
        return [f"{label}: cannot glue surfaces: {exc}"]
    binding = A.boundary_vertices()
    for idx, c in enumerate(family):
        for u, v in c.edges():
            if not glued.has_edge(u, v):
                failures.append(f"{label} curve {idx}: ({u}, {v}) is not an edge")
            elif u in binding and v in binding:
                failures.append(f"{label} curve {idx} runs along the binding at ({u}, {v})")
        if failures:
            return failures
        for v in c.vertices:
            if v in binding:
                p, n = c.neighbours(v)
                if p is None or n is None:
                    failures.append(f"{label} curve {idx} is not closed")
                    continue
                side_p = A.has_edge(p, v)
                side_n = A.has_edge(v, n)
                if side_p == side_n:
                    failures.append(f"{label} curve {idx} touches the binding at {v} without crossing")
    if failures:
        return failures
    if len(family) != expected:
        failures.append(
            f"{label}: cut-system cardinality {len(family)} does not match the expected {expected}"
        )
        return failures
    rep = verify_cut_system(glued, family)
    failures += [f"{label}: {m}" for m in rep.failures]
    return failures


def fresh_counter(
    surfaces: Iterable[CombinatorialSurface], families: Iterable[CurveSystem] = ()
) -> Iterator[int]:
    used = 0
    for s in surfaces:
        used = max(used, max(s.vertices) + 1)
    for fam in families:
        for c in fam:
            if c.vertices:
                used = max(used, max(c.vertices) + 1)
    return count(used)


# ---------------------------------------------------------------------------
# Consistent refinement
# ---------------------------------------------------------------------------


def refine_all(
    surfaces: Sequence[CombinatorialSurface],
    families: Sequence[CurveSystem],
    extra: Sequence[Curve] = (),
) -> tuple[list[CombinatorialSurface], list[CurveSystem], list[Curve]]:
    """Quad-subdivide every surface with shared midpoints on the binding."""
    fresh = fresh_counter(surfaces, families)
    mid: dict[tuple[int, int], int] = {}
    new_surfaces = []
    for s in surfaces:
        faces = []
        for face in s.faces:
            n = len(face)
            for k in range(n):
                for a, b in ((face[k - 1], face[k]), (face[k], face[(k + 1) % n])):
                    key = (min(a, b), max(a, b))
                    if key not in mid:
                        mid[key] = next(fresh)
            z = next(fresh)
            for k in range(n):
                a, b, c = face[k - 1], face[k], face[(k + 1) % n]
                faces.append((mid[(min(a, b), max(a, b))], b, mid[(min(b, c), max(b, c))], z))
        labels = {c.vertices[0]: c.label for c in s.boundary_circles}
        new_surfaces.append(CombinatorialSurface.from_faces(faces, labels))

    def through(c: Curve) -> Curve:
        out = []
        vs = c.vertices
        for k, v in enumerate(vs):
            out.append(v)
            if k + 1 < len(vs) or (c.closed and len(vs) > 1):
                w = vs[(k + 1) % len(vs)]
                out.append(mid[(min(v, w), max(v, w))])
        return Curve(tuple(out), c.closed)

    fams = [f.with_curves(through(c) for c in f) for f in families]
    return new_surfaces, fams, [through(c) for c in extra]


def subdivide_binding_edge(
    surfaces: Sequence[CombinatorialSurface], u: int, v: int, m: int
) -> list[CombinatorialSurface]:
    """Insert ``m`` on the binding edge ``(u, v)`` in every surface."""
    out = []
    for s in surfaces:
        faces = []
        for face in s.faces:
            n = len(face)
            new = []
            for k in range(n):
                a, b = face[k], face[(k + 1) % n]
                new.append(a)
                if {a, b} == {u, v}:
                    new.append(m)
            faces.append(tuple(new))
        labels = {c.vertices[0]: c.label for c in s.boundary_circles}
        out.append(CombinatorialSurface.from_faces(faces, labels))
    return out


def subdivide_interior_edge(
    surface: CombinatorialSurface,
    families: Sequence[CurveSystem],
    u: int,
    v: int,
    m: int,
    extra: Sequence[Curve] = (),
) -> tuple[CombinatorialSurface, list[CurveSystem], list[Curve]]:
    """Insert ``m`` on an edge owned by one surface, updating curves through it."""
    (new,) = subdivide_binding_edge([surface], u, v, m)

    def fix(c: Curve) -> Curve:
        vs = c.vertices
        out = []
        for k, a in enumerate(vs):
            out.append(a)
            if k + 1 < len(vs) or c.closed:
                b = vs[(k + 1) % len(vs)]
                if {a, b} == {u, v}:
                    out.append(m)
        return Curve(tuple(out), c.closed)

    return new, [f.with_curves(fix(c) for c in f) for f in families], [fix(c) for c in extra]


# ---------------------------------------------------------------------------
# Torus handles
# ---------------------------------------------------------------------------

TORUS_GRID = 6


def torus_handle(
    surface: CombinatorialSurface, face_index: int, fresh: Iterator[int]
) -> tuple[CombinatorialSurface, dict[str, Curve]]:
    """Connected sum of ``surface`` with a grid torus inside one face.

    The face is inset by a ring of quadrilaterals so that the handle touches
    no existing vertex.  Returns the new surface and curves on the handle:
    parallel meridians ``mu1`` and ``mu2``, a longitude ``lam`` meeting each
    meridian once with ``curve_intersections(mu, lam)`` equal to ``+1``, and
    a ``(1, 1)`` curve ``diag`` meeting ``mu1`` and ``lam`` once each.
    """
    face = surface.faces[face_index]
    n = len(face)
    w = [next(fresh) for _ in range(n)]
    z = next(fresh)
    faces = [f for k, f in enumerate(surface.faces) if k != face_index]
    for k in range(n):
        faces.append((face[k], face[(k + 1) % n], w[(k + 1) % n], w[k]))
    for k in range(1, n):
        faces.append((w[k], w[(k + 1) % n], z))
    hole = (w[0], w[1], z)
    N = TORUS_GRID
    ids: dict[tuple[int, int], int] = {}

    def vid(i: int, j: int) -> int:
        key = (i % N, j % N)
        if key not in ids:
            ids[key] = next(fresh)
        return ids[key]

    tfaces = grid_torus_faces(N, vid)
    removed = tfaces[0]
    mapping = {removed[0]: hole[0], removed[1]: hole[2], removed[2]: hole[1]}
    faces += [tuple(mapping.get(v, v) for v in f) for f in tfaces[1:]]
    labels = {c.vertices[0]: c.label for c in surface.boundary_circles}
    new = CombinatorialSurface.from_faces(faces, labels)
    curves = {
        "mu1": Curve(tuple(vid(i, 2) for i in range(N))),
        "mu2": Curve(tuple(vid(i, 4) for i in range(N))),
        "lam": Curve(tuple(vid(3, j) for j in range(N))),
        "diag": Curve(tuple(vid(t, t + 3) for t in range(N))),
    }
    return new, curves


# ---------------------------------------------------------------------------
# Band surgery
# ---------------------------------------------------------------------------


def check_neat_arc(surface: CombinatorialSurface, arc: Curve) -> None:
    if arc.closed:
        raise InvalidSite("stabilisation arc must be an arc, not a closed curve")
    vs = arc.vertices
    if len(vs) < 3 or not arc.is_simple():
        raise InvalidSite("stabilisation arc must be simple with an interior vertex")
    bnd = surface.boundary_vertices()
    if vs[0] not in bnd or vs[-1] not in bnd:
        raise InvalidSite("arc endpoints must lie on the binding")
    if any(v in bnd for v in vs[1:-1]):
        raise InvalidSite("arc interior must avoid the binding")
    for u, v in arc.edges():
        if not surface.has_edge(u, v):
            raise InvalidSite(f"({u}, {v}) is not an edge of the surface")


def band_surgery(
    surfaces: list[CombinatorialSurface],
    cut_index: int,
    receivers: Sequence[int],
    arc: Curve,
    families: list[CurveSystem],
    reroute: dict[int, int],
    fresh: Iterator[int],
) -> tuple[list[CombinatorialSurface], list[CurveSystem], dict]:
    """Cut ``surfaces[cut_index]`` along ``arc`` and attach a band to each receiver.

    ``reroute`` maps a family index to the receiver through whose band the
    curves of that family are rerouted where they cross the arc; curves of
    other families must avoid the arc.  Returns the new surfaces, families
    and a record with the arc copies and the band rungs
    ``rungs[t][receiver] = middle vertex``.
    """
    S = surfaces[cut_index]
    check_neat_arc(S, arc)
    vs = arc.vertices
    m = len(vs) - 1
    for fi, fam in enumerate(families):
        for c in fam:
            hit = set(c.vertices) & set(vs)
            if vs[0] in hit or vs[-1] in hit:
                raise InvalidSite("arc endpoints must not lie on a curve")
            if hit and fi not in reroute:
                raise InvalidSite(f"arc meets a curve of {fam.family}, which cannot be rerouted")
            arc_edges = {frozenset(e) for e in arc.edges()}
            if any(frozenset(e) in arc_edges for e in c.edges()):
                raise NonTransverse("a curve runs along the stabilisation arc")
    cut, copies = cut_along_map(S, [arc], start=next(fresh))
    # Keep the counter ahead of the copies.
    top = max(copies.values())
    while True:
        x = next(fresh)
        if x > top:
            break
    if len(cut.components) != 1:
        raise SeparatingArc("the arc separates its surface")
    plus = list(vs)
    minus = [copies[v] for v in vs]
    binding = S.boundary_vertices()
    circle_of = {}
    for circ in S.boundary_circles:
        for k, v in enumerate(circ.vertices):
            circle_of[v] = (circ.vertices, k)

    def neighbours_on_binding(v: int) -> tuple[int, int]:
        cyc, k = circle_of[v]
        return cyc[k - 1], cyc[(k + 1) % len(cyc)]

    u0, w0 = neighbours_on_binding(vs[0])
    um, wm = neighbours_on_binding(vs[-1])
    if len({vs[0], vs[-1], u0, w0, um, wm}) < 6:
        raise InvalidSite("arc endpoints are too close on the binding; subdivide it first")
    new_surfaces = list(surfaces)
    new_surfaces[cut_index] = CombinatorialSurface.from_faces(cut.faces)
    rungs: dict[int, dict[int, int]] = {t: {} for t in range(m + 1)}
    for r in receivers:
        R = surfaces[r]
        mids = [next(fresh) for _ in range(m + 1)]
        ren = {vs[0]: mids[0], vs[-1]: mids[m]}
        faces = [tuple(ren.get(v, v) for v in f) for f in R.faces]
        for t in range(m):
            faces.append((plus[t], plus[t + 1], mids[t + 1], mids[t]))
            faces.append((minus[t + 1], minus[t], mids[t], mids[t + 1]))
        faces.append((u0, plus[0], mids[0]))
        faces.append((mids[0], minus[0], w0))
        faces.append((mids[m], plus[m], wm))
        faces.append((um, minus[m], mids[m]))
        new_surfaces[r] = CombinatorialSurface.from_faces(faces)
        for t in range(m + 1):
            rungs[t][r] = mids[t]
    cut_surface = new_surfaces[cut_index]
    new_families = []
    for fi, fam in enumerate(families):
        if fi not in reroute:
            new_families.append(fam)
            continue
        r = reroute[fi]
        curves = []
        for c in fam:
            cv = list(c.vertices)
            out = []
            n = len(cv)
            for k, v in enumerate(cv):
                if v not in vs:
                    out.append(v)
                    continue
                t = vs.index(v)
                p, q = cv[k - 1], cv[(k + 1) % n]
                sp = v if cut_surface.has_edge(p, v) else copies[v]
                sq = v if cut_surface.has_edge(v, q) else copies[v]
                if sp == sq:
                    raise NonTransverse(f"curve touches the arc at {v} without crossing")
                out += [sp, rungs[t][r], sq]
            curves.append(Curve(tuple(out), c.closed))
        new_families.append(fam.with_curves(curves))
    record = {
        "plus": plus,
        "minus": minus,
        "rungs": rungs,
        "binding": binding,
        "ends": (u0, w0, um, wm),
        "receivers": tuple(receivers),
        "cut": cut_index,
    }
    return new_surfaces, new_families, record


def rung_curve(record: dict, t: int, first: int, second: int) -> Curve:
    """Closed curve through rung ``t`` of the bands on two receivers."""
    a, b = record["plus"][t], record["minus"][t]
    return Curve((a, record["rungs"][t][first], b, record["rungs"][t][second]))


def free_rung(record: dict, families: Sequence[CurveSystem], avoid: Iterable[int] = ()) -> int | None:
    """A rung index whose binding vertices carry no curve."""
    used = set()
    for fam in families:
        used |= fam.vertex_set()
    avoid = set(avoid)
    for t in range(len(record["plus"])):
        if t in avoid:
            continue
        if record["plus"][t] not in used and record["minus"][t] not in used:
            return t
    return None


# ---------------------------------------------------------------------------
# Boundary sums
# ---------------------------------------------------------------------------


def relabel_apart(
    surfaces: Sequence[CombinatorialSurface], families: Sequence[CurveSystem], start: int
) -> tuple[list[CombinatorialSurface], list[CurveSystem], int]:
    """Shift every vertex id by a constant so the ids start at ``start``."""
    lo = min(min(s.vertices) for s in surfaces)
    shift = start - lo
    ids = set()
    for s in surfaces:
        ids |= set(s.vertices)
    mapping = {v: v + shift for v in ids}
    return (
        [s.renamed(mapping) for s in surfaces],
        [f.renamed(mapping) for f in families],
        max(ids) + shift + 1,
    )


def boundary_sum(
    first: Sequence[CombinatorialSurface],
    second: Sequence[CombinatorialSurface],
    q1: int,
    q2: int,
    fresh: Iterator[int],
) -> list[CombinatorialSurface]:
    """Boundary connected sum of surfaces paired index by index.

    A new binding vertex is inserted on the first edge of binding circle
    ``q1`` (of ``first``) and ``q2`` (of ``second``); in each pair of
    surfaces these vertices become interior and a hexagon joins the two
    binding circles into one.  Vertex ids of the inputs must be disjoint.
    """
    c1 = first[0].boundary_circles[q1].vertices
    c2 = second[0].boundary_circles[q2].vertices
    x1, y1 = c1[0], c1[1]
    x2, y2 = c2[0], c2[1]
    m1, m2 = next(fresh), next(fresh)
    A = subdivide_binding_edge(first, x1, y1, m1)
    B = subdivide_binding_edge(second, x2, y2, m2)
    out = []
    for sa, sb in zip(A, B):
        n1, n2 = next(fresh), next(fresh)
        faces = [tuple(n1 if v == m1 else v for v in f) for f in sa.faces]
        faces += [tuple(n2 if v == m2 else v for v in f) for f in sb.faces]
        faces.append((y1, n1, x1, y2, n2, x2))
        out.append(CombinatorialSurface.from_faces(faces))
    return out


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------


def _relabel_from(
    surfaces: Sequence[CombinatorialSurface], start: tuple[int, int]
) -> dict[int, int]:
    """Vertex labels in order of a face-by-face traversal started at a binding dart.

    Every surface contains the dart ``start`` (with the surface on its left),
    so the traversal depends only on the combinatorics of the diagram.
    """
    labels: dict[int, int] = {}
    for s in surfaces:
        where: dict[tuple[int, int], tuple[int, int]] = {}
        for f, face in enumerate(s.faces):
            n = len(face)
            for k in range(n):
                where[(face[k], face[(k + 1) % n])] = (f, k)
        seen: set[int] = set()
        queue = deque([where[start]])
        while queue:
            f, k0 = queue.popleft()
            if f in seen:
                continue
            seen.add(f)
            face = s.faces[f]
            n = len(face)
            for j in range(n):
                a, b = face[(k0 + j) % n], face[(k0 + j + 1) % n]
                if a not in labels:
                    labels[a] = len(labels)
                nb = where.get((b, a))
                if nb is not None and nb[0] not in seen:
                    queue.append(nb)
    return labels


def canonical_key(
    surfaces: Sequence[CombinatorialSurface], families: Sequence[CurveSystem]
) -> tuple:
    """Lexicographically minimal encoding over all binding start darts.

    Two diagrams have equal keys exactly when a vertex relabeling carries
    one onto the other, surface by surface and family by family.
    """
    best = None
    for circ in surfaces[0].boundary_circles:
        cyc = circ.vertices
        for k in range(len(cyc)):
            mapping = _relabel_from(surfaces, (cyc[k], cyc[(k + 1) % len(cyc)]))
            if len(mapping) != len({v for s in surfaces for v in s.vertices}):
                raise InvalidSite("diagram surfaces are not connected")
            key = (
                tuple(
                    tuple(sorted(_rotate_min(tuple(mapping[v] for v in f)) for f in s.faces))
                    for s in surfaces
                ),
                tuple(
                    (fam.family, tuple(sorted(c.renamed(mapping).canonical().vertices for c in fam)))
                    for fam in families
                ),
            )
            if best is None or key < best:
                best = key
    return best


def _rotate_min(seq: tuple[int, ...]) -> tuple[int, ...]:
    k = seq.index(min(seq))
    return seq[k:] + seq[:k]
