"""Combinatorial oriented surfaces with boundary, curves on them, cutting and gluing.

A surface is stored as a list of polygonal faces, each a tuple of vertex ids
listed counterclockwise (the face lies to the left of every directed edge
``face[k] -> face[k+1]``).  Each face side is a dart; two darts on the same
edge with opposite directions are paired by ``opposite``, and an unpaired
dart is a boundary edge.  The rotation system (counterclockwise order of
darts around a vertex) and the boundary circles are derived from the faces.

Surfaces are required to be polyhedral: every face has at least three
distinct vertices, every directed edge occurs in at most one face, and the
link of every vertex is a single cycle (interior vertex) or a single path
(boundary vertex).  This rules out degenerate gluings and makes curves
representable as vertex sequences.

Curves are walks in the 1-skeleton.  A closed curve is a vertex cycle and an
arc is a vertex path whose ends lie on the boundary or at marked vertices.
Transversality is a combinatorial condition on the cyclic order of edges at
shared vertices.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import count
from typing import Iterable, Iterator, Sequence

from .errors import LabelMismatch, LengthMismatch, MalformedMap, NonTransverse
from .report import CheckReport

FAMILY_TAGS = (
    "alpha_1", "alpha_2", "alpha_3",
    "delta_1", "delta_2", "delta_3",
    "tau_1", "tau_2", "tau_3",
    "L_1", "L_2", "L_3",
)


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Curve:
    """A simple closed curve (vertex cycle) or an arc (vertex path).

    For a closed curve the last vertex is joined back to the first; the first
    vertex is not repeated.
    """

    vertices: tuple[int, ...]
    closed: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        pairs = list(zip(vs, vs[1:]))
        if self.closed and len(vs) > 1:
            pairs.append((vs[-1], vs[0]))
        return pairs

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def neighbours(self, v: int) -> tuple[int | None, int | None]:
        """Previous and next vertex of the curve around ``v``."""
        vs = self.vertices
        k = vs.index(v)
        n = len(vs)
        if self.closed:
            return vs[k - 1], vs[(k + 1) % n]
        prev = vs[k - 1] if k > 0 else None
        nxt = vs[k + 1] if k < n - 1 else None
        return prev, nxt

    def reversed(self) -> "Curve":
        return Curve(tuple(reversed(self.vertices)), self.closed)

    def renamed(self, mapping: dict[int, int]) -> "Curve":
        return Curve(tuple(mapping.get(v, v) for v in self.vertices), self.closed)

    def canonical(self) -> "Curve":
        """Rotation and direction normal form (used for comparisons)."""
        vs = self.vertices
        if not self.closed:
            return Curve(min(vs, vs[::-1]), False)
        best = None
        for seq in (vs, vs[::-1]):
            k = seq.index(min(seq))
            cand = seq[k:] + seq[:k]
            if best is None or cand < best:
                best = cand
        return Curve(best, True)


@dataclass(frozen=True)
class CurveSystem:
    """A family of curves carrying one of the tags in ``FAMILY_TAGS``."""

    family: str
    curves: tuple[Curve, ...] = ()

    def __post_init__(self) -> None:
        if self.family not in FAMILY_TAGS:
            raise ValueError(f"unknown family tag {self.family!r}")
        object.__setattr__(self, "curves", tuple(self.curves))

    def __len__(self) -> int:
        return len(self.curves)

    def __iter__(self) -> Iterator[Curve]:
        return iter(self.curves)

    def vertex_set(self) -> set[int]:
        return {v for c in self.curves for v in c.vertices}

    def with_curves(self, curves: Iterable[Curve]) -> "CurveSystem":
        return CurveSystem(self.family, tuple(curves))

    def renamed(self, mapping: dict[int, int]) -> "CurveSystem":
        return CurveSystem(self.family, tuple(c.renamed(mapping) for c in self.curves))


@dataclass(frozen=True)
class BoundaryCircle:
    """A boundary component traversed with the surface on its left."""

    label: int
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]


def _rotate_to_min(seq: Sequence[int]) -> tuple[int, ...]:
    k = seq.index(min(seq))
    return tuple(seq[k:]) + tuple(seq[:k])


# ---------------------------------------------------------------------------
# Surfaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CombinatorialSurface:
    """An oriented surface given by counterclockwise polygonal faces.

    ``labels`` maps the minimal vertex of a boundary circle to its binding
    label; circles absent from it are labelled by their index in
    ``boundary_circles`` order.  Set ``disjoint_union`` to allow several
    components.
    """

    faces: tuple[tuple[int, ...], ...]
    labels: tuple[tuple[int, int], ...] = ()
    disjoint_union: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "faces", tuple(tuple(int(v) for v in f) for f in self.faces)
        )
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))
        self._validate()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_faces(
        cls,
        faces: Iterable[Sequence[int]],
        labels: dict[int, int] | None = None,
        disjoint_union: bool = False,
    ) -> "CombinatorialSurface":
        return cls(
            tuple(tuple(f) for f in faces),
            tuple((labels or {}).items()),
            disjoint_union,
        )

    def with_faces(self, faces: Iterable[Sequence[int]], **kw) -> "CombinatorialSurface":
        labels = kw.pop("labels", None)
        if labels is None:
            labels = dict(self.labels)
        return CombinatorialSurface.from_faces(
            faces, labels, kw.pop("disjoint_union", self.disjoint_union)
        )

    def renamed(self, mapping: dict[int, int]) -> "CombinatorialSurface":
        faces = [tuple(mapping.get(v, v) for v in f) for f in self.faces]
        labels = {}
        old = {c.vertices: c.label for c in self.boundary_circles}
        for vs, lab in old.items():
            labels[min(mapping.get(v, v) for v in vs)] = lab
        return CombinatorialSurface.from_faces(faces, labels, self.disjoint_union)

    def reversed(self) -> "CombinatorialSurface":
        """The same surface with the opposite orientation."""
        faces = [tuple(reversed(f)) for f in self.faces]
        labels = {c.vertices[0]: c.label for c in self.boundary_circles}
        return CombinatorialSurface.from_faces(faces, labels, self.disjoint_union)

    # -- darts ------------------------------------------------------------

    @cached_property
    def darts(self) -> tuple[tuple[int, int], ...]:
        """Dart ``d`` is the side ``faces[f][k] -> faces[f][k+1]``; listed as (f, k)."""
        return tuple((f, k) for f, face in enumerate(self.faces) for k in range(len(face)))

    @cached_property
    def _dart_of_edge(self) -> dict[tuple[int, int], int]:
        table: dict[tuple[int, int], int] = {}
        for d, (f, k) in enumerate(self.darts):
            face = self.faces[f]
            table[(face[k], face[(k + 1) % len(face)])] = d
        return table

    def dart_endpoints(self, d: int) -> tuple[int, int]:
        f, k = self.darts[d]
        face = self.faces[f]
        return face[k], face[(k + 1) % len(face)]

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        return tuple(self.dart_endpoints(d)[0] for d in range(len(self.darts)))

    @cached_property
    def opposite(self) -> dict[int, int]:
        """Pairing of darts; boundary darts are absent."""
        table = self._dart_of_edge
        out = {}
        for (u, v), d in table.items():
            e = table.get((v, u))
            if e is not None:
                out[d] = e
        return out

    @cached_property
    def next_ccw(self) -> dict[int, int]:
        """Counterclockwise successor of each outgoing dart around its vertex.

        A dart ``v -> n`` lying in face ``(.., p, v, n, ..)`` is followed by the
        dart ``v -> p``.  At a boundary vertex the last dart has no successor
        and is absent from the table.
        """
        table = self._dart_of_edge
        out = {}
        for d, (f, k) in enumerate(self.darts):
            face = self.faces[f]
            v, p = face[k], face[k - 1]
            e = table.get((v, p))
            if e is not None:
                out[d] = e
        return out

    # -- vertices, edges, corners ----------------------------------------

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.faces for v in f}))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Undirected edges as sorted pairs."""
        return tuple(sorted({(min(u, v), max(u, v)) for (u, v) in self._dart_of_edge}))

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._dart_of_edge or (v, u) in self._dart_of_edge

    def is_boundary_edge(self, u: int, v: int) -> bool:
        a = (u, v) in self._dart_of_edge
        b = (v, u) in self._dart_of_edge
        return a != b

    @cached_property
    def _corner_by_out(self) -> dict[tuple[int, int], tuple[int, int]]:
        """(v, out-neighbour) -> corner (face, position)."""
        table = {}
        for f, face in enumerate(self.faces):
            n = len(face)
            for k in range(n):
                table[(face[k], face[(k + 1) % n])] = (f, k)
        return table

    def corner_in(self, corner: tuple[int, int]) -> int:
        f, k = corner
        return self.faces[f][k - 1]

    def corner_out(self, corner: tuple[int, int]) -> int:
        f, k = corner
        face = self.faces[f]
        return face[(k + 1) % len(face)]

    @cached_property
    def _corners(self) -> dict[int, tuple[tuple[tuple[int, int], ...], bool]]:
        """Vertex -> (corners in counterclockwise order, is_boundary)."""
        by_vertex: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for f, face in enumerate(self.faces):
            for k, v in enumerate(face):
                by_vertex[v].append((f, k))
        result = {}
        cbo = self._corner_by_out
        for v, corners in by_vertex.items():
            ins = {self.corner_in(c) for c in corners}
            starts = [c for c in corners if self.corner_out(c) not in ins]
            if len(starts) > 1:
                raise MalformedMap(f"vertex {v} has a disconnected link")
            boundary = bool(starts)
            c = starts[0] if boundary else min(corners)
            seq = [c]
            while True:
                nxt = cbo.get((v, self.corner_in(c)))
                if nxt is None or nxt == seq[0]:
                    break
                seq.append(nxt)
                c = nxt
                if len(seq) > len(corners):
                    raise MalformedMap(f"vertex {v} has a malformed link")
            if len(seq) != len(corners):
                raise MalformedMap(f"vertex {v} has a link with several pieces")
            result[v] = (tuple(seq), boundary)
        return result

    def corners_at(self, v: int) -> tuple[tuple[int, int], ...]:
        """Corners at ``v`` in counterclockwise order.

        At a boundary vertex the order starts at the corner whose outgoing edge
        is the boundary edge leaving ``v``.
        """
        return self._corners[v][0]

    def is_boundary_vertex(self, v: int) -> bool:
        return self._corners[v][1]

    def neighbours_ccw(self, v: int) -> tuple[int, ...]:
        """Neighbours of ``v`` in counterclockwise order.

        For a boundary vertex the list runs from the next boundary vertex to
        the previous one through the interior of the surface.
        """
        corners = self.corners_at(v)
        out = [self.corner_out(c) for c in corners]
        if self.is_boundary_vertex(v):
            out.append(self.corner_in(corners[-1]))
        return tuple(out)

    # -- boundary ---------------------------------------------------------

    @cached_property
    def boundary_circles(self) -> tuple[BoundaryCircle, ...]:
        table = self._dart_of_edge
        succ = {}
        for (u, v) in table:
            if (v, u) not in table:
                succ[u] = v
        seen: set[int] = set()
        cycles = []
        for start in sorted(succ):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            v = succ[start]
            while v != start:
                cyc.append(v)
                seen.add(v)
                v = succ[v]
            cycles.append(tuple(cyc))
        labels = dict(self.labels)
        out = []
        for idx, cyc in enumerate(cycles):
            out.append(BoundaryCircle(labels.get(cyc[0], idx), cyc))
        return tuple(out)

    def boundary_vertices(self) -> set[int]:
        return {v for c in self.boundary_circles for v in c.vertices}

    def interior_vertices(self) -> set[int]:
        return set(self.vertices) - self.boundary_vertices()

    def circle(self, label: int) -> BoundaryCircle:
        for c in self.boundary_circles:
            if c.label == label:
                return c
        raise KeyError(label)

    # -- invariants -------------------------------------------------------

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        """Vertex sets of connected components."""
        parent = {v: v for v in self.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for face in self.faces:
            r = find(face[0])
            for v in face[1:]:
                s = find(v)
                if s != r:
                    parent[s] = r
        groups: dict[int, set[int]] = defaultdict(set)
        for v in self.vertices:
            groups[find(v)].add(v)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=min))

    def _validate(self) -> None:
        seen: set[tuple[int, int]] = set()
        for f, face in enumerate(self.faces):
            if len(face) < 3:
                raise MalformedMap(f"face {f} has fewer than three vertices")
            if len(set(face)) != len(face):
                raise MalformedMap(f"face {f} repeats a vertex")
            n = len(face)
            for k in range(n):
                e = (face[k], face[(k + 1) % n])
                if e in seen:
                    raise MalformedMap(f"directed edge {e} occurs twice (face {f})")
                seen.add(e)
        if not self.faces:
            raise MalformedMap("surface has no faces")
        _ = self._corners
        if not self.disjoint_union and len(self.components) != 1:
            raise MalformedMap("surface is disconnected")


# ---------------------------------------------------------------------------
# Classification and standard models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceType:
    genus: int
    boundary_count: int
    component_count: int

    def __iter__(self):
        return iter((self.genus, self.boundary_count, self.component_count))


def classify_surface(S: CombinatorialSurface) -> SurfaceType:
    """Total genus, boundary count and component count."""
    chi = S.euler_characteristic()
    b = len(S.boundary_circles)
    c = len(S.components)
    twice_genus = 2 * c - b - chi
    if twice_genus < 0 or twice_genus % 2:
        raise MalformedMap(f"inconsistent Euler characteristic {chi}")
    return SurfaceType(twice_genus // 2, b, c)


def grid_torus_faces(n: int, vid) -> list[tuple[int, ...]]:
    """Triangulated ``n x n`` torus grid; ``vid(i, j)`` names vertex (i mod n, j mod n).

    Each unit square ``(i, j)`` is split along the diagonal from ``(i, j)`` to
    ``(i+1, j+1)``, so rows, columns and diagonals are all edge cycles.
    """
    faces = []
    for i in range(n):
        for j in range(n):
            a = vid(i % n, j % n)
            b = vid((i + 1) % n, j % n)
            c = vid((i + 1) % n, (j + 1) % n)
            d = vid(i % n, (j + 1) % n)
            faces.append((a, b, c))
            faces.append((a, c, d))
    return faces


def grid_disk_faces(m: int, vid, anti: bool = False) -> list[tuple[int, ...]]:
    """Triangulated ``m x m`` square grid with vertices ``vid(i, j)``, 0 <= i, j <= m.

    Squares are split along ``(i, j)-(i+1, j+1)``, or along the other
    diagonal when ``anti`` is set.
    """
    faces = []
    for i in range(m):
        for j in range(m):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            if anti:
                faces.append((a, b, d))
                faces.append((b, c, d))
            else:
                faces.append((a, b, c))
                faces.append((a, c, d))
    return faces


def standard_surface(genus: int, boundary_count: int) -> CombinatorialSurface:
    """Canonical polyhedral model of the connected surface of given type.

    Construction: a sphere made by doubling an ``m x m`` triangulated grid,
    with ``m = 2(genus + boundary_count) + 2``.  Sites are the triangles
    ``((2t+1, 1), (2t+2, 1), (2t+2, 2))`` of the top sheet for
    ``t = 0, 1, ...``; the first ``genus`` sites receive a 3 x 3 grid torus
    summand and the next ``boundary_count`` are removed to form holes.
    Vertices are finally renumbered 0, 1, ... in order of first appearance
    in the face list, so the numbering is deterministic.
    """
    if genus < 0 or boundary_count < 0:
        raise ValueError("genus and boundary_count must be non-negative")
    m = 2 * (genus + boundary_count) + 2

    def top(i: int, j: int) -> int:
        return i * (m + 1) + j

    def bottom(i: int, j: int) -> int:
        if i in (0, m) or j in (0, m):
            return top(i, j)
        return (m + 1) ** 2 + i * (m + 1) + j

    faces = grid_disk_faces(m, top)
    faces += [tuple(reversed(f)) for f in grid_disk_faces(m, bottom, anti=True)]
    fresh = count(2 * (m + 1) ** 2)
    sites = []
    for t in range(genus + boundary_count):
        site = (top(2 * t + 1, 1), top(2 * t + 2, 1), top(2 * t + 2, 2))
        sites.append(site)
    site_set = {tuple(s) for s in sites}
    faces = [f for f in faces if f not in site_set]
    for site in sites[:genus]:
        faces += torus_summand_faces(site, fresh)
    surface = CombinatorialSurface.from_faces(faces)
    order: dict[int, int] = {}
    for face in surface.faces:
        for v in face:
            order.setdefault(v, len(order))
    return CombinatorialSurface.from_faces(
        [tuple(order[v] for v in f) for f in surface.faces]
    )


def torus_summand_faces(
    hole: Sequence[int], fresh: Iterator[int], n: int = 3
) -> list[tuple[int, ...]]:
    """Faces of an ``n x n`` grid torus minus one triangle, to be glued into ``hole``.

    ``hole`` is a counterclockwise triangle that has been removed from the
    host surface.  The removed torus triangle ``(t0, t1, t2)`` is identified
    with ``(hole[0], hole[2], hole[1])`` so that orientations agree.
    """
    ids = {}

    def vid(i: int, j: int) -> int:
        key = (i % n, j % n)
        if key not in ids:
            ids[key] = next(fresh)
        return ids[key]

    faces = grid_torus_faces(n, vid)
    removed = faces[0]
    mapping = {removed[0]: hole[0], removed[1]: hole[2], removed[2]: hole[1]}
    return [tuple(mapping.get(v, v) for v in f) for f in faces[1:]]


# ---------------------------------------------------------------------------
# Subdivision
# ---------------------------------------------------------------------------


def _insert_on_edge(
    faces: list[tuple[int, ...]], u: int, v: int, m: int
) -> list[tuple[int, ...]]:
    out = []
    for face in faces:
        n = len(face)
        new = []
        for k in range(n):
            a, b = face[k], face[(k + 1) % n]
            new.append(a)
            if (a, b) in ((u, v), (v, u)):
                new.append(m)
        out.append(tuple(new))
    return out


def _retarget_edge(curves: Iterable[Curve], u: int, v: int, m: int) -> list[Curve]:
    out = []
    for c in curves:
        vs = list(c.vertices)
        new = []
        n = len(vs)
        for k in range(n):
            new.append(vs[k])
            if k + 1 < n or c.closed:
                b = vs[(k + 1) % n]
                if {vs[k], b} == {u, v} and n > 1:
                    new.append(m)
        out.append(Curve(tuple(new), c.closed))
    return out


def _fresh_id(S: CombinatorialSurface, tracked: Sequence[CurveSystem]) -> int:
    used = set(S.vertices)
    for cs in tracked:
        used |= cs.vertex_set()
    return max(used) + 1


def subdivide(
    S: CombinatorialSurface,
    target,
    scheme: str,
    tracked: Sequence[CurveSystem] = (),
    new_vertex: int | None = None,
) -> tuple[CombinatorialSurface, list[CurveSystem]]:
    """Subdivide one edge or face, carrying curve systems along.

    ``target`` is ``("edge", (u, v))`` or ``("face", index)``.  Schemes:

    ``midpoint``
        edge target; a new vertex is inserted on the edge.
    ``cone``
        face target; the face is coned from a new centre vertex.
    ``barycentric``
        face target; every side of the face gets a midpoint and the face is
        split into triangles ``(corner, midpoint, centre)``.

    Curves running along a subdivided edge pass through the new midpoint, so
    their isotopy classes and mutual intersections are unchanged.
    """
    kind, where = target
    fresh = count(new_vertex if new_vertex is not None else _fresh_id(S, tracked))
    faces = list(S.faces)
    systems = [list(cs.curves) for cs in tracked]
    if kind == "edge":
        if scheme != "midpoint":
            raise ValueError(f"scheme {scheme!r} does not apply to edges")
        u, v = where
        if not S.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
        m = next(fresh)
        faces = _insert_on_edge(faces, u, v, m)
        systems = [_retarget_edge(cs, u, v, m) for cs in systems]
    elif kind == "face":
        idx = int(where)
        face = faces[idx]
        n = len(face)
        if scheme == "cone":
            z = next(fresh)
            new = [(face[k], face[(k + 1) % n], z) for k in range(n)]
            faces = faces[:idx] + faces[idx + 1:] + new
        elif scheme == "barycentric":
            mids = []
            for k in range(n):
                a, b = face[k], face[(k + 1) % n]
                m = next(fresh)
                mids.append(m)
                faces = _insert_on_edge(faces, a, b, m)
                systems = [_retarget_edge(cs, a, b, m) for cs in systems]
            z = next(fresh)
            new = []
            for k in range(n):
                a, b = face[k], face[(k + 1) % n]
                new.append((a, mids[k], z))
                new.append((mids[k], b, z))
            faces = faces[:idx] + faces[idx + 1:] + new
        else:
            raise ValueError(f"unknown face scheme {scheme!r}")
    else:
        raise ValueError(f"unknown target kind {kind!r}")
    labels = {}
    for c in S.boundary_circles:
        labels[c.vertices[0]] = c.label
    out = CombinatorialSurface.from_faces(faces, labels, S.disjoint_union)
    return out, [cs.with_curves(cur) for cs, cur in zip(tracked, systems)]


def refine(
    S: CombinatorialSurface, tracked: Sequence[CurveSystem] = (), start: int | None = None
) -> tuple[CombinatorialSurface, list[CurveSystem], dict]:
    """Quadrangulate every face: midpoints on all edges and a centre per face.

    Returns the new surface, the retargeted curve systems and a dictionary
    with keys ``"edge"`` (sorted edge -> midpoint) and ``"face"`` (face index
    -> centre).
    """
    fresh = count(start if start is not None else _fresh_id(S, tracked))
    mid = {e: next(fresh) for e in S.edges}
    centre = {}
    faces = []
    for f, face in enumerate(S.faces):
        z = next(fresh)
        centre[f] = z
        n = len(face)
        for k in range(n):
            a, b, c = face[k - 1], face[k], face[(k + 1) % n]
            faces.append((mid[(min(a, b), max(a, b))], b, mid[(min(b, c), max(b, c))], z))
    systems = []
    for cs in tracked:
        curves = []
        for c in cs.curves:
            vs = c.vertices
            new = []
            for k, v in enumerate(vs):
                new.append(v)
                if k + 1 < len(vs) or (c.closed and len(vs) > 1):
                    w = vs[(k + 1) % len(vs)]
                    new.append(mid[(min(v, w), max(v, w))])
            curves.append(Curve(tuple(new), c.closed))
        systems.append(cs.with_curves(curves))
    labels = {c.vertices[0]: c.label for c in S.boundary_circles}
    out = CombinatorialSurface.from_faces(faces, labels, S.disjoint_union)
    return out, systems, {"edge": mid, "face": centre}


# ---------------------------------------------------------------------------
# Cutting
# ---------------------------------------------------------------------------


def _left_corners(S: CombinatorialSurface, v: int, p: int | None, n: int | None) -> set[int]:
    """Indices (into ``corners_at(v)``) of corners left of a curve through ``v``.

    The curve arrives from ``p`` and leaves towards ``n``; either may be
    ``None`` at an arc endpoint, which must then be a boundary vertex.
    """
    corners = S.corners_at(v)
    outs = [S.corner_out(c) for c in corners]
    ins = [S.corner_in(c) for c in corners]
    m = len(corners)
    boundary = S.is_boundary_vertex(v)
    if (p is None or n is None) and not boundary:
        raise NonTransverse(f"arc endpoint {v} is not on the boundary")
    if p is not None and n is not None and boundary:
        raise NonTransverse(f"curve passes through boundary vertex {v}")
    try:
        if n is not None:
            i = outs.index(n)
        else:
            i = 0
        left = set()
        while True:
            left.add(i)
            if p is not None and ins[i] == p:
                break
            i += 1
            if i == m:
                if boundary:
                    break
                i = 0
            if len(left) > m:
                raise ValueError
    except ValueError as exc:
        raise NonTransverse(f"curve is not an edge path at vertex {v}") from exc
    return left


def cut_along_map(
    S: CombinatorialSurface,
    curves: Iterable[Curve],
    start: int | None = None,
) -> tuple[CombinatorialSurface, dict[int, int]]:
    """Cut ``S`` along pairwise disjoint curves.

    Every curve vertex ``v`` is split in two: corners to the left of the curve
    keep ``v`` and corners to the right receive a fresh id.  Returns the cut
    surface (possibly disconnected) and the map ``v -> new copy``.
    """
    curves = list(curves)
    seen: set[int] = set()
    for c in curves:
        if not c.is_simple():
            raise NonTransverse("curve is not simple")
        if seen & set(c.vertices):
            raise NonTransverse("curves to cut along are not disjoint")
        seen |= set(c.vertices)
        for u, w in c.edges():
            if not S.has_edge(u, w):
                raise NonTransverse(f"({u}, {w}) is not an edge")
            if S.is_boundary_edge(u, w):
                raise NonTransverse(f"curve runs along boundary edge ({u}, {w})")
    fresh = count(start if start is not None else max(S.vertices) + 1)
    rename: dict[tuple[int, int], int] = {}
    copies: dict[int, int] = {}
    for c in curves:
        if len(c) < (3 if c.closed else 2):
            raise NonTransverse("curve is too short to be embedded")
        for v in c.vertices:
            p, n = c.neighbours(v)
            left = _left_corners(S, v, p, n)
            corners = S.corners_at(v)
            right = [corners[i] for i in range(len(corners)) if i not in left]
            if not right:
                continue
            copy = next(fresh)
            copies[v] = copy
            for corner in right:
                rename[corner] = copy
    faces = []
    for f, face in enumerate(S.faces):
        faces.append(tuple(rename.get((f, k), v) for k, v in enumerate(face)))
    old = {c.vertices: c.label for c in S.boundary_circles}
    labels = {}
    probe = CombinatorialSurface.from_faces(faces, disjoint_union=True)
    next_label = max(old.values(), default=-1) + 1
    for circ in probe.boundary_circles:
        if circ.vertices in old:
            labels[circ.vertices[0]] = old[circ.vertices]
        else:
            labels[circ.vertices[0]] = next_label
            next_label += 1
    return CombinatorialSurface.from_faces(faces, labels, True), copies


def cut_along(S: CombinatorialSurface, C) -> CombinatorialSurface:
    """Cut ``S`` along a curve system (or any iterable of curves)."""
    return cut_along_map(S, C)[0]


def is_non_separating(S: CombinatorialSurface, curves: Iterable[Curve]) -> bool:
    cut = cut_along(S, curves)
    return len(cut.components) == len(S.components)


def verify_cut_system(S: CombinatorialSurface, C) -> CheckReport:
    """Check that ``C`` is a cut system of the closed connected surface ``S``.

    A cut system of a genus ``g`` surface consists of ``g`` disjoint simple
    closed curves whose complement is connected (hence a sphere with ``2g``
    holes).
    """
    report = CheckReport()
    curves = list(C)
    stype = classify_surface(S)
    report.info["genus"] = stype.genus
    report.info["curves"] = len(curves)
    if stype.boundary_count or stype.component_count != 1:
        report.fail("surface is not closed and connected")
        return report
    for idx, c in enumerate(curves):
        if not c.closed:
            report.fail(f"curve {idx} is not closed")
        elif not c.is_simple():
            report.fail(f"curve {idx} is not simple")
    if not report.ok:
        return report
    for a in range(len(curves)):
        for b in range(a + 1, len(curves)):
            if set(curves[a].vertices) & set(curves[b].vertices):
                report.fail(f"curves {a} and {b} intersect")
    if not report.ok:
        return report
    if len(curves) != stype.genus:
        report.fail(f"cut system has {len(curves)} curves but genus is {stype.genus}")
        return report
    try:
        cut = cut_along(S, curves)
    except NonTransverse as exc:
        report.fail(f"curves are not embedded in the 1-skeleton: {exc}")
        return report
    ctype = classify_surface(cut)
    report.info["cut_type"] = tuple(ctype)
    if ctype.component_count != 1:
        report.fail(f"cutting disconnects the surface into {ctype.component_count} pieces")
    elif ctype.genus != 0:
        report.fail(f"cut surface has genus {ctype.genus}, expected 0")
    return report


# ---------------------------------------------------------------------------
# Intersections
# ---------------------------------------------------------------------------


def curve_intersections(
    S: CombinatorialSurface, c1: Curve, c2: Curve
) -> list[tuple[int, int]]:
    """Signed transverse intersection points of two curves on ``S``.

    The sign at a shared vertex is +1 when, turning counterclockwise from the
    outgoing edge of ``c1``, the outgoing edge of ``c2`` is met before the
    incoming edge of ``c1``.  Endpoints of arcs that meet on the boundary are
    not intersections.  Shared edges or tangential contacts raise
    ``NonTransverse``.
    """
    e1 = {frozenset(e) for e in c1.edges()}
    e2 = {frozenset(e) for e in c2.edges()}
    if e1 & e2:
        raise NonTransverse("curves share an edge")
    out = []
    for v in sorted(set(c1.vertices) & set(c2.vertices)):
        p1, n1 = c1.neighbours(v)
        p2, n2 = c2.neighbours(v)
        if None in (p1, n1) or None in (p2, n2):
            if S.is_boundary_vertex(v):
                continue
            raise NonTransverse(f"arc ends on another curve at {v}")
        out.append((v, crossing_sign_at(S, v, (p1, n1), (p2, n2))))
    return out


def crossing_sign_at(
    S: CombinatorialSurface, v: int, first: tuple[int, int], second: tuple[int, int]
) -> int:
    """Sign of a transverse crossing at the interior vertex ``v``.

    ``first`` and ``second`` are the (previous, next) neighbours of the two
    strands.  The convention matches ``curve_intersections``.
    """
    p1, n1 = first
    p2, n2 = second
    if S.is_boundary_vertex(v):
        raise NonTransverse(f"curves meet on the boundary at {v}")
    nb = S.neighbours_ccw(v)
    pos = {w: i for i, w in enumerate(nb)}
    if any(w not in pos for w in (p1, n1, p2, n2)):
        raise NonTransverse(f"strands at {v} do not run along edges of the surface")
    if {p1, n1} & {p2, n2}:
        raise NonTransverse(f"strands share an edge at {v}")
    deg = len(nb)
    rel = {w: (pos[w] - pos[n1]) % deg for w in (p1, n2, p2)}
    n2_inside = 0 < rel[n2] < rel[p1]
    p2_inside = 0 < rel[p2] < rel[p1]
    if n2_inside == p2_inside:
        raise NonTransverse(f"curves touch without crossing at {v}")
    return 1 if n2_inside else -1


def algebraic_intersection(S: CombinatorialSurface, c1: Curve, c2: Curve) -> int:
    return sum(s for _, s in curve_intersections(S, c1, c2))


# ---------------------------------------------------------------------------
# Gluing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Identification:
    """Glue circle ``a`` to circle ``b``; both are (surface index, label).

    Position ``t`` of circle ``a`` meets position ``offset + t`` of circle
    ``b`` (or ``offset - t`` when ``reverse`` is set), positions being taken
    in the stored circle order.
    """

    a: tuple[int, int]
    b: tuple[int, int]
    offset: int = 0
    reverse: bool = False


@dataclass(frozen=True)
class Assembly:
    surfaces: tuple[CombinatorialSurface, ...]
    identifications: tuple[Identification, ...] = ()

    @classmethod
    def shared_ids(cls, surfaces: Sequence[CombinatorialSurface]) -> "Assembly":
        """Identify circles with identical vertex sequences across surfaces."""
        idents = []
        first: dict[tuple[int, ...], tuple[int, int]] = {}
        for s, surf in enumerate(surfaces):
            for circ in surf.boundary_circles:
                key = circ.vertices
                if key in first:
                    idents.append(Identification(first[key], (s, circ.label)))
                else:
                    first[key] = (s, circ.label)
        return cls(tuple(surfaces), tuple(idents))


@dataclass(frozen=True)
class GluedComplex:
    """A 2-complex with provenance.

    ``faces`` holds ``(surface index, face index, vertex classes)``;
    ``edges`` holds ``(u, v, owner)`` with ``u < v`` and ``owner`` equal to the
    surface index, or -1 for edges on a glued circle.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    faces: tuple[tuple[int, int, tuple[int, ...]], ...]
    face_edges: tuple[tuple[tuple[int, int], ...], ...]

    @cached_property
    def _edge_lookup(self) -> dict[tuple[int, int], list[int]]:
        table: dict[tuple[int, int], list[int]] = defaultdict(list)
        for idx, (u, v, _) in enumerate(self.edges):
            table[(u, v)].append(idx)
        return table

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def edge_chain(self, curve: Curve) -> list[tuple[int, int]]:
        """The curve as a list of (edge index, sign)."""
        chain = []
        for u, v in curve.edges():
            key = (min(u, v), max(u, v))
            cands = self._edge_lookup.get(key, [])
            if len(cands) != 1:
                raise MalformedMap(
                    f"edge ({u}, {v}) is {'ambiguous' if cands else 'missing'} in the complex"
                )
            chain.append((cands[0], 1 if u < v else -1))
        return chain


def glue_surfaces(A: Assembly) -> GluedComplex:
    """Glue surfaces along identified boundary circles into a 2-complex."""
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    glued_edges: set[tuple[int, int, int]] = set()
    for ident in A.identifications:
        sa, la = ident.a
        sb, lb = ident.b
        if la != lb:
            raise LabelMismatch(f"circle labels {la} and {lb} differ")
        ca = A.surfaces[sa].circle(la)
        cb = A.surfaces[sb].circle(lb)
        if len(ca) != len(cb):
            raise LengthMismatch(f"circles of length {len(ca)} and {len(cb)}")
        n = len(ca)
        for t in range(n):
            j = (ident.offset - t) % n if ident.reverse else (ident.offset + t) % n
            ra, rb = find((sa, ca.vertices[t])), find((sb, cb.vertices[j]))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        for s, circ in ((sa, ca), (sb, cb)):
            for u, v in circ.edges():
                glued_edges.add((s, min(u, v), max(u, v)))
    keys = sorted({(s, v) for s, surf in enumerate(A.surfaces) for v in surf.vertices})
    reps = sorted({find(k) for k in keys})
    shared = all(k[1] == find(k)[1] for k in keys) and len({r[1] for r in reps}) == len(reps)
    if shared:
        name = {r: r[1] for r in reps}
    else:
        name = {r: i for i, r in enumerate(reps)}

    def cls_of(s: int, v: int) -> int:
        return name[find((s, v))]

    edge_index: dict[tuple[int, int, int], int] = {}
    edges: list[tuple[int, int, int]] = []
    faces = []
    face_edges = []
    for s, surf in enumerate(A.surfaces):
        for f, face in enumerate(surf.faces):
            vs = tuple(cls_of(s, v) for v in face)
            fe = []
            for k in range(len(face)):
                a, b = face[k], face[(k + 1) % len(face)]
                owner = -1 if (s, min(a, b), max(a, b)) in glued_edges else s
                u, v = vs[k], vs[(k + 1) % len(face)]
                key = (min(u, v), max(u, v), owner)
                if key not in edge_index:
                    edge_index[key] = len(edges)
                    edges.append(key)
                fe.append((edge_index[key], 1 if u < v else -1))
            faces.append((s, f, vs))
            face_edges.append(tuple(fe))
    verts = tuple(sorted(set(name.values())))
    return GluedComplex(verts, tuple(edges), tuple(faces), tuple(face_edges))


def glue_pair(A: CombinatorialSurface, B: CombinatorialSurface) -> CombinatorialSurface:
    """The closed surface ``(-A) ∪ B`` for surfaces sharing boundary vertex ids.

    Both surfaces must induce the same orientation on their common boundary;
    reversing ``A`` makes the union an oriented surface.
    """
    ca = {c.vertices for c in A.boundary_circles}
    cb = {c.vertices for c in B.boundary_circles}
    if ca != cb:
        raise LengthMismatch("surfaces do not share identical boundary circles")
    shared = set(A.vertices) & set(B.vertices)
    if shared != A.boundary_vertices():
        raise MalformedMap("surfaces share vertices off the boundary")
    faces = list(B.faces) + [tuple(reversed(f)) for f in A.faces]
    return CombinatorialSurface.from_faces(faces, disjoint_union=True)
