"""Shadow diagrams of surfaces in pseudo-bridge position.

A shadow diagram sits on a pseudo-trisection diagram.  Family ``τ_i`` (index
``i`` in ``taus``) is a set of arcs on ``Σ_i ∪ Σ_C`` and family ``L_i`` is a
set of arcs on ``Σ_i ∪ Σ_{i+1}``.  Arcs are vertex paths that may pass
through binding vertices, and their endpoints are the bridge points.  Two
arcs meet only at interior vertices, where they must cross transversely.
When both arcs belong to the same family, a ``SelfCrossingFlag`` records
which one is drawn over.

Family indices used throughout: ``0, 1, 2`` are ``τ_1, τ_2, τ_3`` and
``3, 4, 5`` are ``L_1, L_2, L_3``.  Surfaces are indexed as in the base
diagram: ``0`` is ``Σ_C`` and ``j + 1`` is ``Σ_{j+1}``.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import MissingOrientation, NonTransverse, NotStandardized, OddBridgeCount, OpenStrand
from .homology import bounds_rationally
from .links import LinkDiagram
from .ptri import PseudoTrisectionDiagram, orient_ptri, restrict_boundary, validate_ptri
from .report import CheckReport
from .surfmap import Curve, CurveSystem, classify_surface, crossing_sign_at, glue_surfaces, Assembly
from .triheeg import realization_complex

FAMILY_NAMES = ("τ_1", "τ_2", "τ_3", "L_1", "L_2", "L_3")
UNVERIFIED_TRIVIALITY = (
    "UNVERIFIED-TRIVIALITY: sector loops close up and are null-homologous, "
    "but they are not certified to form unlinks"
)

ArcRef = tuple[int, int]  # (family index, arc index)


def family_support(f: int) -> tuple[int, int]:
    """The two surfaces carrying family ``f``."""
    i = f % 3
    if f < 3:
        return (0, i + 1)
    return (i + 1, (i + 1) % 3 + 1)


def families_at_surface(s: int) -> tuple[int, ...]:
    """Families whose arcs may end on surface ``s``."""
    if s == 0:
        return (0, 1, 2)
    j = s - 1
    return (j, 3 + j, 3 + (j - 1) % 3)


def sector_families(i: int) -> tuple[int, int, int]:
    """``τ_i, τ_{i+1}, L_i`` for sector ``i``."""
    return (i % 3, (i + 1) % 3, 3 + i % 3)


@dataclass(frozen=True)
class SelfCrossingFlag:
    """At ``vertex`` two arcs of ``family`` cross and arc ``over`` is drawn on top."""

    family: int
    vertex: int
    over: int


@dataclass(frozen=True)
class PseudoShadowDiagram:
    base: PseudoTrisectionDiagram
    taus: tuple[CurveSystem, CurveSystem, CurveSystem]
    links: tuple[CurveSystem, CurveSystem, CurveSystem]
    flags: tuple[SelfCrossingFlag, ...] = ()
    orientation: tuple[int, int] | None = (0, 1)
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "taus", tuple(self.taus))
        object.__setattr__(self, "links", tuple(self.links))
        object.__setattr__(self, "flags", tuple(self.flags))
        for k in range(3):
            if self.taus[k].family != f"tau_{k + 1}" or self.links[k].family != f"L_{k + 1}":
                raise ValueError("shadow families must be tagged tau_1..3 and L_1..3 in order")

    @property
    def families(self) -> tuple[CurveSystem, ...]:
        return self.taus + self.links

    def arcs(self) -> Iterator[tuple[ArcRef, Curve]]:
        for f, fam in enumerate(self.families):
            for a, arc in enumerate(fam):
                yield (f, a), arc

    def arc(self, ref: ArcRef) -> Curve:
        return self.families[ref[0]].curves[ref[1]]

    def surface_of(self, v: int) -> int | None:
        """The surface holding ``v`` in its interior; ``None`` for binding vertices."""
        return _interior_owner(self.base).get(v)

    def bridge_points(self) -> dict[int, frozenset[int]]:
        """Bridge points per surface index (0 for ``Σ_C``)."""
        owner = _interior_owner(self.base)
        out: dict[int, set[int]] = {s: set() for s in range(4)}
        for _, arc in self.arcs():
            for v in (arc.vertices[0], arc.vertices[-1]):
                if v in owner:
                    out[owner[v]].add(v)
        return {s: frozenset(vs) for s, vs in out.items()}

    def bridge_count(self) -> int:
        return sum(len(b) for b in self.bridge_points().values())

    def with_flags(self, flags: Sequence[SelfCrossingFlag]) -> "PseudoShadowDiagram":
        return PseudoShadowDiagram(self.base, self.taus, self.links, tuple(flags), self.orientation, self.name)

    def with_orientation(self, orientation: tuple[int, int] | None) -> "PseudoShadowDiagram":
        return PseudoShadowDiagram(self.base, self.taus, self.links, self.flags, orientation, self.name)


_OWNER_CACHE: dict[int, tuple[PseudoTrisectionDiagram, dict[int, int]]] = {}


def _interior_owner(D: PseudoTrisectionDiagram) -> dict[int, int]:
    hit = _OWNER_CACHE.get(id(D))
    if hit is not None and hit[0] is D:
        return hit[1]
    owner = {}
    for s, surf in enumerate(D.surfaces):
        for v in surf.interior_vertices():
            owner[v] = s
    _OWNER_CACHE[id(D)] = (D, owner)
    return owner


# ---------------------------------------------------------------------------
# Crossings between arcs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArcCrossing:
    """Two arcs passing through the same interior vertex of ``surface``."""

    vertex: int
    surface: int
    first: ArcRef
    second: ArcRef


def _passages(SD: PseudoShadowDiagram) -> dict[int, list[ArcRef]]:
    through: dict[int, list[ArcRef]] = defaultdict(list)
    for ref, arc in SD.arcs():
        for v in arc.vertices[1:-1]:
            through[v].append(ref)
    return through


def arc_crossings(SD: PseudoShadowDiagram) -> list[ArcCrossing]:
    """All vertices where two arcs pass through each other, sorted by vertex."""
    owner = _interior_owner(SD.base)
    out = []
    for v, refs in sorted(_passages(SD).items()):
        if len(refs) == 2 and v in owner:
            a, b = sorted(refs)
            out.append(ArcCrossing(v, owner[v], a, b))
    return out


def _strand(arc: Curve, v: int) -> tuple[int, int]:
    p, n = arc.neighbours(v)
    return p, n


def _flag_index(SD: PseudoShadowDiagram) -> dict[tuple[int, int], SelfCrossingFlag]:
    return {(fl.family, fl.vertex): fl for fl in SD.flags}


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _check_arcs(SD: PseudoShadowDiagram, report: CheckReport) -> None:
    D = SD.base
    owner = _interior_owner(D)
    binding = {v for circ in D.binding for v in circ}
    for (f, a), arc in SD.arcs():
        tag = f"{FAMILY_NAMES[f]} arc {a}"
        support = family_support(f)
        if arc.closed or len(arc) < 2 or not arc.is_simple():
            report.fail(f"{tag} must be a simple open path")
            continue
        for v in (arc.vertices[0], arc.vertices[-1]):
            if owner.get(v) not in support:
                report.fail(f"{tag} ends at {v}, which is not interior to {[_sname(s) for s in support]}")
        for u, w in arc.edges():
            if u in binding and w in binding:
                report.fail(f"{tag} runs along the binding at ({u}, {w})")
            elif not any(D.surfaces[s].has_edge(u, w) for s in support):
                report.fail(f"{tag} uses ({u}, {w}), which is not an edge of its surfaces")
        for v in arc.vertices[1:-1]:
            if v in binding:
                p, n = arc.neighbours(v)
                if owner.get(p) == owner.get(n):
                    report.fail(f"{tag} touches the binding at {v} without crossing it")
            elif owner.get(v) not in support:
                report.fail(f"{tag} leaves its surfaces at {v}")


def _check_bridge_points(SD: PseudoShadowDiagram, report: CheckReport) -> None:
    owner = _interior_owner(SD.base)
    ends: dict[int, list[int]] = defaultdict(list)
    for (f, _), arc in SD.arcs():
        if arc.closed or len(arc) < 2:
            continue
        for v in (arc.vertices[0], arc.vertices[-1]):
            ends[v].append(f)
    through = _passages(SD)
    for v, fams in sorted(ends.items()):
        s = owner.get(v)
        if s is None:
            continue
        want = sorted(families_at_surface(s))
        if sorted(fams) != want:
            got = ", ".join(FAMILY_NAMES[f] for f in sorted(fams))
            report.fail(
                f"bridge point {v} on {_sname(s)} has degree {len(fams)} with families [{got}];"
                f" expected exactly {', '.join(FAMILY_NAMES[f] for f in want)}"
            )
        if v in through:
            report.fail(f"an arc passes through bridge point {v}")


def _check_crossings(SD: PseudoShadowDiagram, report: CheckReport) -> None:
    D = SD.base
    owner = _interior_owner(D)
    edge_use: dict[frozenset, list[ArcRef]] = defaultdict(list)
    for ref, arc in SD.arcs():
        for u, w in arc.edges():
            edge_use[frozenset((u, w))].append(ref)
    for e, refs in edge_use.items():
        if len(refs) > 1:
            report.fail(f"arcs {refs} share the edge {tuple(sorted(e))}")
    needed = set()
    for v, refs in sorted(_passages(SD).items()):
        if v not in owner:
            if len(refs) > 1:
                report.fail(f"{len(refs)} arcs cross the binding at the same vertex {v}")
            continue
        if len(refs) > 2:
            report.fail(f"{len(refs)} arcs meet at vertex {v}")
            continue
        if len(refs) < 2:
            continue
        a, b = refs
        try:
            crossing_sign_at(D.surfaces[owner[v]], v, _strand(SD.arc(a), v), _strand(SD.arc(b), v))
        except NonTransverse as exc:
            report.fail(f"arcs {a} and {b} at {v}: {exc}")
            continue
        if a[0] == b[0]:
            needed.add((a[0], v))
    flags = _flag_index(SD)
    for key in sorted(needed):
        fl = flags.get(key)
        if fl is None:
            report.fail(f"self-crossing of {FAMILY_NAMES[key[0]]} at {key[1]} has no order flag")
        elif not any(ref == (key[0], fl.over) for ref in _passages(SD)[key[1]]):
            report.fail(f"flag at {key[1]} names arc {fl.over}, which does not pass there")
    for key in sorted(set(flags) - needed):
        report.fail(f"flag for {FAMILY_NAMES[key[0]]} at {key[1]} marks no self-crossing")


def validate_shadow(SD: PseudoShadowDiagram, check_base: bool = True) -> CheckReport:
    report = CheckReport()
    if check_base:
        base = validate_ptri(SD.base)
        for msg in base.failures:
            report.fail(f"base diagram: {msg}")
    _check_arcs(SD, report)
    if not report.ok:
        return report
    _check_bridge_points(SD, report)
    _check_crossings(SD, report)
    if not report.ok:
        return report
    for i in range(3):
        try:
            loops = sector_loops(SD, i)
        except OpenStrand as exc:
            report.fail(f"sector {i + 1}: {exc}")
            continue
        if loops:
            C = realization_complex(SD.base.sector(i))
            W = glue_surfaces(Assembly.shared_ids(SD.base.sector(i).surfaces))
            for n, loop in enumerate(loops):
                chain: dict[int, int] = {}
                for e, s in W.edge_chain(loop_curve(SD, loop)):
                    chain[e] = chain.get(e, 0) + s
                if not bounds_rationally(C, 1, chain):
                    report.fail(f"sector {i + 1}: loop {n} is not null-homologous")
        report.info[f"sector_{i + 1}_loops"] = len(loops)
    if report.ok:
        report.warn(UNVERIFIED_TRIVIALITY)
    return report


def _sname(s: int) -> str:
    return ("Σ_C", "Σ_1", "Σ_2", "Σ_3")[s]


# ---------------------------------------------------------------------------
# Loops, Euler characteristic, orientability
# ---------------------------------------------------------------------------

Loop = tuple[tuple[ArcRef, bool], ...]  # arcs with a traversal flag (True = stored direction)


def _trace(SD: PseudoShadowDiagram, fams: Sequence[int]) -> list[Loop]:
    at: dict[int, list[ArcRef]] = defaultdict(list)
    for f in fams:
        for a, arc in enumerate(SD.families[f]):
            at[arc.vertices[0]].append((f, a))
            at[arc.vertices[-1]].append((f, a))
    for v, refs in at.items():
        if len(refs) != 2:
            raise OpenStrand(f"{len(refs)} arcs of {[FAMILY_NAMES[f] for f in fams]} end at {v}")
    used: set[ArcRef] = set()
    loops = []
    for start in sorted(at):
        free = [r for r in at[start] if r not in used]
        if not free:
            continue
        first = min(free)
        loop = []
        v, ref = start, first
        while ref not in used:
            used.add(ref)
            arc = SD.arc(ref)
            forward = arc.vertices[0] == v
            loop.append((ref, forward))
            v = arc.vertices[-1] if forward else arc.vertices[0]
            nxt = [r for r in at[v] if r != ref]
            ref = nxt[0] if nxt else ref
        loops.append(tuple(loop))
    return loops


def sector_loops(SD: PseudoShadowDiagram, i: int) -> list[Loop]:
    """Closed loops of ``τ_i ∪ τ_{i+1} ∪ L_i`` traced through bridge points."""
    return _trace(SD, sector_families(i))


def loop_curve(SD: PseudoShadowDiagram, loop: Loop) -> Curve:
    vs: list[int] = []
    for ref, forward in loop:
        seq = SD.arc(ref).vertices
        seq = seq if forward else seq[::-1]
        vs.extend(seq[:-1])
    return Curve(tuple(vs), True)


def sector_link_components(SD: PseudoShadowDiagram, i: int) -> int:
    return len(sector_loops(SD, i))


def surface_euler_characteristic(SD: PseudoShadowDiagram) -> int:
    """``F − |B|/2`` with ``F`` the total number of sector loops."""
    B = SD.bridge_count()
    if B % 2:
        raise OddBridgeCount(f"{B} bridge points")
    F = sum(sector_link_components(SD, i) for i in range(3))
    return F - B // 2


@dataclass(frozen=True)
class Orientability:
    """Result of the source/sink labelling.

    For an orientable surface ``labels`` maps every graph vertex to
    ``"source"`` or ``"sink"`` and ``edges`` lists the sub-arcs oriented from
    source to sink.  Otherwise ``odd_cycle`` is a shortest odd cycle of
    graph vertices.
    """

    orientable: bool
    labels: dict
    edges: tuple[tuple[int, int], ...]
    odd_cycle: tuple[int, ...]


def incidence_graph(SD: PseudoShadowDiagram) -> tuple[list[int], list[tuple[int, int]]]:
    """Vertices (bridge points and binding crossings) and sub-arc edges."""
    binding = {v for circ in SD.base.binding for v in circ}
    verts: set[int] = set()
    edges = []
    for _, arc in SD.arcs():
        cuts = [v for k, v in enumerate(arc.vertices) if k in (0, len(arc) - 1) or v in binding]
        verts.update(cuts)
        edges.extend(zip(cuts, cuts[1:]))
    return sorted(verts), edges


def _shortest_odd_cycle(verts: list[int], edges: list[tuple[int, int]]) -> tuple[int, ...]:
    adj: dict[int, list[int]] = defaultdict(list)
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    best: tuple[int, ...] | None = None
    for s in verts:
        prev = {(s, 0): None}
        queue = deque([(s, 0)])
        while queue:
            node = queue.popleft()
            if node == (s, 1):
                break
            v, par = node
            for w in adj[v]:
                nxt = (w, 1 - par)
                if nxt not in prev:
                    prev[nxt] = node
                    queue.append(nxt)
        if (s, 1) not in prev:
            continue
        walk = []
        node = (s, 1)
        while node is not None:
            walk.append(node[0])
            node = prev[node]
        cycle = tuple(reversed(walk[1:]))
        if best is None or len(cycle) < len(best):
            best = cycle
    return best or ()


def orientability(SD: PseudoShadowDiagram) -> Orientability:
    verts, edges = incidence_graph(SD)
    adj: dict[int, list[int]] = defaultdict(list)
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    colour: dict[int, int] = {}
    for s in verts:
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return Orientability(False, {}, (), _shortest_odd_cycle(verts, edges))
    labels = {v: ("source" if colour[v] == 0 else "sink") for v in verts}
    oriented = tuple((u, w) if colour[u] == 0 else (w, u) for u, w in edges)
    return Orientability(True, labels, oriented, ())


# ---------------------------------------------------------------------------
# Crossing resolution
# ---------------------------------------------------------------------------

# Ambient 3-manifolds: "Y" is the boundary, "X_i" (1-based) the boundary of sector i.


def _ambient_name(i: int) -> str:
    return f"X_{i % 3 + 1}"


def _rules(f: int, g: int, s: int) -> list[tuple[str, int | None, bool]]:
    """Resolution rules for a crossing of families ``f <= g`` on surface ``s``.

    Each entry is ``(ambient, over family, reversed)``.  For a crossing of
    two families the over family is fixed; for a self-crossing it is
    ``None`` and ``reversed`` says whether the drawn order flips.
    """
    if s == 0:
        if f == g:
            return [(_ambient_name(f), None, True), (_ambient_name(f - 1), None, False)]
        for i in range(3):
            if {f, g} == {i, (i + 1) % 3}:
                return [(_ambient_name(i), (i + 1) % 3, False)]
        raise ValueError("unexpected τ pair")
    j = s - 1
    tau, lj, lprev = j, 3 + j, 3 + (j - 1) % 3
    pair = {f, g}
    if f == g == lj:
        return [("Y", None, True), (_ambient_name(j), None, True)]
    if f == g == lprev:
        return [("Y", None, False), (_ambient_name(j - 1), None, False)]
    if f == g == tau:
        return [(_ambient_name(j), None, False), (_ambient_name(j - 1), None, True)]
    if pair == {lprev, lj}:
        return [("Y", lprev, False)]
    if pair == {tau, lj}:
        return [(_ambient_name(j), tau, False)]
    if pair == {tau, lprev}:
        return [(_ambient_name(j - 1), lprev, False)]
    raise ValueError(f"families {f}, {g} cannot meet on surface {s}")


@dataclass(frozen=True)
class ResolvedCrossing:
    """A crossing lifted to ``ambient`` with the sign for the stored arc directions."""

    vertex: int
    surface: int
    ambient: str
    over: ArcRef
    under: ArcRef
    sign: int


def resolve_crossings(
    SD: PseudoShadowDiagram, orientation: tuple[int, int] | None = None
) -> list[ResolvedCrossing]:
    """Over/under and sign of every crossing in every ambient containing it.

    ``orientation`` is ``(binding component, direction)`` as accepted by
    ``orient_ptri``; it defaults to the diagram's own.  Viewed from the side
    of the normal that completes the surface orientation to the ambient one,
    the sign is ``+1`` when the over strand turns counterclockwise onto the
    under strand.
    """
    orientation = orientation if orientation is not None else SD.orientation
    if orientation is None:
        raise MissingOrientation("the shadow diagram carries no binding orientation")
    A = orient_ptri(SD.base, *orientation)
    face_sign: dict[tuple[int, int], int] = {}
    for s, surf in enumerate(SD.base.surfaces):
        for f, face in enumerate(surf.faces):
            for v in face:
                face_sign.setdefault((s, v), A.face_bits[s][f])
    flags = _flag_index(SD)
    out = []
    for X in arc_crossings(SD):
        a, b = X.first, X.second
        S = SD.base.surfaces[X.surface]
        for ambient, over_family, flip in _rules(a[0], b[0], X.surface):
            if over_family is None:
                drawn = flags[(a[0], X.vertex)].over
                over_is_a = (a[1] == drawn) != flip
            else:
                over_is_a = a[0] == over_family
            over, under = (a, b) if over_is_a else (b, a)
            raw = crossing_sign_at(S, X.vertex, _strand(SD.arc(over), X.vertex), _strand(SD.arc(under), X.vertex))
            out.append(
                ResolvedCrossing(X.vertex, X.surface, ambient, over, under, raw * face_sign[(X.surface, X.vertex)])
            )
    return out


# ---------------------------------------------------------------------------
# Boundary link
# ---------------------------------------------------------------------------


def check_standardized(SD: PseudoShadowDiagram) -> None:
    """Raise ``NotStandardized`` unless the boundary is the trivial diagram of ``S³``.

    The boundary link is read off the pages ``Σ_1, Σ_2, Σ_3``; this is only
    a planar diagram when every page is a disk and no δ-curves remain.
    """
    T = restrict_boundary(SD.base)
    for k, S in enumerate(T.surfaces):
        st = classify_surface(S)
        if (st.genus, st.boundary_count, st.component_count) != (0, 1, 1):
            raise NotStandardized(f"page Σ_{k + 1} is not a disk; reduce the boundary first")
    if any(len(fam) for fam in T.deltas):
        raise NotStandardized("boundary δ-curves remain; handleslide them away first")


def boundary_link(SD: PseudoShadowDiagram) -> LinkDiagram:
    """The link ``L_1 ∪ L_2 ∪ L_3`` as signed Gauss data."""
    check_standardized(SD)
    loops = _trace(SD, (3, 4, 5))
    resolved = {x.vertex: x for x in resolve_crossings(SD) if x.ambient == "Y"}
    direction: dict[ArcRef, bool] = {ref: fwd for loop in loops for ref, fwd in loop}
    ids: dict[int, int] = {}
    comps = []
    for loop in loops:
        visits = []
        for ref, forward in loop:
            seq = SD.arc(ref).vertices[1:-1]
            for v in (seq if forward else seq[::-1]):
                if v not in resolved:
                    continue
                ids.setdefault(v, len(ids) + 1)
                visits.append(ids[v] if resolved[v].over == ref else -ids[v])
        comps.append(tuple(visits))
    signs = [0] * len(ids)
    for v, k in ids.items():
        x = resolved[v]
        flip = (1 if direction[x.over] else -1) * (1 if direction[x.under] else -1)
        signs[k - 1] = x.sign * flip
    return LinkDiagram(tuple(comps), tuple(signs), f"{SD.name} boundary")
