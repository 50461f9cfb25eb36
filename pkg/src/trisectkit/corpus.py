"""Reference diagrams used by the tests, the acceptance suite and the CLI.

Every builder returns a fresh object; vertex ids start from zero in each
call, so two calls give equal diagrams.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import count
from typing import Callable

from .build import (
    annulus_row,
    column,
    cone_disk,
    crossing_arc,
    grid_annulus,
    holed_torus,
    polar_disk,
    polar_route,
    row,
)
from .diagram_ops import torus_handle
from .links import LinkDiagram, SectorLift
from .ptri import PseudoTrisectionDiagram, from_families
from .surfmap import CombinatorialSurface, Curve, CurveSystem
from .triheeg import TripleHeegaardDiagram, empty_deltas


def _families(alphas, deltas) -> list[CurveSystem]:
    return [CurveSystem(f"alpha_{k + 1}", tuple(alphas[k])) for k in range(3)] + [
        CurveSystem(f"delta_{k + 1}", tuple(deltas[k])) for k in range(3)
    ]


# ---------------------------------------------------------------------------
# Triple Heegaard diagrams
# ---------------------------------------------------------------------------


def trivial_s3() -> TripleHeegaardDiagram:
    """Three disks on a shared triangle: the genus-zero splitting of the sphere."""
    fresh = count(0)
    b = [next(fresh) for _ in range(3)]
    return TripleHeegaardDiagram(tuple(cone_disk(b, next(fresh)) for _ in range(3)), empty_deltas(), "S3")


def s1xs2() -> TripleHeegaardDiagram:
    """A holed torus between two disks with parallel curves on both sides."""
    fresh = count(0)
    n = 4
    T, vid = holed_torus(n, fresh)
    circ = T.boundary_circles[0].vertices
    return TripleHeegaardDiagram(
        (cone_disk(circ, next(fresh)), T, cone_disk(circ, next(fresh))),
        (
            CurveSystem("delta_1", (row(vid, n, 2),)),
            CurveSystem("delta_2", (row(vid, n, 3),)),
            CurveSystem("delta_3"),
        ),
        "S1xS2",
    )


def two_s1xs2() -> TripleHeegaardDiagram:
    """Three annuli glued along both boundary circles, each with its core curve."""
    n, m = 6, 3
    fresh = count(0)
    bottom = [next(fresh) for _ in range(n)]
    top = [next(fresh) for _ in range(n)]
    ann = [grid_annulus(bottom, top, m, fresh) for _ in range(3)]
    return TripleHeegaardDiagram(
        tuple(a for a, _ in ann),
        tuple(CurveSystem(f"delta_{i + 1}", (annulus_row(ann[i][1], n, 1),)) for i in range(3)),
        "2(S1xS2)",
    )


def _trace_cycles(edges) -> list[Curve]:
    adj: dict[int, list[int]] = defaultdict(list)
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    seen: set[int] = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        cyc, prev, cur = [s], None, s
        seen.add(s)
        while True:
            nxt = adj[cur][0] if prev is None else next(w for w in adj[cur] if w != prev)
            if nxt == s:
                break
            cyc.append(nxt)
            seen.add(nxt)
            prev, cur = cur, nxt
        out.append(Curve(tuple(cyc)))
    return out


def t3() -> TripleHeegaardDiagram:
    """The three-torus from the boundary of a cube with opposite faces tubed.

    The cube surface has a square hole in the middle of every face and a
    corner square removed as the binding disk.  Each pair of opposite holes
    is joined by a tube.  One side uses the tube meridians, the other the
    three belts of the cube closed up along the tubes.
    """
    n = 6
    fresh = count(0)
    ids: dict[tuple[int, int, int], int] = {}

    def V(p: tuple[int, int, int]) -> int:
        if p not in ids:
            ids[p] = next(fresh)
        return ids[p]

    def square(axis: int, val: int, a: int, b: int) -> tuple[int, ...]:
        t1, t2 = {0: (1, 2), 1: (2, 0), 2: (0, 1)}[axis]
        pts = []
        for da, db in ((0, 0), (1, 0), (1, 1), (0, 1)):
            p = [0, 0, 0]
            p[axis], p[t1], p[t2] = val, a + da, b + db
            pts.append(tuple(p))
        if val == 0:
            pts.reverse()
        return tuple(V(p) for p in pts)

    faces = []
    for axis in range(3):
        for val in (0, n):
            for a in range(n):
                for b in range(n):
                    if 2 <= a <= 3 and 2 <= b <= 3:
                        continue
                    if (axis, val, a, b) == (2, n, 0, 0):
                        continue
                    faces.append(square(axis, val, a, b))
    S = CombinatorialSurface.from_faces(faces)
    pos = {v: p for p, v in ids.items()}

    def hole_of(vertices) -> tuple[int, int] | None:
        ps = [pos[v] for v in vertices]
        for axis in range(3):
            for val in (0, n):
                if len(ps) == 8 and all(p[axis] == val for p in ps):
                    return axis, val
        return None

    holes = {hole_of(c.vertices): c.vertices for c in S.boundary_circles}
    all_faces = list(S.faces)
    meridians, strands = [], {}
    for axis in range(3):
        bot = list(reversed(holes[(axis, n)]))
        top = []
        for v in bot:
            p = list(pos[v])
            p[axis] = 0
            top.append(V(tuple(p)))
        A, vid = grid_annulus(bot, top, 3, fresh)
        all_faces += list(A.faces)
        meridians.append(annulus_row(vid, 8, 1))
        for i, v in enumerate(bot):
            strands[v] = crossing_arc(vid, 3, i)
    sigma = CombinatorialSurface.from_faces(all_faces)
    belts = []
    for c in range(3):
        edges = [
            (u, w)
            for u, w in sigma.edges
            if u in pos and w in pos and pos[u][c] == 3 and pos[w][c] == 3 and not sigma.is_boundary_edge(u, w)
        ]
        for v, path in strands.items():
            if pos[v][c] == 3:
                edges += list(zip(path, path[1:]))
        belts += _trace_cycles(edges)
    bc = sigma.boundary_circles[0].vertices
    return TripleHeegaardDiagram(
        (sigma, cone_disk(bc, next(fresh)), cone_disk(bc, next(fresh))),
        (CurveSystem("delta_1", tuple(meridians)), CurveSystem("delta_2"), CurveSystem("delta_3", tuple(belts))),
        "T3",
    )


# ---------------------------------------------------------------------------
# Pseudo-trisection diagrams
# ---------------------------------------------------------------------------


def b4() -> PseudoTrisectionDiagram:
    fresh = count(0)
    b = [next(fresh) for _ in range(3)]
    return from_families([cone_disk(b, next(fresh)) for _ in range(4)], _families([[]] * 3, [[]] * 3), "B4")


def _genus_one(alpha2: str, name: str) -> PseudoTrisectionDiagram:
    fresh = count(0)
    n = 5
    T, vid = holed_torus(n, fresh)
    c = T.boundary_circles[0].vertices
    a2 = row(vid, n, 4) if alpha2 == "row" else column(vid, n, 2)
    return from_families(
        [cone_disk(c, next(fresh)), cone_disk(c, next(fresh)), T, cone_disk(c, next(fresh))],
        _families([[], [a2], []], [[row(vid, n, 2)], [row(vid, n, 3)], []]),
        name,
    )


def s1xb3() -> PseudoTrisectionDiagram:
    return _genus_one("row", "S1xB3")


def s2xd2() -> PseudoTrisectionDiagram:
    return _genus_one("col", "S2xD2")


def cp2_minus_b4() -> PseudoTrisectionDiagram:
    """Genus-one central surface with the three slopes 0, infinity and 1."""
    fresh = count(0)
    n = 6
    T, vid = holed_torus(n, fresh)
    c = T.boundary_circles[0].vertices
    diag = Curve(tuple(vid(t, t + 3) for t in range(n)))
    return from_families(
        [T] + [cone_disk(c, next(fresh)) for _ in range(3)],
        _families([[row(vid, n, 3)], [column(vid, n, 3)], [diag]], [[]] * 3),
        "CP2-B4",
    )


def two_s2xd2() -> PseudoTrisectionDiagram:
    """Four annuli on two shared circles; alpha arcs close up through the central annulus."""
    n, m = 6, 4
    fresh = count(0)
    bottom = [next(fresh) for _ in range(n)]
    top = [next(fresh) for _ in range(n)]
    ann = [grid_annulus(bottom, top, m, fresh) for _ in range(4)]
    alphas = []
    for i in range(3):
        a = crossing_arc(ann[0][1], m, 2 * i)
        s = crossing_arc(ann[i + 1][1], m, 2 * i)
        alphas.append([Curve(tuple(a + s[::-1][1:-1]))])
    deltas = [[annulus_row(ann[i + 1][1], n, 2)] for i in range(3)]
    return from_families([a for a, _ in ann], _families(alphas, deltas), "2(S2xD2)")


TRIHEEG_FIXTURES: dict[str, Callable[[], TripleHeegaardDiagram]] = {
    "S3": trivial_s3,
    "S1xS2": s1xs2,
    "2(S1xS2)": two_s1xs2,
    "T3": t3,
}

PTRI_FIXTURES: dict[str, Callable[[], PseudoTrisectionDiagram]] = {
    "B4": b4,
    "CP2-B4": cp2_minus_b4,
    "S1xB3": s1xb3,
    "S2xD2": s2xd2,
    "2(S2xD2)": two_s2xd2,
}


# ---------------------------------------------------------------------------
# Pseudo-shadow diagrams
# ---------------------------------------------------------------------------

POLAR_N = 48
POLAR_RINGS = 5


def _polar_base(handle: bool):
    """Four polar disks on a 48-gon, optionally with a CP2 handle on the central one.

    Returns the diagram and one ``(k, r)`` vertex map per surface.
    """
    fresh = count(0)
    circ = [next(fresh) for _ in range(POLAR_N)]
    disks = [polar_disk(circ, POLAR_RINGS, fresh) for _ in range(4)]
    surfaces = [d for d, _ in disks]
    alphas: list[list[Curve]] = [[], [], []]
    name = "B4 (polar)"
    if handle:
        centre = disks[0][1](0, POLAR_RINGS + 1)
        face = next(k for k, f in enumerate(surfaces[0].faces) if centre in f)
        surfaces[0], curves = torus_handle(surfaces[0], face, fresh)
        alphas = [[curves["mu1"]], [curves["lam"]], [curves["diag"]]]
        name = "CP2-B4 (polar)"
    D = from_families(surfaces, _families(alphas, [[]] * 3), name)
    return D, [v for _, v in disks]


class _Router:
    def __init__(self, vids):
        self.vids = vids

    def __call__(self, s: int, waypoints) -> list[int]:
        return polar_route(self.vids[s], POLAR_N, waypoints)


def _join(a: list[int], b: list[int]) -> list[int]:
    if a[-1] != b[0]:
        raise ValueError(f"paths do not meet: {a[-1]} != {b[0]}")
    return a + b[1:]


def _open(path: list[int]) -> Curve:
    return Curve(tuple(path), False)


# Per page: ring direction, binding spokes of the incoming legs at P and Q,
# then the spokes of the tau and outgoing legs at P and at Q.
_TREFOIL_PAGES = (
    (-1, 24, 16, 12, 0, 44, 40),
    (1, 40, 0, 4, 8, 28, 32),
    (1, 32, 8, 10, 16, 20, 24),
)
# Sigma_C endpoints of the tau legs, keyed by binding spoke.
_TREFOIL_CENTRAL = {
    4: [(8, 2), (4, 2), (4, 0)],
    10: [(8, 2), (10, 2), (10, 0)],
    12: [(8, 2), (8, 3), (12, 3), (12, 0)],
    28: [(28, 2), (28, 0)],
    20: [(28, 2), (20, 2), (20, 0)],
    44: [(28, 2), (28, 3), (44, 3, 1), (44, 0)],
}
# Self-crossing resolutions in vertex order that give the left-handed trefoil.
_TREFOIL_BITS = (1, 0, 0)


def _trefoil_legs(rt: _Router, j: int) -> dict[str, list[int]]:
    d, p_in, q_in, p_tau, p_out, q_tau, q_out = _TREFOIL_PAGES[j]
    s = j + 1

    def mid(a: int, b: int) -> int:
        return (a + d * ((((b - a) * d) % POLAR_N) // 2)) % POLAR_N

    pc, qc = mid(p_tau, p_out), mid(q_tau, q_out)
    P, Q = (pc, 2), (qc, 2)
    return {
        "P_in": rt(s, [(p_in, 0), (p_in, 3), (pc, 3, d), P]),
        "Q_in": rt(s, [(q_in, 0), (q_in, 4), (qc, 4, d), Q]),
        "P_tau": rt(s, [P, (p_tau, 2, -d), (p_tau, 0)]),
        "P_out": rt(s, [P, (p_out, 2, d), (p_out, 0)]),
        "Q_tau": rt(s, [Q, (q_tau, 2, -d), (q_tau, 0)]),
        "Q_out": rt(s, [Q, (q_out, 2, d), (q_out, 0)]),
    }


def _trefoil_arcs(rt: _Router) -> tuple[list[list[Curve]], list[list[Curve]]]:
    legs = [_trefoil_legs(rt, j) for j in range(3)]
    central = {k: rt(0, w) for k, w in _TREFOIL_CENTRAL.items()}
    taus, links = [], []
    for j in range(3):
        page, nxt = legs[j], legs[(j + 1) % 3]
        p_tau, q_tau = _TREFOIL_PAGES[j][3], _TREFOIL_PAGES[j][5]
        taus.append([
            _open(_join(page["P_tau"], central[p_tau][::-1])),
            _open(_join(page["Q_tau"], central[q_tau][::-1])),
        ])
        links.append([
            _open(_join(page["P_out"], nxt["Q_in"])),
            _open(_join(page["Q_out"], nxt["P_in"])),
        ])
    return taus, links


def _shadow(D, taus, links, name: str):
    from .shadow import PseudoShadowDiagram

    return PseudoShadowDiagram(
        D,
        tuple(CurveSystem(f"tau_{j + 1}", tuple(taus[j])) for j in range(3)),
        tuple(CurveSystem(f"L_{j + 1}", tuple(links[j])) for j in range(3)),
        (),
        (0, 1),
        name,
    )


def _trefoil_flags(SD):
    from .shadow import SelfCrossingFlag, arc_crossings

    selfs = [(x.vertex, x.first[0]) for x in arc_crossings(SD) if x.first[0] == x.second[0]]
    return SD.with_flags([SelfCrossingFlag(f, v, b) for (v, f), b in zip(sorted(selfs), _TREFOIL_BITS)])


def trefoil_shadow():
    """A genus-one surface in B4 bounded by the left-handed trefoil.

    Each page carries two bridge points and one crossing between the
    outgoing link arcs; two bridge points on the central surface close up
    the tau arcs.
    """
    D, vids = _polar_base(False)
    taus, links = _trefoil_arcs(_Router(vids))
    return _trefoil_flags(_shadow(D, taus, links, "trefoil surface"))


def lht_disk_shadow():
    """A disk in CP2 minus a ball bounded by the left-handed trefoil.

    The trefoil pages are reused; two extra bridge points on the central
    surface are joined by one tau arc from each family, adding one
    unknotted loop to every sector.
    """
    D, vids = _polar_base(True)
    rt = _Router(vids)
    taus, links = _trefoil_arcs(rt)
    theta = (
        [(14, 3), (18, 3)],
        [(14, 3), (14, 4), (18, 4), (18, 3)],
        [(14, 3), (14, 2), (18, 2), (18, 3)],
    )
    for j in range(3):
        taus[j].append(_open(rt(0, theta[j])))
    return _trefoil_flags(_shadow(D, taus, links, "left-handed trefoil slice disk"))


def mobius_shadow():
    """A Moebius band in CP2 minus a ball whose core meets three central bridge points."""
    D, vids = _polar_base(True)
    rt = _Router(vids)
    ring = {0: (0, 16), 1: (16, 32), 2: (32, 48)}
    leg_spoke = {0: 32, 1: 0, 2: 16}
    taus = []
    for j in range(3):
        a, b = ring[j]
        core = rt(0, [(a, 3), (b, 3, 1)])
        k = leg_spoke[j]
        leg = _join(rt(j + 1, [(k, POLAR_RINGS + 1), (k, 0)]), rt(0, [(k, 0), (k, 3)]))
        taus.append([_open(core), _open(leg)])
    links = []
    for j in range(3):
        spoke = 16 * j + 8
        out = rt(j + 1, [(spoke, POLAR_RINGS + 1), (spoke, 0)])
        path = _join(out, rt((j + 1) % 3 + 1, [(spoke, 0), (spoke, POLAR_RINGS + 1)]))
        links.append([_open(path)])
    return _shadow(D, taus, links, "Moebius band")


def relative_bridge_disk():
    """A trivial disk in B4 with one bridge point on each surface."""
    D, vids = _polar_base(False)
    rt = _Router(vids)
    c = POLAR_RINGS + 1
    taus, links = [], []
    for j in range(3):
        k = 16 * j
        taus.append([_open(_join(rt(0, [(k, c), (k, 0)]), rt(j + 1, [(k, 0), (k, c)])))])
        k += 8
        links.append([_open(_join(rt(j + 1, [(k, c), (k, 0)]), rt((j + 1) % 3 + 1, [(k, 0), (k, c)])))])
    return _shadow(D, taus, links, "relative bridge disk")


def pseudo_bridge_disk():
    """A trivial disk in B4 whose two bridge points both lie on the first page."""
    D, vids = _polar_base(False)
    rt = _Router(vids)
    tau = rt(1, [(0, 3), (12, 3, 1)])
    l1 = _join(_join(rt(1, [(0, 3), (0, 0)]), rt(2, [(0, 0), (0, 2), (12, 2, 1), (12, 0)])), rt(1, [(12, 0), (12, 3)]))
    l3 = _join(
        _join(rt(1, [(0, 3), (0, 4), (45, 4, -1), (45, 0)]), rt(3, [(45, 0), (45, 2), (15, 2, -1), (15, 0)])),
        rt(1, [(15, 0), (15, 3), (12, 3, -1)]),
    )
    return _shadow(D, [[_open(tau)], [], []], [[_open(l1)], [], [_open(l3)]], "pseudo bridge disk")


# ---------------------------------------------------------------------------
# Link diagrams
# ---------------------------------------------------------------------------


def torus_link_2n(n: int, sign: int = 1) -> LinkDiagram:
    """The closed two-strand braid with ``n`` equal crossings."""
    if n < 1:
        raise ValueError("need at least one crossing")
    if n % 2:
        comps = (tuple((k % n + 1) * (1 if k % 2 == 0 else -1) for k in range(2 * n)),)
    else:
        comps = (
            tuple((k + 1) * (1 if k % 2 == 0 else -1) for k in range(n)),
            tuple((k + 1) * (-1 if k % 2 == 0 else 1) for k in range(n)),
        )
    return LinkDiagram(comps, (sign,) * n, f"T(2,{n})" + ("" if sign > 0 else " mirror"))


def unknot() -> LinkDiagram:
    return LinkDiagram(((),), (), "unknot")


def hopf_link() -> LinkDiagram:
    return LinkDiagram(((1, -2), (-1, 2)), (1, 1), "Hopf link")


def left_trefoil() -> LinkDiagram:
    return LinkDiagram(((1, -2, 3, -1, 2, -3),), (-1, -1, -1), "left-handed trefoil")


def figure_eight() -> LinkDiagram:
    return LinkDiagram(((1, -2, 3, -4, 2, -1, 4, -3),), (1, 1, -1, -1), "figure eight")


def link_fixtures() -> dict[str, LinkDiagram]:
    """Diagrams with at most eight crossings."""
    out = {D.name: D for D in (unknot(), hopf_link(), left_trefoil(), figure_eight())}
    for n in (2, 4, 5, 7, 8):
        for sign in (1, -1):
            D = torus_link_2n(n, sign)
            out[D.name] = D
    out["two unknots"] = LinkDiagram(((), ()), (), "two unknots")
    return out


def cp2_sector_lifts() -> list[SectorLift]:
    """Lifts of the sphere generator against the projective line, one per sector.

    Component order in each diagram is the lifted generator first, then the
    lifted projective line.  The first sector lifts to a split link and the
    other two to a Hopf clasp.
    """
    split = LinkDiagram(((), ()), (), "X_1 lift")
    clasp = LinkDiagram(((1, -2), (), (-1, 2)), (1, 1), "")
    return [
        SectorLift(split, (0,), (1,)),
        SectorLift(LinkDiagram(clasp.components, clasp.signs, "X_2 lift"), (0, 1), (2,)),
        SectorLift(LinkDiagram(clasp.components, clasp.signs, "X_3 lift"), (0, 1), (2,)),
    ]


SHADOW_FIXTURES = {
    "trefoil-surface": trefoil_shadow,
    "lht-disk": lht_disk_shadow,
    "mobius": mobius_shadow,
    "relative-bridge-disk": relative_bridge_disk,
    "pseudo-bridge-disk": pseudo_bridge_disk,
}


# ---------------------------------------------------------------------------
# Catalog and corpus files
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    slug: str
    build: Callable[[], object]
    comment: str
    extra: dict = field(default_factory=dict)


def _lift_builder(i: int) -> Callable[[], LinkDiagram]:
    return lambda: cp2_sector_lifts()[i].diagram


def _lift_extra(i: int) -> dict:
    lift = cp2_sector_lifts()[i]
    return {"k_side": list(lift.k_side), "e_side": list(lift.e_side), "sector": i}


CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("trivial_s3", trivial_s3, "Genus-zero trisection: three disks on one binding circle."),
    CorpusEntry("s1xs2", s1xs2, "Genus-one middle surface; the two curves are parallel."),
    CorpusEntry(
        "2s1xs2", two_s1xs2, "Three annuli on two binding circles, each carrying its core curve."
    ),
    CorpusEntry(
        "t3",
        t3,
        "Holed cube surface with opposite face holes tubed together; the first family is the "
        "tube meridians, the third the three cube belts closed along the tubes.",
    ),
    CorpusEntry("trivial_b4", b4, "Four disks on one binding circle and no curves."),
    CorpusEntry("cp2_minus_b4", cp2_minus_b4, "Central torus with alpha slopes 0, infinity and 1; disk pages."),
    CorpusEntry("s1xb3", s1xb3, "Torus on the second page with a parallel alpha curve."),
    CorpusEntry("s2xd2", s2xd2, "Torus on the second page with a dual alpha curve."),
    CorpusEntry(
        "2s2xd2",
        two_s2xd2,
        "Four annuli on two binding circles; each alpha curve is the union of two spanning arcs. "
        "The unlabeled alpha endpoints are read as meeting the binding at matching points.",
    ),
    CorpusEntry(
        "trefoil_surface",
        trefoil_shadow,
        "Two bridge points per page, one crossing per page; resolutions chosen for the left-handed trefoil.",
    ),
    CorpusEntry(
        "lht_disk",
        lht_disk_shadow,
        "Trefoil pages over the CP2 base with an extra theta of tau arcs on the central surface, "
        "giving six sector loops on ten bridge points.",
    ),
    CorpusEntry(
        "mobius",
        mobius_shadow,
        "Three central bridge points joined in a triangle by the tau arcs; the core is an odd cycle.",
    ),
    CorpusEntry(
        "relative_bridge_disk", relative_bridge_disk, "One bridge point on every surface, arcs along spokes."
    ),
    CorpusEntry(
        "pseudo_bridge_disk",
        pseudo_bridge_disk,
        "Both bridge points on the first page; the second sector meets no arcs.",
    ),
    CorpusEntry("unknot", unknot, "Crossing-free circle."),
    CorpusEntry("hopf", hopf_link, "Positive Hopf link."),
    CorpusEntry("left_trefoil", left_trefoil, "Alternating three-crossing diagram, all crossings negative."),
    CorpusEntry("figure_eight", figure_eight, "Alternating four-crossing diagram."),
) + tuple(
    CorpusEntry(
        f"cp2_lift_x{i + 1}",
        _lift_builder(i),
        "Lift of the sphere generator (first components) against the projective line (last component).",
        _lift_extra(i),
    )
    for i in range(3)
)


def corpus_entry(slug: str) -> CorpusEntry:
    for entry in CORPUS:
        if entry.slug == slug:
            return entry
    raise KeyError(slug)


def corpus_files() -> dict[str, bytes]:
    """File name to canonical bytes for every corpus entry."""
    from .fileformat import EXTENSIONS, kind_of, serialize
    from .invariants import summary

    out = {}
    for entry in CORPUS:
        D = entry.build()
        meta = {"comment": entry.comment, "expected": summary(D)}
        meta.update(entry.extra)
        out[entry.slug + EXTENSIONS[kind_of(D)]] = serialize(D, meta)
    return out


def write_corpus(directory) -> list[str]:
    import os

    os.makedirs(directory, exist_ok=True)
    names = []
    for name, data in corpus_files().items():
        with open(os.path.join(directory, name), "wb") as fh:
            fh.write(data)
        names.append(name)
    return names
