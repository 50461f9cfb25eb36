"""Pseudo-trisection diagrams of compact 4-manifolds with connected boundary.

A diagram has a central surface ``Σ_C`` and three sector surfaces
``Σ_1, Σ_2, Σ_3`` sharing one binding.  ``α_i`` lives on ``Σ_C ∪ Σ_i`` and
``δ_i`` on ``Σ_i ∪ Σ_{i+1}``.  The three surfaces ``Σ_1, Σ_2, Σ_3`` with the
``δ`` curves form the boundary triple Heegaard diagram, and for each ``i``
the triple ``(Σ_C, Σ_i, Σ_{i+1})`` with ``(α_i, δ_i, α_{i+1})`` is a triple
Heegaard diagram of the boundary of a sector, which must be a connected sum
of ``k_i`` copies of ``S¹ × S²``.

Sector indices are 0-based: ``i`` runs over ``0, 1, 2``.  In the surface
tuple ``Σ_C`` comes first, so sector surface ``i`` is ``surfaces[i + 1]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import diagram_ops as ops
from .errors import (
    DisconnectedPropagation,
    InconsistentIndices,
    InvalidDiagram,
    InvalidSite,
    OrientationClash,
    PatternNotFound,
)
from .homology import AbelianGroup
from .report import CheckReport
from .surfmap import CombinatorialSurface, Curve, CurveSystem, classify_surface
from .triheeg import (
    TripleHeegaardDiagram,
    _require_nonseparating,
    prepare_arc,
    indices_3,
    realize_homology_3,
    validate_triheeg,
)

SURFACE_NAMES = ("Σ_C", "Σ_1", "Σ_2", "Σ_3")


@dataclass(frozen=True)
class TrisectionIndices4:
    g: int
    b: int
    k: tuple[int, int, int]
    y: tuple[int, int, int]
    p: tuple[int, int, int]
    h: tuple[int, int, int]

    @property
    def chi(self) -> int:
        """Euler characteristic of the 4-manifold."""
        twice = 2 * self.g - 2 * sum(self.k) + sum(self.y) + self.b + 1
        return twice // 2

    @property
    def complexity(self) -> int:
        return self.chi + sum(self.k) - 1

    @property
    def complexity_boundary(self) -> int:
        return sum(self.y)

    @property
    def complexity_pair(self) -> int:
        return self.complexity + self.complexity_boundary

    def problems(self) -> list[str]:
        """Relations between the indices that fail (empty when consistent)."""
        out = []
        g, b, p, y, h = self.g, self.b, self.p, self.y, self.h
        if (sum(y) + b) % 2 != 1:
            out.append("|y| + b is even")
        for i in range(3):
            if h[i] != g + p[i] + b - 1:
                out.append(f"h_{i + 1} = {h[i]} but g + p_{i + 1} + b - 1 = {g + p[i] + b - 1}")
            if y[i] != p[i] + p[(i + 1) % 3] + b - 1:
                out.append(f"y_{i + 1} = {y[i]} does not match the sector genera")
        if self.complexity != g + sum(p) + 2 * b - 2:
            out.append("χ + |k| - 1 differs from g + |p| + 2b - 2")
        return out

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "b": self.b,
            "k": list(self.k),
            "y": list(self.y),
            "p": list(self.p),
            "h": list(self.h),
            "chi": self.chi,
            "c": self.complexity,
            "c_boundary": self.complexity_boundary,
            "c_pair": self.complexity_pair,
        }


@dataclass(frozen=True)
class PseudoTrisectionDiagram:
    surfaces: tuple[CombinatorialSurface, ...]
    alphas: tuple[CurveSystem, CurveSystem, CurveSystem]
    deltas: tuple[CurveSystem, CurveSystem, CurveSystem]
    name: str = ""
    notes: tuple[str, ...] = field(default=(), compare=False)
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(self.surfaces) != 4 or len(self.alphas) != 3 or len(self.deltas) != 3:
            raise ValueError("a pseudo-trisection diagram has four surfaces and six families")
        for k in range(3):
            if self.alphas[k].family != f"alpha_{k + 1}":
                raise ValueError(f"alpha family {k} must be tagged alpha_{k + 1}")
            if self.deltas[k].family != f"delta_{k + 1}":
                raise ValueError(f"delta family {k} must be tagged delta_{k + 1}")
        object.__setattr__(self, "surfaces", tuple(self.surfaces))
        object.__setattr__(self, "alphas", tuple(self.alphas))
        object.__setattr__(self, "deltas", tuple(self.deltas))

    @property
    def central(self) -> CombinatorialSurface:
        return self.surfaces[0]

    def sector_surface(self, i: int) -> CombinatorialSurface:
        return self.surfaces[i % 3 + 1]

    @property
    def families(self) -> tuple[CurveSystem, ...]:
        """``α_1, α_2, α_3, δ_1, δ_2, δ_3`` in this order."""
        return self.alphas + self.deltas

    @property
    def binding(self) -> tuple[tuple[int, ...], ...]:
        return ops.binding_of(self.surfaces)

    def fresh(self) -> Iterator[int]:
        return ops.fresh_counter(self.surfaces, self.families)

    def canonical_key(self) -> tuple:
        return ops.canonical_key(self.surfaces, self.families)

    def sector(self, i: int) -> TripleHeegaardDiagram:
        """The triple ``(Σ_C, Σ_i, Σ_{i+1})`` with ``(α_i, δ_i, α_{i+1})``."""
        i %= 3
        j = (i + 1) % 3
        return TripleHeegaardDiagram(
            (self.surfaces[0], self.surfaces[i + 1], self.surfaces[j + 1]),
            (
                CurveSystem("delta_1", self.alphas[i].curves),
                CurveSystem("delta_2", self.deltas[i].curves),
                CurveSystem("delta_3", self.alphas[j].curves),
            ),
            f"{self.name} sector {i + 1}",
        )


def from_families(
    surfaces: Sequence[CombinatorialSurface],
    families: Sequence[CurveSystem],
    name: str = "",
    notes: tuple[str, ...] = (),
    metadata: dict | None = None,
) -> PseudoTrisectionDiagram:
    """Build a diagram from the surface list and the six families in order."""
    return PseudoTrisectionDiagram(
        tuple(surfaces),
        tuple(families[:3]),
        tuple(families[3:]),
        name,
        notes,
        dict(metadata or {}),
    )


def restrict_boundary(D: PseudoTrisectionDiagram) -> TripleHeegaardDiagram:
    """The boundary triple Heegaard diagram ``(Σ_1, Σ_2, Σ_3; δ_1, δ_2, δ_3)``."""
    return TripleHeegaardDiagram(tuple(D.surfaces[1:]), D.deltas, f"∂{D.name}")


def _sector_rank(groups: Sequence[AbelianGroup]) -> int | None:
    """``k`` if the groups are those of a connected sum of ``k`` copies of S¹ × S²."""
    if len(groups) != 4:
        return None
    h0, h1, h2, h3 = groups
    if not (h0.rank == 1 and not h0.torsion and h3.rank == 1 and not h3.torsion):
        return None
    if h1.torsion or h2.torsion or h1.rank != h2.rank:
        return None
    return h1.rank


def sector_ranks(D: PseudoTrisectionDiagram) -> tuple[list[int | None], list[list[AbelianGroup]]]:
    """Per-sector ``k_i`` (``None`` when the sector homology is wrong) and the groups."""
    ks, groups = [], []
    for i in range(3):
        hs = realize_homology_3(D.sector(i))
        groups.append(hs)
        ks.append(_sector_rank(hs))
    return ks, groups


def validate_ptri(D: PseudoTrisectionDiagram) -> CheckReport:
    """Structural checks, cut systems, index relations and sector homology."""
    report = CheckReport()
    for msg in ops.check_surfaces(D.surfaces, SURFACE_NAMES):
        report.fail(msg)
    if not report.ok:
        return report
    boundary = restrict_boundary(D)
    bidx = indices_3(boundary)
    g = classify_surface(D.central).genus
    b = bidx.b
    for i in range(3):
        expected = g + bidx.p[i] + b - 1
        msgs = ops.check_family_on_pair(
            D.surfaces[0], D.surfaces[i + 1], D.alphas[i], expected, f"α_{i + 1}"
        )
        for msg in msgs:
            report.fail(msg)
    for i in range(3):
        A, B = D.surfaces[i + 1], D.surfaces[(i + 1) % 3 + 1]
        for msg in ops.check_family_on_pair(A, B, D.deltas[i], bidx.y[i], f"δ_{i + 1}"):
            report.fail(msg)
    if not report.ok:
        return report
    for i in range(3):
        sub = validate_triheeg(D.sector(i))
        for msg in sub.failures:
            report.fail(f"sector {i + 1}: {msg}")
    if not report.ok:
        return report
    ks, groups = sector_ranks(D)
    for i, (kval, hs) in enumerate(zip(ks, groups)):
        if kval is None:
            shown = ", ".join(str(x) for x in hs)
            report.fail(f"sector {i + 1} homology ({shown}) is not that of #^k S¹×S²")
    if not report.ok:
        return report
    idx = TrisectionIndices4(
        g, b, tuple(ks), bidx.y, bidx.p, tuple(len(a) for a in D.alphas)
    )
    report.info["indices"] = idx
    for msg in idx.problems():
        report.fail(msg)
    return report


def indices_4(D: PseudoTrisectionDiagram) -> TrisectionIndices4:
    """All indices of a diagram; raises if they are inconsistent."""
    report = validate_ptri(D)
    if not report.ok:
        if "indices" in report.info:
            raise InconsistentIndices(report.first_failure)
        raise InvalidDiagram(report.first_failure)
    return report.info["indices"]


def complexity_4(D: PseudoTrisectionDiagram) -> int:
    return indices_4(D).complexity


# ---------------------------------------------------------------------------
# Torus stabilisations
# ---------------------------------------------------------------------------


def _add(families: list[CurveSystem], index: int, curve) -> None:
    families[index] = families[index].with_curves(list(families[index]) + [curve])


def torus_stabilize(
    D: PseudoTrisectionDiagram, kind: str, j: int, site: int = 0
) -> PseudoTrisectionDiagram:
    """Type ``"I"`` or ``"II"`` torus stabilisation at sector ``j``.

    Type I adds a torus handle to ``Σ_j`` (in face ``site``) carrying two
    parallel meridians, one in ``α_j`` and one in ``δ_{j-1}``, and a
    longitude in ``δ_j``.  Type II adds the handle to ``Σ_C`` with the
    longitude in ``α_j`` and the meridians in ``α_{j+1}`` and ``α_{j-1}``.
    """
    j %= 3
    if kind not in ("I", "II"):
        raise ValueError("torus stabilisation type must be 'I' or 'II'")
    target = j + 1 if kind == "I" else 0
    S = D.surfaces[target]
    if not 0 <= site < len(S.faces):
        raise InvalidSite(f"face {site} does not exist in {SURFACE_NAMES[target]}")
    new, curves = ops.torus_handle(S, site, D.fresh())
    surfaces = list(D.surfaces)
    surfaces[target] = new
    fams = list(D.families)
    if kind == "I":
        _add(fams, j, curves["mu1"])
        _add(fams, 3 + (j - 1) % 3, curves["mu2"])
        _add(fams, 3 + j, curves["lam"])
    else:
        _add(fams, j, curves["lam"])
        _add(fams, (j + 1) % 3, curves["mu1"])
        _add(fams, (j - 1) % 3, curves["mu2"])
    return from_families(surfaces, fams, D.name, D.notes)


def expected_rank_change(kind: str, j: int) -> int:
    """Sector whose ``k`` grows by one under a torus stabilisation at ``j``."""
    return (j - 1) % 3 if kind == "I" else (j + 1) % 3


# ---------------------------------------------------------------------------
# Band (boundary) stabilisation
# ---------------------------------------------------------------------------


def band_stabilize(D: PseudoTrisectionDiagram, i: int, arc: Curve) -> PseudoTrisectionDiagram:
    """Boundary stabilisation along a neat non-separating arc in ``Σ_i``.

    A band around the arc is removed from ``Σ_i`` and attached to
    ``Σ_{i+1}``, ``Σ_{i+2}`` and ``Σ_C``.  Curves crossing the arc are
    rerouted over the band: ``α_i`` through ``Σ_C``, ``δ_i`` through
    ``Σ_{i+1}`` and ``δ_{i-1}`` through ``Σ_{i+2}``.  Three cocores of the
    bands are added, to ``δ_{i+1}``, ``α_{i+1}`` and ``α_{i+2}``.  The band
    data is kept in ``metadata["band"]`` for :func:`boundary_stab_shift`.
    """
    i %= 3
    cut = i + 1
    S = D.surfaces[cut]
    ops.check_neat_arc(S, arc)
    _require_nonseparating(S, arc)
    fresh = D.fresh()
    surfaces, families, arc = prepare_arc(list(D.surfaces), list(D.families), cut, arc, fresh)
    r1, r2 = (i + 1) % 3 + 1, (i + 2) % 3 + 1
    reroute = {i: 0, 3 + i: r1, 3 + (i - 1) % 3: r2}
    surfaces, families, record = ops.band_surgery(
        surfaces, cut, [r1, r2, 0], arc, families, reroute, fresh
    )
    m = len(arc.vertices) - 1
    gamma = ops.rung_curve(record, 0, r1, r2)
    _add(families, 3 + (i + 1) % 3, gamma)
    _add(families, (i + 1) % 3, ops.rung_curve(record, m, 0, r1))
    _add(families, (i + 2) % 3, ops.rung_curve(record, 1, 0, r2))
    record = dict(record, sector=i, gamma=gamma, arc=arc)
    return from_families(surfaces, families, D.name, D.notes, {"band": record})


# ---------------------------------------------------------------------------
# Boundary stabilisation shift
# ---------------------------------------------------------------------------


def _band_faces(record: dict, receiver: int) -> set[tuple[int, ...]]:
    """Faces added to ``receiver`` by band surgery, rotated to a normal form."""
    plus, minus = record["plus"], record["minus"]
    mids = [record["rungs"][t][receiver] for t in range(len(plus))]
    u0, w0, um, wm = record["ends"]
    m = len(plus) - 1
    faces = []
    for t in range(m):
        faces.append((plus[t], plus[t + 1], mids[t + 1], mids[t]))
        faces.append((minus[t + 1], minus[t], mids[t], mids[t + 1]))
    faces += [
        (u0, plus[0], mids[0]),
        (mids[0], minus[0], w0),
        (mids[m], plus[m], wm),
        (um, minus[m], mids[m]),
    ]
    return {ops._rotate_min(f) for f in faces}


def _find_curve(fam: CurveSystem, curve: Curve) -> int:
    key = curve.canonical()
    for k, c in enumerate(fam):
        if c.canonical() == key:
            return k
    return -1


def check_shift_pattern(D: PseudoTrisectionDiagram) -> dict:
    """Verify the stabilised-boundary pattern recorded by :func:`band_stabilize`.

    Returns the band record.  Raises :class:`PatternNotFound` when the
    record is missing, the band faces or the three cocore curves are not
    present, or another curve runs over the band.
    """
    record = D.metadata.get("band")
    if record is None:
        raise PatternNotFound("diagram carries no boundary-stabilisation band")
    r = record["sector"]
    r1, r2 = (r + 1) % 3 + 1, (r + 2) % 3 + 1
    plus, minus = record["plus"], record["minus"]
    m = len(plus) - 1
    if m < 3:
        raise PatternNotFound("band is too short to host the shifted handle")
    for receiver in (r1, r2, 0):
        present = {ops._rotate_min(f) for f in D.surfaces[receiver].faces}
        if not _band_faces(record, receiver) <= present:
            raise PatternNotFound(f"band faces missing from {SURFACE_NAMES[receiver]}")
    cut_boundary = D.surfaces[r + 1].boundary_vertices()
    if not set(plus) | set(minus) <= cut_boundary:
        raise PatternNotFound(f"{SURFACE_NAMES[r + 1]} is not cut along the band arc")
    expected = {
        3 + (r + 1) % 3: ops.rung_curve(record, 0, r1, r2),
        (r + 1) % 3: ops.rung_curve(record, m, 0, r1),
        (r + 2) % 3: ops.rung_curve(record, 1, 0, r2),
    }
    fams = D.families
    found = {}
    for fi, curve in expected.items():
        k = _find_curve(fams[fi], curve)
        if k < 0:
            raise PatternNotFound(f"cocore curve missing from {fams[fi].family}")
        found[fi] = k
    band_vertices = set(plus) | set(minus)
    for t in range(m + 1):
        band_vertices |= set(record["rungs"][t].values())
    for fi, fam in enumerate(fams):
        for k, c in enumerate(fam):
            if found.get(fi) == k:
                continue
            if set(c.vertices) & band_vertices:
                raise PatternNotFound(f"a curve of {fam.family} runs over the band")
    return dict(record, found=found)


def boundary_stab_shift(D: PseudoTrisectionDiagram) -> PseudoTrisectionDiagram:
    """Exchange the recorded boundary stabilisation for an internal one.

    The bands on ``Σ_{r+1}`` and ``Σ_{r+2}`` are deleted together with the
    cocore in ``δ_{r+1}``, ``Σ_r`` is glued back along the arc, and a second
    strip closes the band on ``Σ_C`` into a tube.  A curve running along the
    arc and back through the strip joins ``α_r``; the two cocores in
    ``α_{r+1}`` and ``α_{r+2}`` become meridians of the tube.
    """
    record = check_shift_pattern(D)
    r = record["sector"]
    r1, r2 = (r + 1) % 3 + 1, (r + 2) % 3 + 1
    plus, minus = record["plus"], record["minus"]
    m = len(plus) - 1
    u0, w0, um, wm = record["ends"]
    fresh = D.fresh()
    surfaces = list(D.surfaces)
    # Receivers lose their bands.
    for receiver in (r1, r2):
        mids = record["rungs"]
        band = _band_faces(record, receiver)
        ren = {mids[0][receiver]: plus[0], mids[m][receiver]: plus[m]}
        faces = [
            tuple(ren.get(v, v) for v in f)
            for f in surfaces[receiver].faces
            if ops._rotate_min(f) not in band
        ]
        surfaces[receiver] = CombinatorialSurface.from_faces(faces)
    # The cut surface is glued back along the arc.
    merge = dict(zip(minus, plus))
    surfaces[r + 1] = CombinatorialSurface.from_faces(
        [tuple(merge.get(v, v) for v in f) for f in surfaces[r + 1].faces]
    )
    # The central surface keeps its band, whose sides become interior, and
    # gains a second strip restoring the original binding.
    side = {v: next(fresh) for v in plus + minus}
    p2 = [side[v] for v in plus]
    q2 = [side[v] for v in minus]
    mid2 = [plus[0]] + [next(fresh) for _ in range(m - 1)] + [plus[m]]
    faces = [tuple(side.get(v, v) for v in f) for f in surfaces[0].faces]
    for t in range(m):
        faces.append((p2[t + 1], p2[t], mid2[t], mid2[t + 1]))
        faces.append((q2[t], q2[t + 1], mid2[t + 1], mid2[t]))
    faces += [
        (p2[0], u0, plus[0]),
        (plus[0], w0, q2[0]),
        (wm, p2[m], plus[m]),
        (q2[m], um, plus[m]),
    ]
    surfaces[0] = CombinatorialSurface.from_faces(faces)
    # Curves.
    fams = list(D.families)
    found = record["found"]
    midc = {t: record["rungs"][t][0] for t in range(m + 1)}

    def tube_meridian(t: int) -> Curve:
        return Curve((midc[t], p2[t], mid2[t], q2[t]))

    def replace(fi: int, new: Curve | None) -> None:
        curves = list(fams[fi])
        if new is None:
            del curves[found[fi]]
        else:
            curves[found[fi]] = new
        fams[fi] = fams[fi].with_curves(curves)

    replace(3 + (r + 1) % 3, None)
    replace((r + 1) % 3, tube_meridian(m - 1))
    replace((r + 2) % 3, tube_meridian(1))
    mu = Curve(tuple(plus) + tuple(reversed(mid2[1:-1])))
    _add(fams, r, mu)
    return from_families(surfaces, fams, D.name, D.notes)


# ---------------------------------------------------------------------------
# Boundary connected sum
# ---------------------------------------------------------------------------


def boundary_connect_sum_4(
    D1: PseudoTrisectionDiagram,
    D2: PseudoTrisectionDiagram,
    q1: int = 0,
    q2: int = 0,
    rotation: int = 0,
) -> PseudoTrisectionDiagram:
    """Boundary connected sum at binding circles ``q1`` and ``q2``.

    ``Σ_C`` meets ``Σ_C`` and sector ``i`` of ``D1`` meets sector
    ``i + rotation`` of ``D2``.
    """
    b1, b2 = len(D1.binding), len(D2.binding)
    if not (0 <= q1 < b1 and 0 <= q2 < b2):
        raise InvalidSite("binding component label out of range")
    if rotation not in (0, 1, 2):
        raise InvalidSite("rotation must be 0, 1 or 2")
    order = [(k + rotation) % 3 for k in range(3)]
    start = next(D1.fresh())
    s2, f2, end = ops.relabel_apart(
        [D2.surfaces[0]] + [D2.surfaces[k + 1] for k in order],
        [D2.alphas[k] for k in order] + [D2.deltas[k] for k in order],
        start,
    )
    fresh = iter(range(end, end + 10**9))
    surfaces = ops.boundary_sum(list(D1.surfaces), s2, q1, q2, fresh)
    fams = [
        CurveSystem(fam.family, tuple(fam) + tuple(extra))
        for fam, extra in zip(D1.families, f2)
    ]
    return from_families(surfaces, fams, f"{D1.name}♮{D2.name}")


# ---------------------------------------------------------------------------
# Orientation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrientationAssignment:
    """Orientation bits propagated from one oriented binding component.

    ``face_bits[s][f]`` is ``+1`` when face ``f`` of surface ``s`` keeps its
    stored orientation and ``-1`` when it is reversed.  ``binding`` maps each
    binding circle index to the sign of its induced orientation relative to
    the stored direction.  ``sectors`` lists the oriented boundary
    expressions of the 3-dimensional pieces.
    """

    face_bits: tuple[tuple[int, ...], ...]
    binding: dict
    sectors: tuple[str, ...]

    @property
    def surface_signs(self) -> tuple[int, ...]:
        return tuple(bits[0] for bits in self.face_bits)


def _propagate(S: CombinatorialSurface, seeds: dict[int, int]) -> list[int]:
    """Coherent face signs spreading from seed faces across shared edges."""
    where: dict[tuple[int, int], int] = {}
    for f, face in enumerate(S.faces):
        n = len(face)
        for k in range(n):
            where[(face[k], face[(k + 1) % n])] = f
    bits = [0] * len(S.faces)
    queue = deque()
    for f, sign in seeds.items():
        bits[f] = sign
        queue.append(f)
    while queue:
        f = queue.popleft()
        face = S.faces[f]
        n = len(face)
        for k in range(n):
            a, b = face[k], face[(k + 1) % n]
            # Stored faces are coherent, so a neighbour across (a, b)
            # carries the dart (b, a) and must receive the same sign.
            g = where.get((b, a))
            if g is None:
                continue
            if bits[g] == 0:
                bits[g] = bits[f]
                queue.append(g)
            elif bits[g] != bits[f]:
                raise OrientationClash(f"faces {f} and {g} induce clashing orientations")
    if 0 in bits:
        raise DisconnectedPropagation("orientation did not reach every face")
    return bits


def orient_ptri(D: PseudoTrisectionDiagram, component: int = 0, direction: int = 1) -> OrientationAssignment:
    """Propagate an orientation of binding circle ``component`` to the whole diagram.

    ``direction`` is ``+1`` for the stored direction of the circle (every
    surface on its left) and ``-1`` for the opposite one.  Each surface is
    oriented so that it induces the chosen direction on that circle; the
    remaining circles inherit their orientation from ``Σ_C``.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    circles = D.surfaces[0].boundary_circles
    if not 0 <= component < len(circles):
        raise InvalidSite(f"binding component {component} does not exist")
    start = circles[component].vertices
    u, v = start[0], start[1]
    all_bits = []
    for s in D.surfaces:
        seed = None
        for f, face in enumerate(s.faces):
            n = len(face)
            if any(face[k] == u and face[(k + 1) % n] == v for k in range(n)):
                seed = f
                break
        if seed is None:
            raise DisconnectedPropagation("a surface does not meet the chosen binding circle")
        all_bits.append(tuple(_propagate(s, {seed: direction})))
    central = D.surfaces[0]
    binding = {}
    for idx, circ in enumerate(circles):
        a, b = circ.vertices[0], circ.vertices[1]
        for f, face in enumerate(central.faces):
            n = len(face)
            if any(face[k] == a and face[(k + 1) % n] == b for k in range(n)):
                binding[idx] = all_bits[0][f]
                break
    sign = {1: "", -1: "−"}
    names = ["Σ_C", "Σ_1", "Σ_2", "Σ_3"]

    def term(s: int, negate: bool) -> str:
        bit = all_bits[s][0] * (-1 if negate else 1)
        return f"{sign[bit]}{names[s]}"

    sectors = []
    for i in range(3):
        j = (i + 1) % 3
        sectors.append(f"∂Y_{i + 1} = ({term(i + 1, True)}) ∪ {term(j + 1, False)}")
    for i in range(3):
        sectors.append(f"∂H_{i + 1} = ({term(0, True)}) ∪ {term(i + 1, False)}")
    return OrientationAssignment(tuple(all_bits), binding, tuple(sectors))


def apply_orientation(D: PseudoTrisectionDiagram, A: OrientationAssignment) -> PseudoTrisectionDiagram:
    """The diagram with every face reoriented according to ``A``."""
    surfaces = []
    for s, bits in zip(D.surfaces, A.face_bits):
        faces = [f if b == 1 else tuple(reversed(f)) for f, b in zip(s.faces, bits)]
        surfaces.append(CombinatorialSurface.from_faces(faces))
    return from_families(surfaces, D.families, D.name, D.notes, D.metadata)
