"""Bounded enumeration of triple Heegaard diagrams of low complexity.

Pages are fixed small models: a cone disk, a grid torus with a square
removed, torus summands glued into that, or grid annuli when there are two
binding circles.  For every glued pair the candidate curves are the short
simple cycles of its 1-skeleton that are allowed to cross the binding, one
shortest representative per integral homology class up to sign.  Families
are sets of pairwise disjoint representatives with independent classes, and
every combination is validated, realized and deduplicated by canonical key.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, count, product
from typing import Iterator, Sequence

from .build import cone_disk, grid_annulus, holed_torus
from .errors import BudgetExceeded
from .surfmap import CombinatorialSurface, Curve, CurveSystem, glue_pair, torus_summand_faces
from .triheeg import TripleHeegaardDiagram, TrisectionIndices3, realize_homology_3, validate_triheeg

MAX_COMPLEXITY = 4
DEFAULT_BUDGET = 20000
DEFAULT_CYCLE_LENGTH = 8


@dataclass(frozen=True)
class CatalogEntry:
    key: tuple
    diagram: TripleHeegaardDiagram
    indices: TrisectionIndices3
    homology: tuple[str, ...]
    h1_rank: int
    h1_torsion: tuple[int, ...]
    provenance: str = "enumerated"

    @property
    def complexity(self) -> int:
        return self.indices.complexity

    @property
    def h1_cyclic(self) -> bool:
        return self.h1_rank + len(self.h1_torsion) <= 1


# ---------------------------------------------------------------------------
# Homology classes of cycles on a closed surface
# ---------------------------------------------------------------------------


def _directed(u: int, v: int) -> tuple[tuple[int, int], int]:
    return ((u, v), 1) if u < v else ((v, u), -1)


class CycleClasses:
    """Integral first-homology coordinates of edge cycles on a closed oriented surface.

    A spanning tree and a spanning tree of the dual graph that avoids it
    leave ``2g`` edges.  For each leftover edge a cocycle is fixed by the
    value 1 on that edge, 0 on the other leftovers and on the tree, and the
    face relations, solved on the dual tree from its leaves inwards.  The
    cocycles form a basis of the first cohomology, so their values on a
    cycle determine its class.
    """

    def __init__(self, G: CombinatorialSurface) -> None:
        edges = sorted({_directed(u, v)[0] for u, v in G.edges})
        adj: dict[int, list[int]] = defaultdict(list)
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        root = min(adj)
        tree: set[tuple[int, int]] = set()
        seen = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for w in sorted(adj[u]):
                if w not in seen:
                    seen.add(w)
                    tree.add(_directed(u, w)[0])
                    stack.append(w)
        faces_of: dict[tuple[int, int], list[int]] = defaultdict(list)
        for k, f in enumerate(G.faces):
            for a, b in zip(f, f[1:] + f[:1]):
                faces_of[_directed(a, b)[0]].append(k)
        parent_edge: dict[int, tuple[int, int] | None] = {0: None}
        order = [0]
        cotree: set[tuple[int, int]] = set()
        for k in order:
            f = G.faces[k]
            for a, b in zip(f, f[1:] + f[:1]):
                e = _directed(a, b)[0]
                if e in tree or e in cotree:
                    continue
                other = [x for x in faces_of[e] if x != k]
                if other and other[0] not in parent_edge:
                    parent_edge[other[0]] = e
                    cotree.add(e)
                    order.append(other[0])
        self.leftover = [e for e in edges if e not in tree and e not in cotree]
        self.cocycles: list[dict[tuple[int, int], int]] = []
        for target in self.leftover:
            phi = {e: 0 for e in edges if e not in cotree}
            phi[target] = 1
            for k in reversed(order[1:]):
                f = G.faces[k]
                pe = parent_edge[k]
                total, coeff = 0, 0
                for a, b in zip(f, f[1:] + f[:1]):
                    e, s = _directed(a, b)
                    if e == pe:
                        coeff = s
                    else:
                        total += s * phi[e]
                phi[pe] = -total * coeff
            self.cocycles.append(phi)

    @property
    def rank(self) -> int:
        return len(self.leftover)

    def coordinates(self, curve: Curve) -> tuple[int, ...]:
        steps = [_directed(u, v) for u, v in curve.edges()]
        return tuple(sum(s * phi[e] for e, s in steps) for phi in self.cocycles)


def _unsigned(vec: tuple[int, ...]) -> tuple[int, ...]:
    neg = tuple(-x for x in vec)
    return min(vec, neg)


# ---------------------------------------------------------------------------
# Candidate curves
# ---------------------------------------------------------------------------


def simple_cycles(
    A: CombinatorialSurface, B: CombinatorialSurface, max_length: int
) -> Iterator[Curve]:
    """Simple cycles of ``(-A) ∪ B`` that cross the binding transversely.

    Each cycle is produced once, starting at its smallest vertex.
    """
    G = glue_pair(A, B)
    binding = A.boundary_vertices()
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in G.edges:
        if u in binding and v in binding:
            continue
        adj[u].append(v)
        adj[v].append(u)
    for u in adj:
        adj[u].sort()

    def crosses(p: int, v: int, n: int) -> bool:
        return v not in binding or A.has_edge(p, v) != A.has_edge(v, n)

    for s in sorted(adj):
        path = [s]
        on = {s}

        def extend() -> Iterator[Curve]:
            u = path[-1]
            for w in adj[u]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    if crosses(path[-1], s, path[1]) and crosses(path[-2], u, s):
                        yield Curve(tuple(path))
                if w <= s or w in on or len(path) >= max_length:
                    continue
                if len(path) >= 2 and not crosses(path[-2], u, w):
                    continue
                path.append(w)
                on.add(w)
                yield from extend()
                path.pop()
                on.discard(w)

        yield from extend()


def class_representatives(
    A: CombinatorialSurface, B: CombinatorialSurface, max_length: int, per_class: int = 2
) -> dict[tuple[int, ...], list[Curve]]:
    """Shortest non-separating cycles per homology class up to sign."""
    classes = CycleClasses(glue_pair(A, B))
    reps: dict[tuple[int, ...], list[Curve]] = defaultdict(list)
    for c in simple_cycles(A, B, max_length):
        vec = classes.coordinates(c)
        if not any(vec):
            continue
        reps[_unsigned(vec)].append(c)
    return {
        k: sorted(v, key=lambda c: (len(c), c.vertices))[:per_class] for k, v in sorted(reps.items())
    }


def _independent(vectors: Sequence[tuple[int, ...]]) -> bool:
    """Linear independence over the rationals by fraction-free elimination."""
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                a, b = rows[rank][col], rows[r][col]
                rows[r] = [a * x - b * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank == len(rows)


def family_candidates(
    A: CombinatorialSurface, B: CombinatorialSurface, size: int, max_length: int
) -> list[tuple[Curve, ...]]:
    """Disjoint curve tuples with independent classes, one per class set."""
    if size == 0:
        return [()]
    reps = class_representatives(A, B, max_length)
    out = []
    for classes in combinations(sorted(reps), size):
        if not _independent(classes):
            continue
        for choice in product(*(reps[k] for k in classes)):
            used = [set(c.vertices) for c in choice]
            if all(not (used[a] & used[b]) for a, b in combinations(range(size), 2)):
                out.append(tuple(choice))
                break
    return out


# ---------------------------------------------------------------------------
# Page models
# ---------------------------------------------------------------------------


def shapes(max_complexity: int, max_b: int) -> list[tuple[int, tuple[int, int, int]]]:
    """Index shapes ``(b, p)`` with ``|y| = 2|p| + 3(b - 1)`` within the bound."""
    out = []
    for b in range(1, max_b + 1):
        for p in product(range(max_complexity // 2 + 1), repeat=3):
            if 2 * sum(p) + 3 * (b - 1) <= max_complexity:
                out.append((b, p))
    return sorted(out)


def _pages(b: int, p: Sequence[int]) -> tuple[CombinatorialSurface, ...]:
    fresh = count(0)
    if b == 1:
        T, _ = holed_torus(3, fresh)
        circle = T.boundary_circles[0].vertices
        pages = []
        for g in p:
            if g == 0:
                pages.append(cone_disk(circle, next(fresh)))
                continue
            mapping = {v: (v if v in circle else next(fresh)) for v in T.vertices}
            S = T.renamed(mapping)
            faces = list(S.faces)
            boundary = S.boundary_vertices()
            for _ in range(g - 1):
                k = next(k for k, f in enumerate(faces) if not set(f) & boundary)
                hole = faces.pop(k)
                faces += torus_summand_faces(hole, fresh)
                boundary |= set(hole)
            pages.append(CombinatorialSurface.from_faces(faces))
        return tuple(pages)
    if b == 2 and not any(p):
        bottom = [next(fresh) for _ in range(3)]
        top = [next(fresh) for _ in range(3)]
        return tuple(grid_annulus(bottom, top, 2, fresh)[0] for _ in range(3))
    raise ValueError(f"no page model for b={b}, p={tuple(p)}")


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_triheeg(
    max_complexity: int,
    max_b: int = 2,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
    max_length: int = DEFAULT_CYCLE_LENGTH,
) -> list[CatalogEntry]:
    """All valid diagrams over the page models with complexity at most ``max_complexity``.

    ``budget`` caps the number of candidate diagrams examined; when it runs
    out :class:`BudgetExceeded` is raised carrying the sorted partial
    catalog.  ``seed`` only shuffles the order in which shapes are visited.
    The result is sorted by complexity and canonical key.
    """
    if not 0 <= max_complexity <= MAX_COMPLEXITY:
        raise ValueError(f"max_complexity must lie in 0..{MAX_COMPLEXITY}")
    order = shapes(max_complexity, max_b)
    if seed is not None:
        random.Random(seed).shuffle(order)
    entries: dict[tuple, CatalogEntry] = {}
    examined = 0

    def finish() -> list[CatalogEntry]:
        return sorted(entries.values(), key=lambda e: (e.complexity, e.key))

    for b, p in order:
        pages = _pages(b, p)
        y = tuple(p[i] + p[(i + 1) % 3] + b - 1 for i in range(3))
        options = [family_candidates(pages[i], pages[(i + 1) % 3], y[i], max_length) for i in range(3)]
        for combo in product(*options):
            examined += 1
            if examined > budget:
                raise BudgetExceeded(
                    f"budget of {budget} candidate diagrams exhausted at b={b}, p={p}", finish()
                )
            D = TripleHeegaardDiagram(
                pages,
                tuple(CurveSystem(f"delta_{i + 1}", combo[i]) for i in range(3)),
                f"census b={b} p={''.join(map(str, p))}",
            )
            report = validate_triheeg(D)
            if not report.ok:
                continue
            key = D.canonical_key()
            if key in entries:
                continue
            hs = realize_homology_3(D)
            entries[key] = CatalogEntry(
                key, D, report.info["indices"], tuple(str(g) for g in hs), hs[1].rank, hs[1].torsion
            )
    return finish()
