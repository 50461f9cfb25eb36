"""Small building blocks for hand-made diagrams."""

from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .surfmap import CombinatorialSurface, Curve, grid_torus_faces


def cone_disk(circle: Sequence[int], centre: int) -> CombinatorialSurface:
    """A disk whose boundary circle (surface on the left) is ``circle``."""
    n = len(circle)
    return CombinatorialSurface.from_faces(
        [(circle[k], circle[(k + 1) % n], centre) for k in range(n)]
    )


def holed_torus(n: int, fresh: Iterator[int]) -> tuple[CombinatorialSurface, Callable[[int, int], int]]:
    """An ``n x n`` grid torus with the unit square at (0, 0) removed.

    Returns the surface and the vertex naming function ``vid(i, j)``.  Rows
    ``j = const`` and columns ``i = const`` with ``i, j`` not in ``{0, 1}``
    are closed curves off the boundary.
    """
    ids: dict[tuple[int, int], int] = {}

    def vid(i: int, j: int) -> int:
        key = (i % n, j % n)
        if key not in ids:
            ids[key] = next(fresh)
        return ids[key]

    faces = grid_torus_faces(n, vid)
    square = {
        (vid(0, 0), vid(1, 0), vid(1, 1)),
        (vid(0, 0), vid(1, 1), vid(0, 1)),
    }
    faces = [f for f in faces if f not in square]
    return CombinatorialSurface.from_faces(faces), vid


def row(vid: Callable[[int, int], int], n: int, j: int) -> Curve:
    return Curve(tuple(vid(i, j) for i in range(n)))


def column(vid: Callable[[int, int], int], n: int, i: int) -> Curve:
    return Curve(tuple(vid(i, j) for j in range(n)))


def grid_annulus(
    bottom: Sequence[int], top: Sequence[int], m: int, fresh: Iterator[int]
) -> tuple[CombinatorialSurface, Callable[[int, int], int]]:
    """An annulus ``Z/n x [0, m]`` whose boundary rows use the given ids.

    ``vid(i, 0)`` is ``bottom[i]`` and ``vid(i, m)`` is ``top[i]``; rows
    ``0 < j < m`` get fresh ids.  The bottom circle is traversed in the
    direction of increasing ``i`` and the top one in the opposite direction.
    """
    n = len(bottom)
    if len(top) != n or m < 2:
        raise ValueError("annulus needs equal boundary lengths and at least two layers")
    ids: dict[tuple[int, int], int] = {}

    def vid(i: int, j: int) -> int:
        i %= n
        if j == 0:
            return bottom[i]
        if j == m:
            return top[i]
        if (i, j) not in ids:
            ids[(i, j)] = next(fresh)
        return ids[(i, j)]

    faces = []
    for i in range(n):
        for j in range(m):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            faces += [(a, b, c), (a, c, d)]
    return CombinatorialSurface.from_faces(faces), vid


def crossing_arc(vid: Callable[[int, int], int], m: int, i: int) -> list[int]:
    """Vertices of the straight arc ``{i} x [0, m]`` of a grid annulus."""
    return [vid(i, j) for j in range(m + 1)]


def annulus_row(vid: Callable[[int, int], int], n: int, j: int) -> Curve:
    return Curve(tuple(vid(i, j) for i in range(n)))


def polar_disk(
    circle: Sequence[int], rings: int, fresh: Iterator[int]
) -> tuple[CombinatorialSurface, Callable[[int, int], int]]:
    """A disk made of concentric rings around a centre.

    ``vid(k, 0)`` is ``circle[k]``, ``vid(k, r)`` for ``1 <= r <= rings`` is
    the ``k``-th vertex of the ``r``-th ring counted inwards, and
    ``vid(k, rings + 1)`` is the centre.  Spokes ``k = const`` and rings
    ``r = const`` are edge paths that cross transversely.
    """
    n = len(circle)
    if rings < 1:
        raise ValueError("a polar disk needs at least one ring")
    ids: dict[tuple[int, int], int] = {}
    centre = next(fresh)

    def vid(k: int, r: int) -> int:
        k %= n
        if r == 0:
            return circle[k]
        if r > rings:
            return centre
        if (k, r) not in ids:
            ids[(k, r)] = next(fresh)
        return ids[(k, r)]

    faces = []
    for r in range(rings):
        for k in range(n):
            a, b, c, d = vid(k, r), vid(k + 1, r), vid(k + 1, r + 1), vid(k, r + 1)
            faces += [(a, b, c), (a, c, d)]
    for k in range(n):
        faces.append((vid(k, rings), vid(k + 1, rings), centre))
    return CombinatorialSurface.from_faces(faces), vid


def polar_route(vid: Callable[[int, int], int], n: int, waypoints: Sequence[tuple[int, ...]]) -> list[int]:
    """Vertex path through ``waypoints`` on a polar disk.

    Consecutive waypoints must share a spoke or a ring.  A waypoint may carry
    a third entry ``+1`` or ``-1`` fixing the direction of the ring move that
    reaches it; otherwise the shorter way round is taken (ties go in the
    direction of increasing ``k``).
    """
    path = [vid(waypoints[0][0], waypoints[0][1])]
    for a, b in zip(waypoints, waypoints[1:]):
        (k1, r1), (k2, r2) = a[:2], b[:2]
        if k1 % n == k2 % n:
            step = 1 if r2 > r1 else -1
            path += [vid(k1, r) for r in range(r1 + step, r2 + step, step)]
        elif r1 == r2:
            fwd = (k2 - k1) % n
            step = b[2] if len(b) > 2 else (1 if fwd <= n - fwd else -1)
            length = fwd if step == 1 else n - fwd
            path += [vid(k1 + step * t, r1) for t in range(1, length + 1)]
        else:
            raise ValueError(f"waypoints {a} and {b} share no spoke or ring")
    return path
