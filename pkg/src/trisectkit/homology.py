"""Integer chain complexes, Smith normal form and cellular homology of realizations.

Matrices are plain lists of lists of Python ints (arbitrary precision).  Two
reductions are provided:

* :func:`smith_normal_form` is a dense algorithm returning unimodular
  certificates ``U, V`` with ``U @ M @ V = D``.
* :func:`invariant_factors` works on sparse column dictionaries: it first
  eliminates unit pivots, which is exact and cheap for cellular boundary
  matrices, and then runs the dense algorithm on whatever is left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionOutOfRange, NotALoop, OrientationClash
from .surfmap import Curve, GluedComplex

Matrix = list[list[int]]
SparseColumns = list[dict[int, int]]


# ---------------------------------------------------------------------------
# Dense Smith normal form
# ---------------------------------------------------------------------------


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def determinant(M: Matrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == D`` with ``D`` diagonal and ``U, V`` unimodular."""

    diagonal: tuple[int, ...]
    D: Matrix
    U: Matrix
    V: Matrix


def smith_normal_form(M: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form with transformation certificates.

    Pivots are chosen as the entry of smallest nonzero absolute value in the
    remaining block, ties broken by row-major position.  The returned
    diagonal lists the nonzero invariant factors ``d_1 | d_2 | ...``.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def row_op(dst: int, src: int, q: int) -> None:
        # row_dst -= q * row_src
        if q:
            A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def col_op(dst: int, src: int, q: int) -> None:
        if q:
            for row in A:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_op(i, t, A[i][t] // A[t][t])
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        changed = True
            if changed:
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, t)
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        diag.append(A[t][t])
        t += 1
    return SNFResult(tuple(diag), A, U, V)


# ---------------------------------------------------------------------------
# Sparse invariant factors
# ---------------------------------------------------------------------------


def invariant_factors(columns: SparseColumns, nrows: int) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix.

    ``columns[j]`` maps row index to entry.  Unit pivots are eliminated first
    (choosing pivots that touch few other entries); the residual block is
    handed to :func:`smith_normal_form`.
    """
    cols: dict[int, dict[int, int]] = {j: dict(c) for j, c in enumerate(columns) if c}
    rows: dict[int, set[int]] = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for pj in sorted(cols, key=lambda j: (len(cols[j]), j)):
            pcol = cols.get(pj)
            if pcol is None:
                continue
            choices = [(len(rows[i]), i) for i, a in pcol.items() if a in (1, -1)]
            if not choices:
                continue
            _, pi = min(choices)
            progress = True
            del cols[pj]
            a = pcol[pi]
            for i in pcol:
                rows[i].discard(pj)
            # Column operations clear row pi in every other column; the pivot
            # row and column can then be dropped together.
            for j in list(rows[pi]):
                c = cols[j]
                q = c[pi] * a
                for i, v in pcol.items():
                    nv = c.get(i, 0) - q * v
                    if nv:
                        if i not in c:
                            rows[i].add(j)
                        c[i] = nv
                    elif i in c:
                        del c[i]
                        rows[i].discard(j)
                if not c:
                    del cols[j]
            rows.pop(pi, None)
            units += 1
    if not cols:
        return [1] * units
    row_ids = sorted({i for c in cols.values() for i in c})
    rindex = {i: k for k, i in enumerate(row_ids)}
    col_ids = sorted(cols)
    dense = [[0] * len(col_ids) for _ in row_ids]
    for k, j in enumerate(col_ids):
        for i, v in cols[j].items():
            dense[rindex[i]][k] = v
    rest = _invariant_factors_dense(dense)
    return [1] * units + rest


def _invariant_factors_dense(M: Matrix) -> list[int]:
    """Invariant factors without certificates (same pivoting as the SNF)."""
    A = [row[:] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
        if best is None:
            break
        _, pi, pj = best
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    changed |= bool(A[i][t])
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for row in A:
                        row[j] -= q * row[t]
                    changed |= bool(A[t][j])
            if changed:
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, t)
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), t, j)
                _, bi, bj = best
                A[t], A[bi] = A[bi], A[t]
                for row in A:
                    row[t], row[bj] = row[bj], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        out.append(abs(A[t][t]))
        t += 1
    return out


# ---------------------------------------------------------------------------
# Groups and complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank`` plus cyclic torsion summands ``d_1 | d_2 | ...`` (each >= 2)."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        t = tuple(sorted(int(d) for d in self.torsion))
        if any(d < 2 for d in t):
            raise ValueError("torsion coefficients must be at least 2")
        if any(t[k + 1] % t[k] for k in range(len(t) - 1)):
            raise ValueError("torsion coefficients must form a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_factors(cls, rank: int, factors: Iterable[int]) -> "AbelianGroup":
        return cls(rank, tuple(d for d in factors if d > 1))

    def is_cyclic(self) -> bool:
        return self.rank + len(self.torsion) <= 1

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


Z = AbelianGroup(1)
ZERO = AbelianGroup(0)


@dataclass(frozen=True)
class ChainComplex:
    """Cellular chain complex.

    ``ranks[n]`` is the number of ``n``-cells; ``boundaries[n]`` lists, for
    each ``n``-cell, its boundary as a dictionary ``(n-1)-cell -> coefficient``
    (``boundaries[0]`` is empty).
    """

    ranks: tuple[int, ...]
    boundaries: tuple[tuple[dict[int, int], ...], ...]
    check: bool = True

    def __post_init__(self) -> None:
        if len(self.boundaries) != len(self.ranks):
            raise ValueError("one boundary table per dimension is required")
        for n in range(1, len(self.ranks)):
            if len(self.boundaries[n]) != self.ranks[n]:
                raise ValueError(f"dimension {n}: wrong number of boundary columns")
        if self.check:
            for n in range(2, len(self.ranks)):
                for idx, col in enumerate(self.boundaries[n]):
                    acc: dict[int, int] = {}
                    for cell, coeff in col.items():
                        for face, c2 in self.boundaries[n - 1][cell].items():
                            acc[face] = acc.get(face, 0) + coeff * c2
                    if any(acc.values()):
                        raise OrientationClash(
                            f"boundary of boundary of {n}-cell {idx} is nonzero"
                        )

    @property
    def dimension(self) -> int:
        return len(self.ranks) - 1

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * r for n, r in enumerate(self.ranks))

    def dense_boundary(self, n: int) -> Matrix:
        rows = self.ranks[n - 1]
        M = [[0] * self.ranks[n] for _ in range(rows)]
        for j, col in enumerate(self.boundaries[n]):
            for i, v in col.items():
                M[i][j] = v
        return M

    def _factors(self, n: int) -> list[int]:
        if n < 1 or n > self.dimension:
            return []
        cache = self.__dict__.setdefault("_factor_cache", {})
        if n not in cache:
            cache[n] = invariant_factors(list(self.boundaries[n]), self.ranks[n - 1])
        return cache[n]


def homology(C: ChainComplex, n: int) -> AbelianGroup:
    """``H_n = ker d_n / im d_{n+1}`` as rank plus torsion."""
    if n < 0 or n > C.dimension:
        raise DimensionOutOfRange(f"dimension {n} outside 0..{C.dimension}")
    out_rank = len(C._factors(n))
    incoming = C._factors(n + 1)
    rank = C.ranks[n] - out_rank - len(incoming)
    return AbelianGroup.from_factors(rank, incoming)


def homology_all(C: ChainComplex) -> list[AbelianGroup]:
    return [homology(C, n) for n in range(C.dimension + 1)]


# ---------------------------------------------------------------------------
# Realizations
# ---------------------------------------------------------------------------


def complex_2d(W: GluedComplex) -> ChainComplex:
    """The cellular chain complex of a glued 2-complex."""
    vindex = {v: i for i, v in enumerate(W.vertices)}
    d1 = []
    for u, v, _ in W.edges:
        col = {vindex[v]: 1, vindex[u]: -1}
        d1.append(col)
    d2 = []
    for fe in W.face_edges:
        col: dict[int, int] = {}
        for e, s in fe:
            col[e] = col.get(e, 0) + s
        d2.append({k: v for k, v in col.items() if v})
    return ChainComplex((len(W.vertices), len(W.edges), len(d2)), ((), tuple(d1), tuple(d2)))


def cw_from_realization(
    W: GluedComplex,
    disk_attachments: Sequence[Sequence[Curve]],
    handlebodies: Sequence[tuple[int, int]],
) -> ChainComplex:
    """Cell complex of the 3-manifold obtained by filling ``W``.

    ``disk_attachments[k]`` is the cut system attached for handlebody ``k``;
    ``handlebodies[k] = (a, b)`` names the surfaces bounding it, with boundary
    orientation ``(-Σ_a) ∪ Σ_b``.  Each handlebody cut along its disks is a
    ball, contributing one 3-cell whose boundary is ``Σ_b - Σ_a`` on faces
    and zero on disks (each disk is met once from either side).
    """
    base = complex_2d(W)
    d2 = list(base.boundaries[2])
    for family in disk_attachments:
        for curve in family:
            if not curve.closed or len(curve) < 2:
                raise NotALoop("attachment curve is not closed")
            try:
                chain = W.edge_chain(curve)
            except Exception as exc:  # missing edge in the 1-skeleton
                raise NotALoop(str(exc)) from exc
            col: dict[int, int] = {}
            for e, s in chain:
                col[e] = col.get(e, 0) + s
            d2.append({k: v for k, v in col.items() if v})
    d3 = []
    for a, b in handlebodies:
        col = {}
        for idx, (s, _, _) in enumerate(W.faces):
            if s == b:
                col[idx] = col.get(idx, 0) + 1
            elif s == a:
                col[idx] = col.get(idx, 0) - 1
        d3.append(col)
    return ChainComplex(
        (base.ranks[0], base.ranks[1], len(d2), len(d3)),
        ((), base.boundaries[1], tuple(d2), tuple(d3)),
    )


# ---------------------------------------------------------------------------
# Boundary membership
# ---------------------------------------------------------------------------

_PRIME = (1 << 61) - 1


def bounds_rationally(C: ChainComplex, n: int, chain: dict[int, int]) -> bool:
    """Whether the ``n``-chain lies in the image of ``d_{n+1}`` over the rationals.

    Elimination runs modulo the prime ``2^61 - 1``; a false answer would need
    that prime to divide a nonzero minor of the boundary matrix.  Over the
    integers this is exact whenever ``H_n`` is torsion free.
    """
    if n + 1 > C.dimension:
        return not any(chain.values())
    p = _PRIME
    pivots: dict[int, dict[int, int]] = {}

    def reduce(col: dict[int, int]) -> dict[int, int]:
        col = {k: v % p for k, v in col.items() if v % p}
        while col:
            top = max(col)
            piv = pivots.get(top)
            if piv is None:
                return col
            f = col[top]
            for k, v in piv.items():
                col[k] = (col.get(k, 0) - f * v) % p
                if not col[k]:
                    del col[k]
        return col

    for col in C.boundaries[n + 1]:
        red = reduce(col)
        if red:
            top = max(red)
            inv = pow(red[top], p - 2, p)
            pivots[top] = {k: v * inv % p for k, v in red.items()}
    return not reduce(chain)
