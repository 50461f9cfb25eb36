"""Link diagrams as signed Gauss data, the Kauffman bracket and linking numbers.

A link diagram lists its components as cyclic sequences of crossing visits.
Crossings are numbered from 1; a visit ``+k`` passes over crossing ``k`` and
a visit ``-k`` passes under it.  A component without visits is a crossing
free circle.  ``signs[k-1]`` is the sign of crossing ``k``: with both
strands oriented and the over strand pointing along ``o`` and the under
strand along ``u``, the crossing is positive when ``o × u > 0`` in the
oriented projection plane (the right-handed convention).

From this data the planar-diagram code is built locally: for crossing ``k``
let ``a``/``c`` be the incoming/outgoing edges of the under strand and
``d``/``b`` those of the over strand.  Listed counterclockwise from ``a`` the
corners are ``(a, b, c, d)`` at a positive crossing, where ``b`` is the
outgoing over edge, and ``(a, d, c, b)`` at a negative one.  The A-smoothing
joins the first two and the last two labels of that tuple, the B-smoothing
joins the first and last and the middle two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import BadPartition, SameComponent, TooManyCrossings

DEFAULT_CROSSING_BOUND = 16


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Laurent:
    """A Laurent polynomial with integer coefficients and rational exponents."""

    terms: tuple[tuple[Fraction, int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping) -> "Laurent":
        return cls(tuple(sorted((Fraction(e), int(c)) for e, c in d.items() if c)))

    @classmethod
    def monomial(cls, exponent, coeff: int = 1) -> "Laurent":
        return cls.from_dict({Fraction(exponent): coeff})

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.terms)

    def __add__(self, other: "Laurent") -> "Laurent":
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return Laurent.from_dict(d)

    def __mul__(self, other: "Laurent") -> "Laurent":
        d: dict[Fraction, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return Laurent.from_dict(d)

    def substitute_power(self, factor) -> "Laurent":
        """Replace the variable ``x`` by ``x**factor``."""
        return Laurent.from_dict({e * Fraction(factor): c for e, c in self.terms})

    def format(self, var: str = "t") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                exp = "" if e == 1 else f"^{e}"
                body = (f"{mag}*" if mag != 1 else "") + f"{var}{exp}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()


ONE = Laurent.monomial(0)
LOOP_VALUE = Laurent.from_dict({2: -1, -2: -1})


# ---------------------------------------------------------------------------
# Diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinkDiagram:
    components: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        comps = tuple(tuple(int(v) for v in c) for c in self.components)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        n = len(self.signs)
        seen: dict[int, int] = {}
        for comp in comps:
            for v in comp:
                if v == 0 or abs(v) > n:
                    raise ValueError(f"visit {v} names no crossing (1..{n})")
                seen[v] = seen.get(v, 0) + 1
        for k in range(1, n + 1):
            if seen.get(k) != 1 or seen.get(-k) != 1:
                raise ValueError(f"crossing {k} must be visited once over and once under")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("crossing signs must be +1 or -1")

    @property
    def crossing_count(self) -> int:
        return len(self.signs)

    def component_of(self, visit: int) -> int:
        for idx, comp in enumerate(self.components):
            if visit in comp:
                return idx
        raise KeyError(visit)

    def crossings(self) -> list[tuple[int, int, int]]:
        """``(over component, under component, sign)`` per crossing."""
        return [
            (self.component_of(k), self.component_of(-k), s)
            for k, s in enumerate(self.signs, start=1)
        ]

    def writhe(self) -> int:
        return sum(self.signs)

    def mirror(self) -> "LinkDiagram":
        comps = tuple(tuple(-v for v in c) for c in self.components)
        return LinkDiagram(comps, tuple(-s for s in self.signs), self.name)

    def as_dict(self) -> dict:
        return {"components": [list(c) for c in self.components], "signs": list(self.signs)}


@dataclass(frozen=True)
class PDState:
    """Planar-diagram code with pending joins, used by the state sum.

    ``crossings`` are the corner tuples described in the module docstring,
    ``joins`` are edge pairs already connected by earlier smoothings and
    ``free_loops`` counts circles that meet no crossing.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    joins: tuple[tuple[int, int], ...] = ()
    free_loops: int = 0

    def smooth(self, index: int, kind: str) -> "PDState":
        a, b, c, d = self.crossings[index]
        pairs = ((a, b), (c, d)) if kind == "A" else ((a, d), (b, c))
        rest = self.crossings[:index] + self.crossings[index + 1:]
        return PDState(rest, self.joins + pairs, self.free_loops)


def pd_code(LD: LinkDiagram) -> PDState:
    edge_in: dict[int, int] = {}
    edge_out: dict[int, int] = {}
    label = 0
    free = 0
    for comp in LD.components:
        if not comp:
            free += 1
            continue
        first = label
        m = len(comp)
        for j, visit in enumerate(comp):
            edge_out[visit] = first + j
            edge_in[visit] = first + (j - 1) % m
        label += m
    crossings = []
    for k, s in enumerate(LD.signs, start=1):
        a, c = edge_in[-k], edge_out[-k]
        d, b = edge_in[k], edge_out[k]
        crossings.append((a, b, c, d) if s > 0 else (a, d, c, b))
    return PDState(tuple(crossings), (), free)


def _count_loops(crossings, joins, choice, free: int) -> int:
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for x, y in joins:
        union(x, y)
    for (a, b, c, d), kind in zip(crossings, choice):
        if kind:
            union(a, b)
            union(c, d)
        else:
            union(a, d)
            union(b, c)
    return len({find(x) for x in list(parent)}) + free


def bracket_pd(P: PDState, bound: int = DEFAULT_CROSSING_BOUND) -> Laurent:
    """Kauffman bracket ``<D>`` in the variable ``A`` with ``<O> = 1``."""
    n = len(P.crossings)
    if n > bound:
        raise TooManyCrossings(f"{n} crossings exceed the bound {bound}")
    coeffs: dict[Fraction, int] = {}
    for choice in product((True, False), repeat=n):
        loops = _count_loops(P.crossings, P.joins, choice, P.free_loops)
        a = sum(choice)
        term = Laurent.monomial(a - (n - a))
        for _ in range(loops - 1):
            term = term * LOOP_VALUE
        for e, c in term.terms:
            coeffs[e] = coeffs.get(e, 0) + c
    return Laurent.from_dict(coeffs)


def kauffman_bracket(LD: LinkDiagram, bound: int = DEFAULT_CROSSING_BOUND) -> Laurent:
    return bracket_pd(pd_code(LD), bound)


def jones(LD: LinkDiagram, bound: int = DEFAULT_CROSSING_BOUND) -> Laurent:
    """Jones polynomial in ``t`` via ``V = (-A^3)^(-w) <D>`` and ``A = t^(-1/4)``."""
    w = LD.writhe()
    norm = Laurent.monomial(-3 * w, -1 if w % 2 else 1)
    return (norm * kauffman_bracket(LD, bound)).substitute_power(Fraction(-1, 4))


def linking_number(LD: LinkDiagram, a: int, b: int) -> int:
    if a == b:
        raise SameComponent(f"component {a} cannot be linked with itself")
    for c in (a, b):
        if not 0 <= c < len(LD.components):
            raise IndexError(f"no component {c}")
    total = 0
    for over, under, s in LD.crossings():
        if {over, under} == {a, b}:
            total += s
    if total % 2:
        raise ValueError("odd crossing sum between components; diagram is not realizable")
    return total // 2


@dataclass(frozen=True)
class SectorLift:
    """A lifted link diagram in one sector with its K-side and E-side components."""

    diagram: LinkDiagram
    k_side: tuple[int, ...]
    e_side: tuple[int, ...]


def intersection_pairing(lifts: Iterable[SectorLift]) -> tuple[int, list[int]]:
    """Total of the pairwise linking numbers between K-side and E-side components.

    Returns the total and the per-sector contributions.
    """
    parts = []
    for lift in lifts:
        n = len(lift.diagram.components)
        ks, es = set(lift.k_side), set(lift.e_side)
        if ks & es or (ks | es) != set(range(n)) or len(ks) != len(lift.k_side) or len(es) != len(lift.e_side):
            raise BadPartition(
                f"sides {sorted(ks)} / {sorted(es)} do not partition components 0..{n - 1}"
            )
        parts.append(sum(linking_number(lift.diagram, a, b) for a in ks for b in es))
    return sum(parts), parts


# ---------------------------------------------------------------------------
# Gauss-code text
# ---------------------------------------------------------------------------

GAUSS_GRAMMAR = """\
gauss-file  := header component* signs
header      := "gauss 1" NL
component   := "component:" (SP visit)* NL
visit       := ("O" | "U") crossing-number
signs       := "signs:" (SP ("+" | "-"))* NL
"""


def to_gauss_text(LD: LinkDiagram) -> str:
    lines = ["gauss 1"]
    for comp in LD.components:
        toks = [("O" if v > 0 else "U") + str(abs(v)) for v in comp]
        lines.append(" ".join(["component:"] + toks))
    lines.append(" ".join(["signs:"] + ["+" if s > 0 else "-" for s in LD.signs]))
    return "\n".join(lines) + "\n"


def from_gauss_text(text: str, name: str = "") -> LinkDiagram:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "gauss 1":
        raise ValueError("missing 'gauss 1' header")
    comps: list[tuple[int, ...]] = []
    signs: Sequence[int] | None = None
    for ln in lines[1:]:
        head, _, rest = ln.partition(":")
        toks = rest.split()
        if head == "component":
            visits = []
            for tok in toks:
                if tok[:1] not in ("O", "U") or not tok[1:].isdigit():
                    raise ValueError(f"bad visit token {tok!r}")
                visits.append(int(tok[1:]) * (1 if tok[0] == "O" else -1))
            comps.append(tuple(visits))
        elif head == "signs":
            if any(t not in ("+", "-") for t in toks):
                raise ValueError("signs must be '+' or '-'")
            signs = [1 if t == "+" else -1 for t in toks]
        else:
            raise ValueError(f"unknown line {ln!r}")
    if signs is None:
        raise ValueError("missing signs line")
    return LinkDiagram(tuple(comps), tuple(signs), name)
