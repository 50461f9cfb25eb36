from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trisectkit.corpus import cp2_sector_lifts, figure_eight, hopf_link, left_trefoil, link_fixtures, torus_link_2n
from trisectkit.errors import BadPartition, SameComponent, TooManyCrossings
from trisectkit.links import (
    Laurent,
    LinkDiagram,
    SectorLift,
    bracket_pd,
    from_gauss_text,
    intersection_pairing,
    jones,
    kauffman_bracket,
    linking_number,
    pd_code,
    to_gauss_text,
)

FIXTURES = link_fixtures()
A = Laurent.monomial(1)
A_INV = Laurent.monomial(-1)


def t(e, c=1):
    return Laurent.monomial(Fraction(e), c)


def poly(d):
    return Laurent.from_dict({Fraction(e): c for e, c in d.items()})


# Jones polynomials from standard knot tables (frozen).
KNOWN_JONES = {
    "unknot": poly({0: 1}),
    "left-handed trefoil": poly({-4: -1, -3: 1, -1: 1}),
    "figure eight": poly({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}),
    "T(2,5)": poly({2: 1, 4: 1, 5: -1, 6: 1, 7: -1}),
    "two unknots": poly({Fraction(1, 2): -1, Fraction(-1, 2): -1}),
    "Hopf link": poly({Fraction(1, 2): -1, Fraction(5, 2): -1}),
}


@pytest.mark.parametrize("name", sorted(KNOWN_JONES))
def test_known_jones_polynomials(name):
    assert jones(FIXTURES[name]) == KNOWN_JONES[name]


def test_trefoil_handedness_is_detected():
    V = jones(left_trefoil())
    assert V != V.substitute_power(-1)
    assert jones(left_trefoil().mirror()) == V.substitute_power(-1)
    assert jones(torus_link_2n(3, -1)) == V
    assert jones(figure_eight()) == jones(figure_eight()).substitute_power(-1)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_bracket_state_skein(name):
    P = pd_code(FIXTURES[name])
    whole = bracket_pd(P)
    for k in range(len(P.crossings)):
        split = A * bracket_pd(P.smooth(k, "A")) + A_INV * bracket_pd(P.smooth(k, "B"))
        assert split == whole


def _drop(comps, k):
    """Remove crossing ``k`` from visit sequences and renumber the rest."""

    def fix(v):
        return v - (1 if v > 0 else -1) * (abs(v) > k)

    return tuple(tuple(fix(v) for v in c if abs(v) != k) for c in comps)


def _oriented_smoothing(D, k):
    comps = [list(c) for c in D.components]
    i = D.component_of(k)
    j = D.component_of(-k)
    signs = D.signs[: k - 1] + D.signs[k:]
    if i == j:
        c = comps[i]
        p = c.index(k)
        c = c[p:] + c[:p]
        q = c.index(-k)
        new = [c[1:q], c[q + 1:]]
        comps = comps[:i] + new + comps[i + 1:]
    else:
        a, b = comps[i], comps[j]
        pa, pb = a.index(k), b.index(-k)
        merged = b[pb + 1:] + b[:pb] + a[pa + 1:] + a[:pa]
        comps = [c for idx, c in enumerate(comps) if idx not in (i, j)] + [merged]
    return LinkDiagram(_drop(comps, k), signs)


def _switch(D, k):
    comps = tuple(tuple(-v if abs(v) == k else v for v in c) for c in D.components)
    signs = tuple(-s if n == k else s for n, s in enumerate(D.signs, start=1))
    return LinkDiagram(comps, signs)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_jones_oriented_skein(name):
    D = FIXTURES[name]
    for k in range(1, D.crossing_count + 1):
        plus, minus = (D, _switch(D, k)) if D.signs[k - 1] > 0 else (_switch(D, k), D)
        zero = _oriented_smoothing(D, k)
        lhs = t(-1) * jones(plus) + t(1, -1) * jones(minus)
        rhs = (t(Fraction(1, 2)) + t(Fraction(-1, 2), -1)) * jones(zero)
        assert lhs == rhs


laurents = st.dictionaries(
    st.fractions(min_value=-6, max_value=6, max_denominator=4), st.integers(-5, 5), max_size=5
).map(Laurent.from_dict)


@given(laurents, laurents, laurents)
def test_laurent_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * Laurent.monomial(0) == p
    assert (p * q).substitute_power(-1) == p.substitute_power(-1) * q.substitute_power(-1)


def test_laurent_format():
    assert jones(left_trefoil()).format("t") == "-t^-4 + t^-3 + t^-1"
    assert Laurent().format() == "0"
    assert poly({0: 2, 1: -3}).format("A") == "2 - 3*A"


def test_writhe_and_linking():
    assert left_trefoil().writhe() == -3
    H = hopf_link()
    assert linking_number(H, 0, 1) == 1
    assert linking_number(H.mirror(), 1, 0) == -1
    assert linking_number(torus_link_2n(4, 1), 0, 1) == 2
    with pytest.raises(SameComponent):
        linking_number(H, 0, 0)


def test_crossing_bound():
    with pytest.raises(TooManyCrossings):
        kauffman_bracket(torus_link_2n(8), bound=7)


def test_bad_gauss_data():
    with pytest.raises(ValueError):
        LinkDiagram(((1, 2),), (1, 1))
    with pytest.raises(ValueError):
        LinkDiagram(((1, -1),), (2,))
    with pytest.raises(ValueError):
        from_gauss_text("component: O1 U1\nsigns: +\n")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_gauss_text_round_trip(name):
    D = FIXTURES[name]
    back = from_gauss_text(to_gauss_text(D), D.name)
    assert back == D


def test_cp2_pairing():
    total, parts = intersection_pairing(cp2_sector_lifts())
    assert parts == [0, 1, 1]
    assert total == 2
    with pytest.raises(BadPartition):
        intersection_pairing([SectorLift(hopf_link(), (0,), (0, 1))])
