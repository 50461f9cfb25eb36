import pytest

from trisectkit.corpus import (
    SHADOW_FIXTURES,
    left_trefoil,
    lht_disk_shadow,
    mobius_shadow,
    s1xb3,
    trefoil_shadow,
)
from trisectkit.errors import MissingOrientation, NotStandardized, OpenStrand
from trisectkit.links import jones
from trisectkit.shadow import (
    UNVERIFIED_TRIVIALITY,
    PseudoShadowDiagram,
    SelfCrossingFlag,
    boundary_link,
    family_support,
    orientability,
    sector_families,
    sector_link_components,
    surface_euler_characteristic,
    validate_shadow,
)
from trisectkit.surfmap import CurveSystem

EXPECTED = {
    # name: (chi, bridge points, loops per sector, orientable)
    "trefoil-surface": (-1, 8, [1, 1, 1], True),
    "lht-disk": (1, 10, [2, 2, 2], True),
    "mobius": (0, 6, [1, 1, 1], False),
    "relative-bridge-disk": (1, 4, [1, 1, 1], True),
    "pseudo-bridge-disk": (1, 2, [1, 0, 1], True),
}


def test_family_conventions():
    assert family_support(0) == (0, 1)
    assert family_support(3) == (1, 2)
    assert family_support(5) == (3, 1)
    assert sector_families(2) == (2, 0, 5)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_surface_invariants(name):
    SD = SHADOW_FIXTURES[name]()
    report = validate_shadow(SD)
    assert report.ok, report.failures
    assert UNVERIFIED_TRIVIALITY in report.warnings
    chi, bridges, loops, orientable = EXPECTED[name]
    assert SD.bridge_count() == bridges
    assert [sector_link_components(SD, i) for i in range(3)] == loops
    assert surface_euler_characteristic(SD) == chi
    assert orientability(SD).orientable is orientable


def test_lht_disk_counts():
    SD = lht_disk_shadow()
    assert sum(sector_link_components(SD, i) for i in range(3)) == 6
    assert SD.bridge_count() == 10


def test_mobius_certificate_is_a_triangle():
    o = orientability(mobius_shadow())
    assert not o.orientable
    assert len(o.odd_cycle) == 3


def test_orientable_labelling_is_consistent():
    o = orientability(trefoil_shadow())
    assert o.orientable
    for u, v in o.edges:
        assert {o.labels[u], o.labels[v]} == {"source", "sink"}
        assert o.labels[u] == "source"


def test_trefoil_boundary_link():
    L = boundary_link(trefoil_shadow())
    assert len(L.components) == 1
    assert L.crossing_count == 3
    assert set(L.signs) == {-1}
    V = jones(L)
    assert V == jones(left_trefoil())
    assert V != V.substitute_power(-1)


def test_lht_disk_boundary_is_the_left_trefoil():
    assert jones(boundary_link(lht_disk_shadow())) == jones(left_trefoil())


def test_swapping_every_flag_mirrors_the_boundary():
    SD = trefoil_shadow()
    flipped = SD.with_flags([SelfCrossingFlag(f.family, f.vertex, 1 - f.over) for f in SD.flags])
    assert jones(boundary_link(flipped)) == jones(left_trefoil()).substitute_power(-1)


def test_orientation_is_required_for_signs():
    with pytest.raises(MissingOrientation):
        boundary_link(trefoil_shadow().with_orientation(None))


def test_non_disk_pages_are_not_standardized():
    empty = [CurveSystem(f"tau_{k + 1}") for k in range(3)], [CurveSystem(f"L_{k + 1}") for k in range(3)]
    SD = PseudoShadowDiagram(s1xb3(), *empty)
    with pytest.raises(NotStandardized):
        boundary_link(SD)


def test_dropping_an_arc_leaves_an_open_strand():
    SD = trefoil_shadow()
    taus = list(SD.taus)
    taus[0] = taus[0].with_curves(taus[0].curves[1:])
    broken = PseudoShadowDiagram(SD.base, taus, SD.links, SD.flags, SD.orientation, SD.name)
    assert not validate_shadow(broken, check_base=False).ok
    with pytest.raises(OpenStrand):
        surface_euler_characteristic(broken)
