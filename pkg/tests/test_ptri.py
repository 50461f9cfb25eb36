import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisectkit.corpus import PTRI_FIXTURES, b4, cp2_minus_b4, s1xb3, s2xd2, two_s2xd2
from trisectkit.errors import DiskSector, InvalidSite, PatternNotFound
from trisectkit.ptri import (
    TrisectionIndices4,
    apply_orientation,
    band_stabilize,
    boundary_connect_sum_4,
    boundary_stab_shift,
    check_shift_pattern,
    expected_rank_change,
    indices_4,
    orient_ptri,
    restrict_boundary,
    torus_stabilize,
    validate_ptri,
)
from trisectkit.triheeg import candidate_arcs, realize_homology_3, stabilize_3


def clean_arcs(D, i):
    curves = [c for f in D.families for c in f]
    used = {v for c in curves for v in c.vertices}
    return [a for a in candidate_arcs(D.surfaces[i + 1], curves, limit=30) if not set(a.vertices) & used]


def idx(D):
    report = validate_ptri(D)
    assert report.ok, report.failures
    return report.info["indices"]


@pytest.mark.parametrize(
    "name, k, chi, c, c_boundary",
    [
        ("B4", (0, 0, 0), 1, 0, 0),
        ("CP2-B4", (0, 0, 0), 2, 1, 0),
        ("S1xB3", (1, 1, 0), 0, 1, 2),
        ("S2xD2", (0, 0, 0), 2, 1, 2),
        ("2(S2xD2)", (0, 0, 0), 3, 2, 3),
    ],
)
def test_fixture_indices(name, k, chi, c, c_boundary):
    I = idx(PTRI_FIXTURES[name]())
    assert (I.k, I.chi, I.complexity, I.complexity_boundary) == (k, chi, c, c_boundary)
    assert I.problems() == []
    assert I == indices_4(PTRI_FIXTURES[name]())


def test_sector_triples_describe_connected_sums():
    D = s1xb3()
    I = idx(D)
    for i in range(3):
        H = realize_homology_3(D.sector(i))
        assert [g.rank for g in H] == [1, I.k[i], I.k[i], 1]
        assert all(not g.torsion for g in H)


def test_boundary_restriction():
    assert [str(g) for g in realize_homology_3(restrict_boundary(two_s2xd2()))] == ["Z", "Z^2", "Z^2", "Z"]
    assert [str(g) for g in realize_homology_3(restrict_boundary(cp2_minus_b4()))] == ["Z", "0", "0", "Z"]


def test_inconsistent_indices_are_listed():
    bad = TrisectionIndices4(g=0, b=1, k=(0, 0, 0), y=(1, 0, 0), p=(0, 0, 0), h=(0, 0, 0))
    assert bad.problems()


def test_removed_curve_fails_validation():
    D = cp2_minus_b4()
    from trisectkit.ptri import from_families
    from trisectkit.surfmap import CurveSystem

    fams = list(D.families)
    fams[0] = CurveSystem("alpha_1")
    assert not validate_ptri(from_families(D.surfaces, fams)).ok


@pytest.mark.parametrize("kind", ["I", "II"])
@pytest.mark.parametrize("j", range(3))
def test_torus_stabilization(kind, j):
    D = s2xd2()
    before = idx(D)
    E = torus_stabilize(D, kind, j)
    after = idx(E)
    assert after.complexity == before.complexity + 1
    # Type I adds a handle to a sector page, a Heegaard stabilisation of the boundary.
    assert after.complexity_boundary == before.complexity_boundary + (2 if kind == "I" else 0)
    grown = expected_rank_change(kind, j)
    assert after.k[grown] == before.k[grown] + 1
    assert after.chi == before.chi


def test_torus_stabilization_rejects_bad_sites():
    with pytest.raises(InvalidSite):
        torus_stabilize(b4(), "I", 0, 10**6)
    with pytest.raises(ValueError):
        torus_stabilize(b4(), "III", 0)


@settings(max_examples=8)
@given(st.lists(st.tuples(st.sampled_from(["I", "II"]), st.integers(0, 2), st.integers(0, 2)), max_size=2))
def test_random_torus_sequences_keep_index_relations(moves):
    D = b4()
    c0 = 0
    for kind, j, site in moves:
        D = torus_stabilize(D, kind, j, site)
    I = idx(D)
    assert I.problems() == []
    assert I.complexity == c0 + len(moves)


def test_band_on_a_disk_is_refused():
    from trisectkit.surfmap import Curve

    D = b4()
    circle = D.binding[0]
    with pytest.raises(DiskSector):
        band_stabilize(D, 0, Curve((circle[0], D.surfaces[1].interior_vertices().pop(), circle[2]), False))


def test_dual_curves_leave_no_clean_arc():
    assert all(clean_arcs(s2xd2(), i) == [] for i in range(3))


@pytest.mark.parametrize("site", range(2))
def test_band_then_shift(site):
    D = s1xb3()
    arcs = clean_arcs(D, 1)
    assert len(arcs) == 2
    E = band_stabilize(D, 1, arcs[site])
    before, mid = idx(D), idx(E)
    assert mid.complexity == before.complexity + 1
    assert restrict_boundary(E).canonical_key() == stabilize_3(restrict_boundary(D), 1, arcs[site]).canonical_key()
    check_shift_pattern(E)
    F = boundary_stab_shift(E)
    after = idx(F)
    assert after.complexity == mid.complexity
    assert after.complexity_boundary == mid.complexity_boundary - 1
    H = [str(g) for g in realize_homology_3(restrict_boundary(F))]
    assert H == [str(g) for g in realize_homology_3(restrict_boundary(D))]


def test_shift_needs_a_band_record():
    with pytest.raises(PatternNotFound):
        boundary_stab_shift(s2xd2())


@pytest.mark.parametrize("rotation", range(3))
def test_boundary_connected_sum(rotation):
    S = boundary_connect_sum_4(s2xd2(), s2xd2(), 0, 0, rotation)
    I = idx(S)
    assert I.chi == 3
    assert I.b == 1


def test_orientation_propagation():
    A = orient_ptri(cp2_minus_b4())
    assert len(A.surface_signs) == 4
    R = apply_orientation(b4(), orient_ptri(b4(), 0, -1))
    assert idx(R).complexity == 0
