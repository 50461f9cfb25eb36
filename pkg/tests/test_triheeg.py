import pytest

from trisectkit.corpus import TRIHEEG_FIXTURES, s1xs2, t3, trivial_s3, two_s1xs2
from trisectkit.errors import InvalidSite
from trisectkit.surfmap import CurveSystem, glue_pair
from trisectkit.triheeg import (
    TripleHeegaardDiagram,
    candidate_bands,
    connected_sum_3,
    handleslide_3,
    heegaard_stabilize_3,
    indices_3,
    realize_homology_3,
    refine_diagram,
    stabilization_sites,
    stabilize_3,
    validate_triheeg,
)


def groups(D):
    return [str(g) for g in realize_homology_3(D)]


@pytest.mark.parametrize(
    "build, y, b, homology",
    [
        (trivial_s3, (0, 0, 0), 1, ["Z", "0", "0", "Z"]),
        (s1xs2, (1, 1, 0), 1, ["Z", "Z", "Z", "Z"]),
        (two_s1xs2, (1, 1, 1), 2, ["Z", "Z^2", "Z^2", "Z"]),
        (t3, (3, 0, 3), 1, ["Z", "Z^3", "Z^3", "Z"]),
    ],
)
def test_fixture_indices_and_homology(build, y, b, homology):
    D = build()
    report = validate_triheeg(D)
    assert report.ok, report.failures
    idx = indices_3(D)
    assert (idx.y, idx.b) == (y, b)
    assert idx.consistent()
    assert idx.complexity == sum(y) == 2 * sum(idx.p) + 3 * (b - 1)
    assert groups(D) == homology


def test_fixture_registry_is_complete():
    assert set(TRIHEEG_FIXTURES) == {"S3", "S1xS2", "2(S1xS2)", "T3"}


def test_missing_curve_is_reported():
    D = s1xs2()
    broken = TripleHeegaardDiagram(D.surfaces, (CurveSystem("delta_1"),) + D.deltas[1:])
    report = validate_triheeg(broken)
    assert not report.ok
    assert any("δ_1" in m for m in report.failures)


def test_family_tags_must_match_position():
    D = trivial_s3()
    with pytest.raises(ValueError):
        TripleHeegaardDiagram(D.surfaces, (D.deltas[1], D.deltas[0], D.deltas[2]))


@pytest.mark.parametrize("i", range(3))
def test_heegaard_stabilization_deltas(i):
    D = s1xs2()
    E = heegaard_stabilize_3(D, i)
    assert validate_triheeg(E).ok
    before, after = indices_3(D).y, indices_3(E).y
    delta = [a - b for a, b in zip(after, before)]
    expected = [0, 0, 0]
    expected[i] += 1
    expected[(i - 1) % 3] += 1
    assert delta == expected
    assert groups(E) == groups(D)


def test_heegaard_stabilization_rejects_bad_face():
    with pytest.raises(InvalidSite):
        heegaard_stabilize_3(trivial_s3(), 0, 10**6)


def test_stabilization_along_arcs():
    D, arcs = stabilization_sites(s1xs2(), 1)
    assert arcs
    for arc in arcs[:3]:
        E = stabilize_3(D, 1, arc)
        assert validate_triheeg(E).ok
        i0, i1 = indices_3(D), indices_3(E)
        assert abs(i1.b - i0.b) == 1
        assert i1.y[2] - i0.y[2] == 1
        assert groups(E) == groups(D)


def test_disk_sectors_have_no_arcs():
    assert stabilization_sites(trivial_s3(), 0)[1] == []


@pytest.mark.parametrize("rotation", range(3))
def test_connected_sum_adds_homology(rotation):
    C = connected_sum_3(s1xs2(), s1xs2(), 0, 0, rotation)
    assert validate_triheeg(C).ok
    assert groups(C) == ["Z", "Z^2", "Z^2", "Z"]
    with pytest.raises(InvalidSite):
        connected_sum_3(s1xs2(), s1xs2(), 0, 0, 3)


def test_handleslide_preserves_homology():
    C = connected_sum_3(s1xs2(), s1xs2(), 0, 0, 0)
    slid = 0
    for i in range(3):
        fam = list(C.deltas[i])
        if len(fam) < 2:
            continue
        band = candidate_bands(glue_pair(C.surfaces[i], C.surfaces[(i + 1) % 3]), fam, 0, 1)
        assert band is not None
        H = handleslide_3(C, i, 0, 1, band)
        assert validate_triheeg(H).ok
        assert indices_3(H).y == indices_3(C).y
        assert groups(H) == groups(C)
        slid += 1
    assert slid


def test_canonical_key_ignores_refinement_free_relabeling():
    D = s1xs2()
    shift = {v: v + 1000 for S in D.surfaces for v in S.vertices}
    E = TripleHeegaardDiagram(
        tuple(S.renamed(shift) for S in D.surfaces), tuple(f.renamed(shift) for f in D.deltas)
    )
    assert E.canonical_key() == D.canonical_key()
    assert refine_diagram(D).canonical_key() != D.canonical_key()
    assert groups(refine_diagram(D)) == groups(D)
