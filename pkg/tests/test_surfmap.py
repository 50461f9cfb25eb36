import pytest
from hypothesis import given
from hypothesis import strategies as st

from trisectkit.build import cone_disk, holed_torus, row
from trisectkit.errors import MalformedMap, NonTransverse
from trisectkit.surfmap import (
    CombinatorialSurface,
    Curve,
    CurveSystem,
    algebraic_intersection,
    classify_surface,
    curve_intersections,
    cut_along,
    grid_torus_faces,
    is_non_separating,
    refine,
    standard_surface,
    subdivide,
    verify_cut_system,
)

N = 5


def vid(i, j):
    return (i % N) * N + j % N


def torus():
    return CombinatorialSurface.from_faces(grid_torus_faces(N, vid))


def row_curve(j):
    return Curve(tuple(vid(i, j) for i in range(N)))


def col_curve(i):
    return Curve(tuple(vid(i, j) for j in range(N)))


def diag_curve(s):
    return Curve(tuple(vid(t, t + s) for t in range(N)))


CURVES = [("row", row_curve), ("col", col_curve), ("diag", diag_curve)]


def euler(S):
    return len(S.vertices) - len(S.edges) + len(S.faces)


@given(st.integers(0, 2), st.integers(0, 3))
def test_standard_surface_classification(genus, holes):
    S = standard_surface(genus, holes)
    assert tuple(classify_surface(S)) == (genus, holes, 1)
    assert S.euler_characteristic() == euler(S) == 2 - 2 * genus - holes


def test_grid_torus_and_disks():
    T = torus()
    assert tuple(classify_surface(T)) == (1, 0, 1)
    D = cone_disk([0, 1, 2, 3], 4)
    assert tuple(classify_surface(D)) == (0, 1, 1)
    assert D.boundary_circles[0].vertices == (0, 1, 2, 3)
    assert D.interior_vertices() == {4}


def test_malformed_maps_are_rejected():
    with pytest.raises(MalformedMap):
        CombinatorialSurface.from_faces([(0, 1)])
    with pytest.raises(MalformedMap):
        CombinatorialSurface.from_faces([(0, 1, 2), (0, 1, 3)])
    with pytest.raises(MalformedMap):
        CombinatorialSurface.from_faces([(0, 1, 2), (0, 3, 4)])


def test_cut_systems_on_the_torus():
    T = torus()
    assert verify_cut_system(T, [row_curve(0)]).ok
    assert verify_cut_system(T, [diag_curve(2)]).ok
    assert not verify_cut_system(T, []).ok
    assert not verify_cut_system(T, [row_curve(0), row_curve(2)]).ok
    cut = cut_along(T, [row_curve(1)])
    assert tuple(classify_surface(cut)) == (0, 2, 1)
    assert not is_non_separating(T, [row_curve(1), row_curve(3)])


def test_holed_torus_rows_are_nonseparating():
    from itertools import count

    T, v = holed_torus(4, count(0))
    assert tuple(classify_surface(T)) == (1, 1, 1)
    assert is_non_separating(T, [row(v, 4, 2)])


def test_intersections_on_grid_torus():
    T = torus()
    assert len(curve_intersections(T, row_curve(0), col_curve(0))) == 1
    assert abs(algebraic_intersection(T, row_curve(1), col_curve(3))) == 1
    assert algebraic_intersection(T, row_curve(1), col_curve(3)) == -algebraic_intersection(
        T, col_curve(3), row_curve(1)
    )
    assert curve_intersections(T, row_curve(0), row_curve(2)) == []
    with pytest.raises(NonTransverse):
        curve_intersections(T, row_curve(0), row_curve(0))


@given(st.integers(0, 4))
def test_curve_canonical_is_idempotent(shift):
    c = Curve(tuple(vid(i, 2) for i in range(N)))
    vs = c.vertices[shift:] + c.vertices[:shift]
    rotated = Curve(vs)
    assert rotated.canonical() == c.canonical()
    assert rotated.reversed().canonical() == c.canonical()
    assert c.canonical().canonical() == c.canonical()


def test_family_tags_are_checked():
    with pytest.raises(ValueError):
        CurveSystem("beta_1")


subdivision_steps = st.lists(
    st.tuples(st.sampled_from(["edge", "cone", "barycentric"]), st.integers(0, 10**6)),
    min_size=1,
    max_size=6,
)


@given(
    st.sampled_from(CURVES),
    st.integers(0, N - 1),
    st.sampled_from(CURVES),
    st.integers(0, N - 1),
    subdivision_steps,
)
def test_subdivision_preserves_pairwise_intersections(first, a, second, b, steps):
    S = torus()
    c1, c2 = first[1](a), second[1](b)
    try:
        before = curve_intersections(S, c1, c2)
    except NonTransverse:
        return
    systems = [CurveSystem("alpha_1", (c1,)), CurveSystem("alpha_2", (c2,))]
    for kind, r in steps:
        if kind == "edge":
            u, v = S.edges[r % len(S.edges)]
            S, systems = subdivide(S, ("edge", (u, v)), "midpoint", systems)
        else:
            S, systems = subdivide(S, ("face", r % len(S.faces)), kind, systems)
        assert euler(S) == 0
    d1, d2 = systems[0].curves[0], systems[1].curves[0]
    after = curve_intersections(S, d1, d2)
    assert len(after) == len(before)
    assert sorted(s for _, s in after) == sorted(s for _, s in before)


def test_refine_preserves_type_and_curves():
    S = torus()
    R, systems, maps = refine(S, [CurveSystem("delta_1", (row_curve(0), col_curve(2)))])
    assert tuple(classify_surface(R)) == (1, 0, 1)
    assert len(maps["face"]) == len(S.faces)
    a, b = systems[0].curves
    assert len(a) == 2 * N
    assert abs(algebraic_intersection(R, a, b)) == 1
