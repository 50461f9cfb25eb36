from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisectkit.census import CycleClasses, _independent, enumerate_triheeg, shapes
from trisectkit.errors import BudgetExceeded
from trisectkit.surfmap import CombinatorialSurface, Curve, grid_torus_faces, standard_surface
from trisectkit.triheeg import indices_3, validate_triheeg

N = 4


def vid(i, j):
    return (i % N) * N + j % N


@lru_cache(maxsize=None)
def catalog(max_c, seed=None):
    return tuple(enumerate_triheeg(max_c, seed=seed))


def test_cycle_classes_on_the_torus():
    T = CombinatorialSurface.from_faces(grid_torus_faces(N, vid))
    cc = CycleClasses(T)
    assert cc.rank == 2
    r = cc.coordinates(Curve(tuple(vid(i, 1) for i in range(N))))
    c = cc.coordinates(Curve(tuple(vid(1, j) for j in range(N))))
    d = cc.coordinates(Curve(tuple(vid(t, t) for t in range(N))))
    assert _independent([r, c])
    assert tuple(x + y for x, y in zip(r, c)) in (d, tuple(-v for v in d))
    # A face boundary is null-homologous.
    assert not any(cc.coordinates(Curve(T.faces[0])))


@pytest.mark.parametrize("genus", [0, 1, 2])
def test_cycle_class_rank_is_twice_the_genus(genus):
    assert CycleClasses(standard_surface(genus, 0)).rank == 2 * genus


def test_independence():
    assert _independent([(1, 0), (0, 1)])
    assert not _independent([(1, 2), (2, 4)])
    assert not _independent([(0, 0)])
    assert _independent([])


def test_shapes_respect_the_complexity_formula():
    for b, p in shapes(4, 2):
        assert 2 * sum(p) + 3 * (b - 1) <= 4
    assert (1, (0, 0, 0)) in shapes(0, 2)


def test_low_complexity_catalog():
    entries = catalog(2)
    assert entries
    keys = [e.key for e in entries]
    assert len(set(keys)) == len(keys)
    assert [e.complexity for e in entries] == sorted(e.complexity for e in entries)
    for e in entries:
        assert e.provenance == "enumerated"
        assert validate_triheeg(e.diagram).ok
        assert indices_3(e.diagram) == e.indices
        assert e.indices.consistent()
        assert e.complexity <= 2
        assert e.h1_cyclic
        assert e.homology[0] == "Z" and e.homology[3] == "Z"


def test_catalog_contains_s3_and_s1xs2():
    h1 = {e.homology[1] for e in catalog(2)}
    assert {"0", "Z"} <= h1


@settings(max_examples=3)
@given(st.integers(0, 1000))
def test_enumeration_is_seed_independent(seed):
    assert [e.key for e in catalog(2, seed)] == [e.key for e in catalog(2)]


def test_budget_exhaustion_keeps_the_partial_catalog():
    with pytest.raises(BudgetExceeded) as info:
        enumerate_triheeg(2, budget=5)
    partial = info.value.partial
    full = {e.key for e in catalog(2)}
    assert {e.key for e in partial} <= full
    assert len(partial) <= 5


def test_complexity_bound_is_checked():
    with pytest.raises(ValueError):
        enumerate_triheeg(5)
