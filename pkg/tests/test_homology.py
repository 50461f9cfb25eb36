from itertools import combinations
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trisectkit.errors import DimensionOutOfRange, OrientationClash
from trisectkit.homology import (
    AbelianGroup,
    ChainComplex,
    determinant,
    homology,
    homology_all,
    identity,
    invariant_factors,
    matmul,
    smith_normal_form,
)

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def determinantal_divisors(M):
    """gcd of all k x k minors, k = 1..min(shape); an independent oracle."""
    rows, cols = len(M), len(M[0])
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, determinant([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g)
    return out


@given(matrices)
def test_snf_certificate_remultiplies(M):
    res = smith_normal_form(M)
    assert matmul(matmul(res.U, M), res.V) == res.D
    assert abs(determinant(res.U)) == 1
    assert abs(determinant(res.V)) == 1
    for i, row in enumerate(res.D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    d = list(res.diagonal)
    assert all(x > 0 for x in d)
    assert all(d[k + 1] % d[k] == 0 for k in range(len(d) - 1))


@given(matrices)
def test_snf_matches_determinantal_divisors(M):
    divisors = determinantal_divisors(M)
    expected = [divisors[0]] + [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))] if divisors else []
    assert list(smith_normal_form(M).diagonal) == expected


@given(matrices)
def test_sparse_factors_agree_with_dense(M):
    cols = [{i: M[i][j] for i in range(len(M)) if M[i][j]} for j in range(len(M[0]))]
    assert invariant_factors(cols, len(M)) == list(smith_normal_form(M).diagonal)


def test_known_snf():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == (2, 6, 12)
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == ()
    assert identity(2) == [[1, 0], [0, 1]]


def test_abelian_group_normalizes_and_prints():
    assert str(AbelianGroup(2, (4, 2))) == "Z^2 + Z/2 + Z/4"
    assert str(AbelianGroup()) == "0"
    assert AbelianGroup.from_factors(1, [1, 1, 3]) == AbelianGroup(1, (3,))
    assert AbelianGroup(0, (5,)).is_cyclic()
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))


def test_homology_of_small_complexes():
    # Circle: one vertex, one loop edge.
    S1 = ChainComplex((1, 1), ((), ({},)))
    assert [str(g) for g in homology_all(S1)] == ["Z", "Z"]
    # Real projective plane: one cell per dimension, d2 = 2.
    RP2 = ChainComplex((1, 1, 1), ((), ({},), ({0: 2},)))
    assert [str(g) for g in homology_all(RP2)] == ["Z", "Z/2", "0"]
    assert RP2.euler_characteristic() == 1
    with pytest.raises(DimensionOutOfRange):
        homology(RP2, 3)


def test_boundary_of_boundary_is_checked():
    with pytest.raises(OrientationClash):
        ChainComplex((2, 1, 1), ((), ({0: 1, 1: -1},), ({0: 1},)))
