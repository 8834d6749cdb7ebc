from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hodgeball import linalg
from hodgeball.eigen import (
    ArrangementData,
    Character,
    arrangement_variety,
    dm_hodge_number,
    dm_hodge_table,
    dm_total_dim,
    eigen_ball_conditions,
    eigen_filtration_dims,
    eigen_graded_dim,
    eigen_hodge_numbers,
    eigenspace,
    filtration_dims,
    root_of_unity,
)
from hodgeball.residue import Hypersurface, cyclic_cover, jacobian_ring
from hodgeball.scalar import I


def cover():
    return cyclic_cover(Hypersurface.fermat(4, 3), 3)


def test_character_values():
    chi = Character([3, 4], [1, 3])
    assert chi.exponent == 12
    assert chi((1, 0)) == 4 and chi((0, 1)) == 9
    assert not chi.is_real() and Character([2], [1]).is_real()
    assert chi.conjugate().indices == (2, 1)


def test_root_of_unity():
    assert root_of_unity(1, 4) == I and root_of_unity(2, 4) == -1
    with pytest.raises(ValueError, match="not in Q"):
        root_of_unity(1, 3)


def test_eigenspace_diagonal_and_dense():
    chi = Character([3], [1])
    assert eigenspace([[0, 1, 2, 1]], chi) == [
        [Fraction(0), Fraction(1), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
    ]
    rot = [[0, -1], [1, 0]]  # eigenvalues +-i
    (v,) = eigenspace([rot], Character([4], [1]))
    assert linalg.matvec(linalg.matrix(rot), v) == [I * x for x in v]


def test_eigen_dims_cover():
    R = jacobian_ring(cover())
    w = [0, 0, 0, 0, 1]
    assert [eigen_graded_dim(R, w, 1, i, 3) for i in range(3)] == [4, 1, 0]
    assert eigen_graded_dim(R, w, 4, 1, 3) == 4


@given(st.integers(0, 6), st.lists(st.integers(0, 2), min_size=5, max_size=5))
def test_eigen_dims_partition(deg, w):
    R = jacobian_ring(cover())
    assert sum(eigen_graded_dim(R, w, deg, i, 3) for i in range(3)) == R.graded_dim(deg)


def test_eigen_hodge_numbers_cover():
    X = cover()
    hn = eigen_hodge_numbers(X, [0, 0, 0, 0, 1], 1, 3)
    assert hn == [0, 1, 4, 0]
    assert eigen_filtration_dims(X, [0, 0, 0, 0, 1], 1, 3) == [5, 5, 1, 0, 0]


def test_eigen_ball_conditions():
    rep = eigen_ball_conditions([5, 5, 1, 0, 0], 2, 4)
    assert rep.verdict and rep.to_dict() == {"i": True, "ii": True, "iii": True, "iv": True, "ball": True}
    assert not eigen_ball_conditions([6, 6, 2, 0, 0], 2, 4).one_dimensional
    assert not eigen_ball_conditions([5, 5, 1, 0, 0], 2, 3).tangent_matches
    with pytest.raises(ValueError):
        eigen_ball_conditions([1, 2], 1, 0)


def test_filtration_dims():
    assert filtration_dims([1, 2, 3]) == [6, 3, 1, 0]


def test_dm_example():
    data = ArrangementData.generic(12, 1, ["1/6"] * 12)
    assert data.total == 2 and data.d == 6
    assert dm_hodge_table(data) == [1, 9]
    assert sum(dm_hodge_table(data)) == dm_total_dim(12, 1) == 10


def vandermonde_identity(m, n, s):
    return sum(dm_hodge_number(m, n, s, n - q, q) for q in range(n + 1)) == comb(m - 2, n)


def test_dm_identity_sweep():
    for m in range(3, 15):
        for n in range(1, m - 1):
            for s in range(1, m):
                assert vandermonde_identity(m, n, s)


def test_dm_ball_case():
    for m in range(4, 15):
        for n in range(1, m - 2):
            assert dm_hodge_number(m, n, n + 1, n, 0) == 1
            assert dm_hodge_number(m, n, n + 1, n - 1, 1) == n * (m - n - 2)


def test_arrangement_validation():
    with pytest.raises(ValueError, match="integer"):
        ArrangementData.generic(4, 1, ["1/3"] * 4)
    with pytest.raises(ValueError, match="between 0 and 1"):
        ArrangementData.generic(4, 1, ["1", "1", "1", "1"])
    with pytest.raises(ValueError, match="general position"):
        ArrangementData(3, 1, [[1, 0], [2, 0], [0, 1]], ["2/3"] * 3)


def test_arrangement_json_and_variety():
    text = '{"m": 4, "n": 1, "mu": ["1/2", "1/2", "1/2", "1/2"], "coeffs": [[1, 0], [0, 1], [1, 1], [1, 2]]}'
    data = ArrangementData.from_json(text)
    polys = arrangement_variety(data)
    assert len(polys) == 2 and all(p.degree() == 2 for p in polys)
