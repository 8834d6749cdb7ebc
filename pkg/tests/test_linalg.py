from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hodgeball import linalg
from hodgeball.scalar import GaussianRational, I

from conftest import gaussians, rationals


def square(entries, lo=1, hi=4):
    return st.integers(lo, hi).flatmap(
        lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)
    )


@given(square(rationals))
def test_inverse_or_singular(A):
    n = len(A)
    if linalg.det(A) == 0:
        assert linalg.rank(A) < n
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(A)
    else:
        assert linalg.equal(linalg.matmul(A, linalg.inverse(A)), linalg.identity(n))


@given(square(gaussians, hi=3))
def test_gaussian_inverse(A):
    if linalg.det(A) != 0:
        assert linalg.equal(linalg.matmul(linalg.inverse(A), A), linalg.identity(len(A)))


@given(square(rationals), square(rationals))
def test_det_multiplicative(A, B):
    if len(A) == len(B):
        assert linalg.det(linalg.matmul(A, B)) == linalg.det(A) * linalg.det(B)


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_rank_nullity(A):
    N = linalg.nullspace(A, 4)
    assert len(N) + linalg.rank(A) == 4
    for v in N:
        assert not any(linalg.matvec(A, v))


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3))
def test_solve(A, b):
    x = linalg.solve(A, b)
    if x is None:
        aug = [r + [bi] for r, bi in zip(A, b)]
        assert linalg.rank(aug) > linalg.rank(A)
    else:
        assert linalg.matvec(A, x) == b


def test_intersect():
    e = [[Fraction(int(i == j)) for i in range(3)] for j in range(3)]
    U = [e[0], e[1]]
    W = [e[1], [1, 0, 1]]
    X = linalg.intersect(U, W, 3)
    assert len(X) == 1 and linalg.span_rank(X + [e[1]]) == 1


def test_leading_minors_and_bilinear():
    Q = linalg.matrix([[2, 1], [1, 2]])
    assert linalg.leading_minors(Q) == [2, 3]
    assert linalg.bilinear([1, I], Q, [1, -I]) == 4


def test_matrix_rejects_float():
    with pytest.raises(TypeError):
        linalg.matrix([[0.5]])


def test_format_matrix():
    assert linalg.format_matrix([[Fraction(1, 2), GaussianRational(0, -1)]]) == [["1/2", "-i"]]
