import importlib
import os
import subprocess
import sys
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hodgeball import _kernels_py as py
from hodgeball.scalar import GaussianRational

from conftest import gaussians, rationals

try:
    cy = importlib.import_module("hodgeball._kernels")
except ImportError:  # extension not built
    cy = None

BACKENDS = [py] + ([cy] if cy is not None else [])
needs_cy = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

exps = st.tuples(*[st.integers(0, 3)] * 3)
series = st.dictionaries(exps, rationals.filter(bool), max_size=6)


def naive_mul(a, b, order):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if sum(e) <= order:
                out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__)
@given(a=series, b=series, order=st.integers(0, 7))
def test_series_mul_oracle(k, a, b, order):
    assert k.series_mul(a, b, order) == naive_mul(a, b, order)


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__)
def test_series_mul_gaussian(k):
    i = GaussianRational(0, 1)
    assert k.series_mul({(1,): i}, {(1,): i, (0,): 1}, 2) == {(2,): -1, (1,): i}


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__)
@pytest.mark.parametrize("n, d", [(1, 3), (3, 0), (3, 4), (5, 3), (0, 0), (0, 2)])
def test_monomials_count_and_order(k, n, d):
    ms = k.monomials_of_degree(n, d)
    expected = (1 if d == 0 else 0) if n == 0 else comb(n + d - 1, d)
    assert len(ms) == expected
    assert ms == sorted(ms, reverse=True)
    assert all(sum(e) == d for e in ms)


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__)
def test_standard_monomials(k):
    leads = [(2, 0, 0), (0, 2, 0), (0, 0, 2)]
    assert k.standard_monomials(3, 2, leads) == [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
    assert k.standard_monomials(3, 4, leads) == []
    assert k.standard_monomials(3, -1, leads) == []


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)
)


def det_oracle(A):
    """Laplace expansion."""
    if len(A) == 1:
        return A[0][0]
    return sum(
        (-1) ** j * A[0][j] * det_oracle([r[:j] + r[j + 1:] for r in A[1:]]) for j in range(len(A))
    )


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.__name__)
@given(square)
def test_echelon_det(k, A):
    rows, piv, det = k.echelon(A, len(A))
    assert det == det_oracle(A)
    assert len(rows) == len(piv)
    for r, c in zip(rows, piv):
        assert r[c] == 1


@needs_cy
@given(a=series, b=series, order=st.integers(0, 7))
def test_backends_agree_series(a, b, order):
    assert cy.series_mul(a, b, order) == py.series_mul(a, b, order)


@needs_cy
@given(st.lists(st.lists(gaussians, min_size=3, max_size=3), min_size=1, max_size=4))
def test_backends_agree_echelon(rows):
    assert cy.echelon(rows, 3) == py.echelon(rows, 3)


@needs_cy
def test_backends_agree_monomials():
    for n in range(5):
        for d in range(5):
            assert cy.monomials_of_degree(n, d) == py.monomials_of_degree(n, d)


def test_pure_python_switch():
    code = "import hodgeball.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, HODGEBALL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


def test_echelon_exact_types():
    rows, piv, det = py.echelon([[2, 1], [1, 1]], 2)
    assert det == 1
    assert all(isinstance(x, Fraction) for r in rows for x in r)
