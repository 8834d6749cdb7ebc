from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hodgeball import linalg
from hodgeball.hodgeframe import (
    HodgeFrame,
    HodgeFrameError,
    HodgeNumbers,
    Polarization,
    adapted_pairing,
    cy_reduction,
    filtration_to_decomposition,
    grade_components,
    hodge_riemann_check,
    hr_value,
    i_power,
    infinitesimal_isometry_check,
    lie_grade,
    pairing_sign,
    standard_frame,
    tate_twist,
)
from hodgeball.scalar import GaussianRational, I, abs2, conj

palindromes = st.lists(st.integers(0, 3), min_size=1, max_size=3).flatmap(
    lambda half: st.sampled_from([half + half[::-1], half + half[-2::-1]])
).filter(lambda h: sum(h) > 0)


def test_numbers_layout():
    h = HodgeNumbers.from_list([1, 4, 4, 1])
    assert h.m == 10 and h.n == 3
    assert [h.f(i) for i in range(5)] == [10, 9, 5, 1, 0]
    assert list(h.block(1)) == [1, 2, 3, 4]
    assert h.block_of(9) == 3
    assert h.levels() == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]
    with pytest.raises(ValueError):
        HodgeNumbers(2, [1, 1])


def test_tate_twist():
    assert cy_reduction(HodgeNumbers.from_list([0, 1, 20, 1, 0]), 3).h == (1, 20, 1)
    assert tate_twist(HodgeNumbers.from_list([1, 1]), -1).h == (0, 1, 1, 0)
    with pytest.raises(ValueError, match="truncates"):
        tate_twist(HodgeNumbers.from_list([1, 2, 1]), 1)


@given(palindromes, st.integers(0, 2))
def test_twist_roundtrip(h, s):
    nums = HodgeNumbers.from_list(h)
    assert tate_twist(tate_twist(nums, -s), s) == nums


def test_polarization_parity():
    with pytest.raises(ValueError, match="skew"):
        Polarization(1, [[0, 1], [1, 0]])
    with pytest.raises(ValueError, match="degenerate"):
        Polarization(2, [[1, 0], [0, 0]])


def test_i_power():
    assert [i_power(k) for k in range(-1, 4)] == [-I, 1, I, -1, -I]


def test_upper_half_plane():
    Q = [[0, 1], [-1, 0]]
    nums = HodgeNumbers.from_list([1, 1])
    frame = filtration_to_decomposition(nums, {1: [[1, I]]}, Q)
    assert frame.basis == [[1, 1], [I, -I]]
    rep = hodge_riemann_check(frame)
    assert rep.ok and rep.minors[0] == [2]
    bad = filtration_to_decomposition(nums, {1: [[1, -I]]}, Q)
    assert not hodge_riemann_check(bad).hr2


def test_filtration_errors():
    Q = [[0, 1], [-1, 0]]
    nums = HodgeNumbers.from_list([1, 1])
    with pytest.raises(HodgeFrameError, match="not a Hodge filtration"):
        filtration_to_decomposition(nums, {1: [[1, 0]]}, Q)  # real line
    with pytest.raises(HodgeFrameError, match="dim F"):
        filtration_to_decomposition(nums, {1: [[1, 0], [0, 1]]}, Q)


def test_nesting_checked():
    Q = adapted_pairing(HodgeNumbers.from_list([1, 1, 1]))
    nums = HodgeNumbers.from_list([1, 1, 1])
    F = {1: [[1, 0, 0], [0, 1, 0]], 2: [[0, 0, 1]]}
    with pytest.raises(HodgeFrameError, match="nested"):
        filtration_to_decomposition(nums, F, Q)


@given(palindromes)
def test_standard_frame_properties(h):
    frame = standard_frame(h)
    nums = frame.numbers
    assert frame.conjugate_symmetric()
    assert all(isinstance(x, Fraction) for row in frame.Q for x in row)
    assert frame.adapted_Q() == adapted_pairing(nums)
    rep = hodge_riemann_check(frame)
    assert rep.ok, rep.to_dict()


@given(palindromes, st.data())
def test_hr_value_matches_frame(h, data):
    frame = standard_frame(h)
    nums = frame.numbers
    n = nums.weight
    ref = next(a for a in range(n + 1) if nums.h[a])
    v = data.draw(st.lists(st.integers(-3, 3), min_size=nums.m, max_size=nums.m))
    w = linalg.matvec(frame.basis, v)
    direct = i_power(2 * (n - ref) - n) * linalg.bilinear(w, frame.Q, [conj(x) for x in w])
    assert direct == hr_value(nums, v)


def test_pairing_signs():
    # Q(e_top, e_bottom) = 1 and Q is (skew-)symmetric as required by the weight
    for n in range(6):
        nums = HodgeNumbers(n, [1] * (n + 1))
        Q = adapted_pairing(nums)
        assert Q[0][n] == 1 == pairing_sign(n, 0)
        Polarization(n, Q)


def test_lie_grade():
    nums = HodgeNumbers.from_list([1, 2, 1])
    A = linalg.zeros(4, 4)
    A[1][0] = Fraction(1)  # block 0 -> block 1
    A[0][3] = Fraction(2)  # block 2 -> block 0
    comps = grade_components(A, nums)
    assert comps[-1][1][0] == 1 and comps[2][0][3] == 2
    frame = standard_frame([1, 2, 1])
    g = lie_grade(frame.from_adapted(comps[-1]), frame)
    assert g.is_pure(-1) and g.grades() == [-1]


def test_isometry_check():
    Q = adapted_pairing(HodgeNumbers.from_list([1, 1, 1]))
    N = linalg.zeros(3, 3)
    N[1][0] = Fraction(1)
    assert not infinitesimal_isometry_check(N, Q)
    N[2][1] = Fraction(-Q[0][2] / Q[1][1])
    assert infinitesimal_isometry_check(N, Q)


def test_frame_json_roundtrip():
    frame = standard_frame([1, 2, 2, 1])
    again = HodgeFrame.from_json(frame.to_json())
    assert again.basis == frame.basis and again.Q == frame.Q


def test_frame_rejects_non_symmetric_blocks():
    with pytest.raises(HodgeFrameError, match="conjugate"):
        HodgeFrame([1, 1], [[0, 1], [-1, 0]], [[1, 1], [I, 2 * I]])
