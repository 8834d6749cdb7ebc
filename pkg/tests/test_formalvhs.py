from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hodgeball import linalg
from hodgeball.formalvhs import (
    HorizontalData,
    InvalidHorizontalData,
    NotBallType,
    ball_membership,
    ball_operators,
    ball_type_verify,
    canonical_coordinates,
    check_order_bounds,
    check_transversality,
    cy_operators,
    exp_series,
    nilpotent_orbit,
    orbit_point,
    refined_period,
    refined_rank,
    section_expansion,
    section_hr_value,
)
from hodgeball.hodgeframe import HodgeNumbers, standard_frame
from hodgeball.series import BlockSeries

from generators import ball_data, cy_data, seeded, standard_vector

seeds = st.integers(0, 10 ** 6)


def elementary(m, i, j):
    E = linalg.zeros(m, m)
    E[i][j] = Fraction(1)
    return E


def test_noncommuting_counterexample():
    # N1 = E21, N2 = E32 on h = (1, 1, 1): the orbit fails transversality
    phi = exp_series([elementary(3, 1, 0), elementary(3, 2, 1)], [1, 1, 1], 4)
    rep = check_transversality(phi)
    assert not rep.holds
    assert rep.witness == (2, 0, 1, (0, 1))
    assert (rep.lhs, rep.rhs) == (Fraction(1, 2), 1)
    assert rep.to_dict()["witness"] == {"alpha": 2, "beta": 0, "mu": 1, "exponent": [0, 1]}


def test_validation_messages():
    h = HodgeNumbers.from_list([1, 1, 1])
    with pytest.raises(InvalidHorizontalData, match="N1 and N2 do not commute"):
        HorizontalData([elementary(3, 1, 0), elementary(3, 2, 1)], h).require_valid()
    with pytest.raises(InvalidHorizontalData, match="grade -1"):
        HorizontalData([elementary(3, 0, 1)], h).require_valid()
    with pytest.raises(InvalidHorizontalData, match="isometry"):
        HorizontalData([elementary(3, 1, 0)], h).require_valid()


@settings(max_examples=15)
@given(seeds, st.sampled_from([1, 2, 3]))
def test_commuting_orbits_pass(seed, a):
    data = cy_data(a, seeded(seed))
    assert data.valid
    phi = nilpotent_orbit(data, 5)
    assert phi.has_identity_constant()
    assert check_transversality(phi).holds
    assert check_order_bounds(phi).holds


def test_order_bound_violation():
    coeffs = {(0,): linalg.identity(3), (1,): elementary(3, 2, 0)}
    phi = BlockSeries.from_coefficients(1, 3, [1, 1, 1], coeffs)
    rep = check_order_bounds(phi)
    assert not rep.holds and rep.block == (2, 0) and rep.exponent == (1,)


@settings(max_examples=10)
@given(seeds)
def test_orbit_evaluation_matches_series(seed):
    rng = seeded(seed)
    data = cy_data(2, rng)
    phi = nilpotent_orbit(data, 4)  # nilpotency index is 4 for weight 3
    pt = [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(2)]
    assert phi.evaluate(pt) == orbit_point(data, pt)


@settings(max_examples=10)
@given(seeds)
def test_second_order_formula(seed):
    data = cy_data(3, seeded(seed))
    phi = nilpotent_orbit(data, 4)
    exp = section_expansion(phi, 3, data=data)
    assert exp.second_order_matches and exp.second_order_level_ok
    assert not ball_type_verify(data, standard_vector(8, 0), 4).star2


@settings(max_examples=10)
@given(seeds, st.sampled_from([0, 1, 2]))
def test_ball_data_linear(seed, s):
    h = [1, 3, s, 3, 1]
    data = ball_data(h, seeded(seed))
    rep = ball_type_verify(data, standard_vector(data.numbers.m, 0), 6)
    assert rep.ball_type and rep.linear and rep.derivatives_constant
    assert refined_rank(nilpotent_orbit(data, 1), 4) == 3


def test_cy_without_cubic_term_is_ball():
    zero = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    data = HorizontalData(cy_operators(2, zero), [1, 2, 2, 1])
    rep = ball_type_verify(data, standard_vector(6, 0))
    assert rep.ball_type and rep.linear
    cy = HorizontalData(cy_operators(2, [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]), [1, 2, 2, 1])
    assert ball_type_verify(cy, standard_vector(6, 0)).witness == (1, 1)


def test_canonical_coordinates_shape_errors():
    data = HorizontalData(ball_operators([1, 2, 1]), [1, 2, 1])
    phi = nilpotent_orbit(data, 3)
    cc = canonical_coordinates(phi, 2)
    assert cc.invertible and cc.jacobian == linalg.identity(2)
    with pytest.raises(ValueError, match="CY-type"):
        canonical_coordinates(phi, 1)


def test_refined_point_and_hr_value():
    data = HorizontalData(ball_operators([1, 4, 2, 4, 1]), [1, 4, 2, 4, 1])
    z = [Fraction(1, 2), Fraction(1, 3), 0, 0]
    P = orbit_point(data, z)
    p = refined_period(P, 4, data.numbers)
    assert p.values == z and ball_membership(p)
    hr = section_hr_value(standard_frame([1, 4, 2, 4, 1]), [row[0] for row in P], 4)
    assert hr == Fraction(23, 36)


def test_refined_period_requires_section_shape():
    nums = HodgeNumbers.from_list([1, 1, 1])
    with pytest.raises(NotBallType):
        refined_period([0, 1, 0], 2, nums)
    with pytest.raises(NotBallType):
        refined_period([1, 0, 1], 2, nums)


def test_horizontal_data_json():
    data = HorizontalData(ball_operators([1, 2, 2, 1]), [1, 2, 2, 1])
    again = HorizontalData.from_json(__import__("json").dumps(data.to_dict()))
    assert again.operators == data.operators and again.valid
