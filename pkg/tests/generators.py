"""Seeded generators of horizontal data shared by the property and acceptance tests."""

import random
from fractions import Fraction

from hodgeball.formalvhs import (
    HorizontalData,
    ball_operators,
    conjugate_data,
    cy_operators,
    mix_operators,
    pairing_preserving_block_change,
)
from hodgeball.hodgeframe import HodgeNumbers, adapted_pairing
from hodgeball.perioddomain import random_invertible

ENTRIES = tuple(Fraction(x) for x in (-2, -1, 1, 2)) + (Fraction(1, 2), Fraction(-1, 3), Fraction(0))


def symmetric_tensor(a, rng, entries=ENTRIES):
    c = [[[Fraction(0)] * a for _ in range(a)] for _ in range(a)]
    for i in range(a):
        for j in range(i, a):
            for k in range(j, a):
                x = rng.choice(entries)
                for p, q, r in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
                    c[p][q][r] = x
    return c


def randomize(ops, numbers, rng, change_basis=True):
    """Change adapted basis (keeping Q) and mix the parameters.

    The basis change preserves Q but not the Hermitian form of the standard
    frame, so callers that evaluate that form pass ``change_basis=False``.
    """
    if change_basis:
        Q = adapted_pairing(numbers)
        P = random_invertible(numbers.h[1], rng, ENTRIES)
        S = pairing_preserving_block_change(numbers, P)
        ops, Q2 = conjugate_data(ops, Q, S)
        assert Q2 == Q
    T = random_invertible(len(ops), rng, ENTRIES)
    return mix_operators(ops, T)


def cy_data(a, rng, nonzero=True):
    """Commuting grade -1 isometries for h = (1, a, a, 1), randomized."""
    numbers = HodgeNumbers.from_list([1, a, a, 1])
    while True:
        c = symmetric_tensor(a, rng)
        if not nonzero or any(x for plane in c for row in plane for x in row):
            break
    ops = randomize(cy_operators(a, c), numbers, rng)
    return HorizontalData(ops, numbers)


def ball_data(h, rng, change_basis=True):
    numbers = HodgeNumbers.from_list(h)
    return HorizontalData(randomize(ball_operators(h), numbers, rng, change_basis), numbers)


def seeded(seed):
    return random.Random(seed)


def gaussian_point(rng, nvars, radius_choices=(1, 2, 3, 4, 5, 6)):
    """A Gaussian-rational point with entries of modest height."""
    from hodgeball.scalar import GaussianRational

    out = []
    for _ in range(nvars):
        d = rng.choice(radius_choices) * nvars
        out.append(GaussianRational(Fraction(rng.randint(-d, d), d * 2), Fraction(rng.randint(-d, d), d * 2)))
    return out


def standard_vector(m, i):
    return [Fraction(int(r == i)) for r in range(m)]


__all__ = [
    "cy_data",
    "ball_data",
    "symmetric_tensor",
    "randomize",
    "seeded",
    "gaussian_point",
    "standard_vector",
]
