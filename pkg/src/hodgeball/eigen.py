"""Characters of finite abelian groups, eigenspaces and Deligne-Mostow counts.

Roots of unity never appear as numbers: a character value is an index in
Z/L, L the exponent of the group, standing for exp(2 pi i * index / L).
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, lcm

from . import linalg
from .polyring import Polynomial
from .scalar import I, as_scalar, lcd, parse_rational


class Character:
    """chi on Z/d_1 x ... x Z/d_r, chi(g) = prod zeta_{d_i}^{indices_i * g_i}."""

    def __init__(self, moduli, indices):
        moduli = tuple(int(d) for d in moduli)
        if any(d < 1 for d in moduli):
            raise ValueError("moduli must be positive")
        if len(indices) != len(moduli):
            raise ValueError("one index per cyclic factor")
        self.moduli = moduli
        self.indices = tuple(int(i) % d for i, d in zip(indices, moduli))
        self.exponent = lcm(*moduli) if moduli else 1

    def __call__(self, g):
        """Index of chi(g) in Z/exponent."""
        L = self.exponent
        return sum(c * x * (L // d) for c, x, d in zip(self.indices, g, self.moduli)) % L

    def is_trivial(self):
        return not any(self.indices)

    def is_real(self):
        """chi takes only the values +-1."""
        return all((2 * c) % d == 0 for c, d in zip(self.indices, self.moduli))

    def conjugate(self):
        return Character(self.moduli, [-c for c in self.indices])

    def __eq__(self, other):
        return isinstance(other, Character) and (self.moduli, self.indices) == (other.moduli, other.indices)

    def __hash__(self):
        return hash((self.moduli, self.indices))

    def __repr__(self):
        return f"Character({list(self.moduli)}, {list(self.indices)})"


def root_of_unity(index, modulus):
    """zeta_modulus^index when it lies in Q(i); raises otherwise."""
    k = Fraction(index % modulus * 4, modulus)
    if k.denominator != 1:
        raise ValueError(f"zeta_{modulus}^{index} is not in Q(i)")
    return (Fraction(1), I, Fraction(-1), -I)[int(k)]


def eigenspace(rep, chi):
    """Basis of {v : rho(g_i) v = chi(g_i) v for every generator}.

    ``rep`` holds one entry per cyclic factor: either a list of integer
    eigen-indices (a diagonal action on the standard basis) or a dense
    matrix whose relevant eigenvalue lies in Q(i).
    """
    if len(rep) != len(chi.moduli):
        raise ValueError("one representation matrix per generator")
    if all(_is_index_list(r) for r in rep):
        dim = len(rep[0]) if rep else 0
        if any(len(r) != dim for r in rep):
            raise ValueError("index lists have different lengths")
        keep = [
            j for j in range(dim)
            if all((r[j] - c) % d == 0 for r, c, d in zip(rep, chi.indices, chi.moduli))
        ]
        return [[Fraction(int(i == j)) for i in range(dim)] for j in keep]
    mats = [_as_matrix(r) for r in rep]
    for A, B in combinations(mats, 2):
        if not linalg.is_zero(linalg.commutator(A, B)):
            raise ValueError("representation matrices do not commute")
    dim = len(mats[0])
    conditions = []
    for A, c, d in zip(mats, chi.indices, chi.moduli):
        lam = root_of_unity(c, d)
        conditions.extend(linalg.sub(A, linalg.scale(lam, linalg.identity(dim))))
    return linalg.nullspace(conditions, dim)


def _is_index_list(r):
    return isinstance(r, (list, tuple)) and all(isinstance(x, int) for x in r)


def _as_matrix(r):
    if isinstance(r[0], (list, tuple)):
        return linalg.matrix(r)
    return [[as_scalar(x) if i == j else Fraction(0) for j in range(len(r))] for i, x in enumerate(r)]


def monomial_weight(exp, weights):
    return sum(w * e for w, e in zip(weights, exp))


def eigen_graded_basis(ring, weights, degree, index, modulus):
    if not ring.is_monomial_ideal:
        raise ValueError("diagonal action requires monomial basis")
    if len(weights) != ring.nvars:
        raise ValueError("one weight per variable")
    return [e for e in ring.graded_basis(degree) if (monomial_weight(e, weights) - index) % modulus == 0]


def eigen_graded_dim(ring, weights, degree, index, modulus):
    """Standard monomials of ``degree`` whose weighted exponent sum is index mod modulus."""
    return len(eigen_graded_basis(ring, weights, degree, index, modulus))


def eigen_hodge_numbers(X, weights, index, modulus):
    """Per k = n..0: dimension of the chi-part of H^{k,n-k}_pr of a hypersurface."""
    from .residue import jacobian_ring, residue_degree

    R = jacobian_ring(X)
    return [
        eigen_graded_dim(R, weights, residue_degree(X.n, X.degree, k), index, modulus)
        for k in range(X.n, -1, -1)
    ]


def filtration_dims(hodge_numbers):
    """(h^{n,0}, ..., h^{0,n}) -> [dim F^0, ..., dim F^n, dim F^{n+1} = 0]."""
    n = len(hodge_numbers) - 1
    return [sum(hodge_numbers[: n - j + 1]) for j in range(n + 1)] + [0]


def eigen_filtration_dims(X, weights, index, modulus):
    return filtration_dims(eigen_hodge_numbers(X, weights, index, modulus))


@dataclass
class EigenBallReport:
    vanish_above: bool
    one_dimensional: bool
    tangent_matches: bool
    flat_below: bool

    @property
    def verdict(self):
        return self.vanish_above and self.one_dimensional and self.tangent_matches and self.flat_below

    def to_dict(self):
        return {
            "i": self.vanish_above,
            "ii": self.one_dimensional,
            "iii": self.tangent_matches,
            "iv": self.flat_below,
            "ball": self.verdict,
        }


def eigen_ball_conditions(dims, k, tangent_dim):
    """The four shape conditions on dim F^j_chi (``dims[j]``, j = 0, 1, ...).

    (i) F^j = 0 for j > k; (ii) dim F^k = 1; (iii) the tangent dimension is
    dim F^{k-1} - 1 = dim Hom(F^k, F^{k-1}/F^k); (iv) F^j = F^{k-1} for j < k.
    """
    dims = [int(x) for x in dims]
    if any(a < b for a, b in zip(dims, dims[1:])):
        raise ValueError("filtration dimensions must be non-increasing")
    if not 1 <= k < len(dims):
        raise ValueError("k out of range")
    return EigenBallReport(
        all(d == 0 for d in dims[k + 1:]),
        dims[k] == 1,
        tangent_dim == dims[k - 1] - 1,
        all(d == dims[k - 1] for d in dims[:k]),
    )


class ArrangementData:
    """m hyperplanes sum_j a_ij z_j = 0 in P^n with weights mu_i."""

    def __init__(self, m, n, coeffs, mu, check_general_position=True):
        self.m, self.n = int(m), int(n)
        self.mu = [parse_rational(x) for x in mu]
        self.coeffs = linalg.matrix(coeffs)
        if len(self.mu) != self.m:
            raise ValueError(f"need {self.m} weights, got {len(self.mu)}")
        if len(self.coeffs) != self.m or any(len(r) != self.n + 1 for r in self.coeffs):
            raise ValueError(f"coefficient matrix must be {self.m} x {self.n + 1}")
        if any(not 0 < x < 1 for x in self.mu):
            raise ValueError("weights must lie strictly between 0 and 1")
        total = sum(self.mu, Fraction(0))
        if total.denominator != 1:
            raise ValueError("sum of weights is not an integer")
        self.total = int(total)
        if self.m < self.n + 2:
            raise ValueError("need m >= n + 2")
        if linalg.rank(self.coeffs) < self.n + 1:
            raise ValueError("coefficient matrix is not of full rank")
        if check_general_position and not self.general_position():
            raise ValueError("hyperplanes are not in general position")

    def general_position(self):
        k = self.n + 1
        return all(linalg.det([self.coeffs[i] for i in rows]) != 0 for rows in combinations(range(self.m), k))

    @property
    def d(self):
        return lcd(self.mu)

    @classmethod
    def generic(cls, m, n, mu):
        """Vandermonde rows (1, t, ..., t^n) at t = 1..m: every maximal minor is nonzero."""
        coeffs = [[Fraction(t) ** j for j in range(n + 1)] for t in range(1, m + 1)]
        return cls(m, n, coeffs, mu, check_general_position=False)

    @classmethod
    def from_dict(cls, data, check_general_position=True):
        return cls(data["m"], data["n"], data["coeffs"], data["mu"], check_general_position)

    @classmethod
    def from_json(cls, text, check_general_position=True):
        return cls.from_dict(json.loads(text), check_general_position)


def dm_hodge_number(m, n, total, p, q):
    if p + q != n:
        raise ValueError("p + q must equal n")
    if p < 0 or q < 0:
        return 0
    return comb(total - 1, p) * comb(m - 1 - total, q)


def dm_hodge_numbers(data, p, q):
    """h^{p,q}_chi = C(|mu| - 1, p) C(m - 1 - |mu|, q)."""
    return dm_hodge_number(data.m, data.n, data.total, p, q)


def dm_hodge_table(data):
    """[h^{n,0}, ..., h^{0,n}] for the arrangement."""
    return [dm_hodge_numbers(data, data.n - a, a) for a in range(data.n + 1)]


def dm_total_dim(m, n):
    """dim H^n_chi = C(m - 2, n)."""
    if m < n + 2:
        raise ValueError("need m >= n + 2")
    return comb(m - 2, n)


def arrangement_variety(data):
    """sum_i a_ij z_i^d for j = 0..n, with d the least common denominator of mu."""
    d = data.d
    polys = []
    for j in range(data.n + 1):
        terms = {}
        for i in range(data.m):
            c = data.coeffs[i][j]
            if c:
                e = [0] * data.m
                e[i] = d
                terms[tuple(e)] = c
        polys.append(Polynomial(data.m, terms))
    return polys


__all__ = [
    "Character",
    "root_of_unity",
    "eigenspace",
    "monomial_weight",
    "eigen_graded_basis",
    "eigen_graded_dim",
    "eigen_hodge_numbers",
    "filtration_dims",
    "eigen_filtration_dims",
    "EigenBallReport",
    "eigen_ball_conditions",
    "ArrangementData",
    "dm_hodge_number",
    "dm_hodge_numbers",
    "dm_hodge_table",
    "dm_total_dim",
    "arrangement_variety",
]
