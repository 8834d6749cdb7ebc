"""Truncated formal period maps and the ball-type expansion checks.

Everything here works in adapted coordinates at a base point: the period
matrix Phi(z) is a :class:`BlockSeries` whose constant term is the
identity, and horizontal data are nilpotent matrices N_i lowering the
block index by one.  The orbit exp(sum z_i N_i) is the test family; any
externally supplied series runs through the same checkers.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import linalg
from .hodgeframe import (
    HodgeNumbers,
    adapted_pairing,
    grade_components,
    i_power,
    infinitesimal_isometry_check,
)
from .scalar import GaussianRational, abs2, as_scalar, conj
from .series import (
    BlockSeries,
    all_exponents,
    matrix_exp_series,
    s_compose,
    s_deriv,
    series_reversion,
)


class InvalidHorizontalData(ValueError):
    pass


class NotBallType(ValueError):
    pass


def _numbers(h):
    return h if isinstance(h, HodgeNumbers) else HodgeNumbers.from_list(h)


class HorizontalData:
    """Operators N_1..N_N in adapted coordinates with their verified flags."""

    def __init__(self, operators, numbers, Q=None):
        self.numbers = _numbers(numbers)
        m = self.numbers.m
        self.operators = [linalg.matrix(N) for N in operators]
        for N in self.operators:
            if len(N) != m or any(len(r) != m for r in N):
                raise ValueError(f"operators must be {m} x {m}")
        self.Q = linalg.matrix(Q) if Q is not None else adapted_pairing(self.numbers)
        self.grade_failures = [
            i for i, N in enumerate(self.operators)
            if any(not linalg.is_zero(C) for k, C in grade_components(N, self.numbers).items() if k != -1)
        ]
        self.commute_failures = [
            (i, j)
            for i in range(len(self.operators))
            for j in range(i + 1, len(self.operators))
            if not linalg.is_zero(linalg.commutator(self.operators[i], self.operators[j]))
        ]
        self.isometry_failures = [
            i for i, N in enumerate(self.operators) if not infinitesimal_isometry_check(N, self.Q)
        ]

    @property
    def nvars(self):
        return len(self.operators)

    @property
    def grade_minus_one(self):
        return not self.grade_failures

    @property
    def commuting(self):
        return not self.commute_failures

    @property
    def isometric(self):
        return not self.isometry_failures

    @property
    def valid(self):
        return self.grade_minus_one and self.commuting and self.isometric

    def require_valid(self):
        if self.grade_failures:
            raise InvalidHorizontalData(f"operator N{self.grade_failures[0] + 1} is not of pure grade -1")
        if self.commute_failures:
            i, j = self.commute_failures[0]
            raise InvalidHorizontalData(f"operators N{i + 1} and N{j + 1} do not commute")
        if self.isometry_failures:
            raise InvalidHorizontalData(f"operator N{self.isometry_failures[0] + 1} is not an infinitesimal isometry")

    def flags(self):
        return {
            "grade_minus_one": self.grade_minus_one,
            "commuting": self.commuting,
            "isometric": self.isometric,
        }

    def to_dict(self):
        return {
            "h": list(self.numbers.h),
            "Q": linalg.format_matrix(self.Q),
            "operators": [linalg.format_matrix(N) for N in self.operators],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data["operators"], HodgeNumbers.from_list(data["h"]), data.get("Q"))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------- orbits

def nilpotent_orbit(data, order):
    """exp(sum z_i N_i) truncated at ``order``; coefficient of z^e is N^e / e!."""
    data.require_valid()
    nv, m = data.nvars, data.numbers.m
    entries = [[{} for _ in range(m)] for _ in range(m)]
    # N^e = N_i N^(e - e_i) with i the first nonzero slot; zero products prune their multiples
    powers = {(0,) * nv: linalg.identity(m)}
    for e in all_exponents(nv, order):
        if sum(e):
            i = next(t for t, k in enumerate(e) if k)
            parent = e[:i] + (e[i] - 1,) + e[i + 1:]
            P = powers.get(parent)
            if P is None:
                continue
            M = linalg.matmul(data.operators[i], P)
            if linalg.is_zero(M):
                continue
            powers[e] = M
        M = powers[e]
        denom = 1
        for k in e:
            denom *= factorial(k)
        for r in range(m):
            for c in range(m):
                if M[r][c]:
                    entries[r][c][e] = M[r][c] / denom
    return BlockSeries(nv, order, data.numbers, entries)


def exp_series(operators, numbers, order):
    """exp(sum z_i N_i) for arbitrary (possibly non-commuting) operators."""
    numbers = _numbers(numbers)
    return BlockSeries(len(operators), order, numbers, matrix_exp_series(operators, len(operators), order))


def orbit_point(data, point):
    """exp(sum z_i N_i) evaluated exactly (the exponent is nilpotent)."""
    point = [as_scalar(x) for x in point]
    m = data.numbers.m
    X = linalg.zeros(m, m)
    for z, N in zip(point, data.operators):
        if z:
            X = linalg.add(X, linalg.scale(z, N))
    total, power = linalg.identity(m), linalg.identity(m)
    for k in range(1, m + 1):
        power = linalg.scale(Fraction(1, k), linalg.matmul(power, X))
        if linalg.is_zero(power):
            break
        total = linalg.add(total, power)
    return total


# ---------------------------------------------------------------- checkers

@dataclass
class TransversalityReport:
    holds: bool
    witness: tuple = None
    lhs: object = None
    rhs: object = None
    checked: int = 0

    def to_dict(self):
        from .scalar import format_scalar

        out = {"holds": self.holds, "checked": self.checked}
        if self.witness is not None:
            a, b, mu, e = self.witness
            out["witness"] = {"alpha": a, "beta": b, "mu": mu, "exponent": list(e)}
            out["lhs"] = format_scalar(self.lhs)
            out["rhs"] = format_scalar(self.rhs)
        return out


def _block_product(A, B, order):
    from .series import matrix_series_mul

    return matrix_series_mul(A, B, order)


def check_transversality(phi):
    """d Phi^{(a,b)}/dz_mu = Phi^{(a,b+1)} d Phi^{(b+1,b)}/dz_mu up to order T-1.

    The witness is the lexicographically least (alpha, beta, mu, exponent)
    where the two sides differ; ``mu`` is 1-based like the variable names.
    """
    nums = phi.numbers
    n, T = nums.weight, phi.order
    top = T - 1
    checked = 0
    exps = all_exponents(phi.nvars, top) if top >= 0 else []
    exps = sorted(exps)
    for a in range(n + 1):
        for b in range(a):
            if not nums.h[a] or not nums.h[b]:
                continue
            for mu in range(phi.nvars):
                lhs = [[s_deriv(x, mu) for x in row] for row in phi.block(a, b)]
                if nums.h[b + 1]:
                    d_low = [[s_deriv(x, mu) for x in row] for row in phi.block(b + 1, b)]
                    rhs = _block_product(phi.block(a, b + 1), d_low, top)
                else:
                    rhs = [[{} for _ in row] for row in lhs]
                for e in exps:
                    for r in range(len(lhs)):
                        for c in range(len(lhs[r])):
                            checked += 1
                            x = lhs[r][c].get(e, Fraction(0))
                            y = rhs[r][c].get(e, Fraction(0))
                            if x != y:
                                return TransversalityReport(False, (a, b, mu + 1, e), x, y, checked)
    return TransversalityReport(True, None, None, None, checked)


@dataclass
class OrderBoundReport:
    holds: bool
    block: tuple = None
    exponent: tuple = None

    def to_dict(self):
        out = {"holds": self.holds}
        if self.block is not None:
            out["block"] = list(self.block)
            out["exponent"] = list(self.exponent)
        return out


def check_order_bounds(phi):
    """Every monomial in block (alpha, beta), alpha > beta, has degree >= alpha - beta."""
    nums = phi.numbers
    n = nums.weight
    for a in range(n + 1):
        for b in range(a):
            bad = [
                e
                for row in phi.block(a, b)
                for x in row
                for e in x
                if sum(e) < a - b
            ]
            if bad:
                return OrderBoundReport(False, (a, b), min(bad))
    return OrderBoundReport(True)


# ---------------------------------------------------------------- canonical coordinates

def section_block(numbers, k):
    """Block index alpha_0 = n - k carrying H^{k,n-k}."""
    numbers = _numbers(numbers)
    a0 = numbers.weight - k
    if not 0 <= a0 <= numbers.weight:
        raise ValueError("k out of range")
    return a0


@dataclass
class CanonicalCoordinates:
    components: list
    jacobian: list
    invertible: bool
    column: int

    def to_dict(self):
        from .series import format_series

        return {
            "components": [format_series(c) for c in self.components],
            "jacobian": linalg.format_matrix(self.jacobian),
            "invertible": self.invertible,
        }


def canonical_coordinates(phi, k, column=None):
    """z^c_i(z): the entries of block (n-k+1, n-k) in the section column."""
    nums = phi.numbers
    a0 = section_block(nums, k)
    if column is None:
        if nums.h[a0] != 1:
            raise ValueError("not CY-type shape")
        column = nums.block(a0)[0]
    if a0 + 1 > nums.weight:
        raise ValueError("no level below the section")
    rows = list(nums.block(a0 + 1))
    if len(rows) != phi.nvars:
        raise ValueError(
            f"tangent block has {len(rows)} rows but the series has {phi.nvars} variables"
        )
    comps = [phi.entries[r][column] for r in rows]
    nv = phi.nvars
    J = [[comps[i].get(tuple(int(t == j) for t in range(nv)), Fraction(0)) for j in range(nv)] for i in range(nv)]
    invertible = nv > 0 and linalg.rank(J) == nv
    return CanonicalCoordinates(comps, J, invertible, column)


@dataclass
class SectionExpansion:
    """Coefficients of Omega(z^c), keyed by exponent in the canonical variables."""

    coefficients: dict
    order: int
    levels: dict
    linear: bool
    max_degree: int
    second_order_matches: bool = None
    second_order_level_ok: bool = None
    canonical_operators: list = field(default_factory=list)

    def by_degree(self, d):
        return {e: v for e, v in self.coefficients.items() if sum(e) == d}

    def to_dict(self):
        from .scalar import format_scalar
        from .series import exponent_key

        return {
            "order": self.order,
            "linear": self.linear,
            "max_degree": self.max_degree,
            "second_order_matches": self.second_order_matches,
            "second_order_level_ok": self.second_order_level_ok,
            "coefficients": {
                exponent_key(e): [format_scalar(x) for x in v] for e, v in sorted(self.coefficients.items())
            },
            "levels": {exponent_key(e): lv for e, lv in sorted(self.levels.items())},
        }


def section_expansion(phi, k, omega_column=None, data=None):
    """Omega(z^c): the section column re-expanded in canonical coordinates.

    With ``data`` (the operators the series came from) the degree-2
    coefficients are compared with the Taylor coefficients of the
    canonical operators M_i = sum_j (J^-1)_{ji} N_j applied to Omega_0:
    M_i M_j Omega_0 for i != j and M_i^2 Omega_0 / 2 on the diagonal.
    """
    cc = canonical_coordinates(phi, k, omega_column)
    if not cc.invertible:
        raise ValueError("canonical coordinates are not invertible")
    nums = phi.numbers
    T = phi.order
    a0 = section_block(nums, k)
    col = cc.column
    inverse = series_reversion(cc.components, T)
    section = [phi.entries[r][col] for r in range(nums.m)]
    composed = [s_compose(x, inverse, T) for x in section]
    exps = sorted({e for x in composed for e in x}, key=lambda e: (sum(e), e))
    coeffs = {e: [x.get(e, Fraction(0)) for x in composed] for e in exps}
    lv = nums.levels()
    levels = {e: sorted({lv[i] for i, x in enumerate(v) if x}) for e, v in coeffs.items()}
    max_deg = max((sum(e) for e in exps), default=-1)
    linear = max_deg <= 1
    out = SectionExpansion(coeffs, T, levels, linear, max_deg)

    if T >= 2:
        out.second_order_level_ok = all(
            lvls == [a0 + 2] or not lvls for e, lvls in levels.items() if sum(e) == 2
        )
    if data is not None:
        Jinv = linalg.inverse(cc.jacobian)
        nv = data.nvars
        M = []
        for i in range(nv):
            acc = linalg.zeros(nums.m, nums.m)
            for j in range(nv):
                if Jinv[j][i]:
                    acc = linalg.add(acc, linalg.scale(Jinv[j][i], data.operators[j]))
            M.append(acc)
        out.canonical_operators = M
        omega0 = [Fraction(int(r == col)) for r in range(nums.m)]
        ok = True
        for i in range(nv):
            for j in range(i, nv):
                e = [0] * nv
                e[i] += 1
                e[j] += 1
                expect = linalg.matvec(linalg.matmul(M[i], M[j]), omega0)
                if i == j:
                    expect = [x / 2 for x in expect]
                got = coeffs.get(tuple(e), [Fraction(0)] * nums.m)
                if T >= 2 and expect != got:
                    ok = False
        out.second_order_matches = ok if T >= 2 else None
    return out


# ---------------------------------------------------------------- ball type

@dataclass
class BallTypeVerification:
    star1: bool
    star2: bool
    witness: tuple = None
    linear: bool = None
    derivatives_constant: bool = None
    rank: int = 0

    @property
    def ball_type(self):
        return self.star1 and self.star2

    def to_dict(self):
        return {
            "star1": self.star1,
            "star2": self.star2,
            "rank": self.rank,
            "witness": list(self.witness) if self.witness else None,
            "linear": self.linear,
            "derivatives_constant": self.derivatives_constant,
        }


def _support_block(numbers, v):
    lv = numbers.levels()
    blocks = {lv[i] for i, x in enumerate(v) if x}
    if len(blocks) != 1:
        raise ValueError("Omega_0 must be a nonzero vector inside one block")
    return blocks.pop()


def ball_type_verify(data, omega0, order=None):
    """Both ball-type conditions for orbit data, plus the linear-expansion consequences.

    (star1) the vectors N_i Omega_0 are linearly independent.
    (star2) N_i N_j kills the whole block containing Omega_0.
    When both hold the section of the orbit is re-expanded in canonical
    coordinates and checked to be exactly linear with constant first
    derivatives.  ``witness`` is the least failing pair (1-based).
    """
    data.require_valid()
    nums = data.numbers
    omega0 = [as_scalar(x) for x in omega0]
    a0 = _support_block(nums, omega0)
    images = [linalg.matvec(N, omega0) for N in data.operators]
    rank = linalg.span_rank(images) if images else 0
    star1 = data.nvars > 0 and rank == data.nvars
    top = [[Fraction(int(r == c)) for r in range(nums.m)] for c in nums.block(a0)]
    witness = None
    for i in range(data.nvars):
        for j in range(i, data.nvars):
            P = linalg.matmul(data.operators[i], data.operators[j])
            if any(any(linalg.matvec(P, v)) for v in top):
                witness = (i + 1, j + 1)
                break
        if witness:
            break
    out = BallTypeVerification(star1, witness is None, witness, rank=rank)
    if out.ball_type and nums.h[a0] == 1:
        T = order if order is not None else nums.weight + 2
        phi = nilpotent_orbit(data, T)
        k = nums.weight - a0
        exp = section_expansion(phi, k, nums.block(a0)[0], data)
        out.linear = exp.linear
        inverse = series_reversion(canonical_coordinates(phi, k).components, T)
        section = [s_compose(phi.entries[r][nums.block(a0)[0]], inverse, T) for r in range(nums.m)]
        const = True
        for mu in range(data.nvars):
            for x in section:
                d = s_deriv(x, mu)
                if any(sum(e) > 0 for e in d):
                    const = False
        out.derivatives_constant = const
    return out


# ---------------------------------------------------------------- refined period

@dataclass
class RefinedPoint:
    values: list

    def to_dict(self):
        from .scalar import format_scalar

        return {"point": [format_scalar(x) for x in self.values]}


def refined_period(source, k, numbers=None, point=None):
    """Level-1 entries of the section column, which must live on levels 0 and 1 only.

    ``source`` is a BlockSeries (evaluated at ``point``), a period matrix, or
    already the section column (then ``numbers`` is required).
    """
    if isinstance(source, BlockSeries):
        numbers = source.numbers
        if point is None:
            point = [0] * source.nvars
        matrix = source.evaluate(point)
        column = None
    elif source and isinstance(source[0], list):
        matrix, column = [[as_scalar(x) for x in r] for r in source], None
    else:
        matrix, column = None, [as_scalar(x) for x in source]
    numbers = _numbers(numbers)
    a0 = section_block(numbers, k)
    if numbers.h[a0] != 1:
        raise ValueError("not CY-type shape")
    col_index = numbers.block(a0)[0]
    if column is None:
        column = [row[col_index] for row in matrix]
    lv = numbers.levels()
    lead = column[col_index]
    if not lead:
        raise NotBallType("not ball type at this point")
    for i, x in enumerate(column):
        if x and lv[i] not in (a0, a0 + 1):
            raise NotBallType("not ball type at this point")
    return RefinedPoint([column[i] / lead for i in numbers.block(a0 + 1)])


def ball_membership(p):
    """sum |p_i|^2 < 1, exactly."""
    values = p.values if isinstance(p, RefinedPoint) else p
    return sum((abs2(as_scalar(x)) for x in values), Fraction(0)) < 1


def section_hr_value(frame, v, k):
    """i^{2k-n} Q(Bv, conj(Bv)) for a vector v in the frame's adapted coordinates."""
    n = frame.weight
    w = linalg.matvec(frame.basis, [as_scalar(x) for x in v])
    val = i_power(2 * k - n) * linalg.bilinear(w, frame.Q, [conj(x) for x in w])
    if isinstance(val, GaussianRational):
        if val.im != 0:
            raise ArithmeticError("Hermitian form returned a non-real value")
        return val.re
    return val


def refined_jacobian(phi, k):
    """Degree-1 coefficients of the refined period as an N x N matrix."""
    nums = phi.numbers
    a0 = section_block(nums, k)
    col = nums.block(a0)[0]
    nv = phi.nvars
    rows = list(nums.block(a0 + 1))
    lead = phi.entries[col][col]
    c0 = lead.get((0,) * nv, Fraction(0))
    if not c0:
        raise ValueError("section has no constant term")
    out = []
    for r in rows:
        entry = phi.entries[r][col]
        const = entry.get((0,) * nv, Fraction(0))
        row = []
        for j in range(nv):
            e = tuple(int(t == j) for t in range(nv))
            # d/dz_j (entry / lead) at 0
            row.append((entry.get(e, Fraction(0)) * c0 - const * lead.get(e, Fraction(0))) / (c0 * c0))
        out.append(row)
    return out


def refined_rank(phi, k):
    return linalg.rank(refined_jacobian(phi, k))


# ---------------------------------------------------------------- data generators

def cy_operators(a, c=None, v=None):
    """Grade -1 commuting isometries for h = (1, a, a, 1) with the adapted pairing.

    N_i e0 = v_i (default e_i), N_i e_j = sum_k c[i][j][k] f_k, and
    N_i f_k = <v_i, f_k-dual> f0; ``c`` must be a symmetric 3-tensor when
    v is the standard basis.  Blocks: e0 | e_1..e_a | f_1..f_a | f0.
    """
    m = 2 * a + 2
    ops = []
    for i in range(a):
        N = linalg.zeros(m, m)
        vi = v[i] if v is not None else [Fraction(int(t == i)) for t in range(a)]
        for t in range(a):
            N[1 + t][0] = as_scalar(vi[t])
            N[m - 1][1 + a + t] = as_scalar(vi[t])
        if c is not None:
            for j in range(a):
                for t in range(a):
                    N[1 + a + t][1 + j] = as_scalar(c[i][j][t])
        ops.append(N)
    return ops


def ball_operators(h):
    """N_i e0 = e_i, N_i (dual of e_i) = top dual, for palindromic h = (1, N, ..., N, 1)."""
    numbers = _numbers(h)
    n, m = numbers.weight, numbers.m
    if numbers.h[0] != 1 or n < 1:
        raise ValueError("need h^{n,0} = 1")
    N = numbers.h[1]
    if numbers.h[n - 1] != N:
        raise ValueError("Hodge numbers must be palindromic")
    Q = adapted_pairing(numbers)
    top, bottom = 0, m - 1
    first = list(numbers.block(1))
    last = list(numbers.block(n - 1))
    ops = []
    for i in range(N):
        M = linalg.zeros(m, m)
        M[first[i]][top] = Fraction(1)
        if n == 1:
            ops.append(M)
            continue
        # isometry: Q(N e0, x) + Q(e0, N x) = 0 for x in block n-1
        for x in last:
            q = Q[first[i]][x]
            if q:
                M[bottom][x] = -q / Q[top][bottom]
        ops.append(M)
    return ops


def conjugate_data(ops, Q, S):
    """(S^-1 N S, S^T Q S): the same data written in another adapted basis."""
    Sinv = linalg.inverse(S)
    new_ops = [linalg.matmul(linalg.matmul(Sinv, N), S) for N in ops]
    new_Q = linalg.matmul(linalg.matmul(linalg.transpose(S), Q), S)
    return new_ops, new_Q


def mix_operators(ops, T):
    """N'_i = sum_j T_ij N_j (a change of the parameter coordinates)."""
    m = len(ops[0])
    out = []
    for row in T:
        acc = linalg.zeros(m, m)
        for t, N in zip(row, ops):
            if t:
                acc = linalg.add(acc, linalg.scale(as_scalar(t), N))
        out.append(acc)
    return out


def pairing_preserving_block_change(numbers, P):
    """Block-diagonal S with S^T Q S = Q for the adapted pairing.

    ``P`` acts on block 1; block n-1 gets the inverse transpose, every other
    block the identity.  Requires weight >= 3 (so blocks 1 and n-1 differ).
    """
    numbers = _numbers(numbers)
    n, m = numbers.weight, numbers.m
    if n < 3:
        raise ValueError("need weight >= 3")
    S = linalg.identity(m)
    b1, bl = list(numbers.block(1)), list(numbers.block(n - 1))
    Pinv_t = linalg.transpose(linalg.inverse(P))
    for r, i in enumerate(b1):
        for c, j in enumerate(b1):
            S[i][j] = as_scalar(P[r][c])
    for r, i in enumerate(bl):
        for c, j in enumerate(bl):
            S[i][j] = Pinv_t[r][c]
    return S


__all__ = [
    "InvalidHorizontalData",
    "NotBallType",
    "HorizontalData",
    "nilpotent_orbit",
    "exp_series",
    "orbit_point",
    "TransversalityReport",
    "check_transversality",
    "OrderBoundReport",
    "check_order_bounds",
    "section_block",
    "CanonicalCoordinates",
    "canonical_coordinates",
    "SectionExpansion",
    "section_expansion",
    "BallTypeVerification",
    "ball_type_verify",
    "RefinedPoint",
    "refined_period",
    "ball_membership",
    "section_hr_value",
    "refined_jacobian",
    "refined_rank",
    "cy_operators",
    "ball_operators",
    "conjugate_data",
    "mix_operators",
    "pairing_preserving_block_change",
]
