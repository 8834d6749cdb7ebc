"""Truncated multivariate power series with exact coefficients.

A scalar series is a dict ``{exponent tuple: coefficient}`` holding only
nonzero coefficients of total degree <= the truncation order.  Matrix
series are lists of rows of scalar series, which keeps block extraction
trivial and lets the hot product run through :func:`kernels.series_mul`.
"""

import json
from fractions import Fraction
from math import factorial

from . import linalg
from .hodgeframe import HodgeNumbers
from .kernels import monomials_of_degree, series_mul
from .scalar import as_scalar, format_scalar


def unit(nvars, c=1):
    c = as_scalar(c) if not isinstance(c, Fraction) else c
    return {(0,) * nvars: c} if c else {}


def var(nvars, i):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): Fraction(1)}


def s_add(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def s_sub(a, b):
    return s_add(a, s_scale(-1, b))


def s_scale(c, a):
    if not c:
        return {}
    return {e: c * x for e, x in a.items()}


def s_mul(a, b, order):
    return series_mul(a, b, order)


def s_truncate(a, order):
    return {e: c for e, c in a.items() if sum(e) <= order}


def s_deriv(a, mu):
    out = {}
    for e, c in a.items():
        k = e[mu]
        if k:
            f = list(e)
            f[mu] = k - 1
            out[tuple(f)] = c * k
    return out


def s_degree_part(a, d):
    return {e: c for e, c in a.items() if sum(e) == d}


def s_min_degree(a):
    return min((sum(e) for e in a), default=None)


def s_evaluate(a, point):
    total = Fraction(0)
    for e, c in a.items():
        v = c
        for x, k in zip(point, e):
            if k:
                v = v * x ** k
        total = total + v
    return total


def s_compose(a, subs, order):
    """a(subs_1, ..., subs_N) truncated; each ``subs_i`` must have no constant term."""
    nout = None
    for s in subs:
        for e in s:
            nout = len(e)
            if sum(e) == 0:
                raise ValueError("substituted series must have zero constant term")
            break
    if nout is None:
        nout = len(subs)
    out = {}
    cache = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            if k == 0:
                cache[key] = {(0,) * nout: Fraction(1)}
            else:
                cache[key] = series_mul(power(i, k - 1), subs[i], order)
        return cache[key]

    for e, c in a.items():
        if sum(e) > order:
            continue
        term = {(0,) * nout: c}
        for i, k in enumerate(e):
            if k:
                term = series_mul(term, power(i, k), order)
                if not term:
                    break
        out = s_add(out, term)
    return out


def parse_exponent_key(key, nvars):
    parts = [p for p in str(key).split(",") if p.strip() != ""]
    e = tuple(int(p) for p in parts)
    if len(e) != nvars or any(x < 0 for x in e):
        raise ValueError(f"bad exponent key {key!r} for {nvars} variables")
    return e


def exponent_key(e):
    return ",".join(str(x) for x in e)


class BlockSeries:
    """Matrix of truncated series shaped by Hodge numbers."""

    def __init__(self, nvars, order, numbers, entries):
        if not isinstance(numbers, HodgeNumbers):
            numbers = HodgeNumbers.from_list(numbers)
        m = numbers.m
        if len(entries) != m or any(len(r) != m for r in entries):
            raise ValueError(f"series must be {m} x {m}")
        self.nvars = nvars
        self.order = order
        self.numbers = numbers
        self.entries = [[s_truncate(x, order) for x in row] for row in entries]

    @property
    def m(self):
        return self.numbers.m

    @classmethod
    def identity(cls, nvars, order, numbers):
        if not isinstance(numbers, HodgeNumbers):
            numbers = HodgeNumbers.from_list(numbers)
        m = numbers.m
        return cls(nvars, order, numbers, [[unit(nvars) if i == j else {} for j in range(m)] for i in range(m)])

    @classmethod
    def from_coefficients(cls, nvars, order, numbers, coeffs):
        """Build from ``{exponent: matrix}``."""
        if not isinstance(numbers, HodgeNumbers):
            numbers = HodgeNumbers.from_list(numbers)
        m = numbers.m
        entries = [[{} for _ in range(m)] for _ in range(m)]
        for e, M in coeffs.items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent length does not match variable count")
            for i in range(m):
                for j in range(m):
                    x = as_scalar(M[i][j])
                    if x:
                        entries[i][j][e] = entries[i][j].get(e, 0) + x
        return cls(nvars, order, numbers, entries)

    def exponents(self):
        return sorted({e for row in self.entries for x in row for e in x})

    def coefficient(self, e):
        e = tuple(e)
        return [[x.get(e, Fraction(0)) for x in row] for row in self.entries]

    def coefficients(self):
        return {e: self.coefficient(e) for e in self.exponents()}

    def entry(self, i, j):
        return self.entries[i][j]

    def block(self, alpha, beta):
        rows, cols = self.numbers.block(alpha), self.numbers.block(beta)
        return [[self.entries[i][j] for j in cols] for i in rows]

    def column(self, j):
        return [row[j] for row in self.entries]

    def derivative(self, mu):
        return BlockSeries(self.nvars, self.order - 1, self.numbers, [[s_deriv(x, mu) for x in row] for row in self.entries])

    def evaluate(self, point):
        point = [as_scalar(x) for x in point]
        return [[s_evaluate(x, point) for x in row] for row in self.entries]

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def has_identity_constant(self):
        return linalg.equal(self.constant_term(), linalg.identity(self.m))

    def __matmul__(self, other):
        order = min(self.order, other.order)
        return BlockSeries(self.nvars, order, self.numbers, matrix_series_mul(self.entries, other.entries, order))

    def __eq__(self, other):
        return (
            isinstance(other, BlockSeries)
            and self.nvars == other.nvars
            and self.order == other.order
            and self.numbers == other.numbers
            and self.entries == other.entries
        )

    def to_dict(self):
        return {
            "vars": self.nvars,
            "order": self.order,
            "h": list(self.numbers.h),
            "coeffs": {exponent_key(e): linalg.format_matrix(M) for e, M in self.coefficients().items()},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        nvars, order = int(data["vars"]), int(data["order"])
        numbers = HodgeNumbers.from_list(data["h"])
        coeffs = {parse_exponent_key(k, nvars): v for k, v in data["coeffs"].items()}
        for e in coeffs:
            if sum(e) > order:
                raise ValueError(f"coefficient {exponent_key(e)} exceeds the truncation order")
        return cls.from_coefficients(nvars, order, numbers, coeffs)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def matrix_series_mul(A, B, order):
    rows, inner = len(A), len(B)
    cols = len(B[0]) if B else 0
    out = [[{} for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        Ai = A[i]
        for k in range(inner):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(cols):
                b = Bk[j]
                if b:
                    out[i][j] = s_add(out[i][j], series_mul(a, b, order))
    return out


def matrix_series_add(A, B):
    return [[s_add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def linear_matrix_series(mats, nvars):
    """sum_i z_i * mats[i] as a matrix of series."""
    m = len(mats[0]) if mats else 0
    out = [[{} for _ in range(m)] for _ in range(m)]
    for i, M in enumerate(mats):
        e = [0] * nvars
        e[i] = 1
        e = tuple(e)
        for r in range(m):
            for c in range(m):
                x = M[r][c]
                if x:
                    out[r][c][e] = out[r][c].get(e, 0) + x
    return out


def matrix_exp_series(mats, nvars, order):
    """exp(sum_i z_i mats[i]) truncated at ``order``; no commutativity assumed."""
    mats = [linalg.matrix(M) for M in mats]
    m = len(mats[0]) if mats else 0
    X = linear_matrix_series(mats, nvars)
    total = [[unit(nvars) if i == j else {} for j in range(m)] for i in range(m)]
    power = [row[:] for row in total]
    for k in range(1, order + 1):
        power = matrix_series_mul(power, X, order)
        scaled = [[s_scale(Fraction(1, factorial(k)), x) for x in row] for row in power]
        total = matrix_series_add(total, scaled)
        if all(not x for row in power for x in row):
            break
    return total


def series_reversion(components, order):
    """Inverse of a coordinate change w = phi(z) with phi(0) = 0.

    ``components`` are N scalar series in N variables.  Returns the N series
    z_i(w) with phi(z(w)) = w up to ``order``.  Raises ZeroDivisionError if
    the linear part is singular.
    """
    nv = len(components)
    J = [[components[i].get(_unit_exp(nv, j), Fraction(0)) for j in range(nv)] for i in range(nv)]
    Jinv = linalg.inverse(J)
    higher = [{e: c for e, c in comp.items() if sum(e) >= 2} for comp in components]
    if any(sum(e) == 0 for comp in components for e in comp):
        raise ValueError("coordinate change has a constant term")
    w = [var(nv, i) for i in range(nv)]
    z = [_lin_comb(Jinv[i], w) for i in range(nv)]
    for _ in range(order):
        hz = [s_compose(h, z, order) for h in higher]
        rhs = [s_sub(w[i], hz[i]) for i in range(nv)]
        z = [_lin_comb(Jinv[i], rhs) for i in range(nv)]
    return z


def _lin_comb(coeffs, series):
    out = {}
    for c, s in zip(coeffs, series):
        if c:
            out = s_add(out, s_scale(c, s))
    return out


def _unit_exp(nv, j):
    e = [0] * nv
    e[j] = 1
    return tuple(e)


def all_exponents(nvars, order):
    """Every exponent of total degree <= order, by degree then lexicographically."""
    out = []
    for d in range(order + 1):
        out.extend(sorted(monomials_of_degree(nvars, d)))
    return out


def format_series(a):
    if not a:
        return "0"
    parts = []
    for e in sorted(a, key=lambda e: (sum(e), e)):
        c = a[e]
        mono = "*".join(
            (f"z{i + 1}" if k == 1 else f"z{i + 1}^{k}") for i, k in enumerate(e) if k
        )
        if not mono:
            parts.append(format_scalar(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{format_scalar(c)}*{mono}")
    return " + ".join(parts)


__all__ = [
    "BlockSeries",
    "unit",
    "var",
    "s_add",
    "s_sub",
    "s_scale",
    "s_mul",
    "s_deriv",
    "s_truncate",
    "s_degree_part",
    "s_min_degree",
    "s_evaluate",
    "s_compose",
    "matrix_series_mul",
    "matrix_series_add",
    "linear_matrix_series",
    "matrix_exp_series",
    "series_reversion",
    "all_exponents",
    "exponent_key",
    "parse_exponent_key",
    "format_series",
]
