"""Hodge numbers of smooth hypersurfaces through their Jacobian rings.

A smooth degree-d hypersurface X = {F = 0} in P^{n+1} has primitive
H^{k,n-k} isomorphic to the graded piece of R(F) = Q[x]/(dF/dx_i) in degree
d(n+1-k) - n - 2.  Contraction with a tangent class is multiplication in
R(F), which turns the ball-type conditions into finite rank and vanishing
checks.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import linalg
from .polyring import GradedQuotientRing, Polynomial, format_monomial, parse_polynomial


class SingularHypersurface(ValueError):
    pass


class Hypersurface:
    """X = {F = 0} in P^{n+1}; ``base`` is set when X is a cyclic cover."""

    def __init__(self, poly, base=None, order="grevlex"):
        if isinstance(poly, str):
            poly = parse_polynomial(poly)
        if not poly:
            raise ValueError("defining polynomial is zero")
        if not poly.is_homogeneous():
            raise ValueError("defining polynomial is not homogeneous")
        if poly.nvars < 2:
            raise ValueError("a hypersurface needs at least two variables")
        self.poly = poly
        self.nvars = poly.nvars
        self.n = poly.nvars - 2
        self.degree = poly.degree()
        self.base = base
        self.order = order
        self._ring = None

    @classmethod
    def fermat(cls, nvars, d):
        terms = {}
        for i in range(nvars):
            e = [0] * nvars
            e[i] = d
            terms[tuple(e)] = 1
        return cls(Polynomial(nvars, terms))

    def base_variables(self):
        return list(range(self.base.nvars)) if self.base is not None else list(range(self.nvars))

    def __repr__(self):
        return f"Hypersurface(n={self.n}, d={self.degree}, F={self.poly})"


def jacobian_ring(X):
    if not X.poly:
        raise ValueError("defining polynomial is zero")
    if X._ring is None:
        gens = [X.poly.derivative(i) for i in range(X.nvars)]
        X._ring = GradedQuotientRing([g for g in gens if g], X.order, X.nvars)
    return X._ring


def smoothness_check(X):
    """The Jacobian ideal is zero-dimensional (finite-dimensional quotient)."""
    try:
        return jacobian_ring(X).is_zero_dimensional()
    except ValueError:
        return False


def residue_degree(n, d, k):
    """Degree of the graded piece carrying H^{k,n-k}."""
    return d * (n + 1 - k) - n - 2


def _require_smooth(X):
    if not smoothness_check(X):
        raise SingularHypersurface("Jacobian ideal not zero-dimensional")
    return jacobian_ring(X)


def hodge_pieces(X):
    """Per k = n..0: the residue degree, dimension and monomial basis of H^{k,n-k}_pr."""
    R = _require_smooth(X)
    out = []
    for k in range(X.n, -1, -1):
        deg = residue_degree(X.n, X.degree, k)
        basis = R.graded_basis(deg)
        out.append({"k": k, "p": k, "q": X.n - k, "degree": deg, "dim": len(basis), "basis": basis})
    return out


def hodge_numbers(X):
    """Primitive Hodge numbers (h^{n,0}, ..., h^{0,n})."""
    return [piece["dim"] for piece in hodge_pieces(X)]


def cyclic_cover(X, r):
    """The r-fold cyclic cover F + x_new^r = 0, branched along X."""
    if r < 2:
        raise ValueError("degenerate cover")
    if r != X.degree:
        raise ValueError("inhomogeneous cover")
    nv = X.nvars + 1
    e = [0] * nv
    e[-1] = r
    return Hypersurface(X.poly.extend(nv) + Polynomial(nv, {tuple(e): 1}), base=X, order=X.order)


def macaulay_range_check(n, d, k):
    """0 <= d(n+2-k) - n - 2 <= (n+2)(d-2)."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if d < 2:
        raise ValueError("need d >= 2")
    t = d * (n + 2 - k) - n - 2
    return 0 <= t <= (n + 2) * (d - 2)


def macaulay_table(max_n, max_d):
    """{(n, d): [k with H^{k,n-k} nonzero and the range check holding]}."""
    return {
        (n, d): [
            k
            for k in range(1, n + 1)
            if residue_degree(n, d, k) >= 0 and macaulay_range_check(n, d, k)
        ]
        for n in range(1, max_n + 1)
        for d in range(2, max_d + 1)
    }


def range_exceptions(max_n, max_d):
    """(n, d) where no usable k certifies infinitesimal Torelli."""
    return sorted(key for key, ks in macaulay_table(max_n, max_d).items() if not ks)


# exceptions to infinitesimal Torelli for hypersurfaces, as classically stated
STATED_TORELLI_EXCEPTIONS = ((1, 2), (1, 3), (2, 3))


@dataclass
class BallTypeReport:
    k: int
    omega: str
    star1_rank: int
    star1: bool
    star2: bool
    witnesses: list = field(default_factory=list)
    tangent_dim: int = 0
    tangent_basis: list = field(default_factory=list)
    pairs_checked: int = 0
    passing_omegas: list = field(default_factory=list)

    @property
    def ball_type(self):
        return self.star1 and self.star2

    def to_dict(self):
        return {
            "k": self.k,
            "omega": self.omega,
            "star1_rank": self.star1_rank,
            "star1": self.star1,
            "star2": self.star2,
            "witnesses": list(self.witnesses),
            "tangent_dim": self.tangent_dim,
            "tangent_basis": list(self.tangent_basis),
            "pairs_checked": self.pairs_checked,
            "passing_omegas": list(self.passing_omegas),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def tangent_basis(X, tangent_degree=None, tangent_vars=None):
    """Monomial basis of the tangent model: R^t restricted to the tangent variables."""
    R = _require_smooth(X)
    t = X.degree if tangent_degree is None else tangent_degree
    allowed = set(X.base_variables() if tangent_vars is None else tangent_vars)
    return [e for e in R.graded_basis(t) if all(i in allowed for i, x in enumerate(e) if x)]


def _mono(nvars, e):
    return Polynomial(nvars, {tuple(e): 1})


def _witness(theta_i, theta_j, omega):
    s = f"({format_monomial(theta_i)})*({format_monomial(theta_j)})"
    if any(omega):
        s += f"*({format_monomial(omega)})"
    return s


def _star2_chunk(args):
    ring, nvars, tangent, omegas, pairs = args
    bad = []
    for i, j in pairs:
        tij = ring.multiply(_mono(nvars, tangent[i]), _mono(nvars, tangent[j]))
        for w in omegas:
            if ring.normal_form(tij * _mono(nvars, w)):
                bad.append((i, j, w))
    return bad


def ball_type_check(X, tangent_degree=None, tangent_vars=None, exhaustive=False, jobs=1):
    """Check the injectivity and double-contraction conditions, contraction being ring multiplication.

    Injectivity: theta -> theta * Omega is injective on the tangent model for
    some Omega in the top piece.  Double contraction: theta_i * theta_j * Omega
    vanishes for every tangent pair and every Omega in the top piece.
    """
    R = _require_smooth(X)
    pieces = hodge_pieces(X)
    nonzero = [p for p in pieces if p["dim"]]
    if not nonzero:
        raise ValueError("no nonzero primitive Hodge piece")
    top = nonzero[0]
    k = top["k"]
    t = X.degree if tangent_degree is None else tangent_degree
    tangent = tangent_basis(X, t, tangent_vars)
    target = top["degree"] + t
    nv = X.nvars

    best_rank, chosen, passing = -1, None, []
    for omega in top["basis"]:
        rows = [R.coordinates(_mono(nv, th) * _mono(nv, omega), target) for th in tangent]
        r = linalg.rank(rows) if rows and rows[0] else 0
        if r > best_rank:
            best_rank, chosen = r, omega
        if r == len(tangent):
            passing.append(omega)
            if not exhaustive:
                chosen = omega
                break
    if passing:
        chosen = passing[0]
        best_rank = len(tangent)

    pairs = [(i, j) for i in range(len(tangent)) for j in range(i, len(tangent))]
    if jobs > 1 and len(pairs) > 1:
        size = -(-len(pairs) // jobs)
        chunks = [pairs[s:s + size] for s in range(0, len(pairs), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_star2_chunk, [(R, nv, tangent, top["basis"], c) for c in chunks]))
        bad = [b for part in parts for b in part]
    else:
        bad = _star2_chunk((R, nv, tangent, top["basis"], pairs))

    return BallTypeReport(
        k=k,
        omega=format_monomial(chosen),
        star1_rank=best_rank,
        star1=bool(passing),
        star2=not bad,
        witnesses=[_witness(tangent[i], tangent[j], w) for i, j, w in bad],
        tangent_dim=len(tangent),
        tangent_basis=[format_monomial(e) for e in tangent],
        pairs_checked=len(pairs),
        passing_omegas=[format_monomial(e) for e in passing],
    )


__all__ = [
    "Hypersurface",
    "SingularHypersurface",
    "BallTypeReport",
    "jacobian_ring",
    "smoothness_check",
    "residue_degree",
    "hodge_pieces",
    "hodge_numbers",
    "cyclic_cover",
    "macaulay_range_check",
    "macaulay_table",
    "range_exceptions",
    "STATED_TORELLI_EXCEPTIONS",
    "tangent_basis",
    "ball_type_check",
]
