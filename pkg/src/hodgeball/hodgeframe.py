"""Polarized Hodge structures over Q(i).

Conventions.  ``h[alpha]`` is h^{n-alpha, alpha}, so block ``alpha`` of an
adapted basis spans H^{n-alpha, alpha} and the blocks run from the top of
the filtration down.  f^i = h[0] + ... + h[n-i].  Matrices act on column
vectors and ``Q(u, v) = u^T Q v`` is bilinear; the Hermitian forms used for
positivity conjugate the second argument.
"""

import json
from dataclasses import dataclass, field

from . import linalg
from .scalar import Fraction, GaussianRational, I, as_scalar, conj, format_scalar


class HodgeFrameError(ValueError):
    pass


def i_power(k):
    """i**k as an exact scalar."""
    return (Fraction(1), I, Fraction(-1), -I)[k % 4]


class HodgeNumbers:
    """Weight n and (h^{n,0}, ..., h^{0,n})."""

    def __init__(self, weight, h):
        h = [int(x) for x in h]
        if weight < 0:
            raise ValueError("weight must be non-negative")
        if len(h) != weight + 1:
            raise ValueError(f"weight {weight} needs {weight + 1} Hodge numbers, got {len(h)}")
        if any(x < 0 for x in h):
            raise ValueError("Hodge numbers must be non-negative")
        self.weight = weight
        self.h = tuple(h)
        self._starts = [sum(h[:a]) for a in range(len(h) + 1)]

    @classmethod
    def from_list(cls, h):
        return cls(len(h) - 1, h)

    @property
    def n(self):
        return self.weight

    @property
    def m(self):
        return self._starts[-1]

    def f(self, i):
        """dim F^i; f(n+1) = 0 and f(i) = m for i <= 0."""
        n = self.weight
        if i > n:
            return 0
        if i <= 0:
            return self.m
        return self._starts[n - i + 1]

    def block(self, alpha):
        """Index range of block alpha (the H^{n-alpha, alpha} columns)."""
        return range(self._starts[alpha], self._starts[alpha + 1])

    def block_of(self, index):
        for a in range(self.weight + 1):
            if index < self._starts[a + 1]:
                return a
        raise IndexError(index)

    def levels(self):
        """Block index of every basis position."""
        return [a for a in range(self.weight + 1) for _ in range(self.h[a])]

    def is_palindromic(self):
        return self.h == self.h[::-1]

    def __eq__(self, other):
        return isinstance(other, HodgeNumbers) and (self.weight, self.h) == (other.weight, other.h)

    def __hash__(self):
        return hash((self.weight, self.h))

    def __repr__(self):
        return f"HodgeNumbers({self.weight}, {list(self.h)})"


class Polarization:
    def __init__(self, weight, Q):
        Q = linalg.matrix(Q)
        m = len(Q)
        if any(len(r) != m for r in Q):
            raise ValueError("polarization must be square")
        sign = 1 if weight % 2 == 0 else -1
        for i in range(m):
            for j in range(m):
                if Q[i][j] != sign * Q[j][i]:
                    kind = "symmetric" if sign == 1 else "skew-symmetric"
                    raise ValueError(f"polarization of weight {weight} must be {kind}")
        if m and linalg.rank(Q) < m:
            raise ValueError("polarization is degenerate")
        self.weight = weight
        self.Q = Q

    def __call__(self, u, v):
        return linalg.bilinear(u, self.Q, v)


def tate_twist(numbers, shift):
    """Re-index H^{p,q} -> H^{p-s,q-s}: weight n - 2s, h'[a] = h[a + s]."""
    n, h = numbers.weight, list(numbers.h)
    new_weight = n - 2 * shift
    if shift >= 0:
        if any(h[:shift]) or any(h[n + 1 - shift:]) or new_weight < 0:
            raise ValueError("twist truncates support")
        return HodgeNumbers(new_weight, h[shift:n + 1 - shift])
    pad = [0] * (-shift)
    return HodgeNumbers(new_weight, pad + h + pad)


def cy_reduction(numbers, k):
    """Twist so that H^{k,n-k} becomes the top piece of weight 2k - n."""
    return tate_twist(numbers, numbers.weight - k)


def infinitesimal_isometry_check(A, Q):
    """A^T Q + Q A = 0."""
    return linalg.is_zero(linalg.add(linalg.matmul(linalg.transpose(A), Q), linalg.matmul(Q, A)))


class HodgeFrame:
    """Hodge numbers, polarization and an adapted basis (columns)."""

    def __init__(self, numbers, Q, basis, check=True):
        if not isinstance(numbers, HodgeNumbers):
            numbers = HodgeNumbers.from_list(numbers)
        if not isinstance(Q, Polarization):
            Q = Polarization(numbers.weight, Q)
        basis = linalg.matrix(basis)
        m = numbers.m
        if len(Q.Q) != m or len(basis) != m or any(len(r) != m for r in basis):
            raise HodgeFrameError(f"sizes do not match m = {m}")
        self.numbers = numbers
        self.polarization = Q
        self.basis = basis
        if check:
            if linalg.rank(basis) < m:
                raise HodgeFrameError("adapted basis is not invertible")
            if not self.conjugate_symmetric():
                raise HodgeFrameError("blocks are not conjugate-symmetric")

    @property
    def weight(self):
        return self.numbers.weight

    @property
    def Q(self):
        return self.polarization.Q

    @property
    def m(self):
        return self.numbers.m

    def block_columns(self, alpha):
        cols = linalg.columns(self.basis)
        return [cols[j] for j in self.numbers.block(alpha)]

    def filtration(self, p):
        """Column vectors spanning F^p."""
        cols = linalg.columns(self.basis)
        return cols[: self.numbers.f(p)]

    def conjugate_symmetric(self):
        n = self.weight
        for a in range(n + 1):
            A = self.block_columns(a)
            B = [[conj(x) for x in v] for v in self.block_columns(n - a)]
            if len(A) != len(B):
                return False
            if A and linalg.span_rank(A + B) != len(A):
                return False
        return True

    def adapted_Q(self):
        """Q in adapted coordinates: basis^T Q basis."""
        return linalg.matmul(linalg.matmul(linalg.transpose(self.basis), self.Q), self.basis)

    def conjugation_matrix(self):
        """P with conj(basis) = basis * P."""
        return linalg.matmul(linalg.inverse(self.basis), linalg.conj_matrix(self.basis))

    def to_adapted(self, A):
        return linalg.matmul(linalg.matmul(linalg.inverse(self.basis), A), self.basis)

    def from_adapted(self, A):
        return linalg.matmul(linalg.matmul(self.basis, A), linalg.inverse(self.basis))

    def to_dict(self):
        return {
            "weight": self.weight,
            "h": list(self.numbers.h),
            "Q": linalg.format_matrix(self.Q),
            "basis": linalg.format_matrix(self.basis),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        numbers = HodgeNumbers(int(data["weight"]), data["h"])
        return cls(numbers, Polarization(numbers.weight, data["Q"]), data["basis"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def filtration_to_decomposition(numbers, F, Q):
    """Hodge decomposition H^{p,n-p} = F^p cap conj(F^{n-p}) from a filtration.

    ``F`` maps each p with 1 <= p <= n to a list of vectors spanning F^p
    (a list indexed by p also works).  F^0 is the whole space.
    """
    if not isinstance(numbers, HodgeNumbers):
        numbers = HodgeNumbers.from_list(numbers)
    n, m = numbers.weight, numbers.m
    if isinstance(F, (list, tuple)):
        F = {p: vecs for p, vecs in enumerate(F)}
    spaces = {}
    for p in range(n + 2):
        if p <= 0:
            vecs = [[Fraction(int(i == j)) for i in range(m)] for j in range(m)]
        elif p == n + 1:
            vecs = []
        elif p in F and F[p] is not None:
            vecs = [[as_scalar(x) for x in v] for v in F[p]]
        else:
            raise HodgeFrameError(f"missing F^{p}")
        if linalg.span_rank(vecs) != numbers.f(p):
            raise HodgeFrameError(f"dim F^{p} is not f^{p} = {numbers.f(p)}")
        spaces[p] = linalg.column_basis(vecs, m) if vecs else []
    for p in range(1, n + 1):
        if linalg.span_rank(spaces[p] + spaces[p + 1]) != len(spaces[p]):
            raise HodgeFrameError("filtration is not nested")
        together = spaces[p] + [[conj(x) for x in v] for v in spaces[n - p + 1]]
        if linalg.span_rank(together) != m:
            raise HodgeFrameError("not a Hodge filtration")
    cols = []
    for alpha in range(n + 1):
        p = n - alpha
        conj_q = [[conj(x) for x in v] for v in spaces[alpha]]
        piece = linalg.intersect(spaces[p], conj_q, m) if spaces[p] and conj_q else []
        if len(piece) != numbers.h[alpha]:
            raise HodgeFrameError("not a Hodge filtration")
        cols.extend(_first_entry_one(v) for v in piece)
    basis = linalg.from_columns(cols, m)
    return HodgeFrame(numbers, Q if isinstance(Q, Polarization) else Polarization(n, Q), basis)


@dataclass
class HodgeRiemannReport:
    hr1: bool
    hr2: bool
    hr1_failures: list = field(default_factory=list)
    minors: dict = field(default_factory=dict)
    hr2_failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.hr1 and self.hr2

    def to_dict(self):
        return {
            "hr1": self.hr1,
            "hr2": self.hr2,
            "hr1_failures": [list(x) for x in self.hr1_failures],
            "hr2_failures": list(self.hr2_failures),
            "minors": {str(k): [format_scalar(x) for x in v] for k, v in sorted(self.minors.items())},
        }


def weil_hermitian_block(frame, alpha):
    """Gram matrix of i^{2k-n} Q(u, conj v) on block alpha (k = n - alpha)."""
    n = frame.weight
    c = i_power(2 * (n - alpha) - n)
    vecs = frame.block_columns(alpha)
    Qm = frame.Q
    return [[c * linalg.bilinear(u, Qm, [conj(x) for x in v]) for v in vecs] for u in vecs]


def hodge_riemann_check(frame):
    n = frame.weight
    Qa = frame.adapted_Q()
    nums = frame.numbers
    hr1_fail = []
    for a in range(n + 1):
        for b in range(n + 1):
            if a + b == n:
                continue
            if any(Qa[i][j] for i in nums.block(a) for j in nums.block(b)):
                hr1_fail.append((a, b))
    minors, hr2_fail = {}, []
    for a in range(n + 1):
        if not nums.h[a]:
            continue
        ms = linalg.leading_minors(weil_hermitian_block(frame, a))
        minors[a] = ms
        for x in ms:
            real = x.re if isinstance(x, GaussianRational) else x
            imag = x.im if isinstance(x, GaussianRational) else 0
            if imag != 0 or real <= 0:
                hr2_fail.append(a)
                break
    return HodgeRiemannReport(not hr1_fail, not hr2_fail, hr1_fail, minors, hr2_fail)


class GradedEndomorphism:
    """Components of an endomorphism by Lie grade, in adapted coordinates.

    Component ``k`` maps H^{r, n-r} into H^{r+k, n-r-k}; in block terms it
    holds the entries of block (alpha_row, alpha_col) with
    alpha_col - alpha_row = k.
    """

    def __init__(self, components, frame=None):
        self.components = components
        self.frame = frame

    def grades(self):
        return sorted(k for k, C in self.components.items() if not linalg.is_zero(C))

    def component(self, k):
        m = len(next(iter(self.components.values()))) if self.components else 0
        return self.components.get(k, linalg.zeros(m, m))

    def total(self):
        mats = list(self.components.values())
        out = mats[0]
        for M in mats[1:]:
            out = linalg.add(out, M)
        return out

    def in_original_coordinates(self, k):
        return self.frame.from_adapted(self.component(k))

    def is_pure(self, k):
        return self.grades() in ([], [k])


def grade_components(A, numbers):
    """Split a matrix already in adapted coordinates into Lie-grade components."""
    levels = numbers.levels()
    n = numbers.weight
    m = len(A)
    comps = {k: linalg.zeros(m, m) for k in range(-n, n + 1)}
    for i in range(m):
        for j in range(m):
            if A[i][j]:
                comps[levels[j] - levels[i]][i][j] = A[i][j]
    return comps


def lie_grade(A, frame):
    """Decompose A (given in the frame's ambient coordinates) by Lie grade."""
    return GradedEndomorphism(grade_components(frame.to_adapted(linalg.matrix(A)), frame.numbers), frame)


def standard_frame(h, reference=None):
    """An adapted frame normalized for the Hodge-Riemann forms.

    The ambient space has the standard real structure and a rational
    polarization.  In adapted coordinates Q pairs block a with block n-a by
    +-identity (top pairing +1, signs alternating by block), and the
    Hermitian form i^{2k-n} Q(u, conj v) of the reference level k is
    diag(+-1) with sign (-1)^(a - a_ref) on block a.  ``reference`` is a
    block index and defaults to the first nonzero block.
    """
    numbers = h if isinstance(h, HodgeNumbers) else HodgeNumbers.from_list(h)
    if not numbers.is_palindromic():
        raise ValueError("Hodge numbers of a polarized structure are palindromic")
    n, m = numbers.weight, numbers.m
    if reference is None:
        reference = next((a for a in range(n + 1) if numbers.h[a]), 0)
    Qa = adapted_pairing(numbers)
    c = i_power(2 * (n - reference) - n)
    eps = [_parity_sign(a - reference) for a in range(n + 1)]
    # conj(xi_{a,j}) = xi_{n-a,j} * d_a / s_a with d_a = eps_a / c
    cols = [None] * m
    unit = 0
    for a in range(n + 1):
        b = n - a
        if a > b:
            break
        s = pairing_sign(n, a)
        d = eps[a] / c
        for j, (ia, ib) in enumerate(zip(numbers.block(a), numbers.block(b))):
            if a < b:
                e1 = [Fraction(0)] * m
                e2 = [Fraction(0)] * m
                e1[unit], e2[unit + 1] = Fraction(1), Fraction(1)
                unit += 2
                xi = [x + I * y for x, y in zip(e1, e2)]
                lam = s * c / eps[a]
                cols[ia] = [_clean(x) for x in xi]
                cols[ib] = [_clean(lam * conj(x)) for x in xi]
            else:
                e = [Fraction(0)] * m
                e[unit] = Fraction(1)
                unit += 1
                factor = s * d
                cols[ia] = e if factor == 1 else [_clean(I * x) for x in e]
    basis = linalg.from_columns(cols, m)
    Binv = linalg.inverse(basis)
    Qstd = linalg.matmul(linalg.matmul(linalg.transpose(Binv), Qa), Binv)
    Qstd = [[_real(x) for x in row] for row in Qstd]
    return HodgeFrame(numbers, Polarization(n, Qstd), basis)


def pairing_sign(n, alpha):
    """Sign s_alpha of the adapted pairing Q(block alpha, block n - alpha) = s_alpha * I."""
    a = min(alpha, n - alpha)
    s = (-1) ** a
    if alpha > n - alpha:
        s *= (-1) ** n
    return s


def adapted_pairing(numbers):
    """Block anti-diagonal Q with blocks s_alpha * I (Q(e_top, e_bottom) = 1)."""
    n, m = numbers.weight, numbers.m
    Q = linalg.zeros(m, m)
    for a in range(n + 1):
        s = pairing_sign(n, a)
        for i, j in zip(numbers.block(a), numbers.block(n - a)):
            Q[i][j] = Fraction(s)
    return Q


def hr_form_diagonal(numbers, reference=None):
    """Signs of the reference Hermitian form on the standard frame, per basis position."""
    n = numbers.weight
    if reference is None:
        reference = next((a for a in range(n + 1) if numbers.h[a]), 0)
    return [_parity_sign(a - reference) for a in numbers.levels()]


def hr_value(numbers, v, reference=None):
    """sum eps_j |v_j|^2 for a vector in standard-frame adapted coordinates."""
    from .scalar import abs2

    return sum((s * abs2(x) for s, x in zip(hr_form_diagonal(numbers, reference), v)), Fraction(0))


def _parity_sign(k):
    return 1 if k % 2 == 0 else -1


def _first_entry_one(v):
    lead = next(x for x in v if x)
    return [_clean(x / lead) for x in v]


def _clean(x):
    if isinstance(x, GaussianRational) and x.im == 0:
        return x.re
    return x


def _real(x):
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise AssertionError("polarization came out non-real")
        return x.re
    return Fraction(x)


__all__ = [
    "HodgeFrameError",
    "HodgeNumbers",
    "Polarization",
    "HodgeFrame",
    "HodgeRiemannReport",
    "GradedEndomorphism",
    "i_power",
    "tate_twist",
    "cy_reduction",
    "infinitesimal_isometry_check",
    "filtration_to_decomposition",
    "hodge_riemann_check",
    "weil_hermitian_block",
    "grade_components",
    "lie_grade",
    "standard_frame",
    "adapted_pairing",
    "pairing_sign",
    "hr_form_diagonal",
    "hr_value",
]
