"""Block-matrix calculus on the compact dual.

A period matrix is written in an adapted basis at a base point; its block
(alpha, beta) holds rows of block alpha and columns of block beta, with
blocks sized by the Hodge numbers.  The big cell N+ consists of the
matrices whose leading block minors are all invertible; these factor
uniquely as (unipotent block lower) x (block upper).
"""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .hodgeframe import HodgeNumbers


class NotInNPlus(ValueError):
    """Raised by :func:`block_lu`; ``witness`` is the least failing block index."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"not in N+: leading block minor {witness} is singular")


class BlockShape:
    def __init__(self, numbers):
        if not isinstance(numbers, HodgeNumbers):
            numbers = HodgeNumbers.from_list(numbers)
        self.numbers = numbers
        self.n = numbers.weight
        self.m = numbers.m

    def rows(self, alpha):
        return self.numbers.block(alpha)

    def block(self, A, alpha, beta):
        return linalg.submatrix(A, self.rows(alpha), self.rows(beta))

    def leading_size(self, k):
        """Size of the leading block submatrix through block k (= f^{n-k})."""
        return self.numbers.f(self.n - k)


@dataclass
class PeriodMatrix:
    h: list
    matrix: list

    def __post_init__(self):
        self.matrix = linalg.matrix(self.matrix)
        self.shape = BlockShape(list(self.h))
        m = self.shape.m
        if len(self.matrix) != m or any(len(r) != m for r in self.matrix):
            raise ValueError(f"matrix must be {m} x {m} for h = {list(self.h)}")

    def to_dict(self):
        return {"h": list(self.h), "matrix": linalg.format_matrix(self.matrix)}

    @classmethod
    def from_dict(cls, data):
        return cls(list(data["h"]), data["matrix"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _shape(numbers):
    return numbers if isinstance(numbers, BlockShape) else BlockShape(numbers)


def _factor(A, shape):
    """Block elimination without pivoting; returns (L, U) or raises NotInNPlus."""
    m = shape.m
    S = linalg.copy(A)
    L = linalg.identity(m)
    for k in range(shape.n + 1):
        rk = list(shape.rows(k))
        if not rk:
            continue
        P = linalg.submatrix(S, rk, rk)
        if linalg.rank(P) < len(rk):
            raise NotInNPlus(k)
        Pinv = linalg.inverse(P)
        below = list(range(rk[-1] + 1, m))
        if not below:
            continue
        mult = linalg.matmul(linalg.submatrix(S, below, rk), Pinv)
        pivot_rows = [S[i] for i in rk]
        for r, i in enumerate(below):
            row = S[i]
            for c, j in enumerate(rk):
                L[i][j] = mult[r][c]
            coeffs = [(mult[r][c], pivot_rows[c]) for c in range(len(rk)) if mult[r][c]]
            for col in range(m):
                acc = row[col]
                for a, prow in coeffs:
                    if prow[col]:
                        acc = acc - a * prow[col]
                row[col] = acc
    return L, S


def nplus_membership(A, numbers):
    """(True, None) if A lies in N+ . B, else (False, least failing k)."""
    A = A.matrix if isinstance(A, PeriodMatrix) else linalg.matrix(A)
    shape = _shape(numbers)
    if linalg.rank(A) < shape.m:
        raise ValueError("matrix is singular")
    try:
        _factor(A, shape)
    except NotInNPlus as exc:
        return False, exc.witness
    return True, None


def block_lu(A, numbers):
    """Unique factorization A = L U, L unipotent block lower, U block upper."""
    A = A.matrix if isinstance(A, PeriodMatrix) else linalg.matrix(A)
    shape = _shape(numbers)
    if linalg.rank(A) < shape.m:
        raise ValueError("matrix is singular")
    return _factor(A, shape)


def nplus_rank_oracle(A, numbers):
    """Membership via spans: each F^p_q meets the standard complement of F^p trivially."""
    A = A.matrix if isinstance(A, PeriodMatrix) else linalg.matrix(A)
    shape = _shape(numbers)
    m = shape.m
    for k in range(shape.n + 1):
        s = shape.leading_size(k)
        cols = [[A[i][j] for i in range(m)] for j in range(s)]
        cols += [[Fraction(int(i == j)) for i in range(m)] for j in range(s, m)]
        if linalg.span_rank(cols) < m:
            return False, k
    return True, None


def is_block_lower_unipotent(L, numbers):
    shape = _shape(numbers)
    lv = shape.numbers.levels()
    for i, row in enumerate(L):
        for j, x in enumerate(row):
            if lv[i] < lv[j] and x:
                return False
            if lv[i] == lv[j] and x != (1 if i == j else 0):
                return False
    return True


def is_block_upper(U, numbers):
    lv = _shape(numbers).numbers.levels()
    return all(not x for i, row in enumerate(U) for j, x in enumerate(row) if lv[i] > lv[j])


@dataclass
class ScanResult:
    total: int
    members: int
    witnesses: list = field(default_factory=list)

    @property
    def fraction(self):
        return Fraction(self.members, self.total) if self.total else Fraction(1)

    def to_dict(self):
        return {
            "total": self.total,
            "members": self.members,
            "fraction": str(self.fraction),
            "witnesses": [{"sample": i, "k": k} for i, k in self.witnesses],
        }


def complement_locus_scan(samples, numbers):
    """Classify samples; witnesses list (sample index, failing k) outside N+."""
    members, witnesses = 0, []
    for idx, A in enumerate(samples):
        ok, k = nplus_membership(A, numbers)
        if ok:
            members += 1
        else:
            witnesses.append((idx, k))
    return ScanResult(len(samples), members, witnesses)


# random generators used by property tests and the CLI

DEFAULT_ENTRIES = tuple(Fraction(x) for x in (-2, -1, 0, 1, 2)) + (Fraction(1, 2), Fraction(-1, 3))


def random_lower_unipotent(numbers, rng, entries=DEFAULT_ENTRIES):
    lv = _shape(numbers).numbers.levels()
    m = len(lv)
    return [
        [Fraction(int(i == j)) if lv[i] == lv[j] else (rng.choice(entries) if lv[i] > lv[j] else Fraction(0))
         for j in range(m)]
        for i in range(m)
    ]


def random_block_upper(numbers, rng, entries=DEFAULT_ENTRIES):
    """Random block upper-triangular matrix with invertible diagonal blocks."""
    shape = _shape(numbers)
    lv = shape.numbers.levels()
    m = len(lv)
    U = [[rng.choice(entries) if lv[i] <= lv[j] else Fraction(0) for j in range(m)] for i in range(m)]
    for a in range(shape.n + 1):
        rows = list(shape.rows(a))
        while rows and linalg.rank(linalg.submatrix(U, rows, rows)) < len(rows):
            for i in rows:
                for j in rows:
                    U[i][j] = rng.choice(entries)
    return U


def random_invertible(m, rng, entries=DEFAULT_ENTRIES):
    while True:
        A = [[rng.choice(entries) for _ in range(m)] for _ in range(m)]
        if linalg.rank(A) == m:
            return A


def seeded_rng(seed):
    return random.Random(seed)


__all__ = [
    "NotInNPlus",
    "BlockShape",
    "PeriodMatrix",
    "ScanResult",
    "nplus_membership",
    "block_lu",
    "nplus_rank_oracle",
    "is_block_lower_unipotent",
    "is_block_upper",
    "complement_locus_scan",
    "random_lower_unipotent",
    "random_block_upper",
    "random_invertible",
    "seeded_rng",
]
