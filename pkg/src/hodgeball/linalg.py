"""Dense exact matrices as lists of rows.

Entries are ``Fraction`` or ``GaussianRational``; plain ``int`` zeros and
ones are accepted anywhere.  Nothing here ever rounds.
"""

from fractions import Fraction

from .kernels import echelon
from .scalar import as_scalar, conj


def matrix(rows):
    return [[as_scalar(x) for x in row] for row in rows]


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def shape(A):
    return len(A), (len(A[0]) if A else 0)


def copy(A):
    return [list(r) for r in A]


def transpose(A):
    return [list(c) for c in zip(*A)] if A else []


def conj_matrix(A):
    return [[conj(x) for x in row] for row in A]


def matmul(A, B):
    if not A or not B:
        return []
    ncols = len(B[0])
    # row-sparse product: only nonzero entries of A and B are touched
    Bnz = [[(j, b) for j, b in enumerate(row) if b] for row in B]
    out = []
    for row in A:
        acc = [_ZERO] * ncols
        for k, a in enumerate(row):
            if a:
                for j, b in Bnz[k]:
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


_ZERO = Fraction(0)


def _dot_sparse(nz, col):
    s = _ZERO
    for k, a in nz:
        b = col[k]
        if b:
            s = s + a * b
    return s


def matvec(A, v):
    return [_dot_sparse([(k, a) for k, a in enumerate(row) if a], v) for row in A]


def add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(c, A):
    return [[c * a for a in row] for row in A]


def is_zero(A):
    return all(not x for row in A for x in row)


def equal(A, B):
    return shape(A) == shape(B) and all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def submatrix(A, rows, cols):
    return [[A[i][j] for j in cols] for i in rows]


def hstack(*mats):
    mats = [M for M in mats if M and M[0]]
    if not mats:
        return []
    return [sum((M[i] for M in mats), []) for i in range(len(mats[0]))]


def from_columns(cols, nrows=None):
    if not cols:
        return [[] for _ in range(nrows or 0)]
    return [list(r) for r in zip(*cols)]


def columns(A):
    return transpose(A)


def rank(A):
    if not A or not A[0]:
        return 0
    _, piv, _ = echelon(A, len(A[0]))
    return len(piv)


def det(A):
    n, c = shape(A)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    _, _, d = echelon(A, n)
    return d


def rref(A):
    if not A:
        return [], []
    red, piv, _ = echelon(A, len(A[0]))
    return red, piv


def inverse(A):
    n, c = shape(A)
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    red, piv, _ = echelon(aug, 2 * n)
    if len(red) < n or piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def nullspace(A, ncols=None):
    """Basis (list of vectors) of {x : A x = 0}."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv, _ = echelon(A, ncols)
    free = [j for j in range(ncols) if j not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        out.append(v)
    return out


def column_basis(cols, dim):
    """Independent subset (in order) of a list of column vectors."""
    if not cols:
        return []
    red, piv, _ = echelon(from_columns(cols), len(cols))
    return [cols[j] for j in piv]


def span_rank(cols):
    if not cols:
        return 0
    return rank(from_columns(cols))


def intersect(U, W, dim):
    """Basis of span(U) ∩ span(W); U, W are lists of column vectors."""
    if not U or not W:
        return []
    M = hstack(from_columns(U), [[-x for x in row] for row in from_columns(W)])
    sols = nullspace(M, len(U) + len(W))
    vecs = []
    for s in sols:
        v = [Fraction(0)] * dim
        for coef, u in zip(s[: len(U)], U):
            if coef:
                v = [a + coef * b for a, b in zip(v, u)]
        vecs.append(v)
    return column_basis(vecs, dim)


def solve(A, b):
    """Some solution x of A x = b, or None when inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, piv, _ = echelon(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def leading_minors(A):
    """Determinants of the leading principal k x k submatrices, k = 1..n."""
    return [det([row[:k] for row in A[:k]]) for k in range(1, len(A) + 1)]


def bilinear(u, Q, v):
    """u^T Q v."""
    return _dot_sparse([(k, a) for k, a in enumerate(u) if a], matvec(Q, v))


def commutator(A, B):
    return sub(matmul(A, B), matmul(B, A))


def format_matrix(A):
    from .scalar import format_scalar

    return [[format_scalar(x) for x in row] for row in A]
