"""Pure-Python hot kernels.

The compiled module ``_kernels`` (built from ``_kernels.pyx``) exposes the
same four functions with the same semantics; :mod:`hodgeball.kernels` picks
one at import time.  Coefficients are arbitrary exact field elements
(``Fraction`` or ``GaussianRational``); zero is tested by truthiness.
"""

from fractions import Fraction

ONE = Fraction(1)


def series_mul(a, b, order):
    """Truncated product of two sparse series ``{exponent tuple: coeff}``.

    Terms of total degree above ``order`` are dropped, as are zero sums.
    """
    if not a or not b:
        return {}
    bl = [(e, sum(e), c) for e, c in b.items()]
    out = {}
    get = out.get
    for ea, ca in a.items():
        da = sum(ea)
        if da > order:
            continue
        room = order - da
        for eb, db, cb in bl:
            if db > room:
                continue
            e = tuple([x + y for x, y in zip(ea, eb)])
            prev = get(e)
            out[e] = ca * cb if prev is None else prev + ca * cb
    return {e: c for e, c in out.items() if c}


def monomials_of_degree(nvars, degree):
    """All exponent tuples of the given total degree, lexicographically descending."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    stack = [((), degree)]
    while stack:
        prefix, left = stack.pop()
        k = len(prefix)
        if k == nvars - 1:
            out.append(prefix + (left,))
            continue
        # push small first so the largest leading exponent pops first
        for v in range(0, left + 1):
            stack.append((prefix + (v,), left - v))
    return out


def standard_monomials(nvars, degree, leads):
    """Monomials of ``degree`` not divisible by any exponent tuple in ``leads``."""
    if degree < 0:
        return []
    leads = [tuple(l) for l in leads]
    out = []
    for e in monomials_of_degree(nvars, degree):
        for l in leads:
            for x, y in zip(e, l):
                if x < y:
                    break
            else:
                break
        else:
            out.append(e)
    return out


def echelon(rows, ncols):
    """Gauss-Jordan elimination over a field.

    Returns ``(reduced_rows, pivot_columns, det_factor)`` where
    ``reduced_rows`` holds only the non-zero rows of the reduced row echelon
    form and ``det_factor`` is the determinant when the input is square and
    of full rank (0 otherwise).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    det = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = None
        for i in range(r, nrows):
            if m[i][c]:
                p = i
                break
        if p is None:
            det = 0
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            det = -det
        row = m[r]
        piv = row[c]
        det = det * piv
        inv = ONE / piv
        for j in range(c, ncols):
            if row[j]:
                row[j] = row[j] * inv
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    for j in range(c, ncols):
                        if row[j]:
                            other[j] = other[j] - f * row[j]
        pivots.append(c)
        r += 1
    if r < nrows or len(pivots) < ncols:
        det = 0
    return m[:r], pivots, det
