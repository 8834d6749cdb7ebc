# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; identical semantics, typed loops."""

from fractions import Fraction

ONE = Fraction(1)


def series_mul(dict a, dict b, int order):
    cdef list bl, ea_l
    cdef dict out
    cdef int da, db, room, k, n
    cdef tuple ea, eb, e
    if not a or not b:
        return {}
    bl = []
    for eb, cb in b.items():
        db = 0
        for k in range(len(eb)):
            db += <int>eb[k]
        bl.append((eb, db, cb))
    out = {}
    for ea, ca in a.items():
        da = 0
        n = len(ea)
        for k in range(n):
            da += <int>ea[k]
        if da > order:
            continue
        room = order - da
        for item in bl:
            db = <int>item[1]
            if db > room:
                continue
            eb = <tuple>item[0]
            ea_l = [None] * n
            for k in range(n):
                ea_l[k] = <int>ea[k] + <int>eb[k]
            e = tuple(ea_l)
            prev = out.get(e)
            if prev is None:
                out[e] = ca * item[2]
            else:
                out[e] = prev + ca * item[2]
    return {e: c for e, c in out.items() if c}


def monomials_of_degree(int nvars, int degree):
    cdef list out, stack
    cdef int left, v
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    stack = [((), degree)]
    while stack:
        prefix, left = stack.pop()
        if len(prefix) == nvars - 1:
            out.append(prefix + (left,))
            continue
        for v in range(0, left + 1):
            stack.append((prefix + (v,), left - v))
    return out


def standard_monomials(int nvars, int degree, leads):
    cdef list out, lead_list
    cdef tuple e, l
    cdef int k
    cdef bint divisible, ok
    if degree < 0:
        return []
    lead_list = [tuple(x) for x in leads]
    out = []
    for e in monomials_of_degree(nvars, degree):
        divisible = False
        for l in lead_list:
            ok = True
            for k in range(nvars):
                if <int>e[k] < <int>l[k]:
                    ok = False
                    break
            if ok:
                divisible = True
                break
        if not divisible:
            out.append(e)
    return out


def echelon(rows, int ncols):
    cdef list m, row, other, pivots
    cdef int nrows, r, c, i, j, p
    m = [list(x) for x in rows]
    nrows = len(m)
    pivots = []
    det = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = -1
        for i in range(r, nrows):
            if m[i][c]:
                p = i
                break
        if p < 0:
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
