"""Exact integer linear algebra by fraction-free (Bareiss) elimination.

Certificates must be exact, so everything here stays in arbitrary
precision integers; every interior division is checked to be exact.
"""

from __future__ import annotations

from math import gcd


def _exact_div(num, den):
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("fraction-free elimination produced a non-exact division")
    return q


def _eliminate(rows, track=False):
    """One-pass fraction-free elimination.

    Returns (m, t, pivot_cols, sign): m is the eliminated matrix, t the
    accumulated row-operation matrix with t @ original == m (only when
    track=True), pivot_cols the pivot column indices in order.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    for r in m:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    t = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)] if track else None
    prev = 1
    sign = 1
    r = 0
    pivot_cols = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
            if track:
                t[p], t[r] = t[r], t[p]
            sign = -sign
        piv = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c, ncols):
                row_i[j] = _exact_div(piv * row_i[j] - f * row_r[j], prev)
            if track:
                ti, tr = t[i], t[r]
                for j in range(nrows):
                    ti[j] = _exact_div(piv * ti[j] - f * tr[j], prev)
        prev = piv
        pivot_cols.append(c)
        r += 1
    return m, t, pivot_cols, sign


def exact_rank(rows) -> int:
    """Rank over the rationals, exactly."""
    if not rows:
        return 0
    _, _, pivots, _ = _eliminate(rows)
    return len(pivots)


def pivot_columns(rows):
    if not rows:
        return []
    _, _, pivots, _ = _eliminate(rows)
    return pivots


def exact_det(rows) -> int:
    """Determinant of a square integer matrix (Bareiss: the last pivot)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    m, _, pivots, sign = _eliminate(rows)
    if len(pivots) < n:
        return 0
    return sign * m[n - 1][pivots[-1]]


def row_dependency(rows):
    """An integer vector v != 0 with sum_i v[i]*rows[i] == 0, or None.

    The vector is primitive (gcd 1) with positive leading entry, and is
    re-verified against the input before being returned.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return None
    m, t, pivots, _ = _eliminate(rows, track=True)
    rank = len(pivots)
    if rank == len(rows):
        return None
    vec = t[rank]  # first eliminated-to-zero row
    g = 0
    for v in vec:
        g = gcd(g, v)
    vec = [v // g for v in vec]
    lead = next(v for v in vec if v != 0)
    if lead < 0:
        vec = [-v for v in vec]
    ncols = len(rows[0])
    for j in range(ncols):
        if sum(vec[i] * rows[i][j] for i in range(len(rows))) != 0:
            raise ArithmeticError("dependency vector failed re-verification")
    return vec
