"""Exact linear algebra over Q with deterministic reduced row-echelon pivoting.

Matrices are lists of rows; a sparse row is a dict column -> Fraction.  All
routines pivot on the first nonzero column, lowest row first, so results are
reproducible.
"""

from __future__ import annotations

from fractions import Fraction


def to_sparse(rows):
    out = []
    for row in rows:
        out.append({j: Fraction(v) for j, v in enumerate(row) if v != 0})
    return out


def to_dense(rows, ncols):
    return [[row.get(j, Fraction(0)) for j in range(ncols)] for row in rows]


def rref(rows, ncols):
    """Reduced row echelon form of sparse rows. Returns (rows, pivot_cols)."""
    rows = [dict(r) for r in rows if r]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i].get(col):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        if pv != 1:
            rows[r] = {j: v / pv for j, v in rows[r].items()}
        prow = rows[r]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i].get(col)
            if not f:
                continue
            ri = rows[i]
            for j, v in prow.items():
                s = ri.get(j, Fraction(0)) - f * v
                if s == 0:
                    ri.pop(j, None)
                else:
                    ri[j] = s
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def kernel_basis(rows, ncols, eliminate_from_right=False):
    """Basis of {x : Ax = 0}, one vector per free column, ascending.

    With eliminate_from_right=True pivots are hunted from the last column
    backwards, so the free (parameter) coordinates are the leading ones.
    """
    if eliminate_from_right:
        flipped = [{ncols - 1 - j: v for j, v in row.items()} for row in rows]
        basis = kernel_basis(flipped, ncols)
        out = [list(reversed(vec)) for vec in basis]
        out.reverse()
        return out
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(red, pivots):
            c = row.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def cokernel_quotient(rows, ncols):
    """Quotient map of Q^ncols by the span of the given (sparse) rows.

    Returns (q, qmatrix) with qmatrix a list of q dense rows: the map
    x -> qmatrix @ x kills exactly the row span.
    """
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    qmatrix = []
    for f in free:
        # image of the f-th coordinate functional after eliminating pivots
        row = [Fraction(0)] * ncols
        row[f] = Fraction(1)
        for red_row, p in zip(red, pivots):
            c = red_row.get(f)
            if c:
                row[p] = -c
        qmatrix.append(row)
    # qmatrix rows are the coordinates of the quotient: q(x)_i = x_f - sum ...
    # built so that q applied to any spanned row gives zero.
    return len(free), qmatrix


def matmul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for t in range(k):
            c = arow[t]
            if c:
                brow = b[t]
                for j in range(m):
                    if brow[j]:
                        orow[j] += c * brow[j]
    return out

def matvec(a, x):
    return [sum((c * v for c, v in zip(row, x) if c), Fraction(0)) for row in a]


def identity(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i in range(n)]


def is_invertible(rows):
    n = len(rows)
    if n == 0:
        return True
    if len(rows[0]) != n:
        return False
    return rank(to_sparse(rows), n) == n


def solve_particular(rows, ncols, rhs):
    """One solution of Ax = b or None; A given as sparse rows."""
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b != 0:
            r[ncols] = Fraction(b)
        aug.append(r)
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row.get(ncols, Fraction(0))
    return x
