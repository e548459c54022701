"""Exact dense linear algebra over an exact field: rank and kernel bases."""

from __future__ import annotations


def bareiss_rank(rows) -> int:
    """Rank by fraction-free (two-step Bareiss) elimination.

    rows is a list of lists of exact scalars and is consumed.  Divisions by
    the previous pivot are exact, so integer-valued rational input never
    leaves the integers.
    """
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    rank = 0
    prev = None
    for c in range(n):
        p = next((i for i in range(rank, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        piv = rows[rank][c]
        pivot_row = rows[rank]
        for i in range(rank + 1, m):
            row = rows[i]
            ric = row[c]
            for j in range(c, n):
                num = row[j] * piv - ric * pivot_row[j]
                row[j] = num / prev if prev is not None else num
        prev = piv
        rank += 1
        if rank == m:
            break
    return rank


def kernel_basis(rows, ncols: int, field):
    """Basis of the right kernel of the matrix given by rows.

    Row-reduces over the field (exact scalars, so no rounding), then reads
    one kernel vector off each free column.
    """
    mat = [list(r) for r in rows]
    m = len(mat)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        piv = mat[r][c]
        mat[r] = [v / piv for v in mat[r]]
        for i in range(m):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [field.zero] * ncols
        vec[f] = field.one
        for i, c in enumerate(pivots):
            vec[c] = -mat[i][f]
        basis.append(vec)
    return basis
