"""Small exact linear-algebra helpers over Fraction.

Dense row operations only; every matrix is a list of lists of Fractions.
Sizes here are tiny (at most a few hundred rows for annihilator kernels),
so no attempt is made at sparsity.  Pivoting is deterministic: scan columns
left to right, take the first nonzero entry in each column.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows):
    """Reduce ``rows`` in place to reduced row-echelon form.

    Returns the list of pivot column indices.  Column order is the fixed
    input order, which keeps every downstream basis deterministic.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(rows):
    work = [list(row) for row in rows]
    return len(rref(work))


def kernel_basis(rows, ncols):
    """Basis of the right kernel {v : rows @ v = 0}, one vector per free column.

    Basis vectors come out ordered by their free column index, each with a 1
    in that coordinate, which makes the result canonical for a fixed column
    order.
    """
    work = [list(row) for row in rows]
    pivots = rref(work)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [ZERO] * ncols
        vec[free] = ONE
        for r, c in enumerate(pivots):
            vec[c] = -work[r][free]
        basis.append(vec)
    return basis


def in_span(vec, spanning):
    """True iff ``vec`` is a rational combination of the ``spanning`` vectors."""
    rows = [list(v) for v in spanning]
    base = rank(rows)
    rows.append(list(vec))
    return rank(rows) == base
