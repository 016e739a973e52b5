"""Exact rational linear algebra: RREF, rank, nullspace, span tests.

Everything here works on sequences of `fractions.Fraction` and never touches
floating point. Matrices are lists of row lists; vectors are sequences.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = list[Fraction]


def rref(rows: Iterable[Sequence[Fraction]]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form with pivots normalized to 1.

    Returns (reduced rows, pivot column indices). Deterministic: pivots are
    chosen as the first nonzero entry scanning columns left to right.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Iterable[Sequence[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0}, one vector per free column, ascending.

    Each basis vector has 1 in its free coordinate, so the assembled basis
    matrix is column-reduced and the output is deterministic.
    """
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            vec[p] = -reduced[row_idx][f]
        basis.append(tuple(vec))
    return basis


def solve_coordinates(
    basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]
) -> tuple[Fraction, ...] | None:
    """Coordinates of `target` in span(basis), or None if outside the span."""
    if not basis:
        return () if all(t == 0 for t in target) else None
    n = len(target)
    aug = [[Fraction(b[i]) for b in basis] + [Fraction(target[i])] for i in range(n)]
    reduced, pivots = rref(aug)
    k = len(basis)
    if k in pivots:  # pivot in the augmented column: inconsistent
        return None
    coords = [Fraction(0)] * k
    for row_idx, p in enumerate(pivots):
        coords[p] = reduced[row_idx][k]
    return tuple(coords)


def spans_equal(
    a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]
) -> bool:
    """Whether two lists of vectors span the same subspace (exact)."""
    ra = rank(a) if a else 0
    rb = rank(b) if b else 0
    if ra != rb:
        return False
    return rank(list(a) + list(b)) == ra


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[Row]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
        for i in range(n)
    ]


def mat_identity(n: int) -> list[Row]:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
