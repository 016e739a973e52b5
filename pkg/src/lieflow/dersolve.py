"""Derivations of an algebra: the full space, inner ones, membership tests.

A linear map D is a derivation when D[E_i,E_j] = [D E_i, E_j] + [E_i, D E_j]
for every basis pair. The full space is computed as the exact nullspace of
that constraint system, generated generically from the structure constants
(one row per pair per component, n * C(n,2) rows in n^2 unknowns, unknowns
flattened row-major). Column j of every matrix holds the coordinates of
D(E_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _linalg
from .liealg import (
    Matrix,
    Scalar,
    StructureConstants,
    ad,
    as_scalar,
    as_vector,
    bracket,
)


@dataclass(frozen=True)
class DerivationMatrix:
    entries: Matrix
    leibniz_residual: Fraction

    @property
    def dim(self) -> int:
        return len(self.entries)

    def as_numpy(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries], dtype=float)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)


@dataclass(frozen=True)
class DerivationSpace:
    basis: tuple[DerivationMatrix, ...]
    dim: int


@dataclass(frozen=True)
class DerivationCheck:
    is_derivation: bool
    leibniz_residual: Fraction | float
    worst_pair: tuple[int, int] | None


def coerce_matrix(entries, dim: int | None = None) -> Matrix:
    """Accept nested sequences / numpy arrays / DerivationMatrix; exact output.

    Float entries are converted by `Fraction(float)`, which is exact for
    binary floats.
    """
    if isinstance(entries, DerivationMatrix):
        mat = entries.entries
    elif isinstance(entries, np.ndarray):
        mat = tuple(tuple(Fraction(float(v)) for v in row) for row in entries)
    else:
        mat = tuple(
            tuple(
                as_scalar(v) if not isinstance(v, float) else Fraction(v) for v in row
            )
            for row in entries
        )
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix must be square")
    if dim is not None and n != dim:
        raise ValueError(f"matrix is {n}x{n}, expected {dim}x{dim}")
    return mat


def _apply(mat: Matrix, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(
        sum((row[j] * vec[j] for j in range(len(vec))), Fraction(0)) for row in mat
    )


def leibniz_residual(
    sc: StructureConstants, mat
) -> tuple[Fraction, tuple[int, int] | None]:
    """Max-norm Leibniz violation over basis pairs, with the offending pair."""
    m = coerce_matrix(mat, sc.dim)
    worst = Fraction(0)
    worst_pair: tuple[int, int] | None = None
    for i in range(sc.dim):
        ei = tuple(Fraction(1 if t == i else 0) for t in range(sc.dim))
        di = _apply(m, ei)
        for j in range(i + 1, sc.dim):
            ej = tuple(Fraction(1 if t == j else 0) for t in range(sc.dim))
            dj = _apply(m, ej)
            lhs = _apply(m, sc.bracket_basis(i, j))
            rhs = [a + b for a, b in zip(bracket(sc, di, ej), bracket(sc, ei, dj))]
            res = max(
                (abs(a - b) for a, b in zip(lhs, rhs)), default=Fraction(0)
            )
            if res > worst:
                worst = res
                worst_pair = (i, j)
    return worst, worst_pair


def is_derivation(sc: StructureConstants, mat) -> DerivationCheck:
    res, pair = leibniz_residual(sc, mat)
    return DerivationCheck(is_derivation=res == 0, leibniz_residual=res, worst_pair=pair)


def inner_derivation(sc: StructureConstants, x: Sequence[Scalar]) -> DerivationMatrix:
    """-ad(x); satisfies Leibniz exactly by the Jacobi identity."""
    xv = as_vector(x, sc.dim)
    neg = tuple(tuple(-v for v in row) for row in ad(sc, xv))
    res, _ = leibniz_residual(sc, neg)
    return DerivationMatrix(entries=neg, leibniz_residual=res)


def constraint_rows(sc: StructureConstants) -> list[list[Fraction]]:
    """Leibniz constraint rows over the n^2 unknowns D[r][c] (row-major).

    For the pair (i, j) and output component k the row encodes
    (D [E_i,E_j])_k - [D E_i, E_j]_k - [E_i, D E_j]_k = 0.
    """
    n = sc.dim
    rows: list[list[Fraction]] = []
    struct = [[sc.bracket_basis(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            cij = struct[i][j]
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                # D applied to [E_i, E_j]: unknowns D[k][m]
                for m in range(n):
                    if cij[m] != 0:
                        row[k * n + m] += cij[m]
                # -[D E_i, E_j]: D E_i has coordinates D[m][i]
                for m in range(n):
                    coef = struct[m][j][k]
                    if coef != 0:
                        row[m * n + i] -= coef
                # -[E_i, D E_j]
                for m in range(n):
                    coef = struct[i][m][k]
                    if coef != 0:
                        row[m * n + j] -= coef
                rows.append(row)
    return rows


def derivation_space(sc: StructureConstants) -> DerivationSpace:
    """Exact basis of the derivation algebra, deterministically reduced.

    Basis vectors correspond to the free unknowns of the RREF'd constraint
    system in ascending row-major order, each normalized to 1 in its free
    slot; dim = n^2 - rank(constraints).
    """
    n = sc.dim
    rows = constraint_rows(sc)
    basis_vectors = _linalg.nullspace(rows, n * n)
    basis = []
    for vec in basis_vectors:
        mat = tuple(tuple(vec[r * n + c] for c in range(n)) for r in range(n))
        res, _ = leibniz_residual(sc, mat)
        if res != 0:
            raise AssertionError("nullspace member violates Leibniz; solver bug")
        basis.append(DerivationMatrix(entries=mat, leibniz_residual=res))
    return DerivationSpace(basis=tuple(basis), dim=len(basis))


def in_derivation_span(space: DerivationSpace, mat) -> bool:
    """Exact membership of a matrix in span(space.basis)."""
    if not space.basis:
        return all(v == 0 for row in coerce_matrix(mat) for v in row)
    n = space.basis[0].dim
    m = coerce_matrix(mat, n)
    flat = [m[r][c] for r in range(n) for c in range(n)]
    basis_flat = [
        [b.entries[r][c] for r in range(n) for c in range(n)] for b in space.basis
    ]
    return _linalg.solve_coordinates(basis_flat, flat) is not None
