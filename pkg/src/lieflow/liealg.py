"""Real Lie algebras presented by exact rational structure constants.

An algebra of dimension n is stored as the strict-lower-triangle tensor
c[i][j][k] (0-based, i < j) with [E_i, E_j] = sum_k c_{ij}^k E_k; antisymmetry
is a representation invariant, never data. Vectors are plain tuples of
scalars in the fixed basis. All arithmetic in this module is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[Fraction, int, str]
Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def as_scalar(value: Scalar) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"cannot interpret {value!r} as an exact scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(f"decimal scalar {value!r} not accepted; use p/q")
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"decimal scalar {value!r} not accepted; use p/q")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def as_vector(coords: Iterable[Scalar], dim: int | None = None) -> Vector:
    vec = tuple(as_scalar(c) for c in coords)
    if dim is not None and len(vec) != dim:
        raise ValueError(f"vector has length {len(vec)}, expected {dim}")
    return vec


def format_scalar(value: Fraction) -> str:
    return str(value)


class StructureConstants:
    """Immutable structure-constant table for a finite-dimensional algebra."""

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int, int], Scalar] | None = None,
        basis_labels: Sequence[str] | None = None,
    ):
        """`brackets` maps 0-based (i, j, k) with i < j to c_{ij}^k."""
        if dim < 1:
            raise ValueError("dimension must be a positive integer")
        self.dim = dim
        if basis_labels is None:
            basis_labels = tuple(f"E{i + 1}" for i in range(dim))
        if len(basis_labels) != dim:
            raise ValueError("need one basis label per dimension")
        self.basis_labels = tuple(basis_labels)
        entries: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, k), c in (brackets or {}).items():
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise ValueError(f"bad structure index ({i},{j},{k}) for dim {dim}")
            value = as_scalar(c)
            if value != 0:
                entries[(i, j, k)] = value
        self._entries = entries

    @property
    def entries(self) -> dict[tuple[int, int, int], Fraction]:
        return dict(self._entries)

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[E_i, E_j] as a coordinate vector, for any i, j."""
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise ValueError(f"basis index out of range for dim {self.dim}")
        if i == j:
            return tuple(Fraction(0) for _ in range(self.dim))
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        return tuple(
            sign * self._entries.get((i, j, k), Fraction(0)) for k in range(self.dim)
        )

    def __repr__(self) -> str:
        return f"StructureConstants(dim={self.dim}, basis={list(self.basis_labels)})"


@dataclass(frozen=True)
class ValidationReport:
    jacobi_ok: bool
    worst_triple: tuple[int, int, int] | None
    residual: Fraction


def bracket(sc: StructureConstants, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    """Bilinear antisymmetric expansion of [x, y] in the fixed basis."""
    xv = as_vector(x, sc.dim)
    yv = as_vector(y, sc.dim)
    out = [Fraction(0)] * sc.dim
    for (i, j, k), c in sc.entries.items():
        coef = xv[i] * yv[j] - xv[j] * yv[i]
        if coef != 0:
            out[k] += c * coef
    return tuple(out)


def ad(sc: StructureConstants, x: Sequence[Scalar]) -> Matrix:
    """Matrix of ad(x) = [x, .]; column j holds the coordinates of [x, E_j]."""
    xv = as_vector(x, sc.dim)
    cols = []
    for j in range(sc.dim):
        ej = tuple(Fraction(1 if t == j else 0) for t in range(sc.dim))
        cols.append(bracket(sc, xv, ej))
    return tuple(tuple(cols[j][i] for j in range(sc.dim)) for i in range(sc.dim))


def validate_algebra(sc: StructureConstants) -> ValidationReport:
    """Exact Jacobi check over all basis triples.

    A failing algebra yields a report (jacobi_ok=False, worst offending triple
    by max-norm residual), never an exception.
    """
    worst: tuple[int, int, int] | None = None
    worst_res = Fraction(0)
    for i in range(sc.dim):
        ei = tuple(Fraction(1 if t == i else 0) for t in range(sc.dim))
        for j in range(i + 1, sc.dim):
            ej = tuple(Fraction(1 if t == j else 0) for t in range(sc.dim))
            for k in range(j + 1, sc.dim):
                ek = tuple(Fraction(1 if t == k else 0) for t in range(sc.dim))
                total = [
                    a + b + c
                    for a, b, c in zip(
                        bracket(sc, ei, bracket(sc, ej, ek)),
                        bracket(sc, ej, bracket(sc, ek, ei)),
                        bracket(sc, ek, bracket(sc, ei, ej)),
                    )
                ]
                res = max((abs(v) for v in total), default=Fraction(0))
                if res > worst_res:
                    worst_res = res
                    worst = (i, j, k)
    return ValidationReport(jacobi_ok=worst_res == 0, worst_triple=worst, residual=worst_res)


def permute_basis(sc: StructureConstants, perm: Sequence[int]) -> StructureConstants:
    """Algebra in the reordered basis F_t = E_perm[t]."""
    if sorted(perm) != list(range(sc.dim)):
        raise ValueError("perm must be a permutation of 0..dim-1")
    inv = [0] * sc.dim
    for t, p in enumerate(perm):
        inv[p] = t
    new: dict[tuple[int, int, int], Fraction] = {}
    for a in range(sc.dim):
        for b in range(a + 1, sc.dim):
            vec = sc.bracket_basis(perm[a], perm[b])
            for k, c in enumerate(vec):
                if c != 0:
                    new[(a, b, inv[k])] = c
    labels = [sc.basis_labels[p] for p in perm]
    return StructureConstants(sc.dim, new, labels)


# --- algebra file format -----------------------------------------------------
#
# { "dim": n, "basis": ["E1", ...],
#   "brackets": [ {"i": 1, "j": 2, "k": 3, "c": "1"}, ... ] }
#
# Indices are 1-based; entries with i >= j are rejected; "c" must be an
# integer or "p/q" string. Unlisted pairs bracket to zero.


def algebra_to_dict(sc: StructureConstants) -> dict:
    brackets = [
        {"i": i + 1, "j": j + 1, "k": k + 1, "c": format_scalar(c)}
        for (i, j, k), c in sorted(sc.entries.items())
    ]
    return {"dim": sc.dim, "basis": list(sc.basis_labels), "brackets": brackets}


def algebra_from_dict(data: Mapping) -> StructureConstants:
    try:
        dim = int(data["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError("algebra file needs an integer 'dim'") from exc
    basis = data.get("basis")
    entries: dict[tuple[int, int, int], Fraction] = {}
    for item in data.get("brackets", []):
        i, j, k = int(item["i"]), int(item["j"]), int(item["k"])
        if i >= j:
            raise ValueError(
                f"bracket entry (i={i}, j={j}) violates the strict i < j convention"
            )
        if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
            raise ValueError(f"bracket entry ({i},{j},{k}) out of range for dim {dim}")
        key = (i - 1, j - 1, k - 1)
        if key in entries:
            raise ValueError(f"duplicate bracket entry for (i={i}, j={j}, k={k})")
        entries[key] = as_scalar(item["c"])
    return StructureConstants(dim, entries, basis)


def load_algebra(path: str) -> StructureConstants:
    with open(path, "r", encoding="utf-8") as fh:
        return algebra_from_dict(json.load(fh))


def dump_algebra(sc: StructureConstants, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_dict(sc), fh, indent=2)
        fh.write("\n")
