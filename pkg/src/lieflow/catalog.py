"""Bundled 2D/3D solvable algebras and sl(2,R), with cross-checks.

Each entry carries the structure constants, the derivation family and
eigenvalue formulas as printed in the source classification table, an
optional faithful matrix representation, and any known printing issues.
`cross_check` recomputes the derivation space and the spectra exactly and
reports every mismatch with both values; recomputation is authoritative for
verdicts, printed values are preserved in the reports and never silently
corrected.

The 3D families share the bracket scheme
[E1,E2] = n3*E3, [E3,E1] = a*E1 + n2*E2, [E2,E3] = n1*E1 - a*E2.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from . import _linalg
from .config import DEFAULT_CONFIG, ToleranceConfig
from .dersolve import DerivationSpace, derivation_space
from .liealg import Matrix, Scalar, StructureConstants, as_scalar
from .periodicity import FlowVerdict, classify_linear_flow
from .spectral import spectrum

F = Fraction


class UnknownEntryError(Exception):
    pass


class ParamOutOfRangeError(Exception):
    pass


# --- symbolic derivation patterns --------------------------------------------


@dataclass(frozen=True)
class LinearPattern:
    """Matrix whose cells are linear combinations of named free parameters."""

    rows: tuple[tuple[Mapping[str, Fraction], ...], ...]

    @property
    def params(self) -> tuple[str, ...]:
        seen: set[str] = set()
        for row in self.rows:
            for cell in row:
                seen.update(cell)
        return tuple(sorted(seen))

    @property
    def n(self) -> int:
        return len(self.rows)

    def instantiate(self, assign: Mapping[str, Scalar]) -> Matrix:
        values = {k: as_scalar(v) for k, v in assign.items()}
        return tuple(
            tuple(
                sum((coeff * values[p] for p, coeff in cell.items()), F(0))
                for cell in row
            )
            for row in self.rows
        )

    def basis_matrices(self) -> list[Matrix]:
        out = []
        for p in self.params:
            out.append(
                tuple(
                    tuple(F(cell.get(p, 0)) for cell in row) for row in self.rows
                )
            )
        return out

    def render(self) -> str:
        def cell_text(cell: Mapping[str, Fraction]) -> str:
            if not cell:
                return "0"
            parts = []
            for p in sorted(cell):
                c = cell[p]
                if c == 1:
                    term = p
                elif c == -1:
                    term = f"-{p}"
                else:
                    term = f"{c}*{p}"
                parts.append(term)
            text = " + ".join(parts)
            return text.replace("+ -", "- ")

        rows = ["[" + ", ".join(cell_text(c) for c in row) + "]" for row in self.rows]
        return "[" + ", ".join(rows) + "]"


def _pattern(cells: Sequence[Sequence[Mapping[str, int] | Mapping[str, Fraction]]]) -> LinearPattern:
    return LinearPattern(
        rows=tuple(
            tuple({p: F(c) for p, c in cell.items()} for cell in row) for row in cells
        )
    )


# --- entries ------------------------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    location: str
    published_value: str
    recomputed_value: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    display_name: str
    group_name: str
    param: Fraction | None
    structure: StructureConstants
    claimed_pattern: LinearPattern
    claimed_eigenvalue_text: str
    claimed_eigenvalues: Callable[[Mapping[str, Fraction]], list[complex]]
    published_claim: str
    periodicity_condition: Callable[[Matrix], bool] | None = None
    representation: tuple[Matrix, ...] | None = None
    known_print_issues: tuple[Discrepancy, ...] = field(default_factory=tuple)
    notes: tuple[str, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class CrossCheckReport:
    name: str
    derivation_space_match: bool
    eigenvalue_formula_match: bool
    discrepancies: tuple[Discrepancy, ...]
    known_print_issues: tuple[Discrepancy, ...] = field(default_factory=tuple)
    notes: tuple[str, ...] = field(default_factory=tuple)

    def flagged_locations(self) -> tuple[str, ...]:
        return tuple(
            d.location for d in self.discrepancies + self.known_print_issues
        )


def _family3(a: Fraction, n1: Fraction, n2: Fraction, n3: Fraction) -> StructureConstants:
    brackets = {
        (0, 1, 2): n3,
        (0, 2, 0): -a,
        (0, 2, 1): -n2,
        (1, 2, 0): n1,
        (1, 2, 1): -a,
    }
    return StructureConstants(3, brackets)


def _csqrt(x: Fraction) -> complex:
    return cmath.sqrt(complex(float(x), 0.0))


def _e(n: int, i: int, j: int) -> Matrix:
    return tuple(
        tuple(F(1) if (r, c) == (i, j) else F(0) for c in range(n)) for r in range(n)
    )


def _mat(rows) -> Matrix:
    return tuple(tuple(F(v) for v in row) for row in rows)


def _build_abelian2(_: Fraction | None) -> CatalogEntry:
    pattern = _pattern([[{"a": 1}, {"b": 1}], [{"c": 1}, {"d": 1}]])

    def evals(v):
        tr = v["a"] + v["d"]
        disc = (v["a"] - v["d"]) ** 2 + 4 * v["b"] * v["c"]
        s = _csqrt(disc)
        return [(float(tr) + s) / 2, (float(tr) - s) / 2]

    def condition(m: Matrix) -> bool:
        tr = m[0][0] + m[1][1]
        disc = (m[0][0] - m[1][1]) ** 2 + 4 * m[0][1] * m[1][0]
        return tr == 0 and disc < 0

    return CatalogEntry(
        name="abelian2",
        display_name="2D abelian",
        group_name="R^2",
        param=None,
        structure=StructureConstants(2),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{((a+d) - sqrt((a-d)^2+4bc))/2, ((a+d) + sqrt((a-d)^2+4bc))/2}",
        claimed_eigenvalues=evals,
        published_claim="periodic orbits iff a+d = 0 and (a-d)^2 + 4bc < 0",
        periodicity_condition=condition,
    )


def _build_aff2(_: Fraction | None) -> CatalogEntry:
    pattern = _pattern([[{}, {}], [{"c": 1}, {"d": 1}]])

    def evals(v):
        return [0j, complex(float(v["d"]))]

    return CatalogEntry(
        name="aff2",
        display_name="aff(2)",
        group_name="Aff(2)_0",
        param=None,
        structure=StructureConstants(2, {(0, 1, 1): 1}, ("H", "Z")),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{0, d}",
        claimed_eigenvalues=evals,
        published_claim="no linear flow has periodic orbits",
        representation=(_e(2, 0, 0), _e(2, 0, 1)),
    )


def _abelian3_coefficient(m: Matrix) -> Fraction:
    return (
        m[0][1] * m[1][0]
        - m[0][0] * m[1][1]
        + m[0][2] * m[2][0]
        - m[0][0] * m[2][2]
        + m[1][2] * m[2][1]
        - m[1][1] * m[2][2]
    )


def _build_abelian3(_: Fraction | None) -> CatalogEntry:
    names = [["x1", "x2", "x3"], ["y1", "y2", "y3"], ["z1", "z2", "z3"]]
    pattern = _pattern([[{names[i][j]: 1} for j in range(3)] for i in range(3)])

    def evals(v):
        m = pattern.instantiate(v)
        tr = m[0][0] + m[1][1] + m[2][2]
        acoef = _abelian3_coefficient(m)
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        # Roots of lambda^3 - tr*lambda^2 - A*lambda - det.
        roots = np.roots([1.0, -float(tr), -float(acoef), -float(det)])
        return [complex(r) for r in roots]

    def condition(m: Matrix) -> bool:
        tr = m[0][0] + m[1][1] + m[2][2]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        return tr == 0 and det == 0 and _abelian3_coefficient(m) < 0

    n4 = 4
    rep = tuple(_e(n4, i, 3) for i in range(3))
    return CatalogEntry(
        name="abelian3",
        display_name="3g_1 (3D abelian)",
        group_name="R^3",
        param=None,
        structure=_family3(F(0), F(0), F(0), F(0)),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="roots of -l^3 + tr(D) l^2 + A l + det(D), "
        "A = x2y1 - x1y2 + x3z1 - x1z3 + y3z2 - y2z3",
        claimed_eigenvalues=evals,
        published_claim="periodic orbits iff tr(D) = det(D) = 0 and A < 0",
        periodicity_condition=condition,
        representation=rep,
        known_print_issues=(
            Discrepancy(
                location="abelian3: family label",
                published_value="labelled as type g_{3,6} in the proposition",
                recomputed_value="the family described is 3g_1 (the abelian one)",
            ),
        ),
        notes=(
            "the displayed unconstrained matrix prints z3 twice in its last "
            "row where z2 is meant; the family is all 3x3 matrices",
            "the proposition restates the linear coefficient as "
            "'x2y1 - y1x2 + ...', whose first two terms cancel; the stored "
            "coefficient uses the consistent earlier printing, which matches "
            "the exact characteristic polynomial",
        ),
    )


def _build_g21_plus_g1(_: Fraction | None) -> CatalogEntry:
    pattern = _pattern(
        [
            [{"x1": 1}, {"x2": 1}, {"x3": 1}],
            [{"x2": 1}, {"x1": 1}, {"y3": 1}],
            [{}, {}, {}],
        ]
    )

    def evals(v):
        return [
            0j,
            complex(float(v["x1"] - v["x2"])),
            complex(float(v["x1"] + v["x2"])),
        ]

    return CatalogEntry(
        name="g21_plus_g1",
        display_name="g_{2,1} + g_1",
        group_name="Aff(R)_0 x R",
        param=None,
        structure=_family3(F(1), F(1), F(-1), F(0)),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{0, x1-x2, x1+x2}",
        claimed_eigenvalues=evals,
        published_claim="no linear flow has periodic orbits",
        notes=(
            "the source sentence calls the group semisimple; it is solvable, "
            "and the same sentence identifies it as Aff(R)_0 x R, which the "
            "entry records",
        ),
    )


def _build_g31(_: Fraction | None) -> CatalogEntry:
    pattern = _pattern(
        [
            [{"y2": 1, "z3": 1}, {"x2": 1}, {"x3": 1}],
            [{}, {"y2": 1}, {"y3": 1}],
            [{}, {"z2": 1}, {"z3": 1}],
        ]
    )

    def evals(v):
        tr = v["y2"] + v["z3"]
        disc = (v["y2"] - v["z3"]) ** 2 + 4 * v["x3"] * v["z2"]
        s = _csqrt(disc)
        return [
            complex(float(tr)),
            (float(tr) - s) / 2,
            (float(tr) + s) / 2,
        ]

    def condition(m: Matrix) -> bool:
        # Trace and discriminant of the lower-right block [[y2,y3],[z2,z3]].
        tr = m[1][1] + m[2][2]
        disc = (m[1][1] - m[2][2]) ** 2 + 4 * m[1][2] * m[2][1]
        return tr == 0 and disc < 0

    rep = (_e(3, 0, 2), _e(3, 0, 1), _e(3, 1, 2))
    return CatalogEntry(
        name="g31_heisenberg",
        display_name="g_{3,1} (Heisenberg)",
        group_name="H_3",
        param=None,
        structure=_family3(F(0), F(1), F(0), F(0)),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{y2+z3, ((y2+z3) -+ sqrt((y2-z3)^2 + 4*x3*z2))/2}",
        claimed_eigenvalues=evals,
        published_claim="periodic orbits iff y2+z3 = 0 and the block "
        "discriminant is negative",
        periodicity_condition=condition,
        representation=rep,
    )


def _build_g32(_: Fraction | None) -> CatalogEntry:
    pattern = _pattern(
        [
            [{}, {"x2": 1}, {"x3": 1}],
            [{}, {}, {"y3": 1}],
            [{}, {}, {}],
        ]
    )

    def evals(_v):
        return [0j, 0j, 0j]

    return CatalogEntry(
        name="g32",
        display_name="g_{3,2}",
        group_name="G_{3,2}",
        param=None,
        structure=_family3(F(1), F(1), F(0), F(0)),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{0, 0, 0}",
        claimed_eigenvalues=evals,
        published_claim="no linear flow has periodic orbits",
    )


def _build_g33(_: Fraction | None) -> CatalogEntry:
    pattern = _pattern(
        [
            [{"x1": 1}, {"x2": 1}, {"x3": 1}],
            [{"y1": 1}, {"y2": 1}, {"y3": 1}],
            [{}, {}, {}],
        ]
    )

    def evals(v):
        tr = v["x1"] + v["y2"]
        disc = (v["x2"] - v["y2"]) ** 2 + 4 * v["x2"] * v["y1"]
        s = _csqrt(disc)
        return [0j, (float(tr) - s) / 2, (float(tr) + s) / 2]

    def condition(m: Matrix) -> bool:
        tr = m[0][0] + m[1][1]
        disc = (m[0][0] - m[1][1]) ** 2 + 4 * m[0][1] * m[1][0]
        return tr == 0 and disc < 0

    return CatalogEntry(
        name="g33",
        display_name="g_{3,3}",
        group_name="G_{3,3}",
        param=None,
        structure=_family3(F(1), F(0), F(0), F(0)),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{0, ((x1+y2) -+ sqrt((x2-y2)^2 + 4*x2*y1))/2}",
        claimed_eigenvalues=evals,
        published_claim="periodic orbits iff x1+y2 = 0 and the block "
        "discriminant is negative",
        periodicity_condition=condition,
    )


def _build_g34_zero(_: Fraction | None) -> CatalogEntry:
    pattern = _pattern(
        [
            [{"x1": 1}, {"x2": 1}, {"x3": 1}],
            [{"x2": 1}, {"x1": 1}, {"y3": 1}],
            [{}, {}, {}],
        ]
    )

    def evals(v):
        return [
            0j,
            complex(float(v["x1"] - v["x2"])),
            complex(float(v["x1"] + v["x2"])),
        ]

    boost = _mat([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    neg_boost = tuple(tuple(-v for v in row) for row in boost)
    rep = (_e(3, 0, 2), _e(3, 1, 2), neg_boost)
    return CatalogEntry(
        name="g34_zero",
        display_name="g^0_{3,4} (se(1,1))",
        group_name="SE(1,1)",
        param=None,
        structure=_family3(F(0), F(1), F(-1), F(0)),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{0, x1-x2, x1+x2}",
        claimed_eigenvalues=evals,
        published_claim="no linear flow has periodic orbits",
        representation=rep,
    )


def _build_g34_a(a: Fraction | None) -> CatalogEntry:
    a = F(2) if a is None else F(a)
    if a <= 0 or a == 1:
        raise ParamOutOfRangeError(
            f"g34_a requires a > 0 and a != 1, got a = {a}"
        )
    pattern = _pattern(
        [
            [{"y2": -1}, {"y2": a}, {"x3": 1}],
            [{"y2": a}, {"y2": 1}, {"y3": 1}],
            [{}, {}, {}],
        ]
    )

    def evals(v):
        s = _csqrt((1 + a) * v["y2"] ** 2)
        return [0j, -s, s]

    return CatalogEntry(
        name="g34_a",
        display_name=f"g^a_{{3,4}} (a = {a})",
        group_name=f"G^{a}_{{3,4}}",
        param=a,
        structure=_family3(a, F(1), F(-1), F(0)),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{0, -sqrt((1+a)*y2^2), sqrt((1+a)*y2^2)}",
        claimed_eigenvalues=evals,
        published_claim="no linear flow has periodic orbits",
    )


def _build_g35_a(a: Fraction | None) -> CatalogEntry:
    a = F(2) if a is None else F(a)
    if a <= 0:
        raise ParamOutOfRangeError(f"g35_a requires a > 0, got a = {a}")
    pattern = _pattern(
        [
            [{"y2": 1}, {"y2": -a}, {"x3": 1}],
            [{"y2": a}, {"y2": -a}, {"y3": 1}],
            [{}, {}, {}],
        ]
    )

    def evals(v):
        tr = (-a - 1) * v["y2"]
        s = _csqrt((1 - 5 * a) * v["y2"] ** 2)
        return [0j, (float(tr) - s) / 2, (float(tr) + s) / 2]

    return CatalogEntry(
        name="g35_a",
        display_name=f"g^a_{{3,5}} (a = {a})",
        group_name=f"G^{a}_{{3,5}}",
        param=a,
        structure=_family3(a, F(1), F(1), F(0)),
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{0, ((-a-1)*y2 -+ sqrt((1-5a)*y2^2))/2}",
        claimed_eigenvalues=evals,
        published_claim="no linear flow has periodic orbits",
        notes=(
            "the exact derivation family contains outer rotations "
            "(diagonal x1 pair with skew x2 pair); with x1 = 0 and x2 != 0 "
            "their linear flows are periodic, contradicting the published "
            "no-periodic-orbits claim; restricted to inner derivations "
            "(x1 = -a*x2) the claim holds",
        ),
    )


def _build_sl2(_: Fraction | None) -> CatalogEntry:
    pattern = _pattern(
        [
            [{"b": 2}, {"a": -2}, {}],
            [{"c": -1}, {}, {"a": 1}],
            [{"b": 4}, {"a": -4, "c": 2}, {"b": -2}],
        ]
    )

    def evals(v):
        s = 2 * _csqrt(-v["a"] ** 2 + v["a"] * v["c"] + v["b"] ** 2)
        return [0j, -s, s]

    def condition(m: Matrix) -> bool:
        a = m[1][2]
        b = m[0][0] / 2
        c = -m[1][0]
        return a * a > a * c + b * b

    rep = (
        _mat([[0, -1], [1, 0]]),
        _mat([[1, 0], [0, -1]]),
        _mat([[0, 1], [0, 0]]),
    )
    structure = StructureConstants(
        3,
        {(0, 1, 0): 2, (0, 1, 2): 4, (0, 2, 1): -1, (1, 2, 2): 2},
        ("Y", "H", "Z"),
    )
    return CatalogEntry(
        name="sl2",
        display_name="sl(2,R)",
        group_name="SL(2,R)",
        param=None,
        structure=structure,
        claimed_pattern=pattern,
        claimed_eigenvalue_text="{0, -2*sqrt(-a^2+ac+b^2), 2*sqrt(-a^2+ac+b^2)}",
        claimed_eigenvalues=evals,
        published_claim="orbits of the linear flow of -ad(aY+bH+cZ) that are "
        "not fixed points are periodic iff a^2 > ac + b^2",
        periodicity_condition=condition,
        representation=rep,
        known_print_issues=(
            Discrepancy(
                location="sl2: bracket [Y,H]",
                published_value="[Y,H] = 2YX + 4Z",
                recomputed_value="[Y,H] = 2Y + 4Z (2x2 commutator of the "
                "basis matrices)",
            ),
        ),
    )


_BUILDERS: dict[str, Callable[[Fraction | None], CatalogEntry]] = {
    "abelian2": _build_abelian2,
    "aff2": _build_aff2,
    "abelian3": _build_abelian3,
    "g21_plus_g1": _build_g21_plus_g1,
    "g31_heisenberg": _build_g31,
    "g32": _build_g32,
    "g33": _build_g33,
    "g34_zero": _build_g34_zero,
    "g34_a": _build_g34_a,
    "g35_a": _build_g35_a,
    "sl2": _build_sl2,
}

CATALOG_NAMES = tuple(_BUILDERS)
PARAMETRIC_NAMES = ("g34_a", "g35_a")


def get_entry(name: str, a: Scalar | None = None) -> CatalogEntry:
    """Fully populated catalog entry; parametric families need rational a."""
    if name not in _BUILDERS:
        raise UnknownEntryError(
            f"unknown catalog entry {name!r}; known: {', '.join(CATALOG_NAMES)}"
        )
    if a is not None and name not in PARAMETRIC_NAMES:
        raise ParamOutOfRangeError(f"entry {name!r} takes no parameter")
    return _BUILDERS[name](as_scalar(a) if a is not None else None)


# --- cross-checking -----------------------------------------------------------


def _space_flat(space: DerivationSpace) -> list[list[Fraction]]:
    if not space.basis:
        return []
    n = space.basis[0].dim
    return [
        [b.entries[r][c] for r in range(n) for c in range(n)] for b in space.basis
    ]


def _pattern_flat(pattern: LinearPattern) -> list[list[Fraction]]:
    n = pattern.n
    return [
        [m[r][c] for r in range(n) for c in range(n)]
        for m in pattern.basis_matrices()
    ]


def _sample_assignments(pattern: LinearPattern) -> list[dict[str, Fraction]]:
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23]
    params = pattern.params
    first = {p: F(primes[i]) for i, p in enumerate(params)}
    second = {
        p: F(primes[i] if i % 2 == 0 else -primes[i]) for i, p in enumerate(params)
    }
    return [first, second]


def _format_values(values: list[complex]) -> str:
    def fmt(z: complex) -> str:
        if abs(z.imag) < 1e-12:
            return f"{z.real:.6g}"
        return f"{z.real:.6g}{z.imag:+.6g}i"

    return "{" + ", ".join(fmt(z) for z in values) + "}"


def _sorted_values(values: list[complex]) -> list[complex]:
    return sorted(values, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


def cross_check(entry: CatalogEntry, cfg: ToleranceConfig | None = None) -> CrossCheckReport:
    """Exact recomputation of the entry's printed derivation data.

    Checks (1) that the printed derivation family equals the exact nullspace
    of the Leibniz system and (2) that the printed eigenvalue formula matches
    the exact spectrum of the printed matrix at deterministic sample points.
    Mismatches are reported with both values.
    """
    cfg = cfg or DEFAULT_CONFIG
    space = derivation_space(entry.structure)
    discrepancies: list[Discrepancy] = []

    pattern_vecs = _pattern_flat(entry.claimed_pattern)
    space_vecs = _space_flat(space)
    dsm = _linalg.spans_equal(pattern_vecs, space_vecs)
    if not dsm:
        contained = all(
            _linalg.solve_coordinates(space_vecs, v) is not None
            for v in pattern_vecs
        )
        relation = (
            "a strict subfamily of" if contained else "not even contained in"
        )
        discrepancies.append(
            Discrepancy(
                location=f"{entry.name}: derivation matrix family",
                published_value=(
                    f"{len(entry.claimed_pattern.params)}-parameter family "
                    f"{entry.claimed_pattern.render()}"
                ),
                recomputed_value=(
                    f"exact Leibniz nullspace has dimension {space.dim}; the "
                    f"printed family is {relation} it"
                ),
            )
        )

    efm = True
    for assign in _sample_assignments(entry.claimed_pattern):
        matrix = entry.claimed_pattern.instantiate(assign)
        exact = _sorted_values([c.value for c in spectrum(matrix, cfg=cfg).classes
                                for _ in range(c.alg_mult)])
        claimed = _sorted_values(entry.claimed_eigenvalues(assign))
        scale = max(1.0, max(abs(z) for z in exact + claimed))
        match = len(exact) == len(claimed) and all(
            abs(x - y) <= 1e-9 * scale for x, y in zip(exact, claimed)
        )
        if not match:
            efm = False
            sample_text = ", ".join(f"{k}={v}" for k, v in sorted(assign.items()))
            discrepancies.append(
                Discrepancy(
                    location=f"{entry.name}: eigenvalue formula",
                    published_value=(
                        f"{entry.claimed_eigenvalue_text} -> "
                        f"{_format_values(claimed)} at {sample_text}"
                    ),
                    recomputed_value=(
                        f"exact spectrum of the printed matrix is "
                        f"{_format_values(exact)} at {sample_text}"
                    ),
                )
            )
            break

    return CrossCheckReport(
        name=entry.name,
        derivation_space_match=dsm,
        eigenvalue_formula_match=efm,
        discrepancies=tuple(discrepancies),
        known_print_issues=entry.known_print_issues,
        notes=entry.notes,
    )


def cross_check_all(
    params: Sequence[Scalar] = (F(1, 2), F(2), F(3)),
    cfg: ToleranceConfig | None = None,
) -> list[CrossCheckReport]:
    reports = []
    for name in CATALOG_NAMES:
        if name in PARAMETRIC_NAMES:
            for a in params:
                reports.append(cross_check(get_entry(name, a), cfg))
        else:
            reports.append(cross_check(get_entry(name), cfg))
    return reports


# --- verdict table ------------------------------------------------------------


@dataclass(frozen=True)
class VerdictRow:
    entry: str
    param: Fraction | None
    label: str
    matrix: Matrix
    verdict: FlowVerdict
    published_claim: str
    agrees_with_published: bool


def space_samples(entry: CatalogEntry) -> list[tuple[str, Matrix]]:
    """Deterministic nonzero members of the exact derivation space."""
    space = derivation_space(entry.structure)
    basis = [b.entries for b in space.basis]
    n = entry.structure.dim
    samples: list[tuple[str, Matrix]] = []

    def add(label: str, coeffs: Sequence[Fraction]) -> None:
        mat = tuple(
            tuple(
                sum((c * b[r][col] for c, b in zip(coeffs, basis)), F(0))
                for col in range(n)
            )
            for r in range(n)
        )
        if any(v != 0 for row in mat for v in row):
            samples.append((label, mat))

    k = len(basis)
    for i in range(k):
        coeffs = [F(1) if t == i else F(0) for t in range(k)]
        add(f"basis[{i}]", coeffs)
    add("sum", [F(1)] * k)
    add("alternating", [F(1) if t % 2 == 0 else F(-1) for t in range(k)])
    add("weighted", [F(t + 1, 2) for t in range(k)])
    return samples


def condition_side_samples(
    entry: CatalogEntry, periodic_side: bool, count: int
) -> list[Matrix]:
    """Exact sample derivations on one side of a periodicity condition."""
    if entry.periodicity_condition is None:
        raise ValueError(f"entry {entry.name} has no periodicity condition")
    maker = _SIDE_SAMPLERS[entry.name]
    out = []
    for i in range(count):
        m = maker(F(i), periodic_side)
        expected = entry.periodicity_condition(m)
        if expected != periodic_side:
            raise AssertionError(
                f"sampler for {entry.name} produced a point on the wrong side"
            )
        out.append(m)
    return out


def _abelian2_side(t: Fraction, periodic: bool) -> Matrix:
    if periodic:
        return _mat([[t, t + 1], [-2 * (t + 1), -t]])
    shapes = [
        _mat([[t + 1, 0], [0, -t]]),          # nonzero trace
        _mat([[0, t + 1], [t + 1, 0]]),       # positive discriminant
        _mat([[0, t + 1], [0, 0]]),           # nilpotent boundary
    ]
    return shapes[int(t) % 3]


def _abelian3_side(t: Fraction, periodic: bool) -> Matrix:
    if periodic:
        return _mat([[0, t + 1, t], [-(t + 1), 0, 0], [0, 0, 0]])
    shapes = [
        _mat([[t + 1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        _mat([[0, t + 1, 0], [t + 1, 0, 0], [0, 0, 0]]),
        _mat([[0, t + 2, 0], [-(t + 2), 0, 0], [0, 0, t + 1]]),  # det != 0
    ]
    return shapes[int(t) % 3]


def _g31_side(t: Fraction, periodic: bool) -> Matrix:
    if periodic:
        if int(t) % 2 == 0:
            return _mat([[0, t, 1], [0, 0, t + 1], [0, -(t + 1), 0]])
        return _mat([[0, 0, 0], [0, 1, t + 1], [0, -(t + 2), -1]])
    shapes = [
        _mat([[2 * (t + 1), 0, 0], [0, t + 1, 0], [0, 0, t + 1]]),
        _mat([[0, 0, 0], [0, 0, t + 1], [0, t + 1, 0]]),
        _mat([[0, 0, 1], [0, 0, t + 1], [0, 0, 0]]),
    ]
    return shapes[int(t) % 3]


def _g33_side(t: Fraction, periodic: bool) -> Matrix:
    if periodic:
        return _mat(
            [[t, t + 1, 1], [-(t * t + 1), -t, t], [0, 0, 0]]
        )
    shapes = [
        _mat([[t + 1, 0, 1], [0, 0, 0], [0, 0, 0]]),
        _mat([[0, t + 1, 0], [t + 1, 0, 1], [0, 0, 0]]),
        _mat([[0, t + 1, 0], [0, 0, 1], [0, 0, 0]]),
    ]
    return shapes[int(t) % 3]


def _sl2_inner_matrix(a: Fraction, b: Fraction, c: Fraction) -> Matrix:
    return _mat(
        [
            [2 * b, -2 * a, 0],
            [-c, 0, a],
            [4 * b, -4 * a + 2 * c, -2 * b],
        ]
    )


def _sl2_side(t: Fraction, periodic: bool) -> Matrix:
    if periodic:
        triples = [
            (t + 1, F(0), F(0)),
            (t + 1, t, F(0)),
            (t + 2, F(0), -(t + 1)),
        ]
    else:
        triples = [
            (F(0), t + 1, F(0)),
            (t, t + 1, F(0)),
            (F(0), F(0), t + 1),
        ]
    a, b, c = triples[int(t) % 3]
    return _sl2_inner_matrix(a, b, c)


_SIDE_SAMPLERS: dict[str, Callable[[Fraction, bool], Matrix]] = {
    "abelian2": _abelian2_side,
    "abelian3": _abelian3_side,
    "g31_heisenberg": _g31_side,
    "g33": _g33_side,
    "sl2": _sl2_side,
}


def verdict_table(
    cfg: ToleranceConfig | None = None,
    params: Sequence[Scalar] = (F(1, 2), F(2), F(3)),
    side_count: int = 3,
) -> list[VerdictRow]:
    """Machine-checked verdicts over deterministic catalog samples.

    Families published as never-periodic are sampled across the exact
    derivation space; families with a periodicity condition are sampled on
    both sides of it. Each row records whether the computed verdict agrees
    with the published claim, so genuine contradictions surface as rows with
    agrees_with_published=False rather than being filtered out.
    """
    cfg = cfg or DEFAULT_CONFIG
    rows: list[VerdictRow] = []

    def classify_row(entry: CatalogEntry, label: str, mat: Matrix) -> None:
        verdict = classify_linear_flow(entry.structure, mat, cfg)
        if entry.periodicity_condition is not None:
            expected_periodic = entry.periodicity_condition(mat)
            agrees = (verdict.tag == "PeriodicFlow") == expected_periodic
        else:
            agrees = verdict.tag == "NoPeriodicOrbits"
        rows.append(
            VerdictRow(
                entry=entry.name,
                param=entry.param,
                label=label,
                matrix=mat,
                verdict=verdict,
                published_claim=entry.published_claim,
                agrees_with_published=agrees,
            )
        )

    for name in CATALOG_NAMES:
        entry_params: Sequence[Fraction | None] = (
            [as_scalar(p) for p in params] if name in PARAMETRIC_NAMES else [None]
        )
        for a in entry_params:
            entry = get_entry(name, a)
            if entry.periodicity_condition is not None:
                for side in (True, False):
                    for i, mat in enumerate(
                        condition_side_samples(entry, side, side_count)
                    ):
                        side_label = "periodic-side" if side else "non-periodic-side"
                        classify_row(entry, f"{side_label}[{i}]", mat)
            else:
                for label, mat in space_samples(entry):
                    classify_row(entry, label, mat)
    return rows
