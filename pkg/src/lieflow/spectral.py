"""Characteristic polynomials and per-eigenvalue semisimplicity analysis.

Two-tier arithmetic: the characteristic polynomial is always exact (trace
recursion over rationals; float entries are converted losslessly). Roots are
extracted exactly wherever the factorization stays rational or quadratic
(rational roots with multiplicity, rational quadratic factors, even
polynomials via the mu = lambda^2 substitution) and numerically otherwise.
Geometric multiplicities come from exact ranks on the exact paths and from
SVD thresholding on the numeric path; conjugate pairs always use the rank of
the real quadratic factor q(D) = D^2 - 2*Re*D + |mu|^2 I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _linalg
from .config import DEFAULT_CONFIG, ToleranceConfig
from .dersolve import coerce_matrix
from .liealg import Matrix


class IllConditionedSpectrumError(Exception):
    """Raised when a periodicity verdict is requested from an ambiguous spectrum."""


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial; coeffs[k] multiplies lambda^k."""

    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class EigenClass:
    """One eigenvalue with multiplicities; conjugates appear as two classes.

    exact_re / exact_im_sq, when present, certify the value as
    exact_re + i*sign(Im value)*sqrt(exact_im_sq) with both parts rational.
    """

    value: complex
    alg_mult: int
    geom_mult: int
    semisimple: bool
    exact_re: Fraction | None = None
    exact_im_sq: Fraction | None = None

    @property
    def exact(self) -> bool:
        return self.exact_re is not None and self.exact_im_sq is not None


@dataclass(frozen=True)
class Spectrum:
    classes: tuple[EigenClass, ...]
    dim: int
    tolerance_used: float
    ill_conditioned: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)


def char_poly(mat) -> CharPoly:
    """Exact monic characteristic polynomial via the trace recursion."""
    m = coerce_matrix(mat)
    n = len(m)
    a = [list(row) for row in m]
    work = _linalg.mat_identity(n)
    coeffs_desc = [Fraction(1)]
    for k in range(1, n + 1):
        am = _linalg.mat_mul(a, work)
        trace = sum((am[i][i] for i in range(n)), Fraction(0))
        ck = Fraction(-trace, k)
        coeffs_desc.append(ck)
        for i in range(n):
            am[i][i] += ck
        work = am
    return CharPoly(coeffs=tuple(reversed(coeffs_desc)))


def poly_eval_matrix(p: CharPoly, mat) -> Matrix:
    """p(M) in exact arithmetic (Cayley-Hamilton gives zero for p = char_poly)."""
    m = [list(row) for row in coerce_matrix(mat)]
    n = len(m)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(p.coeffs):
        acc = _linalg.mat_mul(acc, m)
        for i in range(n):
            acc[i][i] += c
    return tuple(tuple(row) for row in acc)


# --- exact root extraction ---------------------------------------------------


def _deflate_linear(coeffs: list[Fraction], root: Fraction) -> tuple[list[Fraction], Fraction]:
    """Divide by (lambda - root); returns (quotient coeffs, remainder)."""
    n = len(coeffs) - 1
    q = [Fraction(0)] * n
    q[n - 1] = coeffs[n]
    for i in range(n - 1, 0, -1):
        q[i - 1] = coeffs[i] + root * q[i]
    rem = coeffs[0] + root * q[0]
    return q, rem


def _numeric_roots(coeffs: list[Fraction]) -> np.ndarray:
    desc = [float(c) for c in reversed(coeffs)]
    if len(desc) <= 1:
        return np.array([], dtype=complex)
    return np.atleast_1d(np.roots(desc)).astype(complex)


def _rational_candidates(roots: np.ndarray, scale: float) -> list[Fraction]:
    """Candidate rational roots from numeric discovery; verification is exact."""
    reals = [complex(r).real for r in roots if abs(complex(r).imag) <= 1e-5 * scale]
    # Cluster means sharpen multiple roots, whose individual estimates wobble.
    centers = []
    for r in sorted(reals):
        if centers and abs(r - centers[-1][0] / centers[-1][1]) <= 5e-3 * scale:
            centers[-1] = (centers[-1][0] + r, centers[-1][1] + 1)
        else:
            centers.append((r, 1))
    candidates: list[Fraction] = []
    seen = set()
    for total, count in centers:
        mean = total / count
        for cand in (
            Fraction(round(mean)),
            Fraction(mean),
            Fraction(mean).limit_denominator(64),
            Fraction(mean).limit_denominator(10**4),
            Fraction(mean).limit_denominator(10**9),
        ):
            if cand not in seen:
                seen.add(cand)
                candidates.append(cand)
    return candidates


def _extract_rational_roots(
    coeffs: list[Fraction],
) -> tuple[dict[Fraction, int], list[Fraction]]:
    """All rational roots with multiplicity, each verified in exact arithmetic."""
    found: dict[Fraction, int] = {}
    # Zero roots are just trailing structure; peel them first.
    while len(coeffs) > 1 and coeffs[0] == 0:
        found[Fraction(0)] = found.get(Fraction(0), 0) + 1
        coeffs = coeffs[1:]
    while len(coeffs) > 1:
        if len(coeffs) == 2:
            root = -coeffs[0] / coeffs[1]
            found[root] = found.get(root, 0) + 1
            coeffs = coeffs[1:]
            break
        roots = _numeric_roots(coeffs)
        scale = max(1.0, max((abs(r) for r in roots), default=1.0))
        hit = None
        for cand in _rational_candidates(roots, scale):
            q, rem = _deflate_linear(coeffs, cand)
            if rem == 0:
                hit = cand
                coeffs = q
                break
        if hit is None:
            break
        found[hit] = found.get(hit, 0) + 1
        while len(coeffs) > 1:
            q, rem = _deflate_linear(coeffs, hit)
            if rem != 0:
                break
            coeffs = q
            found[hit] += 1
    return found, coeffs


def _is_rational_square(x: Fraction) -> Fraction | None:
    """sqrt(x) as a Fraction when x is a perfect rational square, else None."""
    if x < 0:
        return None
    ns = math.isqrt(x.numerator)
    ds = math.isqrt(x.denominator)
    if ns * ns == x.numerator and ds * ds == x.denominator:
        return Fraction(ns, ds)
    return None


# --- class descriptors -------------------------------------------------------


@dataclass
class _PendingClass:
    value: complex
    alg: int
    exact_re: Fraction | None = None
    exact_im_sq: Fraction | None = None
    quad: tuple[Fraction, Fraction] | None = None  # monic lambda^2 + b*lambda + c
    rational: Fraction | None = None


def _quadratic_pending(b: Fraction, c: Fraction, mult: int) -> list[_PendingClass]:
    disc = b * b - 4 * c
    re = -b / 2
    if disc < 0:
        im_sq = -disc / 4
        im = math.sqrt(float(im_sq))
        return [
            _PendingClass(complex(float(re), s * im), mult, re, im_sq, (b, c))
            for s in (+1, -1)
        ]
    root = _is_rational_square(disc)
    if root is not None:
        # Rational roots; reachable only if upstream extraction was skipped.
        if root == 0:
            return [_PendingClass(complex(float(re)), 2 * mult, re, Fraction(0),
                                  None, re)]
        return [
            _PendingClass(complex(float(re + s * root / 2)), mult,
                          re + s * root / 2, Fraction(0), None, re + s * root / 2)
            for s in (+1, -1)
        ]
    sq = math.sqrt(float(disc))
    return [
        _PendingClass(complex(float(re) + s * sq / 2), mult, None, Fraction(0), (b, c))
        for s in (+1, -1)
    ]


def _even_poly_pending(
    coeffs: list[Fraction],
) -> tuple[list[_PendingClass], list[Fraction]]:
    """Exact classes from the mu = lambda^2 substitution of an even polynomial.

    Returns (pending classes for rational mu roots, residual lambda-polynomial
    for everything the substitution could not resolve exactly).
    """
    mu_coeffs = list(coeffs[0::2])
    mu_roots, mu_rest = _extract_rational_roots(mu_coeffs)
    pending: list[_PendingClass] = []
    for mu, mult in sorted(mu_roots.items()):
        if mu < 0:
            im = math.sqrt(float(-mu))
            for s in (+1, -1):
                pending.append(
                    _PendingClass(complex(0.0, s * im), mult, Fraction(0), -mu,
                                  (Fraction(0), -mu)))
        else:
            # mu > 0 with rational sqrt would have been a rational lambda root.
            sq = math.sqrt(float(mu))
            for s in (+1, -1):
                pending.append(
                    _PendingClass(complex(s * sq), mult, None, Fraction(0),
                                  (Fraction(0), -mu)))
    residual = [Fraction(0)] * (2 * len(mu_rest) - 1)
    for i, c in enumerate(mu_rest):
        residual[2 * i] = c
    return pending, residual


# --- numeric classing --------------------------------------------------------


def _numeric_pending(
    coeffs: list[Fraction], cfg: ToleranceConfig
) -> tuple[list[_PendingClass], bool, list[str]]:
    roots = _numeric_roots(coeffs)
    if roots.size == 0:
        return [], False, []
    scale = max(1.0, float(np.max(np.abs(roots))))
    guard = max(cfg.rank_tol, 1e-6) * scale
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda z: (z.real, z.imag)):
        placed = False
        for cl in clusters:
            center = sum(cl) / len(cl)
            if abs(r - center) <= guard:
                cl.append(r)
                placed = True
                break
        if not placed:
            clusters.append([r])
    ill = False
    notes: list[str] = []
    pending = []
    for cl in clusters:
        center = sum(cl) / len(cl)
        if len(cl) > 1:
            ill = True
            notes.append(
                f"numeric roots near {center:.6g} are closer than the cluster "
                f"guard {guard:.1e}; multiplicity {len(cl)} assigned pessimistically"
            )
        if abs(center.imag) <= guard:
            pending.append(_PendingClass(complex(center.real), len(cl)))
        else:
            pending.append(_PendingClass(center, len(cl)))
    # Force conjugate symmetry: real coefficients guarantee it mathematically.
    sym: list[_PendingClass] = []
    used = [False] * len(pending)
    for idx, p in enumerate(pending):
        if used[idx]:
            continue
        if p.value.imag == 0:
            sym.append(p)
            used[idx] = True
            continue
        mate = None
        for jdx in range(idx + 1, len(pending)):
            if used[jdx]:
                continue
            if abs(pending[jdx].value - p.value.conjugate()) <= guard:
                mate = jdx
                break
        if mate is None:
            # Unpaired complex root: treat as ambiguous rather than invent one.
            ill = True
            notes.append(f"complex root {p.value:.6g} has no conjugate mate")
            sym.append(p)
            used[idx] = True
            continue
        alg = max(p.alg, pending[mate].alg)
        if p.alg != pending[mate].alg:
            ill = True
            notes.append("conjugate clusters with unequal sizes; using the max")
        val = complex(p.value.real, abs(p.value.imag))
        sym.append(_PendingClass(val, alg))
        sym.append(_PendingClass(val.conjugate(), alg))
        used[idx] = used[mate] = True
    return sym, ill, notes


# --- geometric multiplicity --------------------------------------------------


def _exact_shifted_rank(mq: Matrix, shift: Fraction) -> int:
    n = len(mq)
    rows = [
        [mq[i][j] - (shift if i == j else Fraction(0)) for j in range(n)]
        for i in range(n)
    ]
    return _linalg.rank(rows)


def _exact_quadratic_rank(mq: Matrix, b: Fraction, c: Fraction) -> int:
    n = len(mq)
    m2 = _linalg.mat_mul(mq, mq)
    rows = [
        [
            m2[i][j] + b * mq[i][j] + (c if i == j else Fraction(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return _linalg.rank(rows)


def _numeric_rank(a: np.ndarray, rel_tol: float) -> int:
    sv = np.linalg.svd(a, compute_uv=False)
    if sv.size == 0:
        return 0
    top = sv[0]
    if top == 0:
        return 0
    return int(np.sum(sv > rel_tol * top))


def _geom_mult(
    p: _PendingClass, mq: Matrix, mf: np.ndarray, cfg: ToleranceConfig
) -> int:
    n = len(mq)
    if p.rational is not None:
        return n - _exact_shifted_rank(mq, p.rational)
    if p.quad is not None:
        b, c = p.quad
        deficiency = n - _exact_quadratic_rank(mq, b, c)
        if deficiency % 2 != 0:
            raise AssertionError("odd kernel for a conjugate/surd pair; solver bug")
        return deficiency // 2
    if p.value.imag == 0:
        shifted = mf - p.value.real * np.eye(n)
        return n - _numeric_rank(shifted, cfg.rank_tol)
    al, be = p.value.real, p.value.imag
    quad = mf @ mf - 2 * al * mf + (al * al + be * be) * np.eye(n)
    deficiency = n - _numeric_rank(quad, cfg.rank_tol)
    return max(1, deficiency // 2)


# --- public spectrum ---------------------------------------------------------


def spectrum(mat, tol: float | None = None, cfg: ToleranceConfig | None = None) -> Spectrum:
    """All eigenvalues with algebraic/geometric multiplicity and flags.

    Exact classes carry their rational certificates; numeric classes report
    ill-conditioning whenever root clusters could not be told apart at the
    configured tolerance instead of silently committing to a multiplicity.
    """
    cfg = cfg or DEFAULT_CONFIG
    if tol is not None:
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        cfg = cfg.override(rank_tol=tol)
    mq = coerce_matrix(mat)
    n = len(mq)
    mf = np.array([[float(v) for v in row] for row in mq], dtype=float)

    p = char_poly(mq)
    coeffs = list(p.coeffs)
    rational_roots, rest = _extract_rational_roots(coeffs)

    pending: list[_PendingClass] = [
        _PendingClass(complex(float(r)), mult, r, Fraction(0), None, r)
        for r, mult in sorted(rational_roots.items())
    ]
    ill = False
    notes: list[str] = []
    deg = len(rest) - 1
    if deg == 2:
        b, c = rest[1] / rest[2], rest[0] / rest[2]
        pending.extend(_quadratic_pending(b, c, 1))
    elif deg > 2:
        if all(c == 0 for c in rest[1::2]):
            even_pending, residual = _even_poly_pending(rest)
            pending.extend(even_pending)
            if len(residual) - 1 == 2:
                b, c = residual[1] / residual[2], residual[0] / residual[2]
                pending.extend(_quadratic_pending(b, c, 1))
            elif len(residual) - 1 > 2:
                num, num_ill, num_notes = _numeric_pending(residual, cfg)
                pending.extend(num)
                ill |= num_ill
                notes.extend(num_notes)
        else:
            num, num_ill, num_notes = _numeric_pending(rest, cfg)
            pending.extend(num)
            ill |= num_ill
            notes.extend(num_notes)
    elif deg == 1:
        raise AssertionError("a linear factor always has a rational root")

    # Exact values are certified distinct; ambiguity can only involve numeric
    # classes, including a numeric class shadowing an exact one.
    is_numeric = [q.rational is None and q.quad is None for q in pending]
    numeric = [q for q, flag in zip(pending, is_numeric) if flag]
    exactish = [q for q, flag in zip(pending, is_numeric) if not flag]
    for q in numeric:
        for e in exactish:
            if abs(q.value - e.value) <= max(cfg.rank_tol, 1e-6) * max(
                1.0, abs(e.value)
            ):
                ill = True
                notes.append(
                    f"numeric root {q.value:.6g} is indistinguishable from the "
                    f"exact eigenvalue {e.value:.6g}"
                )

    classes = []
    for q in pending:
        geom = _geom_mult(q, mq, mf, cfg)
        geom = min(max(geom, 1), q.alg)
        classes.append(
            EigenClass(
                value=q.value,
                alg_mult=q.alg,
                geom_mult=geom,
                semisimple=geom == q.alg,
                exact_re=q.exact_re,
                exact_im_sq=q.exact_im_sq,
            )
        )
    classes.sort(key=lambda c: (c.value.real, c.value.imag))
    total = sum(c.alg_mult for c in classes)
    if total != n:
        raise AssertionError(f"multiplicities sum to {total}, expected {n}")
    return Spectrum(
        classes=tuple(classes),
        dim=n,
        tolerance_used=cfg.rank_tol,
        ill_conditioned=ill,
        notes=tuple(notes),
    )
