"""Flow classification, rational ratio profiles, minimal periods."""

import math
import random
from fractions import Fraction as F

import pytest

from lieflow import (
    IllConditionedSpectrumError,
    IrrationalRatioError,
    NotADerivationError,
    PeriodTooLargeError,
    RationalProfile,
    StructureConstants,
    classify_flow,
    classify_invariant_flow,
    classify_linear_flow,
    inner_derivation,
    minimal_period,
    minimal_period_over_pi,
    rational_ratio_profile,
    spectrum,
    verdict_to_dict,
)
from lieflow.catalog import get_entry
from lieflow.config import DEFAULT_CONFIG
from lieflow.spectral import EigenClass, Spectrum


def abelian(n):
    return StructureConstants(n)


def rot_block(beta):
    return [[0, -beta], [beta, 0]]


def blkdiag(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    pos = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[pos + i][pos + j] = b[i][j]
        pos += k
    return tuple(tuple(row) for row in out)


# --- classify_flow examples ----------------------------------------------------


def test_sl2_unit_rotation_is_periodic_pi():
    sc = get_entry("sl2").structure
    v = classify_linear_flow(sc, inner_derivation(sc, (1, 0, 0)))
    assert v.tag == "PeriodicFlow"
    assert abs(v.period - math.pi) < 1e-15
    assert v.period_over_pi == 1


def test_aff2_diagonal_has_real_nonzero_eigenvalue():
    sc = get_entry("aff2").structure
    v = classify_linear_flow(sc, ((0, 0), (0, 1)))
    assert v.tag == "NoPeriodicOrbits"
    assert v.reason == "RealNonzeroEigenvalue"


def test_zero_derivation_is_identity_flow():
    sc = get_entry("aff2").structure
    v = classify_linear_flow(sc, ((0, 0), (0, 0)))
    assert v.tag == "IdentityFlow"


def test_heisenberg_rotation_block_is_periodic_2pi():
    # y2 = z3 = 0, y3 = 1, z2 = -1: block discriminant -4, spectrum {0, +-i}.
    sc = get_entry("g31_heisenberg").structure
    mat = ((0, 0, 0), (0, 0, 1), (0, -1, 0))
    v = classify_linear_flow(sc, mat)
    assert v.tag == "PeriodicFlow"
    assert abs(v.period - 2 * math.pi) < 1e-15
    assert v.period_over_pi == 2


def test_g34_family_samples_are_never_periodic():
    for a in (F(1, 2), F(2), F(3)):
        sc = get_entry("g34_a", a).structure
        v = classify_linear_flow(sc, ((1, 0, 0), (0, 1, 0), (0, 0, 0)))
        assert v.tag == "NoPeriodicOrbits"
        assert v.reason == "RealNonzeroEigenvalue"


def test_g32_nilpotent_sample_is_non_semisimple():
    sc = get_entry("g32").structure
    v = classify_linear_flow(sc, ((0, 1, 0), (0, 0, 1), (0, 0, 0)))
    assert v.tag == "NoPeriodicOrbits"
    assert v.reason == "NonSemisimpleEigenvalue"


def test_complex_pair_off_axis_reports_nonzero_real_part():
    v = classify_linear_flow(abelian(2), ((1, 1), (-1, 1)))
    assert v.tag == "NoPeriodicOrbits"
    assert v.reason == "NonzeroRealPart"


def test_reason_order_prefers_nonzero_real_part():
    # Both an off-axis pair and a real nonzero eigenvalue: the fixed order
    # reports NonzeroRealPart.
    mat = blkdiag([[5]], [[1, -1], [1, 1]])
    v = classify_flow(spectrum(mat))
    assert v.reason == "NonzeroRealPart"


def test_real_nonzero_wins_over_pure_imaginary_pair():
    mat = blkdiag([[3]], rot_block(2))
    v = classify_flow(spectrum(mat))
    assert v.reason == "RealNonzeroEigenvalue"


def test_zero_eigenvalue_must_be_semisimple():
    # Pure rotation plus a nilpotent 2x2 cell: eigenvalue 0 with a chain.
    mat = blkdiag(rot_block(1), [[0, 1], [0, 0]], [[0]])
    v = classify_flow(spectrum(mat))
    assert v.tag == "NoPeriodicOrbits"
    assert v.reason == "NonSemisimpleEigenvalue"


def test_two_rational_rotations_make_2pi():
    v = classify_flow(spectrum(blkdiag(rot_block(2), rot_block(3))))
    assert v.tag == "PeriodicFlow"
    assert abs(v.period - 2 * math.pi) < 1e-15
    assert v.period_over_pi == 2
    assert v.profile.ratios == ((1, 1), (3, 2))


def test_irrational_ratio_verdict_from_numeric_spectrum():
    classes = (
        EigenClass(complex(0, 1), 1, 1, True),
        EigenClass(complex(0, -1), 1, 1, True),
        EigenClass(complex(0, math.sqrt(2)), 1, 1, True),
        EigenClass(complex(0, -math.sqrt(2)), 1, 1, True),
    )
    spec = Spectrum(classes=classes, dim=4, tolerance_used=1e-9)
    v = classify_flow(spec)
    assert v.tag == "NoPeriodicOrbits"
    assert v.reason == "IrrationalRatio"


def test_proven_irrational_ratio_from_exact_surds():
    # Exact frequencies 1 and sqrt(2): the ratio square 2 is not a rational
    # square, so irrationality is decided without tolerances.
    with pytest.raises(IrrationalRatioError):
        rational_ratio_profile([1.0, math.sqrt(2)], exact_sq=[F(1), F(2)])


def test_ill_conditioned_spectrum_refuses_classification():
    import numpy as np

    rng = np.random.default_rng(9)
    m = np.zeros((6, 6))
    for i, (al, be) in enumerate([(0.3, 1.1), (0.3 + 1e-13, 1.1), (1.5, 3.7)]):
        m[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = [[al, -be], [be, al]]
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)))
    spec = spectrum(q @ m @ q.T)
    with pytest.raises(IllConditionedSpectrumError):
        classify_flow(spec)


def test_not_a_derivation_raises():
    sc = get_entry("sl2").structure
    bad = ((1, 0, 0), (0, 0, 0), (0, 0, 0))
    with pytest.raises(NotADerivationError) as err:
        classify_linear_flow(sc, bad)
    assert err.value.residual != 0


# --- rational ratio profile ------------------------------------------------------


def test_profile_single_frequency():
    p = rational_ratio_profile([2.0], exact_sq=[F(4)])
    assert p.ratios == ((1, 1),)
    assert p.residuals == (0.0,)
    assert p.base_alpha_exact == 2


def test_profile_two_frequencies_exact():
    p = rational_ratio_profile([2.0, 3.0], exact_sq=[F(4), F(9)])
    assert p.ratios == ((1, 1), (3, 2))
    assert p.base_alpha_exact == 2


def test_profile_sqrt2_is_flagged_irrational():
    # Best denominator-<=64 approximant to sqrt(2) is 41/29, off by ~4e-4.
    with pytest.raises(IrrationalRatioError) as err:
        rational_ratio_profile([1.0, math.sqrt(2)])
    assert abs(err.value.ratio - math.sqrt(2)) < 1e-12
    best = F(math.sqrt(2)).limit_denominator(64)
    assert abs(math.sqrt(2) - best) > 1e-5


def test_profile_accepts_floats_within_tolerance():
    p = rational_ratio_profile([1.0, 1.5 + 1e-12])
    assert p.ratios == ((1, 1), (3, 2))
    assert p.residuals[1] <= 1e-9


def test_profile_rejects_nonpositive():
    with pytest.raises(ValueError):
        rational_ratio_profile([0.0, 1.0])


def test_profile_surd_base_has_no_exact_base():
    p = rational_ratio_profile([math.sqrt(3)], exact_sq=[F(3)])
    assert p.base_alpha_exact is None
    assert p.ratios == ((1, 1),)


# --- minimal period ---------------------------------------------------------------


def test_minimal_period_examples():
    p2 = rational_ratio_profile([2.0], exact_sq=[F(4)])
    assert abs(minimal_period(p2) - math.pi) < 1e-15
    p23 = rational_ratio_profile([2.0, 3.0], exact_sq=[F(4), F(9)])
    assert abs(minimal_period(p23) - 2 * math.pi) < 1e-15
    p1 = rational_ratio_profile([1.0], exact_sq=[F(1)])
    assert abs(minimal_period(p1) - 2 * math.pi) < 1e-15


def test_minimal_period_order_independent():
    rng = random.Random(31)
    alphas = [1.0, 2.0, 3.0, 5.0]
    sqs = [F(1), F(4), F(9), F(25)]
    reference = minimal_period(rational_ratio_profile(alphas, exact_sq=sqs))
    for _ in range(5):
        idx = list(range(4))
        rng.shuffle(idx)
        shuffled = minimal_period(
            rational_ratio_profile([alphas[i] for i in idx],
                                   exact_sq=[sqs[i] for i in idx])
        )
        assert shuffled == reference


def test_minimal_period_over_pi_symbolic():
    p = rational_ratio_profile([2.0, 3.0], exact_sq=[F(4), F(9)])
    assert minimal_period_over_pi(p) == 2


def test_period_too_large_guard():
    profile = RationalProfile(
        base_alpha=1.0,
        ratios=((1, 1), (100001, 100000)),
        residuals=(0.0, 0.0),
        base_alpha_exact=F(1),
    )
    cfg = DEFAULT_CONFIG.override(lcm_bound=10**4)
    with pytest.raises(PeriodTooLargeError):
        minimal_period(profile, cfg)


# --- invariants -------------------------------------------------------------------


def test_scaling_covariance():
    rng = random.Random(37)
    sc = get_entry("sl2").structure
    for _ in range(6):
        x = tuple(F(rng.randint(-3, 3)) for _ in range(3))
        d = inner_derivation(sc, x)
        base = classify_flow(spectrum(d))
        for s in (F(2), F(1, 3), F(5, 2)):
            scaled = tuple(tuple(s * v for v in row) for row in d.entries)
            v = classify_flow(spectrum(scaled))
            assert v.tag == base.tag
            if base.tag == "PeriodicFlow":
                assert abs(v.period - base.period / float(s)) < 1e-9 * base.period


def test_real_spectra_are_never_periodic():
    # Any derivation with an exactly real, not identically zero spectrum.
    rng = random.Random(41)
    for _ in range(10):
        diag = [F(rng.randint(-4, 4)) for _ in range(3)]
        if all(v == 0 for v in diag):
            diag[0] = F(1)
        mat = tuple(
            tuple(diag[i] if i == j else F(0) for j in range(3)) for i in range(3)
        )
        v = classify_linear_flow(abelian(3), mat)
        assert v.tag in ("NoPeriodicOrbits", "IdentityFlow")
        assert v.tag == "NoPeriodicOrbits" or all(d == 0 for d in diag)


def test_sl2_solvable_part_never_periodic():
    # Inner derivations of aH + cZ only (no rotation component) have real
    # spectra {0, +-2|b|}-style and never classify periodic.
    rng = random.Random(43)
    sc = get_entry("sl2").structure
    for _ in range(20):
        b, c = F(rng.randint(-5, 5)), F(rng.randint(-5, 5))
        if b == 0 and c == 0:
            b = F(1)
        v = classify_linear_flow(sc, inner_derivation(sc, (0, b, c)))
        assert v.tag != "PeriodicFlow"


# --- invariant flows ---------------------------------------------------------------


def test_invariant_flow_on_abelian_is_inconclusive():
    sc = abelian(3)
    v = classify_invariant_flow(sc, (1, 2, 3))
    assert v.tag == "SpectralPeriodicInconclusive"
    assert v.note


def test_invariant_flow_for_central_heisenberg_element():
    sc = get_entry("g31_heisenberg").structure
    v = classify_invariant_flow(sc, (1, 0, 0))
    assert v.tag == "SpectralPeriodicInconclusive"


def test_invariant_flow_sl2_y_is_periodic_with_caveat():
    sc = get_entry("sl2").structure
    v = classify_invariant_flow(sc, (1, 0, 0))
    assert v.tag == "PeriodicFlow"
    assert abs(v.period - math.pi) < 1e-15
    assert v.caveats


def test_invariant_flow_g35_inner_fields_not_periodic():
    for a in (F(1, 2), F(2), F(3)):
        sc = get_entry("g35_a", a).structure
        for x in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)):
            v = classify_invariant_flow(sc, x)
            assert v.tag in ("NoPeriodicOrbits", "SpectralPeriodicInconclusive")


# --- serialization ------------------------------------------------------------------


def test_verdict_dict_schema_is_stable():
    sc = get_entry("sl2").structure
    v = classify_linear_flow(sc, inner_derivation(sc, (1, 0, 0)))
    doc = verdict_to_dict(v)
    assert set(doc) == {
        "tag", "period", "period_over_pi", "reason", "profile", "caveats", "note"
    }
    assert doc["tag"] == "PeriodicFlow"
    assert doc["period_over_pi"] == "1"
    assert doc["profile"]["ratios"] == [[1, 1]]


def test_verdict_dict_no_periodic():
    sc = get_entry("aff2").structure
    doc = verdict_to_dict(classify_linear_flow(sc, ((0, 0), (0, 1))))
    assert doc["tag"] == "NoPeriodicOrbits"
    assert doc["reason"] == "RealNonzeroEigenvalue"
    assert doc["period"] is None
