"""Curvature profiles, sign changes, tail inequality, real zeros of zeta'."""

import math

import numpy as np
import pytest

from zetacurves import (
    EvalConfig,
    VerticalSegment,
    curvature_profile,
    find_sign_changes,
    left_halfplane_probe,
    real_zeros_zeta_prime,
    smallest_valid_sigma,
    verify_tail_inequality,
)
from zetacurves.curvature import SQRT2_OVER_2
from zetacurves.errors import BracketFailure, DomainError

CFG = EvalConfig(target_abs_error=1e-9)


def test_segment_validation():
    with pytest.raises(DomainError):
        VerticalSegment(0.5, 3.0, 2.0, 0.1)
    with pytest.raises(DomainError):
        VerticalSegment(0.5, 1.0, 2.0, 2.0)
    seg = VerticalSegment(0.5, 0.0, 1.0, 0.25)
    assert np.allclose(seg.grid(), [0.0, 0.25, 0.5, 0.75, 1.0])


def test_critical_line_negative_kappa():
    prof = curvature_profile(VerticalSegment(0.5, 3.0, 40.0, 0.05), CFG)
    assert all(p.defined for p in prof)
    assert all(p.kappa < 0 for p in prof)


def test_figure2_window_positive_kappa():
    prof = curvature_profile(VerticalSegment(0.75, 111.2, 111.7, 0.005), CFG)
    assert any(p.defined and p.kappa > 0 for p in prof)


def test_two_term_model_sigma6():
    # zeta' ~ -log2 * 2^-s drives kappa to -2^sigma; n >= 3 corrections
    # keep it within 5% at sigma = 6, t = 5
    prof = curvature_profile(VerticalSegment(6.0, 4.0, 5.0, 1.0), CFG)
    p = prof[-1]
    assert p.t == 5.0
    assert abs(p.kappa - (-64.0)) < 0.05 * 64.0
    # explicit tail control: the relative n>=3 perturbation of zeta'
    # is below sum_{n>=3} (ln n/ln 2) (2/n)^6 ~ 0.22, consistent with 5%
    # once the same perturbation partially cancels in the quotient
    tail = sum((math.log(n) / math.log(2)) * (2 / n) ** 6 for n in range(3, 400))
    assert tail < 0.25


def test_sign_consistency_and_cap():
    prof = curvature_profile(VerticalSegment(0.75, 110.0, 120.0, 0.01), CFG)
    for p in prof:
        if p.defined:
            assert math.copysign(1, p.kappa) == math.copysign(1, p.re_logderiv)
            assert p.kappa == p.re_logderiv / p.speed
            assert abs(p.kappa) < 1e10
        else:
            assert math.isnan(p.kappa)


def test_sign_changes_figure2_window():
    changes = find_sign_changes(VerticalSegment(0.75, 110.0, 120.0, 0.01), CFG)
    assert len(changes) >= 2
    for c in changes:
        assert c.bracket_hi - c.bracket_lo <= 1e-6
        assert c.bracket_lo <= c.refined_t <= c.bracket_hi


def test_sign_changes_empty_cases():
    assert find_sign_changes(VerticalSegment(4.0, 0.0, 100.0, 0.05), CFG) == []
    assert find_sign_changes(VerticalSegment(0.5, 3.0, 40.0, 0.05), CFG) == []


def test_sign_changes_nest_under_refinement():
    coarse = find_sign_changes(VerticalSegment(0.75, 110.0, 120.0, 0.02), CFG)
    fine = find_sign_changes(VerticalSegment(0.75, 110.0, 120.0, 0.01), CFG)
    assert len(fine) >= len(coarse)
    for c in coarse:
        assert any(abs(f.refined_t - c.refined_t) <= 0.02 for f in fine)


def test_tail_inequality_k1_holds_at_4():
    rows = verify_tail_inequality(4.0, [0.0, 1.0, 5.0, 10.0, 50.0, 100.0], 1)
    assert all(h for _, _, h in rows)
    assert rows[0][1] == pytest.approx(0.59068707, abs=1e-6)


def test_tail_inequality_k2_values():
    # the k=2 comparison genuinely fails near t=0 at sigma=4: already the
    # n=3,4 terms contribute 0.746 > sqrt(2)/2; reference values from
    # 25-digit arithmetic
    rows = verify_tail_inequality(4.0, [0.0, 1.0, 5.0, 10.0, 50.0, 100.0], 2)
    lhs = {t: l for t, l, _ in rows}
    assert lhs[0.0] == pytest.approx(1.1665606, abs=1e-6)
    assert lhs[1.0] == pytest.approx(1.0503819, abs=1e-6)
    assert [h for _, _, h in rows] == [False, False, True, True, True, True]


def test_tail_inequality_large_sigma_collapses():
    rows = verify_tail_inequality(30.0, [0.0, 7.0, 100.0], 1)
    cap = (math.log(3) / math.log(2)) * (2.0 / 3.0) ** 30 * 1.2
    for _, lhs, holds in rows:
        assert holds and lhs <= cap


def test_smallest_valid_sigma_scan():
    # empirical thresholds on the 0.1 grid over the sample ordinates;
    # k=2 only holds from sigma ~ 4.7, above the nominal [3, 4] bracket
    assert smallest_valid_sigma(1) == pytest.approx(3.8)
    assert smallest_valid_sigma(2) == pytest.approx(4.7)


def test_tail_inequality_validation():
    with pytest.raises(DomainError):
        verify_tail_inequality(2.0, [0.0], 1)
    with pytest.raises(DomainError):
        verify_tail_inequality(4.0, [0.0], 3)


def test_left_halfplane_probe():
    rows = left_halfplane_probe(-1.0, [50.0])
    t, re_ld, model = rows[0]
    assert re_ld < 0 and model == -0.5 * math.log(50.0)
    rows = left_halfplane_probe(0.0, [1000.0])
    ratio = rows[0][1] / rows[0][2]
    assert 0.3 <= ratio <= 3.0
    rows = left_halfplane_probe(-2.0, [100.0])
    assert rows[0][1] < 0
    with pytest.raises(DomainError):
        left_halfplane_probe(0.5, [50.0])
    with pytest.raises(DomainError):
        left_halfplane_probe(-1.0, [5.0])


def _zeta_prime_real_reflection(x):
    """Independent oracle: zeta'(x) for real x < 0 via the reflection
    formula, with Gamma/digamma from scipy and zeta(1-x), zeta'(1-x)
    from the engine."""
    from scipy.special import digamma, gamma

    from zetacurves import eval_zeta_jet

    y = 1.0 - x
    j = eval_zeta_jet(complex(y, 0.0), EvalConfig(1e-12))
    chi = 2.0**x * math.pi ** (x - 1.0) * math.sin(math.pi * x / 2.0) * gamma(y)
    L = math.log(2 * math.pi) + (math.pi / 2.0) / math.tan(math.pi * x / 2.0) - digamma(y)
    return chi * (L * j.value.real - j.d1.real)


def test_real_zeros_intervals_and_residuals():
    zeros = real_zeros_zeta_prime(6)
    assert len(zeros) == 6
    for n, a in enumerate(zeros, start=1):
        assert 2 * n < a < 2 * n + 2
    assert zeros == sorted(zeros)
    assert zeros[0] == pytest.approx(2.7172628292, abs=1e-8)
    assert zeros[1] == pytest.approx(4.93676210859, abs=1e-8)
    # independent reflection-formula residual check (double precision)
    for n, a in enumerate(zeros[:4], start=1):
        scale = abs(_zeta_prime_real_reflection(-a - 0.05)) + 1.0
        assert abs(_zeta_prime_real_reflection(-a)) < 1e-9 * scale


def test_real_zeros_validation():
    with pytest.raises(DomainError):
        real_zeros_zeta_prime(0)
    with pytest.raises(DomainError):
        real_zeros_zeta_prime(51)


@pytest.mark.slow
def test_real_zeros_deeper():
    zeros = real_zeros_zeta_prime(12)
    for n, a in enumerate(zeros, start=1):
        assert 2 * n < a < 2 * n + 2
