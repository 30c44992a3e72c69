"""Evaluation-engine oracles: independent series, reflection values,
finite differences, strategy cross-agreement, determinism."""

import math

import numpy as np
import pytest

from zetacurves import EvalConfig, eval_dirichlet_prime_partial, eval_zeta_afe, eval_zeta_jet
from zetacurves.engine import zeta_jets_on_grid
from zetacurves import _kernels
from zetacurves.errors import AccuracyUnreachable, DomainError, PoleAt1

CFG12 = EvalConfig(target_abs_error=1e-12)


def test_zeta2_against_direct_series():
    # oracle: sum n^-2 to 1e6 with integral tail bracket [1/(N+1), 1/N]
    N = 10**6
    n = np.arange(1, N + 1, dtype=np.float64)
    partial = float(np.sum(1.0 / (n * n)[::-1]))
    oracle_lo, oracle_hi = partial + 1 / (N + 1), partial + 1 / N
    assert oracle_lo <= math.pi**2 / 6 <= oracle_hi
    j = eval_zeta_jet(2.0, CFG12)
    assert abs(j.value - math.pi**2 / 6) < 1e-12
    assert oracle_lo - 1e-11 <= j.value.real <= oracle_hi + 1e-11


def test_zeta0_functional_equation_value():
    # zeta(0) = -1/2 by the functional equation; cross-check the
    # assembly at doubled truncation
    j = eval_zeta_jet(0.0, CFG12)
    assert abs(j.value - (-0.5)) < 1e-12
    a = _kernels.jets_scattered(0.0, np.array([0.0]), 64, 8)[0][0]
    b = _kernels.jets_scattered(0.0, np.array([0.0]), 128, 8)[0][0]
    assert abs(a - b) < 1e-13
    assert abs(a - (-0.5)) < 1e-13


def test_conjugation_symmetry_point():
    s0 = 0.75 + 20j
    j = eval_zeta_jet(s0, CFG12)
    jc = eval_zeta_jet(s0.conjugate(), CFG12)
    tol = 2 * max(j.abs_error_bound, jc.abs_error_bound)
    assert abs(jc.value - j.value.conjugate()) <= tol
    assert abs(jc.d1 - j.d1.conjugate()) <= tol
    assert abs(jc.d2 - j.d2.conjugate()) <= tol


def test_conjugation_symmetry_grid():
    cfg = EvalConfig(target_abs_error=1e-11)
    ts = np.array([2.0, 5.5, 11.25, 33.0, 47.125])
    for sig in (0.5, 0.75, 2.0):
        up = [eval_zeta_jet(complex(sig, t), cfg) for t in ts]
        dn = [eval_zeta_jet(complex(sig, -t), cfg) for t in ts]
        for ju, jd in zip(up, dn):
            tol = 2 * max(ju.abs_error_bound, jd.abs_error_bound)
            assert abs(jd.value - ju.value.conjugate()) <= tol


def test_d1_against_truncated_dirichlet_series():
    # truncated series over n <= 5 with the explicit n >= 6 tail majorant
    s = 6.0 + 10.0j
    j = eval_zeta_jet(s, EvalConfig(1e-10))
    model = -sum(math.log(n) * n ** (-s) for n in (2, 3, 4, 5))
    tail = sum(math.log(n) * n**-6.0 for n in range(6, 4000))
    tail += (math.log(4000) / 5 + 1 / 25) * 4000**-5.0
    assert abs(j.d1 - model) <= 1e-6 + tail


def test_dirichlet_prime_partial_basics():
    assert eval_dirichlet_prime_partial(3.3 + 7j, 1) == 0
    assert abs(eval_dirichlet_prime_partial(0.0, 2) - (-math.log(2))) < 1e-15
    with pytest.raises(DomainError):
        eval_dirichlet_prime_partial(2.0, 0)


def test_dirichlet_prime_partial_matches_engine_at_4():
    # tail: integral of ln(x) x^-4 beyond 1e4 is ~3.2e-12 < 1e-10
    val = eval_dirichlet_prime_partial(4.0, 10**4)
    j = eval_zeta_jet(4.0, CFG12)
    assert abs(val - j.d1) < 1e-10


def test_afe_preconditions_and_basic_error():
    with pytest.raises(DomainError):
        eval_zeta_afe(2.0 + 5j)
    with pytest.raises(DomainError):
        eval_zeta_afe(4.0 + 100j)
    j = eval_zeta_jet(2.0 + 100j, EvalConfig(1e-10))
    assert abs(eval_zeta_afe(2.0 + 100j) - j.value) < 1e-2


def test_afe_constant_fit_sigma_075():
    # |afe - zeta| * t^0.75 stays small over two decades; fitted C <= 10
    cs = []
    for t in np.geomspace(100.0, 10000.0, 13):
        j = eval_zeta_jet(complex(0.75, t), EvalConfig(1e-7))
        cs.append(abs(eval_zeta_afe(complex(0.75, t)) - j.value) * t**0.75)
    assert max(cs) <= 10.0
    assert max(cs) < 1.5  # frozen from the observed fit (max ~1.04)


def test_afe_doubling_error_trend_critical_line():
    # absolute error decreases at every doubling and fits slope ~ -1/2;
    # the relative form is contaminated by small |zeta| near zeros
    ts = [50.0 * 2**k for k in range(7)]
    errs = []
    for t in ts:
        j = eval_zeta_jet(complex(0.5, t), EvalConfig(1e-6))
        errs.append(abs(eval_zeta_afe(complex(0.5, t)) - j.value))
    assert all(b < a for a, b in zip(errs, errs[1:]))
    slope = np.polyfit(np.log(ts), np.log(errs), 1)[0]
    assert -0.7 < slope < -0.3


def _em_jet_reachable(s):
    for target in (1e-9, 1e-7, 1e-5):
        try:
            return eval_zeta_jet(s, EvalConfig(target, strategy="euler_maclaurin"))
        except AccuracyUnreachable:
            continue
    return eval_zeta_jet(s, EvalConfig(1e-3, strategy="euler_maclaurin"))


def test_strategy_cross_agreement_random_points():
    rng = np.random.default_rng(20260810)
    for _ in range(200):
        sig = rng.uniform(0.0, 6.0)
        t = rng.uniform(2.0, 500.0)
        em = _em_jet_reachable(complex(sig, t))
        af = eval_zeta_jet(complex(sig, t), EvalConfig(1.0, strategy="afe_partial_sum"))
        tol = em.abs_error_bound + af.abs_error_bound
        assert abs(em.value - af.value) <= tol
        assert abs(em.d1 - af.d1) <= tol
        assert abs(em.d2 - af.d2) <= tol


def test_finite_difference_consistency():
    h = 1e-5
    for s in (2.0 + 3j, 0.5 + 14j, 0.75 + 111.3j, 4.0 + 40j):
        cfg = EvalConfig(1e-10)
        j = eval_zeta_jet(s, cfg)
        jp = eval_zeta_jet(s + h, cfg)
        jm = eval_zeta_jet(s - h, cfg)
        tol = 1e-6 + j.abs_error_bound / h
        assert abs((jp.value - jm.value) / (2 * h) - j.d1) < tol
        assert abs((jp.d1 - jm.d1) / (2 * h) - j.d2) < tol


def test_determinism_bit_identical():
    a = eval_zeta_jet(0.6 + 77.7j, EvalConfig(1e-9))
    b = eval_zeta_jet(0.6 + 77.7j, EvalConfig(1e-9))
    assert a.value == b.value and a.d1 == b.d1 and a.d2 == b.d2
    assert a.abs_error_bound == b.abs_error_bound
    g1 = zeta_jets_on_grid(0.6, 5.0, 0.01, 1000, EvalConfig(1e-9))
    g2 = zeta_jets_on_grid(0.6, 5.0, 0.01, 1000, EvalConfig(1e-9))
    assert np.array_equal(g1.value, g2.value)
    assert np.array_equal(g1.d2, g2.d2)


def test_pole_and_domain_rejection():
    with pytest.raises(PoleAt1):
        eval_zeta_jet(1.0 + 1e-9j)
    with pytest.raises(PoleAt1):
        eval_zeta_jet(1.0 - 5e-9j)
    with pytest.raises(DomainError):
        eval_zeta_jet(2.0 + 2e5j)
    with pytest.raises(DomainError):
        eval_zeta_jet(complex(float("nan"), 1.0))
    with pytest.raises(AccuracyUnreachable):
        eval_zeta_jet(0.5 + 40j, EvalConfig(1e-14))


def test_grid_jets_match_scalar_path():
    g = zeta_jets_on_grid(0.5, 3.0, 0.5, 20, EvalConfig(1e-10))
    for i in (0, 7, 19):
        j = eval_zeta_jet(complex(0.5, g.ts[i]), EvalConfig(1e-10))
        assert abs(g.value[i] - j.value) <= g.bound0[i] + j.abs_error_bound
        assert abs(g.d2[i] - j.d2) <= g.bound2[i] + j.abs_error_bound


def test_bernoulli_table_against_scipy():
    from scipy.special import bernoulli

    b = bernoulli(2 * _kernels.MAX_BERNOULLI_ORDER)
    for k in range(1, _kernels.MAX_BERNOULLI_ORDER + 1):
        ref = b[2 * k] / math.factorial(2 * k)
        assert _kernels.BERN_FACT[k - 1] == pytest.approx(ref, rel=1e-13)


@pytest.mark.slow
def test_certified_bounds_against_mpmath():
    import mpmath as mp

    mp.mp.dps = 25
    rng = np.random.default_rng(7)
    for _ in range(40):
        sig = rng.uniform(-2.0, 6.0)
        t = rng.uniform(0.0, 400.0)
        j = None
        for target in (1e-10, 1e-8, 1e-6, 1e-4):
            try:
                j = eval_zeta_jet(complex(sig, t), EvalConfig(target))
                break
            except AccuracyUnreachable:
                continue
        assert j is not None
        s = mp.mpc(sig, t)
        assert abs(j.value - complex(mp.zeta(s))) <= j.abs_error_bound
        assert abs(j.d1 - complex(mp.zeta(s, derivative=1))) <= j.abs_error_bound
        assert abs(j.d2 - complex(mp.zeta(s, derivative=2))) <= j.abs_error_bound
