"""Signed curvature of the curves t -> zeta(sigma + it) and its sign structure.

Wherever zeta'(sigma+it) != 0 the curve's signed curvature is
Re(zeta''/zeta')(sigma+it) / |zeta'(sigma+it)|, so its sign is the sign
of the numerator; profiles carry both quantities.  Near-zeros of zeta'
are flagged undefined instead of being reported with huge magnitudes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .engine import (
    DEFAULT_CONFIG,
    EvalConfig,
    eval_zeta_jet,
    zeta_jets_on_grid,
    zeta_jets_scattered,
)
from .errors import AccuracyUnreachable, BracketFailure, DomainError

SPEED_FLOOR = 1e-8          # |zeta'| at or below this marks kappa undefined
KAPPA_CAP = 1e10            # defined samples never exceed this magnitude
BRACKET_WIDTH = 1e-6
SQRT2_OVER_2 = math.sqrt(2.0) / 2.0


@dataclass(frozen=True)
class VerticalSegment:
    """Vertical segment sigma + i[t_min, t_max] sampled with a fixed step."""

    sigma: float
    t_min: float
    t_max: float
    step: float

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise DomainError("need t_min < t_max")
        if not 0.0 < self.step <= (self.t_max - self.t_min):
            raise DomainError("need 0 < step <= t_max - t_min")

    def grid(self):
        num = int(math.floor((self.t_max - self.t_min) / self.step + 1e-9)) + 1
        return self.t_min + self.step * np.arange(num)


@dataclass(frozen=True)
class CurvatureSample:
    t: float
    kappa: float            # nan when not defined
    re_logderiv: float      # Re zeta''/zeta'
    speed: float            # |zeta'|
    defined: bool


@dataclass(frozen=True)
class SignChange:
    bracket_lo: float
    bracket_hi: float
    refined_t: float


def curvature_profile(seg, cfg=DEFAULT_CONFIG):
    """One CurvatureSample per grid point of the segment.

    Samples whose speed is at most SPEED_FLOOR (or whose evaluation
    produced non-finite values) are returned with defined=False and
    kappa=nan; the profile itself is always complete.
    """
    ts = seg.grid()
    g = zeta_jets_on_grid(seg.sigma, ts[0], seg.step, ts.size, cfg)
    speed = np.abs(g.d1)
    with np.errstate(divide="ignore", invalid="ignore"):
        re_ld = np.real(g.d2 / g.d1)
        kappa = re_ld / speed
    ok = np.isfinite(re_ld) & (speed > SPEED_FLOOR)
    out = []
    for i, t in enumerate(ts):
        if ok[i]:
            out.append(CurvatureSample(float(t), float(kappa[i]), float(re_ld[i]),
                                       float(speed[i]), True))
        else:
            rl = float(re_ld[i]) if np.isfinite(re_ld[i]) else math.nan
            out.append(CurvatureSample(float(t), math.nan, rl, float(speed[i]), False))
    return out


def _re_logderiv_point(sigma, t, cfg):
    j = eval_zeta_jet(complex(sigma, t), cfg)
    if abs(j.d1) <= SPEED_FLOOR:
        return math.nan
    return (j.d2 / j.d1).real


def find_sign_changes(seg, cfg=DEFAULT_CONFIG):
    """Sign changes of Re zeta''/zeta' along the segment.

    Grid-then-bisect: brackets come from adjacent defined grid samples
    of opposite sign and are refined by bisection to width <=
    BRACKET_WIDTH.  Completeness is relative to the grid; a sign
    excursion narrower than seg.step can be missed.
    """
    prof = curvature_profile(seg, cfg)
    changes = []
    for left, right in zip(prof[:-1], prof[1:]):
        if not (left.defined and right.defined):
            continue
        if left.re_logderiv == 0.0 or left.re_logderiv * right.re_logderiv >= 0.0:
            continue
        lo, hi = left.t, right.t
        flo = left.re_logderiv
        while hi - lo > BRACKET_WIDTH:
            mid = 0.5 * (lo + hi)
            fmid = _re_logderiv_point(seg.sigma, mid, cfg)
            if math.isnan(fmid):
                break
            if flo * fmid < 0.0:
                hi = mid
            else:
                lo, flo = mid, fmid
        # acceptance re-check: endpoints must straddle zero
        fl = _re_logderiv_point(seg.sigma, lo, cfg)
        fh = _re_logderiv_point(seg.sigma, hi, cfg)
        if math.isnan(fl) or math.isnan(fh) or fl * fh >= 0.0:
            continue
        changes.append(SignChange(lo, hi, 0.5 * (lo + hi)))
    return changes


def verify_tail_inequality(sigma, t_list, k):
    """Check |1 - (-1)^k zeta^(k)(s) 2^s / (log 2)^k| <= sqrt(2)/2 pointwise.

    The left-hand side is certified to better than 1e-8 absolute.
    Returns [(t, lhs, holds)], one entry per requested ordinate;
    `holds` reports the comparison, it asserts nothing.
    """
    if k not in (1, 2):
        raise DomainError("k must be 1 or 2")
    if sigma < 3.0:
        raise DomainError("tail inequality is only examined for sigma >= 3")
    ln2k = math.log(2.0) ** k
    ts = np.array([float(t) for t in t_list])
    # the left-hand side only uses the derivative channel, whose certified
    # bound shrinks with 2^-sigma; check it explicitly after evaluation
    g = zeta_jets_scattered(sigma, ts, EvalConfig(target_abs_error=1e-12))
    dk = g.d1 if k == 1 else g.d2
    bk = g.bound1 if k == 1 else g.bound2
    out = []
    for i, t in enumerate(ts):
        lhs_err = 2.0**sigma * float(bk[i]) / ln2k
        if lhs_err >= 1e-8:
            raise AccuracyUnreachable(
                f"cannot certify the inequality value at t={t:g} "
                f"(lhs error {lhs_err:.3g})"
            )
        two_s = 2.0**sigma * complex(math.cos(t * math.log(2.0)),
                                     math.sin(t * math.log(2.0)))
        lhs = abs(1.0 - ((-1.0) ** k) * dk[i] * two_s / ln2k)
        out.append((float(t), float(lhs), bool(lhs <= SQRT2_OVER_2)))
    return out


def smallest_valid_sigma(k, t_sample=(0.0, 1.0, 5.0, 10.0, 50.0, 100.0),
                         sigma_lo=3.0, sigma_hi=6.0, sigma_step=0.1):
    """Empirical smallest sigma on a 0.1 grid where the tail inequality
    holds at every sampled ordinate; None if none does in the range."""
    n = int(round((sigma_hi - sigma_lo) / sigma_step))
    for i in range(n + 1):
        sig = sigma_lo + i * sigma_step
        rows = verify_tail_inequality(sig, t_sample, k)
        if all(h for _, _, h in rows):
            return sig
    return None


def left_halfplane_probe(sigma, t_list):
    """Re zeta''/zeta' against the -log(t)/2 leading-order model, sigma <= 0.

    Entries that cannot be certified at any tolerance up to 1e-2 are
    reported as nan (per-entry failure, probe still returned).
    """
    if sigma > 0.0:
        raise DomainError("probe is for sigma <= 0")
    out = []
    for t in t_list:
        t = float(t)
        if t < 10.0:
            raise DomainError("probe ordinates must be >= 10")
        val = math.nan
        for target in (1e-9, 1e-7, 1e-5, 1e-3, 1e-2):
            try:
                j = eval_zeta_jet(complex(sigma, t), EvalConfig(target_abs_error=target))
            except AccuracyUnreachable:
                continue
            if abs(j.d1) > SPEED_FLOOR:
                val = (j.d2 / j.d1).real
            break
        out.append((t, val, -0.5 * math.log(t)))
    return out


def real_zeros_zeta_prime(n_max):
    """Real zeros -a_n of zeta', one per interval (-2n-2, -2n), n = 1..n_max.

    Located by sign-bracketed bisection/secant on the real axis in
    adaptive-precision arithmetic, since |zeta'| near -2n grows like
    Bernoulli numbers and double precision cannot express the residual
    for larger n.  Each returned a_n satisfies |zeta'(-a_n)| < 1e-10.
    """
    if not 1 <= n_max <= 50:
        raise DomainError("n_max must be in 1..50")
    import mpmath as mp

    res = []
    for n in range(1, n_max + 1):
        lo = mp.mpf(-2 * n - 2) + mp.mpf("1e-6")
        hi = mp.mpf(-2 * n) - mp.mpf("1e-6")
        with mp.workdps(30):
            scale = abs(mp.zeta((lo + hi) / 2, derivative=1))
        dps = 30 + max(0, int(mp.ceil(mp.log10(scale + 1)))) + 10
        with mp.workdps(dps):
            f = lambda x: mp.zeta(x, derivative=1)
            flo, fhi = f(lo), f(hi)
            if mp.sign(flo) == mp.sign(fhi):
                raise BracketFailure(
                    f"no sign change of zeta' in (-{2*n+2}, -{2*n}); "
                    "this contradicts the known real-zero layout"
                )
            a, b, fa = lo, hi, flo
            for _ in range(40):
                m = (a + b) / 2
                fm = f(m)
                if mp.sign(fm) == mp.sign(fa):
                    a, fa = m, fm
                else:
                    b = m
            root = mp.findroot(f, (a + b) / 2)
            resid = abs(f(root))
        a_n = -float(root)
        if not (2 * n < a_n < 2 * n + 2):
            raise BracketFailure(f"refined zero left its interval: a_{n} = {a_n}")
        if resid >= mp.mpf("1e-10"):
            raise BracketFailure(f"residual too large at -a_{n}: {float(resid):g}")
        res.append(a_n)
    return res
