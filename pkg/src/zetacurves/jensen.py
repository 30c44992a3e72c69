"""Finite-window Jensen means, zero counting, and zero frequencies.

The window mean of log|f| along a vertical segment (and of Re f'/f,
its sigma-derivative) is estimated by adaptive panel quadrature that
subdivides wherever |f| dips, so integrable log spikes near zeros are
resolved instead of poisoning the estimate.  Zero counts come from
argument tracking around rectangles; the two zero-frequency routes
(count per height vs derivative jump of the Jensen mean) cross-validate
each other.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .engine import DEFAULT_CONFIG, EvalConfig, eval_zeta_jet, zeta_jets_scattered
from .errors import ContourTooClose, DomainError, ZeroOnSegment
from .quadrature import adaptive_integral

NEAR_ZERO_FLOOR = 1e-3      # |f| below this forces panel subdivision
CONTOUR_CLEARANCE = 1e-4
ONE_SIDED_H = 1e-3          # offset used for the lateral derivatives phi'(sigma -+ 0)

_KINDS = ("zeta", "zeta_prime", "dirichlet_poly")


@dataclass(frozen=True)
class AnalyticTargetId:
    """Which function the window statistics run on.

    kind 'dirichlet_poly' carries coefficients ((n, a_n), ...) with the
    leading a_{n0} nonzero; 'zeta' and 'zeta_prime' use the engine.
    """

    kind: str
    coefficients: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"kind must be one of {_KINDS}")
        if self.kind == "dirichlet_poly":
            coeffs = tuple(sorted((int(n), complex(a)) for n, a in self.coefficients))
            if not coeffs:
                raise DomainError("dirichlet_poly needs coefficients")
            if any(n < 1 for n, _ in coeffs):
                raise DomainError("dirichlet_poly indices must be >= 1")
            if len({n for n, _ in coeffs}) != len(coeffs):
                raise DomainError("duplicate dirichlet_poly indices")
            if coeffs[0][1] == 0:
                raise DomainError("leading coefficient must be nonzero")
            object.__setattr__(self, "coefficients", coeffs)


ZETA = AnalyticTargetId("zeta")
ZETA_PRIME = AnalyticTargetId("zeta_prime")


def dirichlet_poly(coeffs):
    return AnalyticTargetId("dirichlet_poly", tuple(coeffs))


@dataclass(frozen=True)
class JensenEstimate:
    """Finite-window Jensen statistics; phi or phi_prime may be absent."""

    sigma: float
    gamma: float
    delta: float
    phi: float | None
    phi_prime: float | None
    quad_error: float


@dataclass(frozen=True)
class ZeroBoxCount:
    sigma1: float
    sigma2: float
    t1: float
    t2: float
    count: int
    winding_residual: float


# ------------------------------------------------------------- evaluation

def _poly_eval(target, s_arr):
    s_arr = np.asarray(s_arr, dtype=np.complex128)
    f = np.zeros_like(s_arr)
    fp = np.zeros_like(s_arr)
    for n, a in target.coefficients:
        w = a * np.exp(-s_arr * math.log(n)) if n > 1 else a * np.ones_like(s_arr)
        f += w
        fp -= math.log(n) * w
    return f, fp


def target_values(target, sigma, ts, cfg=DEFAULT_CONFIG):
    """(f, f') sampled at sigma + i*ts for the identified function."""
    ts = np.asarray(ts, dtype=np.float64)
    if target.kind == "dirichlet_poly":
        return _poly_eval(target, sigma + 1j * ts)
    g = zeta_jets_scattered(sigma, ts, cfg)
    if target.kind == "zeta":
        return g.value, g.d1
    return g.d1, g.d2


def _target_point(target, s, cfg):
    if target.kind == "dirichlet_poly":
        f, fp = _poly_eval(target, np.array([s]))
        return complex(f[0]), complex(fp[0])
    j = eval_zeta_jet(s, cfg)
    if target.kind == "zeta":
        return j.value, j.d1
    return j.d1, j.d2


# ---------------------------------------------------------- window means

def _segment_zero_check(target, sigma, gamma, delta, cfg):
    """Smallest sampled |f| on the segment, locally refined."""
    ts = np.linspace(gamma, delta, 4097)
    f, _ = target_values(target, sigma, ts, cfg)
    k = int(np.argmin(np.abs(f)))
    lo = ts[max(0, k - 1)]
    hi = ts[min(ts.size - 1, k + 1)]
    for _ in range(40):
        mid = np.linspace(lo, hi, 9)
        fm, _ = target_values(target, sigma, mid, cfg)
        j = int(np.argmin(np.abs(fm)))
        lo = mid[max(0, j - 1)]
        hi = mid[min(8, j + 1)]
        if hi - lo < 1e-13 * max(1.0, abs(delta)):
            break
    fm, _ = target_values(target, sigma, np.array([0.5 * (lo + hi)]), cfg)
    return float(np.abs(fm[0]))


def window_mean(eval_batch, gamma, delta, tol=1e-6, singular_floor=NEAR_ZERO_FLOOR):
    """Mean over [gamma, delta] of a batched integrand; see adaptive_integral.

    Generic core shared by jensen_mean / jensen_derivative, and usable
    directly with custom (integrand, |f|) callables.
    """
    res = adaptive_integral(eval_batch, gamma, delta, abs_tol=tol * (delta - gamma),
                            singular_floor=singular_floor)
    width = delta - gamma
    return res.integral / width, res.error / width


def _with_zero_guard(target, sigma, gamma, delta, cfg):
    for attempt in range(3):
        if _segment_zero_check(target, sigma, gamma, delta, cfg) > 1e-12:
            return delta
        if attempt < 2:
            delta = delta + 1e-3
    raise ZeroOnSegment(
        f"zero of f on the segment sigma={sigma:g}, window perturbation failed"
    )


def jensen_mean(target, sigma, gamma, delta, cfg=DEFAULT_CONFIG, tol=1e-5):
    """Window mean of log |f(sigma + it)| over t in [gamma, delta]."""
    if not delta > gamma:
        raise DomainError("need delta > gamma")
    delta = _with_zero_guard(target, sigma, gamma, delta, cfg)

    def batch(ts):
        f, _ = target_values(target, sigma, ts, cfg)
        af = np.abs(f)
        return np.log(np.maximum(af, 1e-300)), af

    phi, err = window_mean(batch, gamma, delta, tol)
    return JensenEstimate(sigma, gamma, delta, phi, None, err)


def jensen_derivative(target, sigma, gamma, delta, cfg=DEFAULT_CONFIG, tol=1e-5):
    """Window mean of Re f'/f(sigma + it): the sigma-derivative estimate."""
    if not delta > gamma:
        raise DomainError("need delta > gamma")
    delta = _with_zero_guard(target, sigma, gamma, delta, cfg)

    def batch(ts):
        f, fp = target_values(target, sigma, ts, cfg)
        af = np.abs(f)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.real(fp / f)
        return np.where(np.isfinite(q), q, 0.0), af

    phip, err = window_mean(batch, gamma, delta, tol)
    return JensenEstimate(sigma, gamma, delta, None, phip, err)


def mean_curvature_numerator(sigma, T, cfg=None, tol=2e-4):
    """(1/T) * integral over [0, T] of Re zeta''/zeta'(sigma + it).

    The vertical mean of the curvature numerator; an increasing function
    of sigma that saturates at -log 2 once zeta' is zero-free to the
    right.  Quadrature subdivides near zeros of zeta' crossing the line.
    """
    if sigma <= 0.5 + 1e-3:
        raise DomainError("needs sigma > 0.5 + 1e-3")
    if T < 100:
        raise DomainError("needs T >= 100")
    cfg = cfg or EvalConfig(target_abs_error=1e-9)
    est = jensen_derivative(ZETA_PRIME, sigma, 0.0, T, cfg, tol)
    return est.phi_prime


# ------------------------------------------------------------ zero counts

def _values_on_path(target, pts, cfg):
    pts = np.asarray(pts, dtype=np.complex128)
    if target.kind == "dirichlet_poly":
        f, _ = _poly_eval(target, pts)
        return f
    sig = pts.real
    if np.allclose(sig, sig[0], rtol=0.0, atol=1e-15):
        return zeta_jets_scattered(sig[0], pts.imag, cfg, want_derivs=False).value \
            if target.kind == "zeta" else \
            zeta_jets_scattered(sig[0], pts.imag, cfg).d1
    out = np.empty(pts.size, dtype=np.complex128)
    for i, s in enumerate(pts):
        j = eval_zeta_jet(complex(s), cfg)
        out[i] = j.value if target.kind == "zeta" else j.d1
    return out


def _edge_arg_delta(target, p0, p1, cfg, max_angle=0.7, max_rounds=24):
    """Total argument change of f along the straight edge p0 -> p1.

    Starts from a coarse parameter grid and inserts midpoints wherever
    the phase jumps by more than max_angle, so unwrapping stays sound.
    """
    length = abs(p1 - p0)
    n0 = max(17, min(4097, int(length / 0.02) + 2))
    us = np.linspace(0.0, 1.0, n0)
    vals = _values_on_path(target, p0 + us * (p1 - p0), cfg)
    for _ in range(max_rounds):
        with np.errstate(divide="ignore", invalid="ignore"):
            dphi = np.angle(vals[1:] / vals[:-1])
        bad = (np.abs(dphi) > max_angle) | ~np.isfinite(dphi)
        if not bad.any():
            break
        mids = 0.5 * (us[:-1][bad] + us[1:][bad])
        mvals = _values_on_path(target, p0 + mids * (p1 - p0), cfg)
        us = np.concatenate([us, mids])
        order = np.argsort(us)
        us = us[order]
        vals = np.concatenate([vals, mvals])[order]
    else:
        raise ContourTooClose(
            f"phase step along edge {p0} -> {p1} will not settle; "
            "a zero sits (numerically) on the contour"
        )
    if np.min(np.abs(vals)) < CONTOUR_CLEARANCE * np.median(np.abs(vals)):
        raise ContourTooClose("contour passes too close to a zero")
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(np.sum(np.angle(vals[1:] / vals[:-1])))


def _pole_clearance_nudge(target, box):
    """Shrink the box so the zeta pole at s = 1 is at least 0.02 away."""
    if target.kind == "dirichlet_poly":
        return box
    s1, s2, t1, t2 = box
    if not (s1 - 0.02 < 1.0 < s2 + 0.02 and t1 - 0.02 < 0.0 < t2 + 0.02):
        return box
    # prefer lifting the bottom edge; zeros of zeta / zeta' sit well above t = 0
    if t1 < 0.02:
        t1 = 0.02
    return (s1, s2, t1, t2)


def count_zeros_box(target, box, cfg=None):
    """Zeros of f inside an open rectangle, by argument tracking.

    box = (sigma1, sigma2, t1, t2).  The winding number along the
    boundary is accumulated with adaptive phase steps; the raw residual
    must land within 0.25 of an integer.  If the contour hugs a zero the
    box is nudged outward once by 1.37e-3 before giving up.
    """
    cfg = cfg or EvalConfig(target_abs_error=1e-8)
    s1, s2, t1, t2 = (float(x) for x in box)
    if not (s1 < s2 and t1 < t2):
        raise DomainError("need sigma1 < sigma2 and t1 < t2")
    s1, s2, t1, t2 = _pole_clearance_nudge(target, (s1, s2, t1, t2))
    nudge = 1.37e-3
    for attempt in range(2):
        corners = [complex(s1, t1), complex(s2, t1), complex(s2, t2), complex(s1, t2)]
        try:
            total = 0.0
            for a, b in zip(corners, corners[1:] + corners[:1]):
                total += _edge_arg_delta(target, a, b, cfg)
            residual = total / (2.0 * math.pi)
            count = int(round(residual))
            if abs(residual - count) >= 0.25:
                raise ContourTooClose(
                    f"winding residual {residual:.3f} is not near an integer"
                )
            if count < 0:
                raise DomainError(
                    "negative winding: a pole inside the box (shrink it away from s=1)"
                )
            return ZeroBoxCount(s1, s2, t1, t2, count, residual)
        except ContourTooClose:
            if attempt == 1:
                raise
            s1, s2, t1, t2 = s1 - nudge, s2 + nudge, t1 - nudge, t2 + nudge
            s1, s2, t1, t2 = _pole_clearance_nudge(target, (s1, s2, t1, t2))


def zero_frequency(target, sigma1, sigma2, T, method, cfg=None):
    """Zeros per unit height in the strip (sigma1, sigma2) up to T.

    method='count': argument-principle count of the box divided by T.
    method='derivative_diff': (phi'(sigma2-0) - phi'(sigma1+0)) / 2pi,
    with the lateral derivatives approximated at sigma -+ 1e-3 over the
    window [0, T].
    """
    if not sigma1 < sigma2:
        raise DomainError("need sigma1 < sigma2")
    if T < 50:
        raise DomainError("need T >= 50")
    if method == "count":
        zc = count_zeros_box(target, (sigma1, sigma2, 0.0, T), cfg)
        return zc.count / T
    if method == "derivative_diff":
        cfg = cfg or EvalConfig(target_abs_error=1e-9)
        hi = jensen_derivative(target, sigma2 - ONE_SIDED_H, 0.0, T, cfg)
        lo = jensen_derivative(target, sigma1 + ONE_SIDED_H, 0.0, T, cfg)
        return (hi.phi_prime - lo.phi_prime) / (2.0 * math.pi)
    raise DomainError("method must be 'count' or 'derivative_diff'")
