"""Brute-force shift scans: where does zeta(s + i*tau) approximate a target?

The scanner measures sup errors on the target's sample grid (grid-max
semantics: it is not a certified continuum maximum), walks a uniform
tau grid, and refines local minima by golden-section search.  An empty
candidate list is a meaningful outcome; at desk scale the shift sets
promised by universality for small epsilon are far below detection.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .curvature import VerticalSegment
from .engine import DEFAULT_CONFIG, zeta_jets_on_grid, zeta_jets_scattered, sup_d1_estimate
from .errors import DomainError
from .frenet import PlaneCurve, reconstruct_plane

log = logging.getLogger(__name__)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SegmentTarget:
    """A sampled complex target g on a vertical segment."""

    seg: VerticalSegment
    ts: np.ndarray
    values: np.ndarray
    label: str

    def __post_init__(self):
        object.__setattr__(self, "ts", np.asarray(self.ts, dtype=np.float64))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.complex128))
        if not self.label:
            raise DomainError("label must be nonempty")
        if self.ts.ndim != 1 or self.ts.shape != self.values.shape:
            raise DomainError("ts and values must be 1-D of equal length")
        if self.ts.size < 1:
            raise DomainError("target needs at least one sample")
        if self.ts.size > 1:
            gaps = np.diff(self.ts)
            if np.any(gaps <= 0):
                raise DomainError("ts must be strictly increasing")
            if np.max(gaps) > self.seg.step + 1e-12:
                raise DomainError("target sampling must be at least as fine as seg.step")
        if self.ts[0] < self.seg.t_min - 1e-12 or self.ts[-1] > self.seg.t_max + 1e-12:
            raise DomainError("target samples leave the segment")


@dataclass(frozen=True)
class ShiftCandidate:
    tau: float
    sup_error: float


@dataclass(frozen=True)
class ScanReport:
    candidates: list
    epsilon: float
    tau_range: tuple
    hit_measure: float
    density_estimate: float


def zeta_target(seg, cfg=DEFAULT_CONFIG, label="zeta-self"):
    """The curve zeta on the segment itself, engine-sampled."""
    ts = seg.grid()
    g = zeta_jets_on_grid(seg.sigma, ts[0], seg.step, ts.size, cfg, want_derivs=False)
    return SegmentTarget(seg, ts, g.value, label)


def translated_zeta_target(seg, tau0, cfg=DEFAULT_CONFIG):
    """g(t) = zeta(sigma + i(t + tau0)) on the segment."""
    ts = seg.grid()
    g = zeta_jets_on_grid(seg.sigma, ts[0] + tau0, seg.step, ts.size, cfg,
                          want_derivs=False)
    return SegmentTarget(seg, ts, g.value, f"zeta-shifted-{tau0:g}")


def constant_target(seg, c, label=None):
    ts = seg.grid()
    return SegmentTarget(seg, ts, np.full(ts.size, complex(c)),
                         label or f"constant-{complex(c)}")


def inverse_target(target):
    """The inverse curve: same points, direction reversed (t -> a+b-t)."""
    return SegmentTarget(target.seg, target.ts.copy(), target.values[::-1].copy(),
                         target.label + "*")


def sup_error(target, tau, cfg=DEFAULT_CONFIG):
    """max over the sample grid of |zeta(sigma + i(t + tau)) - g(t)|."""
    g = zeta_jets_scattered(target.seg.sigma, target.ts + tau, cfg, want_derivs=False)
    return float(np.max(np.abs(g.value - target.values)))


def tau_drift_bound(target, tau_lo, tau_hi, cfg=None):
    """Heuristic Lipschitz constant of tau -> sup_error: max |zeta'| on the strip."""
    return sup_d1_estimate(target.seg.sigma, target.ts[0] + tau_lo,
                           target.ts[-1] + tau_hi, cfg=cfg)


def _grid_errors(target, tau_lo, tau_step, n_tau, cfg):
    """sup-error on the tau grid; running max over target samples."""
    errs = np.zeros(n_tau)
    for t_j, g_j in zip(target.ts, target.values):
        vals = zeta_jets_on_grid(target.seg.sigma, t_j + tau_lo, tau_step, n_tau,
                                 cfg, want_derivs=False).value
        np.maximum(errs, np.abs(vals - g_j), out=errs)
    return errs


def _golden_refine(err_fn, lo, hi, iters=20):
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = err_fn(x1), err_fn(x2)
    for _ in range(iters):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = err_fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = err_fn(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _scan(err_grid_fn, err_point_fn, tau_lo, tau_hi, tau_step, epsilon,
          refine_iters=20):
    if not (tau_hi > tau_lo and tau_step > 0 and epsilon > 0):
        raise DomainError("need tau_hi > tau_lo, tau_step > 0, epsilon > 0")
    n_tau = int(math.floor((tau_hi - tau_lo) / tau_step + 1e-9)) + 1
    errs = err_grid_fn(tau_lo, tau_step, n_tau)
    taus = tau_lo + tau_step * np.arange(n_tau)

    hits = int(np.count_nonzero(errs < epsilon))
    hit_measure = hits * tau_step
    density = hit_measure / (tau_hi - tau_lo)

    # local minima of the grid error below (a whisker above) epsilon
    cand = []
    interior = np.zeros(n_tau, dtype=bool)
    if n_tau >= 3:
        interior[1:-1] = (errs[1:-1] <= errs[:-2]) & (errs[1:-1] <= errs[2:])
    interior[0] = n_tau >= 2 and errs[0] <= errs[1]
    interior[-1] = n_tau >= 2 and errs[-1] <= errs[-2]
    for k in np.flatnonzero(interior & (errs < 1.5 * epsilon)):
        lo = max(tau_lo, taus[k] - tau_step)
        hi = min(tau_hi, taus[k] + tau_step)
        tau_star, e_star = _golden_refine(err_point_fn, lo, hi, refine_iters)
        if min(e_star, errs[k]) < epsilon:
            if errs[k] < e_star:
                tau_star, e_star = taus[k], err_point_fn(taus[k])
            if e_star < epsilon:
                cand.append(ShiftCandidate(float(tau_star), float(e_star)))
    # dedupe refinements that collapsed onto the same shift
    cand.sort(key=lambda c: c.tau)
    dedup = []
    for c in cand:
        if dedup and abs(c.tau - dedup[-1].tau) < tau_step / 4:
            if c.sup_error < dedup[-1].sup_error:
                dedup[-1] = c
            continue
        dedup.append(c)
    dedup.sort(key=lambda c: c.sup_error)
    return ScanReport(dedup, float(epsilon), (float(tau_lo), float(tau_hi)),
                      float(hit_measure), float(density)), taus, errs


def scan_shifts(target, tau_lo, tau_hi, tau_step, epsilon, cfg=DEFAULT_CONFIG,
                refine_iters=20):
    """Scan real shifts for sup-error approximation of the target.

    The caller should keep tau_step below epsilon / (2 * drift) with
    drift = tau_drift_bound(...); the bound is logged, not enforced
    (it is a heuristic, and coarse scans are still meaningful).
    """
    drift = tau_drift_bound(target, tau_lo, tau_hi)
    if drift * tau_step > epsilon / 2:
        log.warning(
            "tau_step %g may skip hits: drift bound %g * step > epsilon/2 = %g",
            tau_step, drift, epsilon / 2,
        )
    report, _, _ = _scan(
        lambda lo, st, n: _grid_errors(target, lo, st, n, cfg),
        lambda tau: sup_error(target, tau, cfg),
        tau_lo, tau_hi, tau_step, epsilon, refine_iters,
    )
    return report


def joint_error(target_f, target_g, tau, cfg=DEFAULT_CONFIG):
    """max of the two componentwise sup errors at shift tau."""
    seg = target_f.seg
    vals = zeta_jets_scattered(seg.sigma, target_f.ts + tau, cfg, want_derivs=False).value
    ef = float(np.max(np.abs(vals.real - target_f.values.real)))
    eg = float(np.max(np.abs(vals.imag - target_g.values.real)))
    return max(ef, eg)


def joint_re_im_scan(target_f, target_g, tau_lo, tau_hi, tau_step, epsilon,
                     cfg=DEFAULT_CONFIG, refine_iters=20):
    """Scan for simultaneous approximation of Re zeta ~ f and Im zeta ~ g.

    Both targets are real-valued samples on the same segment grid;
    the error metric is the max of the componentwise sup errors.
    """
    if target_f.ts.shape != target_g.ts.shape or np.any(target_f.ts != target_g.ts):
        raise DomainError("joint targets must share the segment grid")
    drift = tau_drift_bound(target_f, tau_lo, tau_hi)
    if drift * tau_step > epsilon / 2:
        log.warning(
            "tau_step %g may skip hits: drift bound %g * step > epsilon/2 = %g",
            tau_step, drift, epsilon / 2,
        )

    def grid_errs(lo, st, n):
        errs = np.zeros(n)
        for t_j, f_j, g_j in zip(target_f.ts, target_f.values.real,
                                 target_g.values.real):
            vals = zeta_jets_on_grid(target_f.seg.sigma, t_j + lo, st, n,
                                     cfg, want_derivs=False).value
            np.maximum(errs, np.abs(vals.real - f_j), out=errs)
            np.maximum(errs, np.abs(vals.imag - g_j), out=errs)
        return errs

    report, _, _ = _scan(
        grid_errs,
        lambda tau: joint_error(target_f, target_g, tau, cfg),
        tau_lo, tau_hi, tau_step, epsilon, refine_iters,
    )
    return report


def curve_encoding_pipeline(plane_profile, sigma, tau_lo, tau_hi, tau_step,
                            epsilon, cfg=DEFAULT_CONFIG):
    """Hunt for the curve with a given curvature inside t -> zeta(sigma+it).

    Builds the model curve from the curvature profile, scans shifts for
    it, and returns (report, best_curve, distance): the actual curve
    zeta(sigma + i(t + tau*)) at the best shift found (best candidate,
    or the refined global grid minimum when no candidate beat epsilon)
    together with its sup distance to the model.
    """
    length = plane_profile.ts[-1] - plane_profile.ts[0]
    model = reconstruct_plane(plane_profile, plane_profile.ts[0], plane_profile.ts[-1])
    ts_rel = model.ts - model.ts[0]
    spacing = float(np.max(np.diff(ts_rel)))
    seg = VerticalSegment(sigma, 0.0, float(length), spacing)
    target = SegmentTarget(seg, ts_rel, model.points, "curve-encoding")

    report, taus, errs = _scan(
        lambda lo, st, n: _grid_errors(target, lo, st, n, cfg),
        lambda tau: sup_error(target, tau, cfg),
        tau_lo, tau_hi, tau_step, epsilon,
    )
    if report.candidates:
        tau_star = report.candidates[0].tau
    else:
        k = int(np.argmin(errs))
        lo = max(tau_lo, taus[k] - tau_step)
        hi = min(tau_hi, taus[k] + tau_step)
        tau_star, _ = _golden_refine(lambda tau: sup_error(target, tau, cfg), lo, hi)
    vals = zeta_jets_scattered(sigma, ts_rel + tau_star, cfg, want_derivs=False).value
    distance = float(np.max(np.abs(vals - target.values)))
    best_curve = PlaneCurve(ts_rel + tau_star, vals)
    return report, best_curve, distance
