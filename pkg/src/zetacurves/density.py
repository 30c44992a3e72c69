"""Left-of-critical-line growth, arc length, and lattice-visit counting.

The modulus exponent fit regresses log of the window-minimum of |zeta|
against log t over dyadic windows [t, 2t]; minima are taken over a
fixed-size window grid (documented grid-min semantics: a denser grid
chases ever-deeper dips near zero shadows, which is exactly the
contamination the fixed grid avoids).  The lattice-visit report counts
which (1/N)-lattice cells inside a disk the curve comes within 1/(3N)
of; paired with arc length it realizes the length-versus-cells
inequality that underlies the nowhere-density argument.
"""

import math
from dataclasses import dataclass

import numpy as np

from .engine import EvalConfig, sup_d1_estimate, zeta_jets_on_grid, zeta_jets_scattered
from .errors import DomainError, SamplingTooCoarse
from .quadrature import adaptive_integral

WINDOW_SAMPLES = 257


@dataclass(frozen=True)
class ExponentFit:
    sigma: float
    t_range: tuple
    fitted_exponent: float
    fit_residual: float
    min_modulus: float


@dataclass(frozen=True)
class GridVisitReport:
    disk_center: complex
    disk_radius: float
    N: int
    cells_total: int
    cells_visited: int
    fraction: float


def modulus_exponent_fit(sigma, t_lo, t_hi, n_windows=20,
                         window_samples=WINDOW_SAMPLES, cfg=None):
    """Fit |zeta(sigma+it)| ~ t^alpha from dyadic-window minima, sigma < 1/2.

    Window base points are log-spaced so the windows [t, 2t] tile
    [t_lo, t_hi]; m(t) is the minimum over a fixed window_samples grid.
    Returns the regression slope, its rms residual in log space, and the
    smallest modulus seen.
    """
    if sigma >= 0.5:
        raise DomainError("exponent fit is for sigma < 1/2")
    if not (10.0 <= t_lo < t_hi):
        raise DomainError("need 10 <= t_lo < t_hi")
    if n_windows < 2:
        raise DomainError("need at least 2 windows")
    cfg = cfg or EvalConfig(target_abs_error=1e-6)
    bases = np.geomspace(t_lo, t_hi / 2.0, n_windows)
    mins = np.empty(n_windows)
    for i, t in enumerate(bases):
        step = t / (window_samples - 1)
        g = zeta_jets_on_grid(sigma, t, step, window_samples, cfg, want_derivs=False)
        mins[i] = np.abs(g.value).min()
    slope, icept = np.polyfit(np.log(bases), np.log(mins), 1)
    resid = float(np.sqrt(np.mean(
        (np.log(mins) - (slope * np.log(bases) + icept)) ** 2)))
    return ExponentFit(float(sigma), (float(t_lo), float(t_hi)),
                       float(slope), resid, float(mins.min()))


def arc_length(seg, cfg=None, tol=1e-7):
    """Length of t -> zeta(sigma+it) over the segment: integral of |zeta'|."""
    cfg = cfg or EvalConfig(target_abs_error=1e-8)

    def batch(ts):
        g = zeta_jets_scattered(seg.sigma, ts, cfg)
        speed = np.abs(g.d1)
        return speed, speed

    res = adaptive_integral(batch, seg.t_min, seg.t_max,
                            abs_tol=tol * (seg.t_max - seg.t_min),
                            singular_floor=None)
    return res.integral


def grid_visit_density(seg, disk_center, disk_radius, N, cfg=None):
    """Which (1/N)-lattice cells inside the disk does the curve visit?

    A cell is visited iff some curve sample lies within 1/(3N) of its
    center, so the disks are disjoint and each sample can claim at most
    one cell.  Requires seg.step <= 1/(6N) / max(1, max |zeta'|): the
    curve cannot skip across a cell between consecutive samples.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    disk_center = complex(disk_center)
    if disk_radius <= 0:
        raise DomainError("disk_radius must be positive")
    cfg = cfg or EvalConfig(target_abs_error=1e-6)

    dmax = sup_d1_estimate(seg.sigma, seg.t_min, seg.t_max, cfg=cfg)
    step_req = (1.0 / (6.0 * N)) / max(1.0, dmax)
    if seg.step > step_req:
        raise SamplingTooCoarse(
            f"step {seg.step:g} exceeds the required {step_req:g} "
            f"(max |zeta'| estimate {dmax:.3g}, N = {N})"
        )

    # lattice points of (1/N)Z[i] inside the disk
    cx, cy = disk_center.real, disk_center.imag
    pmin = math.ceil((cx - disk_radius) * N)
    pmax = math.floor((cx + disk_radius) * N)
    qmin = math.ceil((cy - disk_radius) * N)
    qmax = math.floor((cy + disk_radius) * N)
    if pmin > pmax or qmin > qmax:
        return GridVisitReport(disk_center, float(disk_radius), int(N), 0, 0, 0.0)
    ps = np.arange(pmin, pmax + 1)
    qs = np.arange(qmin, qmax + 1)
    PX, QY = np.meshgrid(ps / N, qs / N, indexing="ij")
    inside = (PX - cx) ** 2 + (QY - cy) ** 2 <= disk_radius**2
    cells_total = int(inside.sum())
    if cells_total == 0:
        return GridVisitReport(disk_center, float(disk_radius), int(N), 0, 0, 0.0)

    visited = np.zeros_like(inside, dtype=bool)
    ts = seg.grid()
    r2 = (1.0 / (3.0 * N)) ** 2
    chunk = 2_000_000
    for lo in range(0, ts.size, chunk):
        n_pts = min(ts.size, lo + chunk) - lo
        g = zeta_jets_on_grid(seg.sigma, ts[lo], seg.step, n_pts, cfg,
                              want_derivs=False)
        z = g.value
        p = np.round(z.real * N).astype(np.int64)
        q = np.round(z.imag * N).astype(np.int64)
        ok = (p >= pmin) & (p <= pmax) & (q >= qmin) & (q <= qmax)
        p, q, z = p[ok], q[ok], z[ok]
        near = (z.real - p / N) ** 2 + (z.imag - q / N) ** 2 <= r2
        visited[p[near] - pmin, q[near] - qmin] = True
    visited &= inside
    cells_visited = int(visited.sum())
    return GridVisitReport(disk_center, float(disk_radius), int(N),
                           cells_total, cells_visited, cells_visited / cells_total)
