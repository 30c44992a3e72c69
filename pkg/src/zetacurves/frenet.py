"""Curve reconstruction from invariants and invariant extraction.

Plane curves are rebuilt from signed curvature through the turning
angle, g(t) = integral of exp(i * theta(u)) with theta the curvature
antiderivative; space curves integrate the frame system (tangent,
normal, binormal) with per-step orthonormal re-projection.  Extraction
reparametrizes by arclength and differentiates with 5-point stencils.
Reconstruction is normalized to start at the origin with the initial
tangent along +x (plane) / the standard basis (space); anything else
differs by a rigid motion.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import CoverageError, DegenerateCurve, DomainError, PositivityError

SPEED_FLOOR = 1e-6
TORSION_KAPPA_FLOOR = 1e-6

_GL5_X = np.array([-0.9061798459386640, -0.5384693101056831, 0.0,
                   0.5384693101056831, 0.9061798459386640])
_GL5_W = np.array([0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                   0.4786286704993665, 0.2369268850561891])


@dataclass(frozen=True)
class PlaneCurve:
    """Sampled plane curve; points are complex, ts strictly increasing."""

    ts: np.ndarray
    points: np.ndarray
    arclength_param: bool = False

    def __post_init__(self):
        object.__setattr__(self, "ts", np.asarray(self.ts, dtype=np.float64))
        object.__setattr__(self, "points", np.asarray(self.points, dtype=np.complex128))
        if self.ts.ndim != 1 or self.ts.size != self.points.size:
            raise DomainError("ts and points must be 1-D of equal length")
        if self.ts.size < 2 or not np.all(np.diff(self.ts) > 0):
            raise DomainError("ts must be strictly increasing, length >= 2")
        if self.arclength_param:
            chord = np.abs(np.diff(self.points))
            if np.any(chord > 1.05 * np.diff(self.ts)):
                raise DomainError("chords exceed 1.05 * dt; not arclength-parametrized")


@dataclass(frozen=True)
class SpaceCurve:
    """Sampled space curve with optional orthonormal frames (rows T, N, B)."""

    ts: np.ndarray
    points: np.ndarray                    # (K, 3)
    frames: np.ndarray | None = None      # (K, 3, 3)

    def __post_init__(self):
        object.__setattr__(self, "ts", np.asarray(self.ts, dtype=np.float64))
        object.__setattr__(self, "points", np.asarray(self.points, dtype=np.float64))
        if self.points.ndim != 2 or self.points.shape != (self.ts.size, 3):
            raise DomainError("points must have shape (len(ts), 3)")
        if self.ts.size < 2 or not np.all(np.diff(self.ts) > 0):
            raise DomainError("ts must be strictly increasing, length >= 2")
        if self.frames is not None:
            F = np.asarray(self.frames, dtype=np.float64)
            object.__setattr__(self, "frames", F)
            if F.shape != (self.ts.size, 3, 3):
                raise DomainError("frames must have shape (len(ts), 3, 3)")
            gram = np.einsum("kij,klj->kil", F, F)
            if np.max(np.abs(gram - np.eye(3))) > 1e-8:
                raise DomainError("frames not orthonormal within 1e-8")
            if np.any(np.linalg.det(F) < 0):
                raise DomainError("frames must be right-handed")


@dataclass(frozen=True)
class InvariantProfile:
    """Sampled curvature (and optionally torsion) along a parameter."""

    ts: np.ndarray
    kappa: np.ndarray
    torsion: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "ts", np.asarray(self.ts, dtype=np.float64))
        object.__setattr__(self, "kappa", np.asarray(self.kappa, dtype=np.float64))
        if self.ts.ndim != 1 or self.kappa.shape != self.ts.shape:
            raise DomainError("ts and kappa must be 1-D of equal length")
        if not np.all(np.diff(self.ts) > 0):
            raise DomainError("ts must be strictly increasing")
        if self.torsion is not None:
            tor = np.asarray(self.torsion, dtype=np.float64)
            object.__setattr__(self, "torsion", tor)
            if tor.shape != self.ts.shape:
                raise DomainError("torsion must match ts")


def _require_coverage(profile, t0, t1):
    if profile.ts.size < 4:
        raise DomainError("profiles need at least 4 samples for cubic interpolation")
    if t0 < profile.ts[0] - 1e-12 or t1 > profile.ts[-1] + 1e-12 or not t0 < t1:
        raise CoverageError(
            f"profile spans [{profile.ts[0]:g}, {profile.ts[-1]:g}], "
            f"requested [{t0:g}, {t1:g}]"
        )


def _gl5(fun, a, b):
    half = 0.5 * (b - a)
    xs = 0.5 * (a + b) + half * _GL5_X
    return half * np.sum(_GL5_W * fun(xs))


def _gl5_adaptive(fun, a, b, tol, depth=0):
    whole = _gl5(fun, a, b)
    m = 0.5 * (a + b)
    parts = _gl5(fun, a, m) + _gl5(fun, m, b)
    if abs(parts - whole) <= tol or depth >= 24:
        return parts
    return (_gl5_adaptive(fun, a, m, tol / 2, depth + 1)
            + _gl5_adaptive(fun, m, b, tol / 2, depth + 1))


def _output_grid(profile, t0, t1):
    inner = profile.ts[(profile.ts > t0 + 1e-15) & (profile.ts < t1 - 1e-15)]
    return np.concatenate([[t0], inner, [t1]])


def reconstruct_plane(profile, t0, t1, quad_tol_per_len=1e-9):
    """Unit-speed plane curve with the given curvature on [t0, t1].

    Starts at the origin with tangent +1; quadrature refined until the
    local error estimate is below quad_tol_per_len per unit length.
    """
    _require_coverage(profile, t0, t1)
    kspl = CubicSpline(profile.ts, profile.kappa)
    theta = kspl.antiderivative()
    theta0 = theta(t0)

    def integrand(us):
        return np.exp(1j * (theta(us) - theta0))

    ts_out = _output_grid(profile, t0, t1)
    pts = np.empty(ts_out.size, dtype=np.complex128)
    pts[0] = 0.0
    acc = 0.0 + 0.0j
    for i in range(1, ts_out.size):
        a, b = ts_out[i - 1], ts_out[i]
        acc += _gl5_adaptive(integrand, a, b, quad_tol_per_len * (b - a))
        pts[i] = acc
    return PlaneCurve(ts_out, pts, arclength_param=True)


def _arclength_resample_xy(ts, comps, n_out):
    """Common part of invariant extraction: speed check, arclength grid.

    comps is a list of coordinate arrays.  Returns (s_grid, resampled
    coordinate arrays, h).
    """
    spls = [CubicSpline(ts, c) for c in comps]
    dense = np.linspace(ts[0], ts[-1], max(8 * ts.size, 1024))
    dvals = np.stack([s(dense, 1) for s in spls])
    speed_dense = np.sqrt((dvals**2).sum(axis=0))
    if speed_dense.min() < SPEED_FLOOR:
        raise DegenerateCurve(
            f"sampled speed dips to {speed_dense.min():.3g} (< {SPEED_FLOOR:g})"
        )

    def speed(us):
        return np.sqrt(sum(s(us, 1) ** 2 for s in spls))

    # cumulative arclength at the input knots
    seg = np.array([
        _gl5_adaptive(speed, ts[i], ts[i + 1], 1e-12 * (ts[i + 1] - ts[i]) + 1e-15)
        for i in range(ts.size - 1)
    ])
    s_knots = np.concatenate([[0.0], np.cumsum(seg)])
    t_of_s = CubicSpline(s_knots, ts)
    s_grid = np.linspace(0.0, s_knots[-1], n_out)
    t_grid = t_of_s(s_grid)
    t_grid[0], t_grid[-1] = ts[0], ts[-1]
    res = [s(t_grid) for s in spls]
    return s_grid, res, s_grid[1] - s_grid[0]


def _stencil_d1(f, h):
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    for i in (0, 1):
        d[i] = (-25 * f[i] + 48 * f[i + 1] - 36 * f[i + 2]
                + 16 * f[i + 3] - 3 * f[i + 4]) / (12 * h)
        d[-1 - i] = -(-25 * f[-1 - i] + 48 * f[-2 - i] - 36 * f[-3 - i]
                      + 16 * f[-4 - i] - 3 * f[-5 - i]) / (12 * h)
    return d


def _stencil_d2(f, h):
    d = np.empty_like(f)
    d[2:-2] = (-f[:-4] + 16 * f[1:-3] - 30 * f[2:-2] + 16 * f[3:-1] - f[4:]) / (12 * h * h)
    for i in (0, 1):
        d[i] = (35 * f[i] - 104 * f[i + 1] + 114 * f[i + 2]
                - 56 * f[i + 3] + 11 * f[i + 4]) / (12 * h * h)
        d[-1 - i] = (35 * f[-1 - i] - 104 * f[-2 - i] + 114 * f[-3 - i]
                     - 56 * f[-4 - i] + 11 * f[-5 - i]) / (12 * h * h)
    return d


def _stencil_d3(f, h):
    d = np.empty_like(f)
    d[2:-2] = (-f[:-4] + 2 * f[1:-3] - 2 * f[3:-1] + f[4:]) / (2 * h**3)
    for i in (0, 1):
        d[i] = (-5 * f[i] + 18 * f[i + 1] - 24 * f[i + 2]
                + 14 * f[i + 3] - 3 * f[i + 4]) / (2 * h**3)
        d[-1 - i] = -(-5 * f[-1 - i] + 18 * f[-2 - i] - 24 * f[-3 - i]
                      + 14 * f[-4 - i] - 3 * f[-5 - i]) / (2 * h**3)
    return d


def extract_plane_invariants(curve, n_out=None):
    """Signed curvature of a sampled plane curve, arclength-parametrized.

    The curve is resampled uniformly in arclength and differentiated
    with 5-point stencils (one-sided at the boundary, one order lower).
    """
    n_out = n_out or max(4 * curve.ts.size, 512)
    s_grid, (x, y), h = _arclength_resample_xy(
        curve.ts, [curve.points.real, curve.points.imag], n_out)
    x1, y1 = _stencil_d1(x, h), _stencil_d1(y, h)
    x2, y2 = _stencil_d2(x, h), _stencil_d2(y, h)
    speed = np.sqrt(x1 * x1 + y1 * y1)
    kappa = (x1 * y2 - y1 * x2) / speed**3
    return InvariantProfile(s_grid, kappa)


def extract_space_invariants(curve, n_out=None):
    """Curvature and torsion of a sampled space curve.

    kappa = |c''| after arclength reparametrization; torsion from the
    triple product det(c', c'', c''') / kappa^2, nan where kappa is
    below TORSION_KAPPA_FLOOR (torsion undefined there).
    """
    n_out = n_out or max(4 * curve.ts.size, 512)
    s_grid, comps, h = _arclength_resample_xy(
        curve.ts, [curve.points[:, 0], curve.points[:, 1], curve.points[:, 2]], n_out)
    c1 = np.stack([_stencil_d1(c, h) for c in comps], axis=1)
    c2 = np.stack([_stencil_d2(c, h) for c in comps], axis=1)
    c3 = np.stack([_stencil_d3(c, h) for c in comps], axis=1)
    kappa = np.linalg.norm(c2, axis=1)
    triple = np.einsum("ij,ij->i", np.cross(c1, c2), c3)
    with np.errstate(divide="ignore", invalid="ignore"):
        torsion = np.where(kappa > TORSION_KAPPA_FLOOR, triple / kappa**2, np.nan)
    return InvariantProfile(s_grid, kappa, torsion)


def _frenet_rhs(state, kap, tor):
    c, T, N, B = state.reshape(4, 3)
    return np.concatenate([T, kap * N, -kap * T + tor * B, -tor * N])


def _reproject(state):
    F = state[3:].reshape(3, 3)
    U, _, Vt = np.linalg.svd(F)
    state[3:] = (U @ Vt).ravel()
    return state


def reconstruct_space(profile, t0, t1, h_max=1e-3, initial_frame=None):
    """Space curve with the given curvature and torsion on [t0, t1].

    Fourth-order one-step integration of the frame system with
    orthonormal re-projection (polar factor) after every step; requires
    kappa > 0 throughout, including between samples.  The default
    normalization starts at the origin with the standard basis as the
    frame; any other right-handed orthonormal initial_frame (rows T, N,
    B) yields the same curve up to a rigid motion.
    """
    if profile.torsion is None:
        raise DomainError("space reconstruction needs a torsion channel")
    _require_coverage(profile, t0, t1)
    mask = (profile.ts >= t0 - 1e-12) & (profile.ts <= t1 + 1e-12)
    if np.any(profile.kappa[mask] <= 0.0):
        raise PositivityError("kappa must be strictly positive on [t0, t1]")
    kspl = CubicSpline(profile.ts, profile.kappa)
    tspl = CubicSpline(profile.ts, profile.torsion)
    fine = np.linspace(t0, t1, 4096)
    if kspl(fine).min() <= 0.0:
        raise PositivityError("interpolated kappa dips to zero inside [t0, t1]")

    if initial_frame is None:
        F0 = np.eye(3)
    else:
        F0 = np.asarray(initial_frame, dtype=np.float64)
        if F0.shape != (3, 3) or np.max(np.abs(F0 @ F0.T - np.eye(3))) > 1e-10:
            raise DomainError("initial_frame must be orthonormal 3x3")
    ts_out = _output_grid(profile, t0, t1)
    state = np.concatenate([np.zeros(3), F0.ravel()])
    points = np.empty((ts_out.size, 3))
    frames = np.empty((ts_out.size, 3, 3))
    points[0] = state[:3]
    frames[0] = state[3:].reshape(3, 3)
    for i in range(1, ts_out.size):
        a, b = ts_out[i - 1], ts_out[i]
        n_sub = max(1, int(math.ceil((b - a) / min(h_max, (b - a) / 10 + 1e-300))))
        h = (b - a) / n_sub
        t = a
        for _ in range(n_sub):
            k1 = _frenet_rhs(state, kspl(t), tspl(t))
            k2 = _frenet_rhs(state + 0.5 * h * k1, kspl(t + 0.5 * h), tspl(t + 0.5 * h))
            k3 = _frenet_rhs(state + 0.5 * h * k2, kspl(t + 0.5 * h), tspl(t + 0.5 * h))
            k4 = _frenet_rhs(state + h * k3, kspl(t + h), tspl(t + h))
            state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            state = _reproject(state)
            t += h
        points[i] = state[:3]
        frames[i] = state[3:].reshape(3, 3)
    return SpaceCurve(ts_out, points, frames)


def reverse_plane(curve):
    """The same point set traversed backwards, reindexed to [a, b]."""
    a, b = curve.ts[0], curve.ts[-1]
    return PlaneCurve((a + b - curve.ts)[::-1].copy(), curve.points[::-1].copy(),
                      arclength_param=curve.arclength_param)


def procrustes_align(A, B):
    """Best orthogonal map + translation taking point set A onto B.

    Returns (sup_residual, R, shift) with A @ R + shift ~ B.  R may be
    improper; reconstruction-uniqueness checks only need an orthogonal
    map.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.shape != B.shape:
        raise DomainError("point sets must have equal shape")
    ca, cb = A.mean(axis=0), B.mean(axis=0)
    U, _, Vt = np.linalg.svd((A - ca).T @ (B - cb))
    R = U @ Vt
    shift = cb - ca @ R
    resid = float(np.max(np.linalg.norm(A @ R + shift - B, axis=1)))
    return resid, R, shift
