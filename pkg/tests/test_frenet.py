"""Reconstruction/extraction oracles: lines, circles, clothoid (Fresnel),
helix closed form, round trips, rigid-motion equivalence, orientation."""

import math

import numpy as np
import pytest

from zetacurves import (
    InvariantProfile,
    PlaneCurve,
    SpaceCurve,
    extract_plane_invariants,
    extract_space_invariants,
    procrustes_align,
    reconstruct_plane,
    reconstruct_space,
    reverse_plane,
)
from zetacurves.errors import CoverageError, DegenerateCurve, DomainError, PositivityError


def test_zero_curvature_is_straight_segment():
    ts = np.linspace(0.0, 1.0, 101)
    curve = reconstruct_plane(InvariantProfile(ts, np.zeros_like(ts)), 0.0, 1.0)
    assert np.max(np.abs(curve.points - curve.ts)) < 1e-9


def test_unit_circle_closes():
    ts = np.linspace(0.0, 2 * math.pi, 629)
    curve = reconstruct_plane(InvariantProfile(ts, np.ones_like(ts)), 0.0, 2 * math.pi)
    assert abs(curve.points[-1] - curve.points[0]) < 1e-9
    # exact parametrization -i(e^{it} - 1)
    ref = -1j * (np.exp(1j * curve.ts) - 1.0)
    assert np.max(np.abs(curve.points - ref)) < 1e-9


def test_clothoid_endpoint_matches_fresnel_quadrature():
    # independent oracle: adaptive QUADPACK integration of cos/sin(u^2/2)
    from scipy.integrate import quad

    ts = np.linspace(0.0, 2.0, 801)
    curve = reconstruct_plane(InvariantProfile(ts, ts.copy()), 0.0, 2.0)
    cx, _ = quad(lambda u: math.cos(u * u / 2.0), 0.0, 2.0, epsabs=1e-13)
    sy, _ = quad(lambda u: math.sin(u * u / 2.0), 0.0, 2.0, epsabs=1e-13)
    assert abs(curve.points[-1] - complex(cx, sy)) < 1e-8


def test_extract_circle_both_orientations():
    ts = np.linspace(0.0, 4 * math.pi, 1601)  # radius-2 circle, arclength param
    ccw = PlaneCurve(ts, 2.0 * np.exp(1j * ts / 2.0))
    prof = extract_plane_invariants(ccw)
    assert np.max(np.abs(prof.kappa - 0.5)) < 1e-4
    cw = PlaneCurve(ts, 2.0 * np.exp(-1j * ts / 2.0))
    prof_cw = extract_plane_invariants(cw)
    assert np.max(np.abs(prof_cw.kappa + 0.5)) < 1e-4


def _random_band_limited_profile(rng, length=3.0, samples=2001, offset=0.0):
    # input sampling bounds the round trip: curve-spline curvature error
    # scales with h^2 of the input grid
    ts = np.linspace(0.0, length, samples)
    kappa = np.full(ts.size, offset)
    for m in range(1, 4):
        a, b = rng.uniform(-0.8, 0.8, size=2)
        w = 2 * math.pi * m / length
        kappa = kappa + a * np.cos(w * ts) + b * np.sin(w * ts)
    return InvariantProfile(ts, kappa)


def test_plane_round_trip_random_profiles():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(20):
        prof = _random_band_limited_profile(rng)
        curve = reconstruct_plane(prof, 0.0, 3.0)
        got = extract_plane_invariants(curve)
        from scipy.interpolate import CubicSpline

        ref = CubicSpline(prof.ts, prof.kappa)(got.ts)
        worst = max(worst, float(np.max(np.abs(got.kappa - ref))))
    assert worst < 1e-4


def test_reconstruct_plane_validation():
    ts = np.linspace(0.0, 1.0, 101)
    prof = InvariantProfile(ts, np.zeros_like(ts))
    with pytest.raises(CoverageError):
        reconstruct_plane(prof, 0.0, 2.0)
    with pytest.raises(DomainError):
        reconstruct_plane(InvariantProfile(ts[:3], np.zeros(3)), 0.0, ts[2])


def test_space_zero_torsion_is_planar_circle():
    ts = np.linspace(0.0, 2 * math.pi, 1001)
    prof = InvariantProfile(ts, np.ones_like(ts), np.zeros_like(ts))
    curve = reconstruct_space(prof, 0.0, 2 * math.pi)
    assert np.linalg.norm(curve.points[-1] - curve.points[0]) < 1e-8
    # stays in the plane of the initial tangent and normal
    assert np.max(np.abs(curve.points[:, 2])) < 1e-8


def _helix_closed_form(s, kappa, torsion):
    w2 = kappa * kappa + torsion * torsion
    w = math.sqrt(w2)
    return np.array([
        kappa**2 / (w2 * w) * math.sin(w * s) + torsion**2 * s / w2,
        kappa / w2 * (1.0 - math.cos(w * s)),
        kappa * torsion / w2 * (s - math.sin(w * s) / w),
    ])


def test_helix_reconstruction_and_extraction():
    L = 4 * math.pi
    ts = np.linspace(0.0, L, 1001)
    prof = InvariantProfile(ts, np.full(ts.size, 0.5), np.full(ts.size, 0.5))
    curve = reconstruct_space(prof, 0.0, L)
    assert np.linalg.norm(curve.points[-1] - _helix_closed_form(L, 0.5, 0.5)) < 1e-7
    inv = extract_space_invariants(curve)
    assert np.max(np.abs(inv.kappa - 0.5)) < 1e-4
    assert np.nanmax(np.abs(inv.torsion - 0.5)) < 1e-4


def test_space_positivity_error():
    ts = np.linspace(0.0, 1.0, 101)
    kap = np.ones_like(ts)
    kap[50] = 0.0
    with pytest.raises(PositivityError):
        reconstruct_space(InvariantProfile(ts, kap, np.zeros_like(ts)), 0.0, 1.0)


def test_planar_3d_curve_has_zero_torsion():
    ts = np.linspace(0.0, 4 * math.pi, 801)
    circ = np.stack([2 * np.cos(ts / 2), 2 * np.sin(ts / 2), np.zeros_like(ts)], axis=1)
    th = 0.6
    R = np.array([[1, 0, 0],
                  [0, math.cos(th), -math.sin(th)],
                  [0, math.sin(th), math.cos(th)]])
    curve = SpaceCurve(ts, circ @ R.T + np.array([0.3, -0.2, 1.0]))
    inv = extract_space_invariants(curve)
    assert np.nanmax(np.abs(inv.torsion)) < 1e-6
    assert np.max(np.abs(inv.kappa - 0.5)) < 1e-4


def test_rigid_motion_equivalence():
    L = 2.5
    ts = np.linspace(0.0, L, 501)
    prof = InvariantProfile(ts, 0.8 + 0.3 * np.sin(2 * np.pi * ts / L),
                            0.2 + 0.1 * np.cos(2 * np.pi * ts / L))
    base = reconstruct_space(prof, 0.0, L)
    th = 0.83
    R0 = np.array([[math.cos(th), -math.sin(th), 0],
                   [math.sin(th), math.cos(th), 0],
                   [0, 0, 1.0]])
    moved = reconstruct_space(prof, 0.0, L, initial_frame=R0)
    resid, R, shift = procrustes_align(moved.points, base.points)
    assert resid < 1e-8


def test_orientation_law_sign_flip():
    rng = np.random.default_rng(5)
    prof = _random_band_limited_profile(rng, offset=0.4)
    curve = reconstruct_plane(prof, 0.0, 3.0)
    rev = reverse_plane(curve)
    k_fwd = extract_plane_invariants(curve)
    k_rev = extract_plane_invariants(rev)
    flipped = -k_rev.kappa[::-1]
    mask = np.abs(k_fwd.kappa) > 1e-7
    assert np.all(np.sign(flipped[mask]) == np.sign(k_fwd.kappa[mask]))
    assert np.max(np.abs(flipped - k_fwd.kappa)) < 1e-8


def test_arclength_parametrization_quality():
    from zetacurves.frenet import _stencil_d1

    rng = np.random.default_rng(11)
    prof = _random_band_limited_profile(rng)
    curve = reconstruct_plane(prof, 0.0, 3.0)
    chords = np.abs(np.diff(curve.points))
    dts = np.diff(curve.ts)
    assert np.all(chords <= dts * (1 + 1e-9))
    h = curve.ts[1] - curve.ts[0]
    speed = np.abs(_stencil_d1(curve.points, h))
    assert np.max(np.abs(speed[2:-2] - 1.0)) < 1e-6


def test_frames_stay_orthonormal():
    L = 4 * math.pi
    ts = np.linspace(0.0, L, 401)
    prof = InvariantProfile(ts, np.full(ts.size, 0.5), np.full(ts.size, 0.5))
    curve = reconstruct_space(prof, 0.0, L)
    gram = np.einsum("kij,klj->kil", curve.frames, curve.frames)
    assert np.max(np.abs(gram - np.eye(3))) < 1e-8
    assert np.all(np.linalg.det(curve.frames) > 0.999999)


def test_degenerate_curve_rejected():
    ts = np.linspace(0.0, 1.0, 200)
    pts = (ts - 0.5) ** 3 + 0j  # stationary point mid-curve
    with pytest.raises(DegenerateCurve):
        extract_plane_invariants(PlaneCurve(ts, pts))
