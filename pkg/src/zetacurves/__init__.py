"""Numerics of the curves t -> zeta(sigma + it).

Certified zeta jets, signed-curvature profiles and sign-change hunting,
plane/space curve reconstruction from invariants, shift scans for
target approximation, finite-window Jensen means with zero frequencies,
and growth/lattice-visit probes, behind one CLI.
"""

__version__ = "0.1.0"

from .engine import (
    DEFAULT_CONFIG,
    EvalConfig,
    ZetaJet,
    eval_dirichlet_prime_partial,
    eval_zeta_afe,
    eval_zeta_jet,
    zeta_jets_on_grid,
    zeta_jets_scattered,
)
from .curvature import (
    CurvatureSample,
    SignChange,
    VerticalSegment,
    curvature_profile,
    find_sign_changes,
    left_halfplane_probe,
    real_zeros_zeta_prime,
    smallest_valid_sigma,
    verify_tail_inequality,
)
from .frenet import (
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
from .universality import (
    ScanReport,
    SegmentTarget,
    ShiftCandidate,
    constant_target,
    curve_encoding_pipeline,
    inverse_target,
    joint_re_im_scan,
    scan_shifts,
    sup_error,
    tau_drift_bound,
    translated_zeta_target,
    zeta_target,
)
from .jensen import (
    ZETA,
    ZETA_PRIME,
    AnalyticTargetId,
    JensenEstimate,
    ZeroBoxCount,
    count_zeros_box,
    dirichlet_poly,
    jensen_derivative,
    jensen_mean,
    mean_curvature_numerator,
    zero_frequency,
)
from .density import (
    ExponentFit,
    GridVisitReport,
    arc_length,
    grid_visit_density,
    modulus_exponent_fit,
)
from . import errors

__all__ = [name for name in dir() if not name.startswith("_")]
