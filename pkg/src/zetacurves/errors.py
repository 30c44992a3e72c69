"""Exception types raised across the package."""


class ZetacurvesError(Exception):
    """Base class for all package errors."""


class PoleAt1(ZetacurvesError):
    """Evaluation requested at (or within 1e-8 of) the pole s = 1."""


class AccuracyUnreachable(ZetacurvesError):
    """Certified error bound cannot be pushed below the requested target."""


class DomainError(ZetacurvesError):
    """Input outside the documented validity range of an operation."""


class CoverageError(ZetacurvesError):
    """An invariant profile does not span the requested interval."""


class DegenerateCurve(ZetacurvesError):
    """Sampled curve speed falls below the regularity threshold."""


class PositivityError(ZetacurvesError):
    """Space-curve reconstruction requires strictly positive curvature."""


class ZeroOnSegment(ZetacurvesError):
    """A zero sits on the integration segment and perturbation failed."""


class ContourTooClose(ZetacurvesError):
    """A zero (or pole) hugs the counting contour even after a nudge."""


class BracketFailure(ZetacurvesError):
    """Expected sign change missing from a root bracket."""


class SamplingTooCoarse(ZetacurvesError):
    """Curve sampling step too large for the requested lattice resolution."""
