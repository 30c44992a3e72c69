"""Adaptive Gauss-Kronrod panels with batched integrand evaluation.

Integrands here are expensive (each point is a zeta jet), so the whole
pending panel set is evaluated in one vectorized call per refinement
round.  Panels whose auxiliary channel (typically |f|) dips below a
floor are split unconditionally until they are narrow; this is the
subdivision rule that keeps integrable log-type spikes from poisoning
the error estimate.
"""

import numpy as np

# 15-point Kronrod extension of 7-point Gauss on [-1, 1]
_XGK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])
_GAUSS_IDX = np.arange(1, 15, 2)


class QuadratureResult:
    __slots__ = ("integral", "error", "n_evals", "n_panels", "flagged")

    def __init__(self, integral, error, n_evals, n_panels, flagged):
        self.integral = integral
        self.error = error
        self.n_evals = n_evals
        self.n_panels = n_panels
        self.flagged = flagged


def adaptive_integral(eval_batch, a, b, abs_tol, *, singular_floor=None,
                      init_panels=8, max_rounds=40, min_width=1e-9,
                      singular_width=1e-6):
    """Integrate eval_batch over [a, b] to absolute tolerance abs_tol.

    eval_batch(x: 1-D array) -> (values, aux) where aux is the
    singularity-detection channel (pass values twice if unused).
    Returns a QuadratureResult; .error is the accumulated |K15-G7|
    estimate and is reported honestly even when the tolerance was not
    reached within max_rounds.
    """
    if not b > a:
        raise ValueError("need b > a")
    edges = np.linspace(a, b, init_panels + 1)
    lo = edges[:-1].copy()
    hi = edges[1:].copy()
    vals, aux, n_evals = _eval_panels(eval_batch, lo, hi)
    I, E, amin = _panel_estimates(lo, hi, vals, aux)
    flagged = 0

    for _ in range(max_rounds):
        total_err = float(E.sum())
        width = hi - lo
        sing = np.zeros(lo.shape, dtype=bool)
        if singular_floor is not None:
            sing = (amin < singular_floor) & (width > singular_width)
        over = E > (abs_tol * width / (b - a))
        split = (over | sing) & (width > min_width)
        if total_err <= abs_tol and not sing.any():
            break
        if not split.any():
            break
        flagged = max(flagged, int(sing.sum()))

        keep = ~split
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        nvals, naux, ne = _eval_panels(eval_batch, new_lo, new_hi)
        n_evals += ne
        nI, nE, namin = _panel_estimates(new_lo, new_hi, nvals, naux)

        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        I = np.concatenate([I[keep], nI])
        E = np.concatenate([E[keep], nE])
        amin = np.concatenate([amin[keep], namin])

    return QuadratureResult(float(I.sum()), float(E.sum()), n_evals, lo.size, flagged)


def _eval_panels(eval_batch, lo, hi):
    centers = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    xs = (centers[:, None] + half[:, None] * _XGK[None, :]).ravel()
    v, aux = eval_batch(xs)
    v = np.asarray(v, dtype=np.float64).reshape(lo.size, 15)
    aux = np.asarray(aux, dtype=np.float64).reshape(lo.size, 15)
    return v, aux, xs.size


def _panel_estimates(lo, hi, vals, aux):
    half = 0.5 * (hi - lo)
    k15 = (vals * _WGK[None, :]).sum(axis=1) * half
    g7 = (vals[:, _GAUSS_IDX] * _WG[None, :]).sum(axis=1) * half
    err = np.abs(k15 - g7)
    return k15, err, aux.min(axis=1)
