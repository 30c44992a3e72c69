"""Kernel backend selection.

The compiled Cython module is preferred when importable; the NumPy
fallback is used otherwise.  ZETACURVES_BACKEND=python|cython forces a
choice (forcing cython raises if the extension is missing).  Both
backends implement the same contracts and agree to a few float64 ulps;
`benchmarks/bench_kernels.py` compares their throughput.
"""

import os

import numpy as np

from ._tables import BERN_FACT, EPS, MAX_BERNOULLI_ORDER
from . import _zeta_py

_requested = os.environ.get("ZETACURVES_BACKEND", "").strip().lower()

_impl = None
if _requested in ("", "cython"):
    try:
        from . import _zeta_cy as _impl
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "ZETACURVES_BACKEND=cython but the compiled kernel is not "
                "built; install the package (pip install -e . "
                "--no-build-isolation) or unset the variable"
            )
        _impl = None
if _impl is None:
    _impl = _zeta_py

BACKEND = _impl.BACKEND_NAME


def get_backend(name=None):
    """Return a kernel module by name ('python' or 'cython'); default active."""
    if name is None:
        return _impl
    if name == "python":
        return _zeta_py
    if name == "cython":
        from . import _zeta_cy

        return _zeta_cy
    raise ValueError(f"unknown backend {name!r}")


def jets_scattered(sigma, ts, N, M, want_derivs=True, backend=None):
    """Raw E-M jets (z0, z1, z2) at s = sigma + i*ts for a 1-D float array ts."""
    mod = get_backend(backend)
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    return mod.em_jets(float(sigma), ts, int(N), int(M), BERN_FACT, bool(want_derivs))


def jets_uniform(sigma, t0, dt, num, N, M, want_derivs=True, backend=None):
    """Raw E-M jets on the uniform grid t0 + dt*arange(num)."""
    mod = get_backend(backend)
    return mod.em_jets_uniform(
        float(sigma), float(t0), float(dt), int(num), int(N), int(M),
        BERN_FACT, bool(want_derivs),
    )


def dirichlet_sums(sigma, t, nmax, backend=None):
    """Partial sums (sum n^{-s}, sum ln(n) n^{-s}, sum ln(n)^2 n^{-s}) up to nmax."""
    mod = get_backend(backend)
    return mod.dirichlet_sums(float(sigma), float(t), int(nmax))


__all__ = [
    "BACKEND",
    "BERN_FACT",
    "EPS",
    "MAX_BERNOULLI_ORDER",
    "get_backend",
    "jets_scattered",
    "jets_uniform",
    "dirichlet_sums",
]
