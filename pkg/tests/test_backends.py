"""Compiled and pure-NumPy kernels must agree to a few ulps."""

import numpy as np
import pytest

from zetacurves import _kernels


def _have_cython():
    try:
        _kernels.get_backend("cython")
        return True
    except ImportError:
        return False


pytestmark = pytest.mark.skipif(not _have_cython(), reason="compiled kernel not built")


def test_scattered_parity():
    ts = np.linspace(2.5, 120.0, 1337)
    a = _kernels.jets_scattered(0.5, ts, 400, 8, backend="cython")
    b = _kernels.jets_scattered(0.5, ts, 400, 8, backend="python")
    for x, y in zip(a, b):
        assert np.max(np.abs(x - y)) < 1e-11


def test_uniform_parity_and_phasor_drift():
    args = (0.75, 3.0, 0.01, 50_000, 512, 8)
    a = _kernels.jets_uniform(*args, backend="cython")
    b = _kernels.jets_uniform(*args, backend="python")
    for x, y in zip(a, b):
        assert np.max(np.abs(x - y)) < 1e-10
    # recurrence vs direct per-point phases
    ts = 3.0 + 0.01 * np.arange(50_000)
    c = _kernels.jets_scattered(0.75, ts, 512, 8, backend="cython")
    for x, y in zip(a, c):
        assert np.max(np.abs(x - y)) < 1e-10


def test_dirichlet_sums_parity():
    for sigma, t, n in ((0.5, 100.0, 10_000), (4.0, 0.0, 997), (-1.0, 33.3, 512)):
        a = _kernels.dirichlet_sums(sigma, t, n, backend="cython")
        b = _kernels.dirichlet_sums(sigma, t, n, backend="python")
        scale = max(abs(v) for v in a) + 1.0
        assert all(abs(x - y) < 1e-11 * scale for x, y in zip(a, b))


def test_forced_backend_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, ZETACURVES_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "import zetacurves._kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True,
    )
    assert out.stdout.strip() == "python"


def test_values_channel_only():
    z0, z1, z2 = _kernels.jets_uniform(2.0, 1.0, 0.1, 64, 64, 4, want_derivs=False)
    assert z1 is None and z2 is None
    w0, w1, w2 = _kernels.jets_uniform(2.0, 1.0, 0.1, 64, 64, 4, want_derivs=True)
    assert np.max(np.abs(z0 - w0)) < 1e-13
