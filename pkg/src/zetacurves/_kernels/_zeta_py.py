"""Pure NumPy fallback kernels.

Same contracts as the compiled module `_zeta_cy`: raw Euler-Maclaurin
assembly of zeta and its first two s-derivatives at fixed real part,
plus plain truncated Dirichlet sums.  No error certification happens
here; callers own cutoff selection and bounds.

The n-sum is evaluated in (point-chunk x n) blocks so memory stays
bounded; NumPy's pairwise summation keeps the accumulated roundoff at
the few-epsilon level the engine's roundoff model assumes.
"""

import math

import numpy as np

BACKEND_NAME = "python"

# keep each exp() block at ~4M complex entries
_BLOCK_BUDGET = 4_000_000


def em_jets(sigma, ts, N, M, bern, want_derivs=True):
    """Euler-Maclaurin jets at s = sigma + i*ts.

    Returns (z0, z1, z2) complex arrays of len(ts); z1, z2 are None when
    want_derivs is False.  N is the summation cutoff (sum over n < N),
    M the number of Bernoulli correction terms, bern the B_{2k}/(2k)!
    table.
    """
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    K = ts.size
    z0 = np.empty(K, dtype=np.complex128)
    z1 = np.empty(K, dtype=np.complex128) if want_derivs else None
    z2 = np.empty(K, dtype=np.complex128) if want_derivs else None

    n = np.arange(1, N, dtype=np.float64)
    ln = np.log(n)
    amp = n ** (-sigma)
    lnN = math.log(N)
    block = max(16, _BLOCK_BUDGET // max(N, 1))

    for lo in range(0, K, block):
        hi = min(K, lo + block)
        tc = ts[lo:hi]
        s = sigma + 1j * tc

        ph = np.exp(np.outer(-1j * tc, ln))
        ph *= amp
        s0 = ph.sum(axis=1)
        if want_derivs:
            s1 = -(ph * ln).sum(axis=1)
            s2 = (ph * (ln * ln)).sum(axis=1)
        del ph

        # closure terms: N^{-s}/2 and N^{1-s}/(s-1), with s-derivatives
        NmS = np.exp(-s * lnN)
        u = N * NmS
        sm1 = s - 1.0
        s0 += 0.5 * NmS + u / sm1
        if want_derivs:
            s1 += -0.5 * lnN * NmS - u * (lnN / sm1 + 1.0 / sm1**2)
            s2 += 0.5 * lnN * lnN * NmS + u * (
                lnN * lnN / sm1 + 2.0 * lnN / sm1**2 + 2.0 / sm1**3
            )

        # Bernoulli corrections C_k * P_k(s) * N^{-s-2k+1},
        # P_k(s) = prod_{j=0}^{2k-2} (s+j)
        P = s.copy()
        H = 1.0 / s
        H2 = 1.0 / (s * s)
        for k in range(1, M + 1):
            base = bern[k - 1] * np.exp(-(s + (2 * k - 1)) * lnN)
            s0 += base * P
            if want_derivs:
                s1 += base * P * (H - lnN)
                s2 += base * P * ((H - lnN) ** 2 - H2)
            for j in (2 * k - 1, 2 * k):
                sj = s + j
                P = P * sj
                H = H + 1.0 / sj
                H2 = H2 + 1.0 / (sj * sj)

        z0[lo:hi] = s0
        if want_derivs:
            z1[lo:hi] = s1
            z2[lo:hi] = s2
    return z0, z1, z2


def em_jets_uniform(sigma, t0, dt, K, N, M, bern, want_derivs=True):
    """Jets on the uniform grid t0 + dt*arange(K) (array path reused)."""
    return em_jets(sigma, t0 + dt * np.arange(K, dtype=np.float64), N, M, bern, want_derivs)


def dirichlet_sums(sigma, t, nmax):
    """(S0, S1, S2) = (sum n^{-s}, sum ln(n) n^{-s}, sum ln(n)^2 n^{-s}), n = 1..nmax."""
    n = np.arange(1, nmax + 1, dtype=np.float64)
    ln = np.log(n)
    w = n ** (-sigma) * np.exp(-1j * t * ln)
    return complex(w.sum()), complex((ln * w).sum()), complex((ln * ln * w).sum())
