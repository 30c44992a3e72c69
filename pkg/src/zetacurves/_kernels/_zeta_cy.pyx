# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled summation kernels.

Raw Euler-Maclaurin assembly of zeta and its first two s-derivatives at
fixed real part.  Scattered points use per-point compensated summation;
uniform grids use a per-n phasor recurrence restarted every 256 steps so
rotation drift stays at the few-epsilon level.  Contracts are identical
to the `_zeta_py` fallback; callers own cutoff selection and bounds.
"""

import numpy as np

from libc.math cimport cos, exp, fabs, log, sin

BACKEND_NAME = "cython"

DEF RESTART = 256


cdef inline void kadd(double *s, double *c, double x) noexcept nogil:
    # Neumaier compensated accumulation
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


cdef void _tail_terms(double sigma, double t, long N, long M,
                      const double[::1] bern, bint want_derivs,
                      double complex *o0, double complex *o1,
                      double complex *o2) noexcept nogil:
    # closure terms N^{-s}/2 + N^{1-s}/(s-1) and Bernoulli corrections,
    # with analytic s-derivatives
    cdef double lnN = log(<double> N)
    cdef double a = exp(-sigma * lnN)
    cdef double ph = t * lnN
    cdef double complex NmS = a * cos(ph) - 1j * a * sin(ph)
    cdef double complex s = sigma + 1j * t
    cdef double complex sm1 = s - 1.0
    cdef double complex u = N * NmS
    cdef double complex z0 = 0.5 * NmS + u / sm1
    cdef double complex z1 = 0, z2 = 0
    cdef double complex P, H, H2, base, sj, g
    cdef long k, j
    if want_derivs:
        z1 = -0.5 * lnN * NmS - u * (lnN / sm1 + 1.0 / (sm1 * sm1))
        z2 = 0.5 * lnN * lnN * NmS + u * (
            lnN * lnN / sm1 + 2.0 * lnN / (sm1 * sm1) + 2.0 / (sm1 * sm1 * sm1))
    P = s
    H = 1.0 / s
    H2 = 1.0 / (s * s)
    for k in range(1, M + 1):
        a = exp(-(sigma + 2 * k - 1) * lnN)
        ph = t * lnN
        base = bern[k - 1] * a * (cos(ph) - 1j * sin(ph))
        z0 = z0 + base * P
        if want_derivs:
            g = H - lnN
            z1 = z1 + base * P * g
            z2 = z2 + base * P * (g * g - H2)
        for j in range(2 * k - 1, 2 * k + 1):
            sj = s + j
            P = P * sj
            H = H + 1.0 / sj
            H2 = H2 + 1.0 / (sj * sj)
    o0[0] = z0
    o1[0] = z1
    o2[0] = z2


def em_jets(double sigma, double[::1] ts, long N, long M,
            const double[::1] bern, bint want_derivs=True):
    """Euler-Maclaurin jets at s = sigma + i*ts; see _zeta_py.em_jets."""
    cdef Py_ssize_t K = ts.shape[0]
    z0 = np.empty(K, dtype=np.complex128)
    z1 = np.empty(K, dtype=np.complex128) if want_derivs else None
    z2 = np.empty(K, dtype=np.complex128) if want_derivs else None
    cdef double complex[::1] v0 = z0
    cdef double complex[::1] v1 = z1 if want_derivs else z0
    cdef double complex[::1] v2 = z2 if want_derivs else z0
    cdef Py_ssize_t i
    cdef long n
    cdef double t, ln_n, amp, th, wre, wim
    cdef double a0r, a0i, a1r, a1i, a2r, a2i
    cdef double c0r, c0i, c1r, c1i, c2r, c2i
    cdef double complex t0, t1, t2
    with nogil:
        for i in range(K):
            t = ts[i]
            a0r = a0i = a1r = a1i = a2r = a2i = 0.0
            c0r = c0i = c1r = c1i = c2r = c2i = 0.0
            for n in range(1, N):
                ln_n = log(<double> n)
                amp = exp(-sigma * ln_n)
                th = t * ln_n
                wre = amp * cos(th)
                wim = -amp * sin(th)
                kadd(&a0r, &c0r, wre)
                kadd(&a0i, &c0i, wim)
                if want_derivs:
                    kadd(&a1r, &c1r, -ln_n * wre)
                    kadd(&a1i, &c1i, -ln_n * wim)
                    kadd(&a2r, &c2r, ln_n * ln_n * wre)
                    kadd(&a2i, &c2i, ln_n * ln_n * wim)
            _tail_terms(sigma, t, N, M, bern, want_derivs, &t0, &t1, &t2)
            v0[i] = (a0r + c0r) + 1j * (a0i + c0i) + t0
            if want_derivs:
                v1[i] = (a1r + c1r) + 1j * (a1i + c1i) + t1
                v2[i] = (a2r + c2r) + 1j * (a2i + c2i) + t2
    return z0, z1, z2


def em_jets_uniform(double sigma, double t0, double dt, Py_ssize_t K,
                    long N, long M, const double[::1] bern, bint want_derivs=True):
    """Jets on the uniform grid t0 + dt*arange(K) via phasor recurrence."""
    z0 = np.empty(K, dtype=np.complex128)
    z1 = np.empty(K, dtype=np.complex128) if want_derivs else None
    z2 = np.empty(K, dtype=np.complex128) if want_derivs else None
    cdef double complex[::1] v0 = z0
    cdef double complex[::1] v1 = z1 if want_derivs else z0
    cdef double complex[::1] v2 = z2 if want_derivs else z0

    lnv_a = np.log(np.arange(1, max(N, 2), dtype=np.float64))
    amp_a = np.exp(-sigma * lnv_a)
    cur_re_a = np.empty(max(N - 1, 1), dtype=np.float64)
    cur_im_a = np.empty(max(N - 1, 1), dtype=np.float64)
    rot_re_a = np.cos(dt * lnv_a)
    rot_im_a = -np.sin(dt * lnv_a)
    cdef double[::1] lnv = lnv_a
    cdef double[::1] amp = amp_a
    cdef double[::1] cur_re = cur_re_a
    cdef double[::1] cur_im = cur_im_a
    cdef double[::1] rot_re = rot_re_a
    cdef double[::1] rot_im = rot_im_a

    cdef Py_ssize_t k
    cdef long n, nn = N - 1
    cdef double t, th, wre, wim, re, im, ln_n
    cdef double a0r, a0i, a1r, a1i, a2r, a2i
    cdef double c0r, c0i, c1r, c1i, c2r, c2i
    cdef double complex q0, q1, q2
    with nogil:
        for k in range(K):
            t = t0 + k * dt
            if k % RESTART == 0:
                for n in range(nn):
                    th = t * lnv[n]
                    cur_re[n] = amp[n] * cos(th)
                    cur_im[n] = -amp[n] * sin(th)
            a0r = a0i = a1r = a1i = a2r = a2i = 0.0
            c0r = c0i = c1r = c1i = c2r = c2i = 0.0
            for n in range(nn):
                wre = cur_re[n]
                wim = cur_im[n]
                kadd(&a0r, &c0r, wre)
                kadd(&a0i, &c0i, wim)
                if want_derivs:
                    ln_n = lnv[n]
                    kadd(&a1r, &c1r, -ln_n * wre)
                    kadd(&a1i, &c1i, -ln_n * wim)
                    kadd(&a2r, &c2r, ln_n * ln_n * wre)
                    kadd(&a2i, &c2i, ln_n * ln_n * wim)
                # advance the phasor to the next grid point
                re = wre * rot_re[n] - wim * rot_im[n]
                im = wre * rot_im[n] + wim * rot_re[n]
                cur_re[n] = re
                cur_im[n] = im
            _tail_terms(sigma, t, N, M, bern, want_derivs, &q0, &q1, &q2)
            v0[k] = (a0r + c0r) + 1j * (a0i + c0i) + q0
            if want_derivs:
                v1[k] = (a1r + c1r) + 1j * (a1i + c1i) + q1
                v2[k] = (a2r + c2r) + 1j * (a2i + c2i) + q2
    return z0, z1, z2


def dirichlet_sums(double sigma, double t, long nmax):
    """(S0, S1, S2) partial Dirichlet sums; see _zeta_py.dirichlet_sums."""
    cdef double a0r = 0, a0i = 0, a1r = 0, a1i = 0, a2r = 0, a2i = 0
    cdef double c0r = 0, c0i = 0, c1r = 0, c1i = 0, c2r = 0, c2i = 0
    cdef double ln_n, amp, th, wre, wim
    cdef long n
    with nogil:
        for n in range(1, nmax + 1):
            ln_n = log(<double> n)
            amp = exp(-sigma * ln_n)
            th = t * ln_n
            wre = amp * cos(th)
            wim = -amp * sin(th)
            kadd(&a0r, &c0r, wre)
            kadd(&a0i, &c0i, wim)
            kadd(&a1r, &c1r, ln_n * wre)
            kadd(&a1i, &c1i, ln_n * wim)
            kadd(&a2r, &c2r, ln_n * ln_n * wre)
            kadd(&a2i, &c2i, ln_n * ln_n * wim)
    return (
        complex(a0r + c0r, a0i + c0i),
        complex(a1r + c1r, a1i + c1i),
        complex(a2r + c2r, a2i + c2i),
    )
