"""Shared constant tables for the summation kernels.

The Euler-Maclaurin correction of order k uses the factor B_{2k}/(2k)!.
Computing the Bernoulli numbers through the defining recurrence in exact
rational arithmetic and rounding once keeps the table correct to the last
float64 bit.
"""

import math
from fractions import Fraction

import numpy as np

MAX_BERNOULLI_ORDER = 16

EPS = float(np.finfo(np.float64).eps)


def _bernoulli_over_factorial(kmax: int) -> np.ndarray:
    m_top = 2 * kmax
    B = [Fraction(0)] * (m_top + 1)
    B[0] = Fraction(1)
    for m in range(1, m_top + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * B[j]
        B[m] = -acc / (m + 1)
    return np.array(
        [float(B[2 * k] / math.factorial(2 * k)) for k in range(1, kmax + 1)],
        dtype=np.float64,
    )


# BERN_FACT[k-1] = B_{2k}/(2k)!, k = 1 .. MAX_BERNOULLI_ORDER
BERN_FACT = _bernoulli_over_factorial(MAX_BERNOULLI_ORDER)
BERN_FACT.setflags(write=False)
