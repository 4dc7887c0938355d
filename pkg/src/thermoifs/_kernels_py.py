"""NumPy implementations of the compiled reductions in ``_kernels.pyx``."""

import numpy as np


def lse_max2_partial(a, lo, hi, b, sym):
    v = np.maximum(a * lo, a * hi)
    if b != 0.0:
        v += b * sym
    m = float(np.max(v))
    if m == -np.inf:
        return m, 0.0
    return m, float(np.sum(np.exp(v - m)))


def lse_max2(a, lo, hi, b, sym):
    m, s = lse_max2_partial(a, lo, hi, b, sym)
    return m + float(np.log(s))


def logsumexp(x):
    x = np.asarray(x, dtype=float)
    m = float(np.max(x))
    if m == -np.inf:
        return m
    return m + float(np.log(np.sum(np.exp(x - m))))
