# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled reductions over cylinder tables."""

from libc.math cimport exp, log, INFINITY

cdef extern from "_lse.h" nogil:
    double thermoifs_sum_exp(const double *buf, long k, double m)

DEF CHUNK = 512


cdef (double, double) _lse_max2(double a, const double[::1] lo, const double[::1] hi,
                                double b, const double[::1] sym) noexcept nogil:
    # Blocked two-pass log-sum-exp: each chunk is staged on the stack, its
    # maximum found, and the running sum rescaled when the maximum moves.
    cdef Py_ssize_t i, j, k, n = lo.shape[0]
    cdef double v, w, mc, m = -INFINITY, s = 0.0
    cdef double buf[CHUNK]
    for j in range(0, n, CHUNK):
        k = min(CHUNK, n - j)
        mc = -INFINITY
        for i in range(k):
            v = a * lo[j + i]
            w = a * hi[j + i]
            v = (v if v > w else w) + b * sym[j + i]
            buf[i] = v
            mc = mc if mc > v else v
        if mc == -INFINITY:
            continue
        if mc > m:
            s *= exp(m - mc)
            m = mc
        s += thermoifs_sum_exp(buf, k, m)
    return m, s


def lse_max2_partial(double a, const double[::1] lo, const double[::1] hi,
                     double b, const double[::1] sym):
    """Return ``(m, s)`` with ``m + log(s) = log sum_i exp(max(a*lo_i, a*hi_i) + b*sym_i)``."""
    cdef double m, s
    with nogil:
        m, s = _lse_max2(a, lo, hi, b, sym)
    return m, s


def lse_max2(double a, const double[::1] lo, const double[::1] hi,
             double b, const double[::1] sym):
    cdef double m, s
    with nogil:
        m, s = _lse_max2(a, lo, hi, b, sym)
    if s == 0.0:
        return -INFINITY
    return m + log(s)


def logsumexp(const double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double m = -INFINITY, s = 0.0
    with nogil:
        for i in range(n):
            m = m if m > x[i] else x[i]
        if m != -INFINITY:
            s = thermoifs_sum_exp(&x[0], n, m)
    if s == 0.0:
        return -INFINITY
    return m + log(s)
