# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Monte Carlo correlation sampling and the Gauss
hypergeometric series.  Signatures mirror ``_kernels_py``; the sampler
consumes the bit generator's stream in exactly the same order, so a given
seed yields the same Gaussian draws under either backend."""

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport fabs, sqrt

import numpy as np

cimport numpy as cnp
from numpy.random cimport bitgen_t
from numpy.random.c_distributions cimport random_standard_normal_fill

cnp.import_array()

NAME = "compiled"


def mc_r_batch(bit_generator, Py_ssize_t n, double rho, Py_ssize_t count):
    """Plug-in correlation of ``count`` bivariate-normal samples of size ``n``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.empty(count * n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e = np.empty(count * n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(count, dtype=np.float64)
    cdef double[::1] xv = x
    cdef double[::1] ev = e
    cdef double[::1] ov = out
    cdef bitgen_t *rng
    cdef double c = sqrt(1.0 - rho * rho)
    cdef double xi, yi, sx, sy, sxx, syy, sxy, mx, my, vx, vy, r
    cdef Py_ssize_t i, j, base

    capsule = bit_generator.capsule
    rng = <bitgen_t *> PyCapsule_GetPointer(capsule, "BitGenerator")
    with bit_generator.lock, nogil:
        # Same stream order as the python backend: X block, then noise block.
        random_standard_normal_fill(rng, count * n, &xv[0])
        random_standard_normal_fill(rng, count * n, &ev[0])
        for i in range(count):
            base = i * n
            sx = sy = sxx = syy = sxy = 0.0
            for j in range(n):
                xi = xv[base + j]
                yi = rho * xi + c * ev[base + j]
                sx += xi
                sy += yi
                sxx += xi * xi
                syy += yi * yi
                sxy += xi * yi
            mx = sx / n
            my = sy / n
            vx = sxx / n - mx * mx
            vy = syy / n - my * my
            r = (sxy / n - mx * my) / sqrt(vx * vy)
            if r > 1.0:
                r = 1.0
            elif r < -1.0:
                r = -1.0
            ov[i] = r
    return out


cdef inline double _series_point(double a, double b, double c, double x,
                                 double rtol, long max_terms,
                                 long *terms_used, bint *converged) nogil:
    cdef double total = 1.0
    cdef double term = 1.0
    cdef long k
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * x
        total += term
        if fabs(term) <= rtol * fabs(total):
            terms_used[0] = k + 1
            converged[0] = 1
            return total
    terms_used[0] = max_terms
    converged[0] = 0
    return total


def hyp2f1(double a, double b, double c, double x, double rtol, long max_terms):
    """Gauss series at one point: returns (value, terms_used, converged)."""
    cdef long terms = 0
    cdef bint ok = 0
    cdef double value = _series_point(a, b, c, x, rtol, max_terms, &terms, &ok)
    return value, terms, bool(ok)


def hyp2f1_grid(double a, double b, double c, xs, double rtol, long max_terms):
    """Gauss series on a grid: returns (values, max_terms_used, all_converged)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xarr = np.ascontiguousarray(xs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(xarr.shape[0], dtype=np.float64)
    cdef double[::1] xv = xarr
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef long terms = 0, worst = 0
    cdef bint ok = 0, all_ok = 1
    with nogil:
        for i in range(xv.shape[0]):
            ov[i] = _series_point(a, b, c, xv[i], rtol, max_terms, &terms, &ok)
            if terms > worst:
                worst = terms
            if not ok:
                all_ok = 0
    return out, int(worst), bool(all_ok)
