# cython: language_level=3
"""Compiled pair kernels for the windowed force-variance quadrature."""
import math

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos

cnp.import_array()


def variance_pair_sum(double[::1] w, double[::1] pxx, double[::1] pyy,
                      double[::1] pzz, double[::1] kz, double d):
    """Sum w_i w_j B(i, j) over all ordered node pairs.

    B is the polarization-contracted squared d-derivative of the mode
    bilinear. Rows are reduced with fsum so the result is run-to-run stable.
    """
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t i, j
    cdef double[::1] s = np.empty(n)
    cdef double[::1] c = np.empty(n)
    cdef double[::1] ks = np.empty(n)
    cdef double[::1] kc = np.empty(n)
    cdef double[::1] rows = np.empty(n)
    cdef double acc, ds, dc, si, ci, ksi, kci, xi, yi, zi
    for i in range(n):
        s[i] = sin(kz[i] * d)
        c[i] = cos(kz[i] * d)
        ks[i] = kz[i] * s[i]
        kc[i] = kz[i] * c[i]
    with nogil:
        for i in range(n):
            si = s[i]; ci = c[i]; ksi = ks[i]; kci = kc[i]
            xi = pxx[i]; yi = pyy[i]; zi = pzz[i]
            ds = 2.0 * kci * si
            dc = 2.0 * ksi * ci
            acc = 0.5 * w[i] * ((xi * xi + yi * yi) * ds * ds + zi * zi * dc * dc)
            for j in range(i + 1, n):
                ds = kci * s[j] + si * kc[j]
                dc = ksi * c[j] + ci * ks[j]
                acc = acc + w[j] * ((xi * pxx[j] + yi * pyy[j]) * ds * ds
                                    + zi * pzz[j] * dc * dc)
            rows[i] = 2.0 * w[i] * acc
    return math.fsum(rows)


def variance_pair_terms(double[::1] pxx1, double[::1] pyy1, double[::1] pzz1,
                        double[::1] kz1, double[::1] pxx2, double[::1] pyy2,
                        double[::1] pzz2, double[::1] kz2, double d):
    """Elementwise B(i, i') for matched sample pairs (Monte Carlo route)."""
    cdef Py_ssize_t n = kz1.shape[0]
    cdef Py_ssize_t i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef double[::1] o = out
    cdef double s1, c1, s2, c2, ds, dc
    with nogil:
        for i in range(n):
            s1 = sin(kz1[i] * d); c1 = cos(kz1[i] * d)
            s2 = sin(kz2[i] * d); c2 = cos(kz2[i] * d)
            ds = kz1[i] * c1 * s2 + kz2[i] * s1 * c2
            dc = kz1[i] * s1 * c2 + kz2[i] * c1 * s2
            o[i] = ((pxx1[i] * pxx2[i] + pyy1[i] * pyy2[i]) * ds * ds
                    + pzz1[i] * pzz2[i] * dc * dc)
    return out
