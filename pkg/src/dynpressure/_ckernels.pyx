# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled basis kernels; same contract as ``_pykernels``.

cos(jx), sin(jx) and the vertical exponentials are generated by
multiplicative recurrence instead of one libm call per mode.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, exp, isinf, fmod, M_PI

cnp.import_array()

BACKEND = "cython"


cdef inline void _point(double x, double y, double depth, int n,
                        double *s, double *c, double *cj, double *sj) noexcept nogil:
    cdef double c1, s1
    cdef double cc, ss, tmp
    cdef double e1, e1j, e2, e2j, q, qj
    cdef int j
    x = fmod(x, 2.0 * M_PI)
    c1 = cos(x)
    s1 = sin(x)
    cc = c1
    ss = s1
    if isinf(depth):
        e1 = exp(y)
        e1j = e1
        for j in range(n):
            s[j] = e1j
            c[j] = e1j
            cj[j] = cc
            sj[j] = ss
            e1j *= e1
            tmp = cc * c1 - ss * s1
            ss = ss * c1 + cc * s1
            cc = tmp
    else:
        e1 = exp(y)
        e2 = exp(-(y + 2.0 * depth))
        q = exp(-2.0 * depth)
        e1j = e1
        e2j = e2
        qj = q
        for j in range(n):
            s[j] = (e1j - e2j) / (1.0 + qj)
            c[j] = (e1j + e2j) / (1.0 + qj)
            cj[j] = cc
            sj[j] = ss
            e1j *= e1
            e2j *= e2
            qj *= q
            tmp = cc * c1 - ss * s1
            ss = ss * c1 + cc * s1
            cc = tmp


def basis(x, y, int n, double depth):
    cdef cnp.ndarray[double, ndim=1] xa = np.ascontiguousarray(x, dtype=float).ravel()
    cdef cnp.ndarray[double, ndim=1] ya = np.ascontiguousarray(y, dtype=float).ravel()
    cdef Py_ssize_t npts = xa.shape[0], i
    cdef int j
    cdef double jj
    phi = np.empty((npts, n))
    phx = np.empty((npts, n))
    phy = np.empty((npts, n))
    phxx = np.empty((npts, n))
    phxy = np.empty((npts, n))
    cdef double[:, ::1] p0 = phi, p1 = phx, p2 = phy, p3 = phxx, p4 = phxy
    cdef double[::1] s = np.empty(n), c = np.empty(n), cj = np.empty(n), sj = np.empty(n)
    with nogil:
        for i in range(npts):
            _point(xa[i], ya[i], depth, n, &s[0], &c[0], &cj[0], &sj[0])
            for j in range(n):
                jj = j + 1.0
                p0[i, j] = s[j] * cj[j]
                p1[i, j] = -jj * s[j] * sj[j]
                p2[i, j] = jj * c[j] * cj[j]
                p3[i, j] = -jj * jj * s[j] * cj[j]
                p4[i, j] = -jj * jj * c[j] * sj[j]
    return phi, phx, phy, phxx, phxy


def series(b, x, y, double depth):
    cdef cnp.ndarray[double, ndim=1] ba = np.ascontiguousarray(b, dtype=float).ravel()
    cdef cnp.ndarray[double, ndim=1] xa = np.ascontiguousarray(x, dtype=float).ravel()
    cdef cnp.ndarray[double, ndim=1] ya = np.ascontiguousarray(y, dtype=float).ravel()
    cdef Py_ssize_t npts = xa.shape[0], i
    cdef int n = ba.shape[0], j
    cdef double jj, f0, f1, f2, f3, f4, bs, bc
    out = np.empty((5, npts))
    cdef double[:, ::1] o = out
    cdef double[::1] s = np.empty(max(n, 1)), c = np.empty(max(n, 1))
    cdef double[::1] cj = np.empty(max(n, 1)), sj = np.empty(max(n, 1))
    with nogil:
        for i in range(npts):
            _point(xa[i], ya[i], depth, n, &s[0], &c[0], &cj[0], &sj[0])
            f0 = 0.0
            f1 = 0.0
            f2 = 0.0
            f3 = 0.0
            f4 = 0.0
            for j in range(n):
                jj = j + 1.0
                bs = ba[j] * s[j]
                bc = ba[j] * c[j]
                f0 += bs * cj[j]
                f1 -= jj * bs * sj[j]
                f2 += jj * bc * cj[j]
                f3 -= jj * jj * bs * cj[j]
                f4 -= jj * jj * bc * sj[j]
            o[0, i] = f0
            o[1, i] = f1
            o[2, i] = f2
            o[3, i] = f3
            o[4, i] = f4
    return out[0], out[1], out[2], out[3], out[4]
