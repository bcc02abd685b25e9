# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dispersion kernels (Cython twin of ``_pure``).

Scalar entry points feed bracketing root-finders; array entry points
take flat, equal-length float64 arrays (the package-level dispatch
broadcasts and reshapes around them).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()

BACKEND = "compiled"


cdef inline double _n2(double A, const double[::1] B, const double[::1] C,
                       double D, double wl) nogil:
    cdef double wl2 = wl * wl
    cdef double acc = A + D * wl2
    cdef Py_ssize_t j
    for j in range(B.shape[0]):
        acc += B[j] / (wl2 - C[j])
    return acc


cdef inline double _dn2(double A, const double[::1] B, const double[::1] C,
                        double D, double wl) nogil:
    cdef double wl2 = wl * wl
    cdef double acc = 2.0 * D * wl
    cdef double d
    cdef Py_ssize_t j
    for j in range(B.shape[0]):
        d = wl2 - C[j]
        acc -= 2.0 * wl * B[j] / (d * d)
    return acc


cdef inline double _group_index(double A, const double[::1] B, const double[::1] C,
                                double D, double wl) nogil:
    cdef double n = sqrt(_n2(A, B, C, D, wl))
    return n - wl * _dn2(A, B, C, D, wl) / (2.0 * n)


cdef inline double _angle_index(double Aa, const double[::1] Ba, const double[::1] Ca, double Da,
                                double Ab, const double[::1] Bb, const double[::1] Cb, double Db,
                                double theta, double wl) nogil:
    cdef double na2 = _n2(Aa, Ba, Ca, Da, wl)
    cdef double nb2 = _n2(Ab, Bb, Cb, Db, wl)
    cdef double cth = cos(theta)
    cdef double sth = sin(theta)
    return 1.0 / sqrt(cth * cth / na2 + sth * sth / nb2)


cdef inline double _angle_group_index(double Aa, const double[::1] Ba, const double[::1] Ca, double Da,
                                      double Ab, const double[::1] Bb, const double[::1] Cb, double Db,
                                      double theta, double wl) nogil:
    cdef double na2 = _n2(Aa, Ba, Ca, Da, wl)
    cdef double nb2 = _n2(Ab, Bb, Cb, Db, wl)
    cdef double dna2 = _dn2(Aa, Ba, Ca, Da, wl)
    cdef double dnb2 = _dn2(Ab, Bb, Cb, Db, wl)
    cdef double cth2 = cos(theta) ** 2
    cdef double sth2 = sin(theta) ** 2
    cdef double n = 1.0 / sqrt(cth2 / na2 + sth2 / nb2)
    cdef double dn = n * n * n * (cth2 * dna2 / (2.0 * na2 * na2)
                                  + sth2 * dnb2 / (2.0 * nb2 * nb2))
    return n - wl * dn


def n2_scalar(double A, const double[::1] B, const double[::1] C, double D, double wl):
    return _n2(A, B, C, D, wl)


def dn2_dwl_scalar(double A, const double[::1] B, const double[::1] C, double D, double wl):
    return _dn2(A, B, C, D, wl)


def index_scalar(double A, const double[::1] B, const double[::1] C, double D, double wl):
    return sqrt(_n2(A, B, C, D, wl))


def group_index_scalar(double A, const double[::1] B, const double[::1] C, double D, double wl):
    return _group_index(A, B, C, D, wl)


def angle_index_scalar(double Aa, const double[::1] Ba, const double[::1] Ca, double Da,
                       double Ab, const double[::1] Bb, const double[::1] Cb, double Db,
                       double theta, double wl):
    return _angle_index(Aa, Ba, Ca, Da, Ab, Bb, Cb, Db, theta, wl)


def angle_group_index_scalar(double Aa, const double[::1] Ba, const double[::1] Ca, double Da,
                             double Ab, const double[::1] Bb, const double[::1] Cb, double Db,
                             double theta, double wl):
    return _angle_group_index(Aa, Ba, Ca, Da, Ab, Bb, Cb, Db, theta, wl)


def n2_flat(double A, const double[::1] B, const double[::1] C, double D,
            const double[::1] wl):
    cdef Py_ssize_t n = wl.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            o[j] = _n2(A, B, C, D, wl[j])
    return out


def dn2_dwl_flat(double A, const double[::1] B, const double[::1] C, double D,
                 const double[::1] wl):
    cdef Py_ssize_t n = wl.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            o[j] = _dn2(A, B, C, D, wl[j])
    return out


def index_flat(double A, const double[::1] B, const double[::1] C, double D,
               const double[::1] wl):
    cdef Py_ssize_t n = wl.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            o[j] = sqrt(_n2(A, B, C, D, wl[j]))
    return out


def group_index_flat(double A, const double[::1] B, const double[::1] C, double D,
                     const double[::1] wl):
    cdef Py_ssize_t n = wl.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            o[j] = _group_index(A, B, C, D, wl[j])
    return out


def angle_index_flat(double Aa, const double[::1] Ba, const double[::1] Ca, double Da,
                     double Ab, const double[::1] Bb, const double[::1] Cb, double Db,
                     const double[::1] theta, const double[::1] wl):
    cdef Py_ssize_t n = wl.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            o[j] = _angle_index(Aa, Ba, Ca, Da, Ab, Bb, Cb, Db, theta[j], wl[j])
    return out


def angle_group_index_flat(double Aa, const double[::1] Ba, const double[::1] Ca, double Da,
                           double Ab, const double[::1] Bb, const double[::1] Cb, double Db,
                           const double[::1] theta, const double[::1] wl):
    cdef Py_ssize_t n = wl.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            o[j] = _angle_group_index(Aa, Ba, Ca, Da, Ab, Bb, Cb, Db, theta[j], wl[j])
    return out
