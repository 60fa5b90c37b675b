# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``superdiscord._pykernels``; same block layout and algorithm."""
from libc.math cimport sin, cos, sqrt, log2

import numpy as np

cdef double DEGENERATE_PROB = 1e-12
cdef double INV_GOLDEN = (sqrt(5.0) - 1.0) / 2.0


cdef inline double _xlog2x(double v) noexcept nogil:
    if v <= 0.0:
        return 0.0
    return v * log2(v)


cdef inline double _branch(const double* m, double nx, double ny, double nz,
                           double s) noexcept nogil:
    cdef double a = 0.5 * (m[0] + s * (nx * m[4] + ny * m[8] + nz * m[12]))
    cdef double d = 0.5 * (m[1] + s * (nx * m[5] + ny * m[9] + nz * m[13]))
    cdef double gr = 0.5 * (m[2] + s * (nx * m[6] + ny * m[10] + nz * m[14]))
    cdef double gi = 0.5 * (m[3] + s * (nx * m[7] + ny * m[11] + nz * m[15]))
    cdef double p = a + d
    if p < DEGENERATE_PROB:
        return 0.0
    cdef double half = 0.5 * (a - d)
    cdef double r = sqrt(half * half + gr * gr + gi * gi)
    cdef double mid = 0.5 * p
    return _xlog2x(p) - _xlog2x(mid + r) - _xlog2x(mid - r)


cdef inline double _objective(const double* m, double theta, double phi,
                              double t) noexcept nogil:
    cdef double st = sin(theta)
    cdef double nx = st * cos(phi)
    cdef double ny = st * sin(phi)
    cdef double nz = cos(theta)
    return _branch(m, nx, ny, nz, -t) + _branch(m, nx, ny, nz, t)


cdef void _load(m, double* buf):
    cdef Py_ssize_t i
    if len(m) != 16:
        raise ValueError("expected 16 block coefficients")
    for i in range(16):
        buf[i] = float(m[i])


def objective(m, double theta, double phi, double t):
    cdef double buf[16]
    _load(m, buf)
    return _objective(buf, theta, phi, t)


def objective_grid(m, thetas, phis, double t):
    cdef double buf[16]
    _load(m, buf)
    cdef double[::1] th = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] ph = np.ascontiguousarray(phis, dtype=np.float64)
    out = np.empty((th.shape[0], ph.shape[0]), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double[::1] cph = np.cos(ph)
    cdef double[::1] sph = np.sin(ph)
    cdef Py_ssize_t i, j
    cdef double st, ct
    with nogil:
        for i in range(th.shape[0]):
            st = sin(th[i])
            ct = cos(th[i])
            for j in range(ph.shape[0]):
                o[i, j] = (_branch(buf, st * cph[j], st * sph[j], ct, -t)
                           + _branch(buf, st * cph[j], st * sph[j], ct, t))
    return out


def golden_section(m, double theta, double phi, double t, int axis,
                   double lo, double hi, double xtol):
    cdef double buf[16]
    _load(m, buf)
    cdef double a = lo, b = hi
    cdef double c = b - INV_GOLDEN * (b - a)
    cdef double d = a + INV_GOLDEN * (b - a)
    cdef double fc, fd
    if axis == 0:
        fc = _objective(buf, c, phi, t)
        fd = _objective(buf, d, phi, t)
    else:
        fc = _objective(buf, theta, c, t)
        fd = _objective(buf, theta, d, t)
    with nogil:
        while b - a > xtol:
            if fc < fd:
                b = d
                d = c
                fd = fc
                c = b - INV_GOLDEN * (b - a)
                fc = _objective(buf, c, phi, t) if axis == 0 else _objective(buf, theta, c, t)
            else:
                a = c
                c = d
                fc = fd
                d = a + INV_GOLDEN * (b - a)
                fd = _objective(buf, d, phi, t) if axis == 0 else _objective(buf, theta, d, t)
    if fc < fd:
        return c, fc
    return d, fd
