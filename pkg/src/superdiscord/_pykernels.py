"""Pure-Python conditional-entropy kernels (fallback for ``_ckernels``).

``blocks`` is the 16-vector produced by :func:`superdiscord.kernels.reduce_blocks`:
for mu = 0..3 the Hermitian 2x2 matrix Tr_B[rho (I (x) sigma_mu)] stored as
(m00, m11, Re m01, Im m01). A weak branch with sign s has unnormalised
A-state (M0 + s n.M)/2, where s = -tanh(x) for P(+x) and +tanh(x) for P(-x).
"""
from __future__ import annotations

import math

import numpy as np

DEGENERATE_PROB = 1e-12
INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _xlog2x(v):
    if v <= 0.0:
        return 0.0
    return v * math.log2(v)


def _branch(m, nx, ny, nz, s):
    a = 0.5 * (m[0] + s * (nx * m[4] + ny * m[8] + nz * m[12]))
    d = 0.5 * (m[1] + s * (nx * m[5] + ny * m[9] + nz * m[13]))
    gr = 0.5 * (m[2] + s * (nx * m[6] + ny * m[10] + nz * m[14]))
    gi = 0.5 * (m[3] + s * (nx * m[7] + ny * m[11] + nz * m[15]))
    p = a + d
    if p < DEGENERATE_PROB:
        return 0.0
    half = 0.5 * (a - d)
    r = math.sqrt(half * half + gr * gr + gi * gi)
    mid = 0.5 * p
    return _xlog2x(p) - _xlog2x(mid + r) - _xlog2x(mid - r)


def objective(m, theta, phi, t):
    """Weak conditional entropy (bits) at basis angles (theta, phi), t = tanh x."""
    st = math.sin(theta)
    nx = st * math.cos(phi)
    ny = st * math.sin(phi)
    nz = math.cos(theta)
    return _branch(m, nx, ny, nz, -t) + _branch(m, nx, ny, nz, t)


def _xlog2x_arr(v):
    out = np.zeros_like(v)
    pos = v > 0.0
    out[pos] = v[pos] * np.log2(v[pos])
    return out


def objective_grid(m, thetas, phis, t):
    """Objective on the outer grid thetas x phis; returns shape (len(thetas), len(phis))."""
    m = [float(v) for v in m]
    th = np.asarray(thetas, dtype=float)[:, None]
    ph = np.asarray(phis, dtype=float)[None, :]
    st = np.sin(th)
    nx = st * np.cos(ph)
    ny = st * np.sin(ph)
    nz = np.cos(th) + 0.0 * ph
    total = np.zeros(np.broadcast_shapes(th.shape, ph.shape))
    for s in (-t, t):
        a = 0.5 * (m[0] + s * (nx * m[4] + ny * m[8] + nz * m[12]))
        d = 0.5 * (m[1] + s * (nx * m[5] + ny * m[9] + nz * m[13]))
        gr = 0.5 * (m[2] + s * (nx * m[6] + ny * m[10] + nz * m[14]))
        gi = 0.5 * (m[3] + s * (nx * m[7] + ny * m[11] + nz * m[15]))
        p = a + d
        half = 0.5 * (a - d)
        r = np.sqrt(half * half + gr * gr + gi * gi)
        mid = 0.5 * p
        contrib = _xlog2x_arr(p) - _xlog2x_arr(mid + r) - _xlog2x_arr(mid - r)
        total += np.where(p < DEGENERATE_PROB, 0.0, contrib)
    return total


def golden_section(m, theta, phi, t, axis, lo, hi, xtol):
    """Golden-section search along one angle; the other angle is held fixed.

    ``axis`` 0 moves theta, 1 moves phi. Returns (argmin, value).
    """
    m = [float(v) for v in m]

    def f(v):
        if axis == 0:
            return objective(m, v, phi, t)
        return objective(m, theta, v, t)

    a, b = lo, hi
    c = b - INV_GOLDEN * (b - a)
    d = a + INV_GOLDEN * (b - a)
    fc = f(c)
    fd = f(d)
    while b - a > xtol:
        if fc < fd:
            b = d
            d = c
            fd = fc
            c = b - INV_GOLDEN * (b - a)
            fc = f(c)
        else:
            a = c
            c = d
            fc = fd
            d = a + INV_GOLDEN * (b - a)
            fd = f(d)
    if fc < fd:
        return c, fc
    return d, fd
