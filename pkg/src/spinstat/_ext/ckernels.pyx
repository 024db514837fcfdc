# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the inner loops in ``spinstat._pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()


def su2_ordered_product(const double[::1] dts, const double[:, ::1] omegas):
    """Time-ordered product of exp(-i dt_k omega_k . sigma / 2).

    Returns the quaternion (w, x, y, z) of U = w I - i (x sx + y sy + z sz),
    accumulated as U <- U_k U so later steps act on the left.
    """
    cdef Py_ssize_t n = dts.shape[0]
    if omegas.shape[0] != n or omegas.shape[1] != 3:
        raise ValueError("omegas must have shape (len(dts), 3)")
    cdef double w = 1.0, x = 0.0, y = 0.0, z = 0.0
    cdef double nw, nx, ny, nz, ox, oy, oz, mag, half, c, s, bw, bx, by, bz
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            ox = omegas[k, 0]
            oy = omegas[k, 1]
            oz = omegas[k, 2]
            mag = sqrt(ox * ox + oy * oy + oz * oz)
            if mag == 0.0:
                continue
            half = 0.5 * mag * dts[k]
            c = cos(half)
            s = sin(half) / mag
            bw = c
            bx = s * ox
            by = s * oy
            bz = s * oz
            # (bw - i b.sigma)(w - i v.sigma) = bw w - b.v - i (bw v + w b + b x v).sigma
            nw = bw * w - (bx * x + by * y + bz * z)
            nx = bw * x + w * bx + (by * z - bz * y)
            ny = bw * y + w * by + (bz * x - bx * z)
            nz = bw * z + w * bz + (bx * y - by * x)
            w = nw
            x = nx
            y = ny
            z = nz
    return np.array([w, x, y, z])


def central_difference(const double[:, ::1] samples, double dt):
    """Second-order derivative estimate of a sampled vector series.

    Interior points use the centred stencil; the two ends use the one-sided
    three-point stencils, so affine series are differentiated exactly.
    """
    cdef Py_ssize_t n = samples.shape[0], d = samples.shape[1], k, j
    if n < 3:
        raise ValueError("need at least three samples")
    out = np.empty((n, d))
    cdef double[:, ::1] o = out
    cdef double inv2 = 0.5 / dt
    with nogil:
        for j in range(d):
            o[0, j] = (-3.0 * samples[0, j] + 4.0 * samples[1, j] - samples[2, j]) * inv2
            for k in range(1, n - 1):
                o[k, j] = (samples[k + 1, j] - samples[k - 1, j]) * inv2
            o[n - 1, j] = (3.0 * samples[n - 1, j] - 4.0 * samples[n - 2, j] + samples[n - 3, j]) * inv2
    return out
