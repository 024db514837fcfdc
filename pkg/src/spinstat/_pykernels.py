"""Pure NumPy implementations of the hot loops.

These mirror ``spinstat._ext.ckernels`` exactly in signature and semantics.
The SU(2) product is evaluated as a pairwise tree reduction so it stays
vectorized; the ordering of factors is preserved at every level.
"""

from __future__ import annotations

import numpy as np


def _step_quaternions(dts: np.ndarray, omegas: np.ndarray) -> np.ndarray:
    mag = np.linalg.norm(omegas, axis=1)
    half = 0.5 * mag * dts
    safe = np.where(mag == 0.0, 1.0, mag)
    s = np.where(mag == 0.0, 0.0, np.sin(half) / safe)
    q = np.empty((dts.size, 4))
    q[:, 0] = np.where(mag == 0.0, 1.0, np.cos(half))
    q[:, 1:] = s[:, None] * omegas
    return q


def _compose(later: np.ndarray, earlier: np.ndarray) -> np.ndarray:
    """Row-wise quaternion of U_later @ U_earlier."""
    bw, b = later[:, :1], later[:, 1:]
    w, v = earlier[:, :1], earlier[:, 1:]
    out = np.empty_like(later)
    out[:, :1] = bw * w - np.sum(b * v, axis=1, keepdims=True)
    out[:, 1:] = bw * v + w * b + np.cross(b, v)
    return out


def su2_ordered_product(dts, omegas) -> np.ndarray:
    dts = np.ascontiguousarray(dts, dtype=float)
    omegas = np.ascontiguousarray(omegas, dtype=float)
    if omegas.shape != (dts.size, 3):
        raise ValueError("omegas must have shape (len(dts), 3)")
    if dts.size == 0:
        return np.array([1.0, 0.0, 0.0, 0.0])
    q = _step_quaternions(dts, omegas)
    while q.shape[0] > 1:
        if q.shape[0] % 2:
            q = np.vstack([q, [1.0, 0.0, 0.0, 0.0]])
        q = _compose(q[1::2], q[0::2])
    return q[0].copy()


def central_difference(samples, dt: float) -> np.ndarray:
    samples = np.ascontiguousarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[0] < 3:
        raise ValueError("need at least three samples")
    out = np.empty_like(samples)
    inv2 = 0.5 / dt
    out[0] = (-3.0 * samples[0] + 4.0 * samples[1] - samples[2]) * inv2
    out[1:-1] = (samples[2:] - samples[:-2]) * inv2
    out[-1] = (3.0 * samples[-1] - 4.0 * samples[-2] + samples[-3]) * inv2
    return out
