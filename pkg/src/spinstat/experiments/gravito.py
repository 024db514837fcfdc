"""Finite-difference checks on the rotating-frame (gravitomagnetic) potential."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import kernels
from ..errors import TooFewSamples


def rotating_potential(omega) -> Callable[[np.ndarray], np.ndarray]:
    """A_g(r) = Omega x r."""
    w = np.asarray(omega, dtype=float).reshape(3)
    return lambda r: np.cross(w, r)


def fd_curl(field: Callable[[np.ndarray], np.ndarray], point, h: float) -> np.ndarray:
    """Curl of ``field`` at ``point`` from three-point central differences."""
    r = np.asarray(point, dtype=float)
    jac = np.empty((3, 3))  # jac[i, j] = d field_i / d x_j
    for j in range(3):
        step = np.zeros(3)
        step[j] = h
        jac[:, j] = (field(r + step) - field(r - step)) / (2.0 * h)
    return np.array([jac[2, 1] - jac[1, 2], jac[0, 2] - jac[2, 0], jac[1, 0] - jac[0, 1]])


@dataclass(frozen=True)
class CurlReport:
    omega: np.ndarray
    h: float
    points: np.ndarray
    curls: np.ndarray
    max_deviation: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < 1e-6


def gravito_curl_check(omega, grid_h: float = 1e-3, rng: np.random.Generator | None = None, n_points: int = 10) -> CurlReport:
    """Max deviation of curl(Omega x r) from 2 Omega over random points.

    The deviation is relative to |2 Omega| and absolute when Omega = 0.
    """
    if not 0.0 < grid_h <= 0.1:
        raise ValueError(f"grid_h must lie in (0, 0.1], got {grid_h!r}")
    w = np.asarray(omega, dtype=float).reshape(3)
    rng = np.random.default_rng(0) if rng is None else rng
    pts = rng.uniform(-1.0, 1.0, size=(n_points, 3))
    field = rotating_potential(w)
    curls = np.array([fd_curl(field, p, grid_h) for p in pts])
    scale = 2.0 * np.linalg.norm(w)
    dev = float(np.max(np.abs(curls - 2.0 * w)))
    if scale > 0:
        dev /= scale
    return CurlReport(w, float(grid_h), pts, curls, dev)


@dataclass(frozen=True)
class EFieldReport:
    times: np.ndarray
    e_field: np.ndarray


def gravito_efield_check(a_schedule, dt: float, t0: float = 0.0) -> EFieldReport:
    """E_g = -dA_g/dt from uniformly sampled A_g(t)."""
    a = np.asarray(a_schedule, dtype=float)
    if a.ndim == 1:
        a = a[:, None]
    if a.shape[0] < 3:
        raise TooFewSamples(f"need at least 3 samples, got {a.shape[0]}")
    e = -np.asarray(kernels.central_difference(np.ascontiguousarray(a), float(dt)))
    times = t0 + dt * np.arange(a.shape[0])
    return EFieldReport(times, e)
