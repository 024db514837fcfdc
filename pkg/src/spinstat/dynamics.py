"""Spin precession under a rotating-frame coupling H = S.Omega (hbar = 1).

Sign convention: the generator is ``+S.Omega`` and states evolve with
``exp(-i H t)``, so an S_z eigenstate |m> picks up ``exp(-i m theta)`` after
a coaxial rotation through total angle theta. The quantity the physics is
about, ``(-1)^(2S)`` at theta = 2 pi, does not depend on that sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels, qcore
from .errors import BadQuantumNumber, DimensionMismatch, PhaseUndefined
from .qcore import Ket, Operator
from .spinrep import SpinLabel, as_spin, rotation, spin_operators

SIGN_CONVENTION = "H=+S.Omega; U=exp(-iHt); |m> -> exp(-i m theta)|m>"


@dataclass(frozen=True)
class RotationSchedule:
    """Piecewise-constant angular velocity.

    ``times`` holds the n+1 interval edges; ``omegas[k]`` is held constant on
    ``[times[k], times[k+1])`` (left sample). Resolution is the caller's
    business: the evolution is exact for the schedule as given.
    """

    times: np.ndarray
    omegas: np.ndarray

    def __post_init__(self) -> None:
        t = np.array(self.times, dtype=float).reshape(-1)
        w = np.array(self.omegas, dtype=float).reshape(-1, 3)
        if t.size < 2 or w.shape[0] != t.size - 1:
            raise ValueError(f"need n+1 edges for n samples, got {t.size} edges and {w.shape[0]} samples")
        if not np.all(np.diff(t) > 0):
            raise ValueError("schedule times must be strictly increasing")
        t.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "omegas", w)

    @property
    def dts(self) -> np.ndarray:
        return np.diff(self.times)

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    @property
    def total_angle(self) -> float:
        return float(np.sum(np.linalg.norm(self.omegas, axis=1) * self.dts))

    def common_axis(self, tol: float = 1e-12) -> np.ndarray | None:
        """Shared unit axis of all nonzero samples (sign included), else None."""
        mags = np.linalg.norm(self.omegas, axis=1)
        live = self.omegas[mags > 0] / mags[mags > 0, None]
        if live.size == 0:
            return np.array([0.0, 0.0, 1.0])
        if np.max(np.abs(live - live[0])) > tol:
            return None
        return live[0]

    @classmethod
    def constant(cls, omega, duration: float, steps: int = 1) -> "RotationSchedule":
        t = np.linspace(0.0, duration, steps + 1)
        return cls(t, np.tile(np.asarray(omega, float), (steps, 1)))

    @classmethod
    def ramp(cls, axis, total_angle: float, duration: float, steps: int) -> "RotationSchedule":
        """omega(t) = k t along ``axis``, k chosen so the sampled angle is exact."""
        t = np.linspace(0.0, duration, steps + 1)
        left = t[:-1]
        k = total_angle / float(np.sum(left * np.diff(t)))
        return cls(t, np.outer(k * left, np.asarray(axis, float)))

    @classmethod
    def two_step(cls, axis, total_angle: float, duration: float, split: float = 0.3, ratio: float = 3.0) -> "RotationSchedule":
        """Two constant levels; the second is ``ratio`` times the first."""
        t = np.array([0.0, split * duration, duration])
        dts = np.diff(t)
        low = total_angle / (dts[0] + ratio * dts[1])
        axis = np.asarray(axis, float)
        return cls(t, np.vstack([low * axis, ratio * low * axis]))

    @classmethod
    def from_segments(cls, text: str) -> "RotationSchedule":
        """Parse coaxial segments ``"t0:t1:omega_z,t1:t2:omega_z,..."``."""
        edges, omegas = [], []
        for chunk in text.split(","):
            t0, t1, wz = (float(x) for x in chunk.strip().split(":"))
            if edges and abs(edges[-1] - t0) > 0:
                raise ValueError(f"segment starting at {t0} does not continue from {edges[-1]}")
            if not edges:
                edges.append(t0)
            edges.append(t1)
            omegas.append((0.0, 0.0, wz))
        return cls(np.array(edges), np.array(omegas))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RotationSchedule":
        return cls(np.asarray(obj["times"], float), np.asarray(obj["omegas"], float))


@dataclass(frozen=True)
class ExchangeResult:
    final_state: Ket
    accumulated_phase: float | None
    fidelity: float
    convention: str = SIGN_CONVENTION

    @property
    def phase(self) -> float:
        if self.accumulated_phase is None:
            raise PhaseUndefined(f"fidelity {self.fidelity:.3e}: state left the initial ray")
        return self.accumulated_phase


def precession_unitary(s, omega, t: float) -> Operator:
    """exp(-i t omega.S)."""
    spin = as_spin(s)
    gen = Operator(spin_operators(spin).along(omega), "hermitian")
    return qcore.evolution(gen, t)


def highest_weight(s) -> Ket:
    spin = as_spin(s)
    return Ket.basis(0, (spin.dim,))


def _lift_su2(spin: SpinLabel, quat: np.ndarray) -> Operator:
    """D^S of the SU(2) element w I - i (x,y,z).sigma."""
    quat = quat / np.linalg.norm(quat)
    w, vec = quat[0], quat[1:]
    sn = float(np.linalg.norm(vec))
    angle = 2.0 * math.atan2(sn, w)
    axis = vec / sn if sn > 0.0 else np.array([0.0, 0.0, 1.0])
    return rotation(spin, axis, angle)


def schedule_unitary(s, schedule: RotationSchedule, method: str = "kernel") -> np.ndarray:
    """Time-ordered product of the per-interval precession unitaries.

    ``method="kernel"`` composes the SU(2) elements in the compiled (or NumPy)
    kernel and lifts the product to spin S once; ``method="dense"`` multiplies
    the (2S+1)-dimensional exponentials directly.
    """
    spin = as_spin(s)
    if method == "kernel":
        quat = kernels.su2_ordered_product(schedule.dts, schedule.omegas)
        return _lift_su2(spin, np.asarray(quat)).entries
    if method == "dense":
        ops = spin_operators(spin)
        u = np.eye(spin.dim, dtype=np.complex128)
        for dt, w in zip(schedule.dts, schedule.omegas):
            u = qcore.evolution(ops.along(w), dt).entries @ u
        return u
    raise ValueError(f"unknown method {method!r}")


def exchange_phase(s, schedule: RotationSchedule, initial: Ket | None = None, method: str = "kernel") -> ExchangeResult:
    spin = as_spin(s)
    psi0 = highest_weight(spin) if initial is None else initial
    if psi0.dim != spin.dim:
        raise DimensionMismatch(f"initial state has dim {psi0.dim}, spin {spin} needs {spin.dim}")
    final = psi0.evolved(schedule_unitary(spin, schedule, method))
    fid, phase = psi0.overlap(final)
    return ExchangeResult(final, phase, fid)


def _check_m(spin: SpinLabel, m) -> Fraction:
    try:
        mf = Fraction(m)
    except (TypeError, ValueError) as exc:
        raise BadQuantumNumber(f"m={m!r} is not a number") from exc
    if abs(mf) > Fraction(spin.two_s, 2) or (2 * mf).denominator != 1 or (2 * mf - spin.two_s) % 2 != 0:
        raise BadQuantumNumber(f"m={m!r} is not in the spin-{spin} multiplet")
    return mf


def partial_swap_phase(s, alpha: float, m=None) -> complex:
    """exp(-i 2 pi alpha m): phase of |m> after a fraction alpha of a full swap."""
    spin = as_spin(s)
    mf = Fraction(spin.two_s, 2) if m is None else _check_m(spin, m)
    return complex(np.exp(-2j * math.pi * float(alpha) * float(mf)))


def two_particle_unitary(s1, s2, omega1, omega2, t: float, tol: float = 1e-10) -> Operator:
    """exp(-i t (omega1.S1 x I + I x omega2.S2)), checked to factorize."""
    a, b = as_spin(s1), as_spin(s2)
    u1 = precession_unitary(a, omega1, t)
    u2 = precession_unitary(b, omega2, t)
    local = qcore.tensor(u1, u2)
    gen = np.kron(spin_operators(a).along(omega1), np.eye(b.dim)) + np.kron(
        np.eye(a.dim), spin_operators(b).along(omega2)
    )
    joint = qcore.evolution(gen, t)
    err = qcore.max_abs_diff(local, joint)
    if err > tol:
        raise AssertionError(f"two-particle evolution does not factorize (residual {err:.3e})")
    return local


def kinetic_matrix(n_sites: int, mass: float) -> np.ndarray:
    """Periodic second difference (2 delta_xy - delta_{x,y+-1}) / 2m with h = 1."""
    k = 2.0 * np.eye(n_sites)
    for x in range(n_sites):
        k[x, (x + 1) % n_sites] -= 1.0
        k[x, (x - 1) % n_sites] -= 1.0
    return k / (2.0 * mass)


def lattice_hamiltonian(n_sites: int, mass: float, s, omega_field: Sequence) -> np.ndarray:
    spin = as_spin(s)
    field = np.asarray(omega_field, dtype=float).reshape(n_sites, 3)
    ops = spin_operators(spin)
    h = np.kron(kinetic_matrix(n_sites, mass), np.eye(spin.dim)).astype(np.complex128)
    for x in range(n_sites):
        proj = np.zeros((n_sites, n_sites))
        proj[x, x] = 1.0
        h += np.kron(proj, ops.along(field[x]))
    return h


def lattice_evolution(n_sites: int, mass: float, s, omega_field, t: float, initial: Ket) -> Ket:
    """Evolve a particle on a ring of ``n_sites`` with site-local spin coupling."""
    spin = as_spin(s)
    if n_sites > 64:
        raise ValueError("dense lattice evolution is limited to 64 sites")
    if initial.dim != n_sites * spin.dim:
        raise DimensionMismatch(f"initial dim {initial.dim} != {n_sites} x {spin.dim}")
    u = qcore.evolution(lattice_hamiltonian(n_sites, mass, spin, omega_field), t)
    out = initial.evolved(u)
    return Ket(out.amplitudes, (n_sites, spin.dim))


def momentum_state(n_sites: int, k: int, spinor) -> Ket:
    """Plane wave exp(2 pi i k x / N) / sqrt(N) on the ring, times ``spinor``."""
    x = np.arange(n_sites)
    wave = np.exp(2j * math.pi * k * x / n_sites) / math.sqrt(n_sites)
    spinor = np.asarray(spinor, dtype=np.complex128)
    return Ket.normalized(np.kron(wave, spinor), (n_sites, spinor.size))
