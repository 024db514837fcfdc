"""First-order Galilean wave equation: matrices, plane waves and boosts.

The wave operator is ``M(E, p) = a E + b.p + c`` acting on four-component
spinors ``(phi, xi)``, with the plane-wave convention
``Phi ~ exp(i (p.x - E t))`` and hbar = 1. Its square is
``2m (E - p^2 / 2m)`` times the identity, so each null vector is a solution
of the free Schrodinger equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.transform import Rotation

from . import qcore
from .errors import CovarianceViolation, NonPositiveMass, UnexpectedNullity
from .qcore import PAULIS, Ket
from .spinrep import SpinLabel, rotation

CONDITION_TOL = 1e-12
NULL_RTOL = 1e-10

_I2 = np.eye(2, dtype=np.complex128)
_Z2 = np.zeros((2, 2), dtype=np.complex128)


def _anti(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y + y @ x


@dataclass(frozen=True)
class LLRep:
    """Matrices (a, b1, b2, b3, c) whose wave operator squares to Schrodinger's."""

    a: np.ndarray
    b: tuple[np.ndarray, np.ndarray, np.ndarray]
    c: np.ndarray
    mass: float

    def __post_init__(self) -> None:
        if not self.mass > 0:
            raise NonPositiveMass(f"mass must be positive, got {self.mass!r}")
        worst = max(self.condition_residuals().values())
        if worst >= CONDITION_TOL:
            raise ValueError(f"matrices violate the squaring conditions (residual {worst:.3e})")

    def condition_residuals(self) -> dict[str, float]:
        """Residual of each anticommutation condition, keyed by name."""
        a, c, b, m = self.a, self.c, self.b, self.mass
        eye = np.eye(4)
        res = {
            "a^2=0": qcore.max_abs_diff(a @ a, 0 * eye),
            "c^2=0": qcore.max_abs_diff(c @ c, 0 * eye),
            "{a,c}=2m": qcore.max_abs_diff(_anti(a, c), 2 * m * eye),
        }
        for i in range(3):
            res[f"{{a,b{i + 1}}}=0"] = qcore.max_abs_diff(_anti(a, b[i]), 0 * eye)
            res[f"{{c,b{i + 1}}}=0"] = qcore.max_abs_diff(_anti(c, b[i]), 0 * eye)
            for j in range(i, 3):
                target = -2.0 * eye if i == j else 0 * eye
                res[f"{{b{i + 1},b{j + 1}}}=-2d"] = qcore.max_abs_diff(_anti(b[i], b[j]), target)
        return res

    def wave_operator(self, e: float, p) -> np.ndarray:
        p = np.asarray(p, dtype=float).reshape(3)
        return self.a * e + sum(pi * bi for pi, bi in zip(p, self.b)) + self.c


def ll_matrices(mass: float = 1.0) -> LLRep:
    """Reference representation in 2x2 block form."""
    if not mass > 0:
        raise NonPositiveMass(f"mass must be positive, got {mass!r}")
    a = np.block([[_Z2, _I2], [_Z2, _Z2]])
    c = np.block([[_Z2, _Z2], [2 * mass * _I2, _Z2]])
    b = tuple(1j * np.block([[s, _Z2], [_Z2, -s]]) for s in PAULIS)
    for arr in (a, c, *b):
        arr.setflags(write=False)
    return LLRep(a, b, c, float(mass))


def verify_squaring(rep: LLRep, p, e: float) -> float:
    """max |M(e,p)^2 - 2m (e - p^2/2m) I|; holds off-shell as well."""
    p = np.asarray(p, dtype=float).reshape(3)
    m = rep.wave_operator(e, p)
    target = 2 * rep.mass * (e - p @ p / (2 * rep.mass)) * np.eye(4)
    return qcore.max_abs_diff(m @ m, target)


def null_space(matrix: np.ndarray, rtol: float = NULL_RTOL) -> np.ndarray:
    """Orthonormal null-space basis as columns, by singular-value thresholding."""
    _, sv, vh = np.linalg.svd(matrix)
    cutoff = rtol * (sv[0] if sv.size else 0.0)
    rank = int(np.sum(sv > cutoff))
    return vh[rank:].conj().T


def spinor_constraint_residual(rep: LLRep, p, spinor) -> float:
    """|phi - (i sigma.p / 2m) xi| for the reference block form."""
    p = np.asarray(p, dtype=float).reshape(3)
    v = np.asarray(spinor, dtype=np.complex128).reshape(4)
    sp = sum(pi * s for pi, s in zip(p, PAULIS))
    return float(np.max(np.abs(v[:2] - (1j * sp / (2 * rep.mass)) @ v[2:])))


@dataclass(frozen=True)
class PlaneWaveSolution:
    momentum: np.ndarray
    energy: float
    spinor4: Ket
    mass: float

    def __post_init__(self) -> None:
        p = np.array(self.momentum, dtype=float).reshape(3)
        p.setflags(write=False)
        object.__setattr__(self, "momentum", p)
        if abs(self.energy - p @ p / (2 * self.mass)) > 1e-10 * max(1.0, abs(self.energy)):
            raise ValueError("energy is off the Schrodinger mass shell")

    @property
    def phi(self) -> np.ndarray:
        return self.spinor4.amplitudes[:2]

    @property
    def xi(self) -> np.ndarray:
        return self.spinor4.amplitudes[2:]

    def residual(self, rep: LLRep) -> float:
        """max |M(E, p) spinor|."""
        return float(np.max(np.abs(rep.wave_operator(self.energy, self.momentum) @ self.spinor4.amplitudes)))


def plane_wave_solutions(rep: LLRep, p) -> list[PlaneWaveSolution]:
    p = np.asarray(p, dtype=float).reshape(3)
    energy = float(p @ p) / (2 * rep.mass)
    basis = null_space(rep.wave_operator(energy, p))
    if basis.shape[1] != 2:
        raise UnexpectedNullity(f"expected a 2-dim null space on shell, got {basis.shape[1]}")
    sols = [PlaneWaveSolution(p, energy, Ket.normalized(basis[:, k], (2, 2)), rep.mass) for k in range(2)]
    for sol in sols:
        if sol.residual(rep) > 1e-10 or spinor_constraint_residual(rep, p, sol.spinor4.amplitudes) > 1e-10:
            raise UnexpectedNullity("null vector fails the spinor constraint")
    return sols


@dataclass(frozen=True)
class GalileanBoost:
    """x' = R x + v t + d together with the constant phase offset C."""

    velocity: np.ndarray = field(default_factory=lambda: np.zeros(3))
    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    displacement: np.ndarray = field(default_factory=lambda: np.zeros(3))
    phase_const: float = 0.0

    def __post_init__(self) -> None:
        r = np.array(self.rotation, dtype=float).reshape(3, 3)
        if qcore.max_abs_diff(r.T @ r, np.eye(3)) >= 1e-12 or abs(np.linalg.det(r) - 1.0) >= 1e-12:
            raise ValueError("rotation must be a proper orthogonal matrix")
        for name, val in (("velocity", self.velocity), ("displacement", self.displacement), ("rotation", r)):
            arr = np.array(val, dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "phase_const", float(self.phase_const))

    @classmethod
    def from_rotvec(cls, rotvec, velocity=(0, 0, 0), displacement=(0, 0, 0), phase_const=0.0):
        r = Rotation.from_rotvec(np.asarray(rotvec, dtype=float)).as_matrix()
        # re-orthonormalize so the 1e-12 invariant is met
        u, _, vt = np.linalg.svd(r)
        return cls(np.asarray(velocity, float), u @ vt, np.asarray(displacement, float), phase_const)

    def then(self, second: "GalileanBoost", mass: float) -> "GalileanBoost":
        """The single boost equal to applying ``self`` first, then ``second``."""
        r2 = second.rotation
        return GalileanBoost(
            velocity=r2 @ self.velocity + second.velocity,
            rotation=r2 @ self.rotation,
            displacement=r2 @ self.displacement + second.displacement,
            phase_const=self.phase_const + second.phase_const + mass * second.velocity @ (r2 @ self.displacement),
        )

    def apply_to_point(self, x, t: float) -> np.ndarray:
        return self.rotation @ np.asarray(x, float) + self.velocity * t + self.displacement

    def spin_half(self) -> np.ndarray:
        """An SU(2) preimage D^1/2(R) of the spatial rotation (sign is a choice)."""
        rotvec = Rotation.from_matrix(self.rotation).as_rotvec()
        angle = float(np.linalg.norm(rotvec))
        if angle == 0.0:
            return np.eye(2, dtype=np.complex128)
        return rotation(SpinLabel(1), rotvec / angle, angle).entries

    def spinor_matrix(self, mass: float) -> np.ndarray:
        """4x4 action on (phi, xi): rotate both halves, then shift phi by (i sigma.v / 2) xi."""
        d = self.spin_half()
        sv = sum(vi * s for vi, s in zip(self.velocity, PAULIS))
        shear = np.block([[_I2, 0.5j * sv], [_Z2, _I2]])
        return shear @ np.block([[d, _Z2], [_Z2, d]])


def boost_phase(boost: GalileanBoost, mass: float, x, t: float) -> float:
    """f(x, t) = m |v|^2 t / 2 + m v.(R x) + C."""
    v = boost.velocity
    return float(0.5 * mass * (v @ v) * t + mass * v @ (boost.rotation @ np.asarray(x, float)) + boost.phase_const)


def apply_boost(boost: GalileanBoost, sol: PlaneWaveSolution, rep: LLRep, tol: float = 1e-9) -> PlaneWaveSolution:
    m = rep.mass
    v = boost.velocity
    rp = boost.rotation @ sol.momentum
    p_new = rp + m * v
    e_new = sol.energy + v @ rp + 0.5 * m * (v @ v)
    spinor = boost.spinor_matrix(m) @ sol.spinor4.amplitudes
    spinor = spinor / np.linalg.norm(spinor)
    resid = float(np.max(np.abs(rep.wave_operator(e_new, p_new) @ spinor)))
    if resid > tol:
        raise CovarianceViolation(f"boosted spinor misses M(E', p') by {resid:.3e}")
    return PlaneWaveSolution(p_new, float(e_new), Ket(spinor, (2, 2)), m)
