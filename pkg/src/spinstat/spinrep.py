"""Spin-S operators, rotation matrices D^S(R) and the Majorana embedding.

Bases are ordered by descending S_z (m = S, S-1, ..., -S) everywhere. In the
qubit picture of the Majorana construction each factor's index 0 is the
``|1>`` (m = +1/2) state and index 1 is ``|0>`` (m = -1/2), so that ``|11>``
lands on m = +1 and ``|00>`` on m = -1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import qcore
from .errors import BadAxis, NotScalar
from .qcore import Operator


@dataclass(frozen=True, order=True)
class SpinLabel:
    """Spin quantum number stored as the integer 2S."""

    two_s: int

    def __post_init__(self) -> None:
        if int(self.two_s) != self.two_s or self.two_s < 0:
            raise ValueError(f"two_s must be a non-negative integer, got {self.two_s!r}")
        object.__setattr__(self, "two_s", int(self.two_s))

    @classmethod
    def of(cls, spin) -> "SpinLabel":
        """Build from S given as 0.5, "3/2", Fraction(1, 2) or an existing label."""
        if isinstance(spin, SpinLabel):
            return spin
        two_s = Fraction(spin) * 2
        if two_s.denominator != 1:
            raise ValueError(f"{spin!r} is not a multiple of 1/2")
        return cls(int(two_s))

    @property
    def s(self) -> float:
        return self.two_s / 2

    @property
    def dim(self) -> int:
        return self.two_s + 1

    @property
    def is_fermionic(self) -> bool:
        return self.two_s % 2 == 1

    @property
    def ms(self) -> np.ndarray:
        """Magnetic quantum numbers in basis order."""
        return self.s - np.arange(self.dim)

    def __str__(self) -> str:
        return f"{self.two_s}/2" if self.two_s % 2 else str(self.two_s // 2)


def as_spin(s) -> SpinLabel:
    return SpinLabel.of(s)


@dataclass(frozen=True)
class SpinOps:
    sx: Operator
    sy: Operator
    sz: Operator

    def __iter__(self):
        return iter((self.sx, self.sy, self.sz))

    def along(self, vec) -> np.ndarray:
        """The matrix vec . S."""
        vx, vy, vz = (float(v) for v in vec)
        return vx * self.sx.entries + vy * self.sy.entries + vz * self.sz.entries

    def commutator_residual(self) -> float:
        x, y, z = (op.entries for op in self)
        return max(
            qcore.max_abs_diff(x @ y - y @ x, 1j * z),
            qcore.max_abs_diff(y @ z - z @ y, 1j * x),
            qcore.max_abs_diff(z @ x - x @ z, 1j * y),
        )

    def casimir_residual(self, spin: SpinLabel) -> float:
        x, y, z = (op.entries for op in self)
        s = spin.s
        return qcore.max_abs_diff(x @ x + y @ y + z @ z, s * (s + 1) * np.eye(spin.dim))


@lru_cache(maxsize=None)
def _ladder(two_s: int) -> tuple[np.ndarray, np.ndarray]:
    s = two_s / 2
    ms = s - np.arange(two_s + 1)
    # <m+1|S+|m> = sqrt(s(s+1) - m(m+1)); row index of m+1 is one above m
    coef = np.sqrt(s * (s + 1) - ms[1:] * (ms[1:] + 1))
    splus = np.diag(coef.astype(np.complex128), k=1)
    return splus, np.diag(ms.astype(np.complex128))


def spin_operators(s) -> SpinOps:
    spin = as_spin(s)
    splus, sz = _ladder(spin.two_s)
    sminus = splus.conj().T
    sx = 0.5 * (splus + sminus)
    sy = -0.5j * (splus - sminus)
    return SpinOps(Operator(sx, "hermitian"), Operator(sy, "hermitian"), Operator(sz, "hermitian"))


def _unit_axis(axis) -> np.ndarray:
    n = np.asarray(axis, dtype=float).reshape(3)
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise BadAxis(f"rotation axis {n.tolist()} is not a unit vector")
    return n


def rotation(s, axis, angle: float) -> Operator:
    """D^S(axis, angle) = exp(-i angle axis.S)."""
    spin = as_spin(s)
    n = _unit_axis(axis)
    gen = Operator(spin_operators(spin).along(n), "hermitian")
    return qcore.matexp(gen, -1j * float(angle))


def random_axis(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def two_pi_phase(s, rng: np.random.Generator | None = None, tol: float = 1e-10) -> complex:
    """Scalar lambda with D^S(n, 2 pi) = lambda I, checked on three random axes."""
    spin = as_spin(s)
    rng = np.random.default_rng(0) if rng is None else rng
    lam = None
    for _ in range(3):
        d = rotation(spin, random_axis(rng), 2 * math.pi).entries
        this = np.trace(d) / spin.dim
        resid = qcore.max_abs_diff(d, this * np.eye(spin.dim))
        if resid >= tol or (lam is not None and abs(this - lam) >= tol):
            raise NotScalar(f"2 pi rotation of spin {spin} is not a scalar (residual {resid:.3e})")
        lam = this
    return complex(lam)


@dataclass(frozen=True)
class MajoranaEmbedding:
    """Spin S realized on the symmetric subspace of 2S qubits.

    ``isometry`` has shape (2S+1, 2**(2S)); its rows are the (real) Dicke
    states, ordered by descending total S_z, so ``isometry.conj().T`` lifts a
    spin-S vector into the qubit register.
    """

    spin: SpinLabel
    isometry: np.ndarray
    symmetrizer: np.ndarray

    @property
    def n_qubits(self) -> int:
        return self.spin.two_s

    def lift(self, op) -> np.ndarray:
        """V^dagger op V: spin-S operator written on the qubit register."""
        v = self.isometry
        return v.conj().T @ qcore._matrix(op) @ v

    def restrict(self, op) -> np.ndarray:
        """V op V^dagger: qubit-register operator compressed to spin S."""
        v = self.isometry
        return v @ qcore._matrix(op) @ v.conj().T


def _symmetrizer(n: int) -> np.ndarray:
    """Average of all qubit permutation operators on n factors."""
    dim = 2**n
    idx = np.arange(dim)
    bits = (idx[:, None] >> np.arange(n - 1, -1, -1)) & 1
    weights = 1 << np.arange(n - 1, -1, -1)
    proj = np.zeros((dim, dim))
    perms = list(itertools.permutations(range(n)))
    for perm in perms:
        target = bits[:, list(perm)] @ weights
        proj[target, idx] += 1.0
    return proj / len(perms)


def dicke_states(n: int) -> np.ndarray:
    """Rows are normalized Dicke states of n qubits with k = 0..n flipped factors."""
    dim = 2**n
    popcount = np.array([bin(i).count("1") for i in range(dim)])
    out = np.zeros((n + 1, dim))
    for k in range(n + 1):
        out[k, popcount == k] = 1.0 / math.sqrt(math.comb(n, k))
    return out


@lru_cache(maxsize=None)
def _embedding(two_s: int) -> MajoranaEmbedding:
    if two_s < 1:
        raise ValueError("the Majorana embedding needs at least one qubit (S >= 1/2)")
    iso = dicke_states(two_s).astype(np.complex128)
    sym = _symmetrizer(two_s).astype(np.complex128)
    iso.setflags(write=False)
    sym.setflags(write=False)
    return MajoranaEmbedding(SpinLabel(two_s), iso, sym)


def majorana_embedding(s) -> MajoranaEmbedding:
    return _embedding(as_spin(s).two_s)


def qubit_power(op, n: int) -> np.ndarray:
    m = qcore._matrix(op)
    out = np.ones((1, 1), dtype=np.complex128)
    for _ in range(n):
        out = np.kron(out, m)
    return out


def verify_majorana_rotation(s, axis, angle: float) -> float:
    """max |D^S - V (D^1/2)^{x 2S} V^dagger| for one rotation."""
    emb = majorana_embedding(s)
    direct = rotation(emb.spin, axis, angle).entries
    half = rotation(SpinLabel(1), axis, angle).entries
    via_qubits = emb.restrict(qubit_power(half, emb.n_qubits))
    return qcore.max_abs_diff(direct, via_qubits)


def collective_spin(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sum over n qubits of each single-qubit S_i (= sigma_i / 2)."""
    half = spin_operators(SpinLabel(1))
    eye = np.eye(2)
    out = []
    for op in half:
        total = np.zeros((2**n, 2**n), dtype=np.complex128)
        for site in range(n):
            total += qubit_power_mixed(op.entries, eye, n, site)
        out.append(total)
    return tuple(out)


def qubit_power_mixed(op: np.ndarray, eye: np.ndarray, n: int, site: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for k in range(n):
        out = np.kron(out, op if k == site else eye)
    return out
