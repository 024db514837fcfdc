"""Dense complex linear algebra and pure-state information measures.

Conventions shared by every other module:

* Tensor products are row-major Kronecker products, leftmost factor slowest.
* Kets are compared up to global phase through ``|<a|b>|`` and ``arg <a|b>``,
  never component by component.
* Constructor invariants are checked at ``CONSTRUCT_TOL``; quantities that
  accumulate over an evolution are checked at ``EVOLVE_TOL``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatch,
    NonFiniteEntries,
    NotNormalized,
    PhaseUndefined,
    StructureViolation,
)

CONSTRUCT_TOL = 1e-12
EVOLVE_TOL = 1e-9
PHASE_VISIBILITY_FLOOR = 1e-9

TAGS = ("unitary", "hermitian", "general")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


def wrap_phase(phi: float) -> float:
    """Map an angle onto (-pi, pi]."""
    return math.pi - ((math.pi - float(phi)) % (2.0 * math.pi))


def phase_distance(a: float, b: float) -> float:
    """Distance between two angles on the circle."""
    d = (float(a) - float(b)) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


@dataclass(frozen=True)
class Ket:
    """Normalized state vector with explicit tensor-factor structure."""

    amplitudes: np.ndarray
    factor_dims: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        dims = tuple(int(d) for d in self.factor_dims) or (amps.size,)
        if any(d <= 0 for d in dims) or math.prod(dims) != amps.size:
            raise DimensionMismatch(
                f"factor_dims {dims} do not multiply to {amps.size} amplitudes"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > CONSTRUCT_TOL:
            raise NotNormalized(f"ket norm {norm!r} differs from 1")
        object.__setattr__(self, "amplitudes", _frozen(amps))
        object.__setattr__(self, "factor_dims", dims)

    @classmethod
    def normalized(cls, amplitudes, factor_dims: Sequence[int] = ()) -> "Ket":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise NotNormalized("cannot normalize the zero vector")
        return cls(amps / norm, tuple(factor_dims))

    @classmethod
    def basis(cls, index: int, factor_dims: Sequence[int]) -> "Ket":
        amps = np.zeros(math.prod(factor_dims), dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps, tuple(factor_dims))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def inner(self, other: "Ket") -> complex:
        """<self|other>."""
        if other.dim != self.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def overlap(self, other: "Ket") -> tuple[float, float | None]:
        """(fidelity, phase) of <self|other>; phase is None below the floor."""
        z = self.inner(other)
        fid = min(abs(z), 1.0)
        if fid <= PHASE_VISIBILITY_FLOOR:
            return fid, None
        return fid, wrap_phase(np.angle(z))

    def evolved(self, unitary) -> "Ket":
        """Apply ``unitary`` and renormalize after an accumulated-error check."""
        u = _matrix(unitary)
        if u.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"operator {u.shape} on ket of dim {self.dim}")
        return _renormalized(u @ self.amplitudes, self.factor_dims)


def _renormalized(amps: np.ndarray, factor_dims: Sequence[int]) -> Ket:
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > EVOLVE_TOL:
        raise NotNormalized(f"evolution drifted the norm to {norm!r}")
    return Ket(amps / norm, tuple(factor_dims))


@dataclass(frozen=True)
class Operator:
    """Dense square matrix carrying a checked structural tag."""

    entries: np.ndarray
    tag: str = "general"

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"operator must be square, got {m.shape}")
        if self.tag not in TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")
        if not np.all(np.isfinite(m)):
            raise NonFiniteEntries("operator has non-finite entries")
        if self.tag == "unitary":
            err = _max_abs(m.conj().T @ m - np.eye(m.shape[0]))
            if err >= CONSTRUCT_TOL:
                raise StructureViolation(f"not unitary: residual {err:.3e}")
        elif self.tag == "hermitian":
            err = _max_abs(m - m.conj().T)
            if err >= CONSTRUCT_TOL:
                raise StructureViolation(f"not hermitian: residual {err:.3e}")
        object.__setattr__(self, "entries", _frozen(m))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __matmul__(self, other):
        if isinstance(other, Ket):
            return other.evolved(self)
        out = self.entries @ _matrix(other)
        tag = "unitary" if self.tag == getattr(other, "tag", None) == "unitary" else "general"
        return Operator(out, tag=_checked_tag(out, tag))

    @property
    def dagger(self) -> "Operator":
        return Operator(self.entries.conj().T, tag=self.tag)


def _checked_tag(m: np.ndarray, tag: str) -> str:
    # products of unitaries drift; keep the tag only while it still holds
    if tag == "unitary" and _max_abs(m.conj().T @ m - np.eye(m.shape[0])) >= CONSTRUCT_TOL:
        return "general"
    return tag


@dataclass(frozen=True)
class DensityOperator:
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"density operator must be square, got {m.shape}")
        herm = _max_abs(m - m.conj().T)
        if herm >= CONSTRUCT_TOL:
            raise StructureViolation(f"density operator not hermitian ({herm:.3e})")
        tr = np.trace(m)
        if abs(tr - 1.0) >= CONSTRUCT_TOL:
            raise StructureViolation(f"density operator trace {tr!r}")
        lo = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())
        if lo < -1e-10:
            raise StructureViolation(f"negative eigenvalue {lo:.3e}")
        object.__setattr__(self, "entries", _frozen(m))

    @classmethod
    def from_ket(cls, psi: Ket) -> "DensityOperator":
        a = psi.amplitudes
        return cls(np.outer(a, a.conj()))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


Tensorable = Union[Operator, Ket, np.ndarray]


def _matrix(x) -> np.ndarray:
    if isinstance(x, (Operator, DensityOperator)):
        return x.entries
    return np.asarray(x, dtype=np.complex128)


def _max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def max_abs_diff(a, b) -> float:
    return _max_abs(_matrix(a) - _matrix(b))


def tensor(a: Tensorable, b: Tensorable):
    """Kronecker product of two kets or two operators (leftmost factor slowest)."""
    if isinstance(a, Ket) and isinstance(b, Ket):
        return Ket(np.kron(a.amplitudes, b.amplitudes), a.factor_dims + b.factor_dims)
    if isinstance(a, Ket) or isinstance(b, Ket):
        raise TypeError("tensor() needs two kets or two operators")
    ma, mb = _matrix(a), _matrix(b)
    out = np.kron(ma, mb)
    tags = {getattr(a, "tag", "general"), getattr(b, "tag", "general")}
    tag = tags.pop() if len(tags) == 1 else "general"
    return Operator(out, tag=_checked_tag(out, tag))


def tensor_all(items: Iterable[Tensorable]):
    items = list(items)
    if not items:
        raise ValueError("empty tensor product")
    out = items[0]
    for it in items[1:]:
        out = tensor(out, it)
    return out


def is_hermitian(m, tol: float = CONSTRUCT_TOL) -> bool:
    m = _matrix(m)
    return _max_abs(m - m.conj().T) < tol


def matexp(h, scale: complex) -> Operator:
    """Return ``exp(scale * h)``.

    A Hermitian generator with a purely imaginary ``scale`` goes through its
    eigendecomposition, which keeps the result unitary to roundoff. Anything
    else falls back to scaling-and-squaring with a Pade approximant.
    """
    m = _matrix(h)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matexp needs a square matrix, got {m.shape}")
    scale = complex(scale)
    hermitian = getattr(h, "tag", None) == "hermitian" or is_hermitian(m)
    if scale == 0.0:
        return Operator(np.eye(m.shape[0], dtype=np.complex128), tag="unitary" if hermitian else "general")
    if hermitian and scale.real == 0.0:
        evals, vecs = np.linalg.eigh(0.5 * (m + m.conj().T))
        out = (vecs * np.exp(scale * evals)) @ vecs.conj().T
        return Operator(out, tag="unitary")
    with np.errstate(over="raise", invalid="raise"):
        try:
            out = scipy.linalg.expm(scale * m)
        except FloatingPointError as exc:
            raise NonFiniteEntries(str(exc)) from exc
    if not np.all(np.isfinite(out)):
        raise NonFiniteEntries("overflow while squaring")
    return Operator(out, tag="general")


def evolution(h, t: float) -> Operator:
    """exp(-i h t) for Hermitian ``h`` and real ``t``."""
    return matexp(h, -1j * float(t))


def partial_trace(rho, factor_dims: Sequence[int], keep: Iterable[int]) -> DensityOperator:
    """Reduced state on the factors listed in ``keep`` (kept in ascending order)."""
    m = _matrix(rho)
    dims = [int(d) for d in factor_dims]
    n = len(dims)
    if math.prod(dims) != m.shape[0] or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"factor_dims {dims} inconsistent with {m.shape}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise DimensionMismatch(f"keep {keep} out of range for {n} factors")
    drop = [k for k in range(n) if k not in keep]
    t = m.reshape(dims + dims)
    # contract each traced factor's ket index against its bra index
    for removed, k in enumerate(drop):
        axis = k - removed
        t = np.trace(t, axis1=axis, axis2=axis + t.ndim // 2)
    d_keep = math.prod(dims[k] for k in keep)
    out = t.reshape(d_keep, d_keep)
    return DensityOperator(0.5 * (out + out.conj().T))


def schmidt_coefficients(psi: Ket, bipartition: Iterable[int]) -> np.ndarray:
    dims = list(psi.factor_dims)
    if len(dims) < 2:
        raise DimensionMismatch("need at least two tensor factors")
    side = sorted(set(int(k) for k in bipartition))
    if not side or len(side) == len(dims) or any(k < 0 or k >= len(dims) for k in side):
        raise DimensionMismatch(f"bad bipartition {side} for {len(dims)} factors")
    rest = [k for k in range(len(dims)) if k not in side]
    t = psi.amplitudes.reshape(dims).transpose(side + rest)
    mat = t.reshape(math.prod(dims[k] for k in side), -1)
    return np.linalg.svd(mat, compute_uv=False)


def entanglement_entropy(psi: Ket, bipartition: Iterable[int]) -> float:
    """Von Neumann entropy in bits across ``bipartition`` | rest."""
    p = schmidt_coefficients(psi, bipartition) ** 2
    p = p[p > 1e-300]
    p = p / p.sum()
    return float(max(0.0, -np.sum(p * np.log2(p))))


def concurrence_2x2(psi: Ket) -> float:
    if tuple(psi.factor_dims) != (2, 2):
        raise DimensionMismatch(f"concurrence needs factor_dims (2, 2), got {psi.factor_dims}")
    m = psi.amplitudes.reshape(2, 2)
    return float(min(1.0, 2.0 * abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])))


def coherence_phase(rho) -> tuple[float, float]:
    """(arg rho_10, 2|rho_10|) for a qubit density matrix."""
    m = _matrix(rho)
    if m.shape != (2, 2):
        raise DimensionMismatch(f"coherence_phase needs a 2x2 state, got {m.shape}")
    vis = float(min(1.0, 2.0 * abs(m[1, 0])))
    if vis <= PHASE_VISIBILITY_FLOOR:
        raise PhaseUndefined(f"visibility {vis:.3e} too small for a phase")
    return wrap_phase(np.angle(m[1, 0])), vis


PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)
