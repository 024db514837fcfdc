"""Controlled-rotation interferometry on a control qubit (phase kickback)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import qcore
from ..dynamics import SIGN_CONVENTION, highest_weight
from ..errors import PhaseUndefined
from ..qcore import DensityOperator, Ket, Operator
from ..spinrep import SpinLabel, as_spin, spin_operators

MODELS = ("dynamical", "mode_relabeling")


@dataclass(frozen=True)
class InterferometerReport:
    model: str
    spin: SpinLabel
    alpha: float
    control_state: DensityOperator
    phase: float | None
    visibility: float
    convention: str = SIGN_CONVENTION


def controlled(u) -> Operator:
    """|0><0| x I + |1><1| x U."""
    u = np.asarray(u, dtype=np.complex128)
    d = u.shape[0]
    out = np.zeros((2 * d, 2 * d), dtype=np.complex128)
    out[:d, :d] = np.eye(d)
    out[d:, d:] = u
    return Operator(out, "unitary")


def transport_unitary(s, alpha: float, model: str) -> Operator:
    """What carrying the particle a fraction ``alpha`` around the circle does to it.

    ``dynamical`` rotates the spin through 2 pi alpha about z; the
    ``mode_relabeling`` rival (plain fermionic-mode transport) does nothing.
    """
    spin = as_spin(s)
    if model == "dynamical":
        sz = spin_operators(spin).sz
        return qcore.matexp(sz, -2j * math.pi * float(alpha))
    if model == "mode_relabeling":
        return Operator(np.eye(spin.dim, dtype=np.complex128), "unitary")
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def controlled_rotation_interferometer(s, alpha: float, model: str = "dynamical") -> InterferometerReport:
    spin = as_spin(s)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    plus = Ket(np.array([1, 1]) / math.sqrt(2), (2,))
    psi = qcore.tensor(plus, highest_weight(spin))
    out = controlled(transport_unitary(spin, alpha, model).entries) @ psi
    rho = qcore.partial_trace(DensityOperator.from_ket(out), out.factor_dims, keep=[0])
    try:
        phase, vis = qcore.coherence_phase(rho)
    except PhaseUndefined:
        phase, vis = None, float(2 * abs(rho.entries[1, 0]))
    return InterferometerReport(model, spin, float(alpha), rho, phase, vis)
