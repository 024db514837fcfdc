"""Entanglement generated by swapping one path of each of two split particles.

Path states are ordered |x1>, |x2> for particle 1 and |x3>, |x4> for
particle 2, so the amplitude vector is (x1x3, x1x4, x2x3, x2x4). The swap
multiplies only the x2x4 branch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .. import qcore
from ..dynamics import partial_swap_phase
from ..qcore import Ket
from ..spinrep import SpinLabel, as_spin


@dataclass(frozen=True)
class EntanglementSweepPoint:
    alpha: float
    branch_phase: complex
    concurrence: float
    entropy_bits: float
    amplitudes: np.ndarray

    def as_row(self) -> dict:
        return {"alpha": self.alpha, "concurrence": self.concurrence, "entropy_bits": self.entropy_bits}


def split_state() -> Ket:
    """Both particles through a 50:50 splitter: 1/2 (x1 + x2)(x3 + x4)."""
    half = Ket(np.array([1.0, 1.0]) / np.sqrt(2.0), (2,))
    return qcore.tensor(half, half)


def beamsplitter_entanglement(s, alpha: float) -> EntanglementSweepPoint:
    spin = as_spin(s)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    phase = partial_swap_phase(spin, alpha)
    amps = split_state().amplitudes.copy()
    amps[3] *= phase
    psi = Ket(amps, (2, 2))
    return EntanglementSweepPoint(
        alpha=float(alpha),
        branch_phase=phase,
        concurrence=qcore.concurrence_2x2(psi),
        entropy_bits=qcore.entanglement_entropy(psi, [0]),
        amplitudes=psi.amplitudes,
    )


def entanglement_sweep(s, alphas: Iterable[float]) -> list[EntanglementSweepPoint]:
    spin: SpinLabel = as_spin(s)
    return [beamsplitter_entanglement(spin, float(a)) for a in sorted(alphas)]


def predicted_concurrence(s, alpha: float) -> float:
    """|exp(i theta) - 1| / 2 with theta = -2 pi S alpha."""
    spin = as_spin(s)
    theta = -2.0 * np.pi * spin.s * alpha
    return float(abs(np.exp(1j * theta) - 1.0) / 2.0)
