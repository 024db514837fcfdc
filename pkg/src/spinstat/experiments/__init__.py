"""End-to-end protocols built on the dynamics and linear-algebra layers."""

from .correlator import CorrelatorReport, ToyFockModel, contraction, correlator_chain_check
from .entanglement import (
    EntanglementSweepPoint,
    beamsplitter_entanglement,
    entanglement_sweep,
    predicted_concurrence,
    split_state,
)
from .gravito import fd_curl, gravito_curl_check, gravito_efield_check, rotating_potential
from .interferometer import InterferometerReport, controlled_rotation_interferometer

__all__ = [
    "CorrelatorReport",
    "EntanglementSweepPoint",
    "InterferometerReport",
    "ToyFockModel",
    "beamsplitter_entanglement",
    "contraction",
    "controlled_rotation_interferometer",
    "correlator_chain_check",
    "entanglement_sweep",
    "fd_curl",
    "gravito_curl_check",
    "gravito_efield_check",
    "predicted_concurrence",
    "rotating_potential",
    "split_state",
]
