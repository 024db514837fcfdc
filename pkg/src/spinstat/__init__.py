"""Desk-scale numerics for spin, exchange phases and their dynamical origin."""

from .kernels import BACKEND
from .spinrep import SpinLabel

__version__ = "0.1.0"

__all__ = ["BACKEND", "SpinLabel", "__version__"]
