"""Dark-state survival of a Raman-coupled atom crossing the nodes of a cavity mode."""

from ._backend import BACKEND
from .units import PhysicalParams, PulseShape, default_params

__version__ = "0.1.0"

__all__ = ["BACKEND", "PhysicalParams", "PulseShape", "default_params", "__version__"]
