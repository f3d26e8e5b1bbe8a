"""hyperadia - hyperspherical adiabatic eigenvalues of a 2D step potential."""

__version__ = "0.3.0"

from .core.adiabatic import matching_residual, solve, sweep
from .core.models import AdiabaticSolution, Channel, StepPotential

__all__ = [
    "AdiabaticSolution",
    "Channel",
    "StepPotential",
    "matching_residual",
    "solve",
    "sweep",
    "__version__",
]
