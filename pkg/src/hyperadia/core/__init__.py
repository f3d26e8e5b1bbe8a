"""Core models, errors and the exact adiabatic solver."""

from .exceptions import (
    BracketError,
    ConfigError,
    DivergenceError,
    DomainError,
    HyperadiaError,
    NumericError,
    PoleProximityError,
    ReferenceDataError,
    WrongClassError,
    ZeroCrossingError,
)
from .models import AdiabaticSolution, Channel, StepPotential

__all__ = [
    "AdiabaticSolution",
    "BracketError",
    "Channel",
    "ConfigError",
    "DivergenceError",
    "DomainError",
    "HyperadiaError",
    "NumericError",
    "PoleProximityError",
    "ReferenceDataError",
    "StepPotential",
    "WrongClassError",
    "ZeroCrossingError",
]
