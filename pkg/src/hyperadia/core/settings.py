"""Frozen numeric settings handed to the library functions."""

from dataclasses import dataclass, fields
from typing import Any, Optional, Type, TypeVar

T = TypeVar("T")


def _from_section(cls: Type[T], config: Optional[Any], section: str, **extra: Any) -> T:
    if config is None:
        return cls(**extra)
    values = dict(extra)
    for f in fields(cls):  # type: ignore[arg-type]
        if f.name in extra:
            continue
        value = config.get(f"{section}.{f.name}")
        if value is not None:
            values[f.name] = type(f.default)(value)
    return cls(**values)


@dataclass(frozen=True)
class SeriesSettings:
    """Hypergeometric evaluation knobs."""
    x_switch: float = 0.75
    eps_abs: float = 1e-16
    n_terms_max: int = 10000
    delta_pole: float = 1e-13
    consecutive_small: int = 3

    @classmethod
    def from_config(cls, config: Optional[Any] = None) -> "SeriesSettings":
        return _from_section(cls, config, "specfun")


@dataclass(frozen=True)
class SolverSettings:
    """Root bracketing and refinement for the matching condition."""
    scan_points: int = 64
    scan_delta: float = 1e-10
    xtol: float = 1e-13
    residual_rtol: float = 1e-9
    max_bracket_expansions: int = 6
    series: SeriesSettings = SeriesSettings()

    @classmethod
    def from_config(cls, config: Optional[Any] = None) -> "SolverSettings":
        return _from_section(cls, config, "adiabatic", series=SeriesSettings.from_config(config))


@dataclass(frozen=True)
class MatrixSettings:
    """Truncated-matrix assembly."""
    extra_nodes: int = 8
    max_size: int = 256

    @classmethod
    def from_config(cls, config: Optional[Any] = None) -> "MatrixSettings":
        return _from_section(cls, config, "matrix")


@dataclass(frozen=True)
class PhaseSettings:
    """Radial integration and phase extraction."""
    rho_min: float = 0.75
    rho_switch: float = 1000.0
    points_per_decade: int = 16
    k_rho_max: float = 20.0
    max_step: float = 0.005
    steps_per_unit_phase: int = 40
    max_retries: int = 3
    consistency_tol: float = 1e-4

    @classmethod
    def from_config(cls, config: Optional[Any] = None) -> "PhaseSettings":
        return _from_section(cls, config, "phase")
