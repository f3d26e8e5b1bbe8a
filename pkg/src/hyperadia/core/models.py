"""Data models for channels, potentials and computed spectra."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .exceptions import ConfigError, DomainError

# Lower edge of the hyperradius range where the step leaves part of z free.
RHO_CRITICAL = 1.0 / math.sqrt(2.0)


class ModelKind(Enum):
    """Asymptotic effective-potential models."""
    KL = "kl"
    WIDER = "wider"
    BEST = "best"
    INVERSE_POWER = "inverse_power"


class Spacing(Enum):
    """Grid spacing."""
    LINEAR = "lin"
    LOG = "log"


class OutputFormat(Enum):
    """Table output formats."""
    CSV = "csv"
    JSON = "json"


class ArtifactKind(Enum):
    """Tables the command line can emit."""
    TABLE1 = "table1"
    TABLE2 = "table2"
    TABLE3 = "table3"
    FIG2 = "fig2"
    FIG3 = "fig3"
    PHASE = "phase"
    DIRECT = "direct"
    SWEEP = "sweep"
    ASYM = "asym"
    MATRIX = "matrix"


@dataclass(frozen=True)
class Channel:
    """Conserved quantum numbers (l1, l2, l) of one adiabatic channel."""
    l1: int
    l2: int
    l: int = 0  # noqa: E741

    def __post_init__(self):
        for name in ("l1", "l2", "l"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise DomainError(f"Channel {name} must be an integer, got {value!r}")
        if self.l < 0:
            raise DomainError(f"Channel radial index l must be nonnegative, got {self.l}")

    @classmethod
    def from_string(cls, text: str) -> "Channel":
        """Parse ``"l1,l2,l"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ConfigError(f"Channel must be given as l1,l2,l: {text!r}")
        try:
            l1, l2, l = (int(p) for p in parts)  # noqa: E741
        except ValueError as e:
            raise ConfigError(f"Channel entries must be integers: {text!r}") from e
        return cls(l1, l2, l)

    @property
    def abs_l1(self) -> int:
        return abs(self.l1)

    @property
    def abs_l2(self) -> int:
        return abs(self.l2)

    @property
    def M(self) -> int:
        return abs(self.l1) + abs(self.l2)

    @property
    def N(self) -> int:
        return 2 * self.l + self.M

    @property
    def inplane_momentum(self) -> int:
        return self.l1 + self.l2

    @property
    def label(self) -> str:
        return f"{self.l1},{self.l2},{self.l}"

    def canonical(self) -> "Channel":
        """Channel with absolute values; every derived quantity depends only on this."""
        return Channel(abs(self.l1), abs(self.l2), self.l)

    def to_dict(self) -> Dict[str, int]:
        return {"l1": self.l1, "l2": self.l2, "l": self.l, "N": self.N}


@dataclass(frozen=True)
class StepPotential:
    """Repulsive step of dimensionless strength v0bar = (2m/hbar^2) V0 sigma^2."""
    v0bar: float

    def __post_init__(self):
        if not math.isfinite(self.v0bar) or self.v0bar < 0:
            raise DomainError(f"v0bar must be finite and nonnegative, got {self.v0bar}")

    @classmethod
    def from_lambda_star(cls, lambda_star: float) -> "StepPotential":
        """Build from the thermal-style strength, v0bar = 8 pi^2 / lambda_star^2."""
        if not lambda_star > 0 or not math.isfinite(lambda_star):
            raise DomainError(f"lambda_star must be positive and finite, got {lambda_star}")
        return cls(8.0 * math.pi ** 2 / lambda_star ** 2)

    @property
    def lambda_star(self) -> float:
        if self.v0bar == 0:
            return math.inf
        return math.sqrt(8.0 * math.pi ** 2 / self.v0bar)

    @property
    def is_free(self) -> bool:
        return self.v0bar == 0

    def to_dict(self) -> Dict[str, float]:
        return {"v0bar": self.v0bar, "lambda_star": self.lambda_star}


@dataclass(frozen=True)
class AdiabaticSolution:
    """Adiabatic eigenvalue of one channel at one hyperradius.

    ``offset`` is nu1 - l carried at full precision; ``nu1`` is the rounded sum.
    """
    channel: Channel
    rho: float
    nu1: float
    offset: float
    lambda_: float
    v_eff: float
    residual: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "channel": self.channel.label,
            "rho": self.rho,
            "nu1": self.nu1,
            "offset": self.offset,
            "lambda": self.lambda_,
            "v_eff": self.v_eff,
            "residual": self.residual,
        }


@dataclass
class SweepReport:
    """Solutions along a grid plus the points that failed."""
    channel: Channel
    solutions: List[AdiabaticSolution] = field(default_factory=list)
    failures: List[Tuple[float, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "channel": self.channel.label,
            "solutions": [s.to_dict() for s in self.solutions],
            "failures": [{"rho": r, "error": e} for r, e in self.failures],
        }


@dataclass(frozen=True)
class AsymptoticModel:
    """Coefficients of one asymptotic effective-potential model."""
    kind: ModelKind
    channel: Channel
    potential: StepPotential
    A: float = math.nan
    B: float = math.nan
    A_star: float = math.nan
    B_star: float = math.nan
    q: Optional[float] = None
    tilde_a: Optional[float] = None

    def with_kind(self, kind: ModelKind) -> "AsymptoticModel":
        """Same coefficients, different model form."""
        if (kind is ModelKind.INVERSE_POWER) != (self.kind is ModelKind.INVERSE_POWER):
            raise DomainError(f"Cannot turn a {self.kind.value} model into {kind.value}")
        return AsymptoticModel(
            kind, self.channel, self.potential,
            self.A, self.B, self.A_star, self.B_star, self.q, self.tilde_a,
        )

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "kind": self.kind.value,
            "channel": self.channel.label,
            "v0bar": self.potential.v0bar,
        }
        if self.kind is ModelKind.INVERSE_POWER:
            data["q"] = self.q
        else:
            data.update({"A": self.A, "B": self.B, "A_star": self.A_star, "B_star": self.B_star})
        return data


@dataclass(frozen=True)
class RitzBasisSpec:
    """Truncated dual-polar basis for one channel."""
    channel: Channel
    n_max: int
    quadrature_nodes: Optional[int] = None

    def __post_init__(self):
        if self.n_max < self.channel.M:
            raise DomainError(
                f"n_max={self.n_max} retains no basis function for channel {self.channel.label}"
            )

    @property
    def size(self) -> int:
        return (self.n_max - self.channel.M) // 2 + 1

    @property
    def orders(self) -> np.ndarray:
        """Harmonic order N' of every retained basis function."""
        return 2 * np.arange(self.size) + self.channel.M

    def nodes(self, extra: int = 8) -> int:
        # exactness needs nodes >= max degree / 2 + 1, degree = 2 l'_max + M
        minimum = self.size + (self.channel.M + 1) // 2 + 1
        if self.quadrature_nodes is not None:
            if self.quadrature_nodes < minimum:
                raise DomainError(
                    f"quadrature_nodes={self.quadrature_nodes} below exactness minimum {minimum}"
                )
            return self.quadrature_nodes
        return max(self.size + extra, minimum)


@dataclass(frozen=True)
class RitzSpectrum:
    """Ascending Rayleigh-Ritz eigenvalues of a truncated channel matrix."""
    channel: Channel
    eigenvalues: Tuple[float, ...]
    n_max: int
    rho: float

    @property
    def lowest(self) -> float:
        return self.eigenvalues[0]

    def v_eff(self, index: int = 0) -> float:
        """Eigenvalue minus the free centrifugal term of the matching radial index."""
        position = self.channel.l + index
        if index < 0 or position >= len(self.eigenvalues):
            raise DomainError(
                f"no Ritz eigenvalue for radial index {position} of channel {self.channel.label}",
                {"channel": self.channel.label, "index": position, "size": len(self.eigenvalues)},
            )
        order = 2 * position + self.channel.M
        return self.eigenvalues[position] - ((order + 1) ** 2 - 0.25) / self.rho ** 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "channel": self.channel.label,
            "n_max": self.n_max,
            "rho": self.rho,
            "eigenvalues": list(self.eigenvalues),
        }


@dataclass(frozen=True)
class RadialProblem:
    """Single-channel scattering problem at wave number k."""
    channel: Channel
    potential: StepPotential
    k: float
    rho_min: float = 0.75
    rho_max: Optional[float] = None
    tail_model: Optional[AsymptoticModel] = None

    def __post_init__(self):
        if not self.k > 0:
            raise DomainError(f"k must be positive, got {self.k}")
        if not self.rho_min > RHO_CRITICAL:
            raise DomainError(f"rho_min must exceed 1/sqrt(2), got {self.rho_min}")
        if self.rho_max is not None and not self.rho_max > self.rho_min:
            raise DomainError(f"rho_max={self.rho_max} must exceed rho_min={self.rho_min}")

    def outer_radius(self, k_rho_max: float = 20.0) -> float:
        return self.rho_max if self.rho_max is not None else max(k_rho_max / self.k, 2 * self.rho_min)


@dataclass(frozen=True)
class MottMasseyReport:
    """Tail-dominance criterion for an inverse-power channel."""
    channel: Channel
    s: int
    min_order: int
    tail_dominant: bool
    exponent: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "channel": self.channel.label,
            "s": self.s,
            "min_order": self.min_order,
            "tail_dominant": self.tail_dominant,
            "exponent": self.exponent,
        }


@dataclass(frozen=True)
class GridSpec:
    """Hyperradius or wave-number grid ``min:max:points:log|lin``."""
    start: float
    stop: float
    points: int
    spacing: Spacing = Spacing.LOG

    def __post_init__(self):
        if self.points < 1:
            raise ConfigError(f"Grid needs at least one point, got {self.points}")
        if self.points > 1 and not self.stop > self.start:
            raise ConfigError(f"Grid stop {self.stop} must exceed start {self.start}")
        if self.spacing is Spacing.LOG and not self.start > 0:
            raise ConfigError("Logarithmic grid needs a positive start")

    @classmethod
    def from_string(cls, text: str) -> "GridSpec":
        """Parse ``min:max:points[:log|lin]``, or ``min..max`` for one log point per decade."""
        if ".." in text:
            lo_text, _, hi_text = text.partition("..")
            try:
                lo, hi = float(lo_text), float(hi_text)
            except ValueError as e:
                raise ConfigError(f"Invalid grid {text!r}: {e}") from e
            if not 0 < lo < hi:
                raise ConfigError(f"Grid {text!r} needs 0 < min < max")
            points = max(int(round(math.log10(hi / lo))) + 1, 2)
            return cls(lo, hi, points, Spacing.LOG)
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ConfigError(f"Grid must be min:max:points[:log|lin], got {text!r}")
        try:
            spacing = Spacing(parts[3]) if len(parts) == 4 else Spacing.LOG
            return cls(float(parts[0]), float(parts[1]), int(parts[2]), spacing)
        except ValueError as e:
            raise ConfigError(f"Invalid grid {text!r}: {e}") from e

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.start])
        if self.spacing is Spacing.LOG:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)

    def to_string(self) -> str:
        return f"{self.start!r}:{self.stop!r}:{self.points}:{self.spacing.value}"


@dataclass
class Comparison:
    """One computed value checked against a published reference value."""
    key: str
    computed: float
    reference: float
    tolerance: float
    provenance: str

    @property
    def abs_diff(self) -> float:
        return abs(self.computed - self.reference)

    @property
    def passed(self) -> bool:
        return math.isfinite(self.computed) and self.abs_diff <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "key": self.key,
            "computed": self.computed,
            "reference": self.reference,
            "abs_diff": self.abs_diff,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "provenance": self.provenance,
        }


@dataclass
class TableResult:
    """Rows of one emitted table plus its sidecar metadata."""
    name: str
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    comparisons: List[Comparison] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def partial(self) -> bool:
        return bool(self.errors)

    @property
    def reference_ok(self) -> bool:
        return all(c.passed for c in self.comparisons)

    def column(self, name: str) -> List[Any]:
        return [row.get(name) for row in self.rows]

    def sidecar(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "columns": self.columns,
            "partial": self.partial,
            "errors": self.errors,
            "reference_ok": self.reference_ok,
            "comparisons": [c.to_dict() for c in self.comparisons],
            **self.metadata,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {"columns": self.columns, "rows": self.rows, "sidecar": self.sidecar()}


@dataclass
class RunConfig:
    """Everything one command-line run depends on; echoed into every sidecar."""
    lambda_star: Optional[float] = None
    v0bar: Optional[float] = None
    channels: List[Channel] = field(default_factory=list)
    rho: Optional[float] = None
    rho_grid: Optional[GridSpec] = None
    n_max: List[int] = field(default_factory=list)
    k_grid: Optional[GridSpec] = None
    output_format: OutputFormat = OutputFormat.CSV
    out: Optional[str] = None
    jobs: int = 1
    overrides: List[str] = field(default_factory=list)
    hard_disc: bool = False
    L: int = 0
    l1: Optional[int] = None

    def __post_init__(self):
        if (self.lambda_star is None) == (self.v0bar is None):
            raise ConfigError("Give exactly one of lambda_star and v0bar")
        if self.rho is not None and not self.rho > RHO_CRITICAL:
            raise ConfigError(f"rho must exceed 1/sqrt(2), got {self.rho}")
        if self.rho_grid is not None and not self.rho_grid.start > RHO_CRITICAL:
            raise ConfigError(f"rho grid must start above 1/sqrt(2), got {self.rho_grid.start}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}")
        if self.L < 0:
            raise ConfigError(f"L must be nonnegative, got {self.L}")

    @property
    def potential(self) -> StepPotential:
        if self.lambda_star is not None:
            return StepPotential.from_lambda_star(self.lambda_star)
        return StepPotential(float(self.v0bar))  # type: ignore[arg-type]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda_star": self.lambda_star,
            "v0bar": self.v0bar,
            "channels": [c.label for c in self.channels],
            "rho": self.rho,
            "rho_grid": self.rho_grid.to_string() if self.rho_grid else None,
            "n_max": list(self.n_max),
            "k_grid": self.k_grid.to_string() if self.k_grid else None,
            "format": self.output_format.value,
            "jobs": self.jobs,
            "overrides": list(self.overrides),
            "hard_disc": self.hard_disc,
            "L": self.L,
            "l1": self.l1,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """Inverse of ``to_dict`` (the output path is not echoed)."""
        rho_grid = data.get("rho_grid")
        k_grid = data.get("k_grid")
        return cls(
            lambda_star=data.get("lambda_star"),
            v0bar=data.get("v0bar"),
            channels=[Channel.from_string(c) for c in data.get("channels", [])],
            rho=data.get("rho"),
            rho_grid=GridSpec.from_string(rho_grid) if rho_grid else None,
            n_max=[int(n) for n in data.get("n_max", [])],
            k_grid=GridSpec.from_string(k_grid) if k_grid else None,
            output_format=OutputFormat(data.get("format", "csv")),
            jobs=int(data.get("jobs", 1)),
            overrides=list(data.get("overrides", [])),
            hard_disc=bool(data.get("hard_disc", False)),
            L=int(data.get("L", 0)),
            l1=data.get("l1"),
        )
