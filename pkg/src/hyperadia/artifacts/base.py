"""Base class for all emitted tables."""

import logging
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional, TypeVar

from ..config import Config
from ..core.models import ArtifactKind, Channel, RunConfig, TableResult
from ..core.settings import MatrixSettings, PhaseSettings, SolverSettings
from ..utils.reference import ReferenceData, load_reference

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

PAPER_LAMBDA_STAR = 10.0
PAPER_RHO = 5.0


def map_rows(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """Ordered map, in a process pool when ``jobs > 1``; ``fn`` must be module level."""
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


class BaseArtifact(ABC):
    """Abstract base class for table builders."""

    kind: ArtifactKind

    def __init__(self, config: Optional[Config] = None, reference: Optional[ReferenceData] = None):
        """Initialize builder.

        Args:
            config: Numeric configuration; defaults apply when omitted
            reference: Reference values; loaded lazily when a builder needs them
        """
        self.config = config or Config()
        self._reference = reference

    @property
    def reference(self) -> ReferenceData:
        if self._reference is None:
            self._reference = load_reference(self.config.get("reference.path"))
        return self._reference

    @property
    def solver_settings(self) -> SolverSettings:
        return SolverSettings.from_config(self.config)

    @property
    def matrix_settings(self) -> MatrixSettings:
        return MatrixSettings.from_config(self.config)

    @property
    def phase_settings(self) -> PhaseSettings:
        return PhaseSettings.from_config(self.config)

    @abstractmethod
    def build(self, run: RunConfig) -> TableResult:
        """Compute the table for one run.

        Args:
            run: Run configuration from the command line

        Returns:
            TableResult with rows, comparisons and metadata
        """
        pass

    @staticmethod
    def is_paper_setting(run: RunConfig, rho: Optional[float] = None) -> bool:
        """True when the run uses the strength (and radius) the printed values belong to."""
        if run.lambda_star is None or abs(run.lambda_star - PAPER_LAMBDA_STAR) > 1e-12:
            return False
        return rho is None or abs(rho - PAPER_RHO) < 1e-12

    @staticmethod
    def channels_or(run: RunConfig, default: List[Channel]) -> List[Channel]:
        return list(run.channels) if run.channels else list(default)

    def describe(self, run: RunConfig) -> dict:
        """Metadata common to every sidecar."""
        data: dict = {"artifact": self.kind.value, "potential": run.potential.to_dict()}
        return data

    @staticmethod
    def row_error(label: Any, error: Exception) -> str:
        message = f"{label}: {error}"
        logger.warning(message)
        return message
