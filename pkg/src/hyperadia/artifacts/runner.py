"""Artifact orchestrator."""

import logging
import time
from typing import Dict, Optional, Type

from ..config import Config
from ..core.models import ArtifactKind, RunConfig, TableResult
from ..utils.reference import ReferenceData
from .base import BaseArtifact
from .figures import Fig2Artifact, Fig3Artifact
from .phase import PhaseArtifact
from .sweeps import AsymArtifact, DirectArtifact, MatrixArtifact, SweepArtifact
from .tables import Table1Artifact, Table2Artifact, Table3Artifact

logger = logging.getLogger(__name__)


class ArtifactRunner:
    """Main class for building tables from a run configuration."""

    BUILDERS: Dict[ArtifactKind, Type[BaseArtifact]] = {
        ArtifactKind.TABLE1: Table1Artifact,
        ArtifactKind.TABLE2: Table2Artifact,
        ArtifactKind.TABLE3: Table3Artifact,
        ArtifactKind.FIG2: Fig2Artifact,
        ArtifactKind.FIG3: Fig3Artifact,
        ArtifactKind.PHASE: PhaseArtifact,
        ArtifactKind.DIRECT: DirectArtifact,
        ArtifactKind.SWEEP: SweepArtifact,
        ArtifactKind.ASYM: AsymArtifact,
        ArtifactKind.MATRIX: MatrixArtifact,
    }

    def __init__(self, config: Optional[Config] = None, reference: Optional[ReferenceData] = None):
        """Initialize the runner.

        Args:
            config: Numeric configuration
            reference: Reference values; the packaged set is used when omitted
        """
        self.config = config or Config()
        self.builders = {
            kind: cls(self.config, reference) for kind, cls in self.BUILDERS.items()
        }

    def run(self, kind: ArtifactKind, run: RunConfig) -> TableResult:
        """Build one artifact and stamp its sidecar with the run echo and wall time.

        Args:
            kind: Which table to build
            run: Run configuration

        Returns:
            TableResult ready for the formatter
        """
        builder = self.builders[kind]
        logger.info(f"building {kind.value} for {run.potential.to_dict()}")
        start = time.perf_counter()
        table = builder.build(run)
        elapsed = time.perf_counter() - start
        table.metadata["config"] = run.to_dict()
        table.metadata["settings"] = {
            section: self.config.get(section)
            for section in ("specfun", "adiabatic", "matrix", "phase")
        }
        table.metadata["wall_time_s"] = elapsed
        failed = [c.key for c in table.comparisons if not c.passed]
        if failed:
            logger.warning(f"{kind.value}: {len(failed)} reference mismatches: {', '.join(failed)}")
        logger.info(f"{kind.value}: {len(table.rows)} rows in {elapsed:.2f}s")
        return table
