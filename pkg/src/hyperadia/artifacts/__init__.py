"""Builders for the tables and figure data the command line emits."""

from .base import BaseArtifact
from .runner import ArtifactRunner

__all__ = ["ArtifactRunner", "BaseArtifact"]
