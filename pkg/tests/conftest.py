"""Pytest configuration for hyperadia."""

import os
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

# Add src directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from hyperadia.core.models import Channel, StepPotential  # noqa: E402

PAPER_RHO = 5.0


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep HYPERADIA_* variables of the calling shell out of the tests."""
    for key in list(os.environ):
        if key.startswith("HYPERADIA_"):
            monkeypatch.delenv(key, raising=False)


@pytest.fixture
def paper_potential():
    """Step strength of the published tables, lambda_star = 10."""
    return StepPotential.from_lambda_star(10.0)


@pytest.fixture
def ground_channel():
    return Channel(0, 0, 0)


@pytest.fixture
def runner():
    """Create a CLI runner."""
    return CliRunner()
