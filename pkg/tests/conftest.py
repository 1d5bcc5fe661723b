"""
Shared fixtures for the PF test suite.
"""

import os
import sys

import pytest

# Add project root to path for imports
project_root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..")
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.core.units import make_constants  # noqa: E402


@pytest.fixture
def natural():
    """c = hbar = 1."""
    return make_constants("natural")


@pytest.fixture(autouse=True)
def _no_env_seed(monkeypatch):
    """Tests pick their own seeds; a PF_SEED in the environment must not leak in."""
    monkeypatch.delenv("PF_SEED", raising=False)
