"""
Shared pytest setup
"""

import sys
from pathlib import Path

import pytest

# Add project directory to Python path
project_dir = Path(__file__).parent.parent
sys.path.insert(0, str(project_dir))

from spamlab.models import SpamParams  # noqa: E402


@pytest.fixture
def balanced_five_percent() -> SpamParams:
    """1 - f = q = 0.05 with a noiseless CNOT"""
    return SpamParams.balanced(0.05)


@pytest.fixture
def noisy_gate() -> SpamParams:
    return SpamParams(f=0.95, q=0.05, eps=0.05)
