"""
Shared fixtures for the Eichler Periods tests
"""

import sys
from pathlib import Path

import pytest

# Add the src directory to the Python path
project_root = Path(__file__).parent.parent
src_dir = project_root / "src"
sys.path.insert(0, str(src_dir))

from eichler_periods.modgroup import MultiplierSystem
from eichler_periods.qseries import (
    delta_expansion,
    eta_power_expansion,
    inverse_delta_expansion,
)


@pytest.fixture(scope="session")
def eta6():
    return eta_power_expansion(6, 60)


@pytest.fixture(scope="session")
def eta8():
    return eta_power_expansion(8, 60)


@pytest.fixture(scope="session")
def delta():
    return delta_expansion(40)


@pytest.fixture(scope="session")
def inv_delta():
    return inverse_delta_expansion(40)


@pytest.fixture
def eta_multiplier():
    return MultiplierSystem.eta_power(1)
