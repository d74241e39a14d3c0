"""
Pytest configuration and fixtures for the finite Gabor toolkit tests.
"""

import os
import tempfile

import numpy as np
import pytest
from hypothesis import settings

from src.gabor.hilbert_module import ModulePair
from src.gabor.lattice import LatticeSpec, enumerate_lattice, full_lattice, parse_lattice_spec

TEST_CONFIG_FILE = 'test_config.json'

settings.register_profile("gabor", max_examples=50, deadline=None)
settings.register_profile("quick", max_examples=10, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "gabor"))


def pytest_configure(config):
    config.addinivalue_line("markers", "sweep: exhaustive checks over every subgroup of a phase space")
    config.addinivalue_line("markers", "acceptance: seeded identity runs at full trial counts")


@pytest.fixture(scope="session")
def test_config_path():
    """Provide a temporary config path for testing."""
    return TEST_CONFIG_FILE


@pytest.fixture(autouse=True)
def setup_test_environment(test_config_path):
    """Remove any stray test config before and after each test."""
    if os.path.exists(test_config_path):
        os.remove(test_config_path)

    yield

    if os.path.exists(test_config_path):
        os.remove(test_config_path)


@pytest.fixture
def rng():
    """Seeded generator so every test sees the same random inputs."""
    return np.random.default_rng(20240215)


@pytest.fixture
def random_signals(rng):
    """Factory for complex Gaussian signals of a given length."""
    def make(n, count=1):
        signals = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(count)]
        return signals[0] if count == 1 else signals
    return make


@pytest.fixture
def separable_pair():
    """2Z_8 x 2Z_8 and its adjoint 4Z_8 x 4Z_8."""
    return ModulePair.from_lattice(enumerate_lattice(LatticeSpec.separable_steps(2, 2), 8))


@pytest.fixture
def diagonal_pair():
    """The lattice generated by (1,1) in Z_6 x Z_6."""
    return ModulePair.from_lattice(enumerate_lattice(parse_lattice_spec("gen:(1,1)"), 6))


@pytest.fixture
def oblique_pair():
    """The lattice generated by (2,1) in Z_8 x Z_8: eight points, not a product of steps."""
    return ModulePair.from_lattice(enumerate_lattice(parse_lattice_spec("gen:(2,1)"), 8))


@pytest.fixture
def full_pair():
    """The whole phase space of Z_4, whose adjoint is trivial."""
    return ModulePair.from_lattice(full_lattice(4))


@pytest.fixture
def temp_dir():
    """Provide a temporary directory for file operations."""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield temp_dir
