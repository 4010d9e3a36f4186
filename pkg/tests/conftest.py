"""
Shared fixtures for the vk test suite.
"""

import pytest

from vk.config import Config
from vk.core.complexes import bowtie, delta62, pseudo_projective_plane
from vk.core.vankampen import VanKampenSolver
from vk.entities.words import FreeWord


@pytest.fixture
def config():
    """Fixture for test configuration."""
    return Config()


@pytest.fixture(scope="session")
def delta():
    """Fixture for the 2-skeleton of the 6-simplex."""
    return delta62()


@pytest.fixture(scope="session")
def bow():
    """Fixture for the bowtie complex."""
    return bowtie()


@pytest.fixture(scope="session")
def p3():
    """Fixture for the pseudo-projective plane P_3."""
    return pseudo_projective_plane(3)


@pytest.fixture(scope="session")
def delta_solver(delta):
    """Fixture for a solver on the 6-simplex skeleton; its lattices are reused across tests."""
    return VanKampenSolver(delta)


@pytest.fixture(scope="session")
def bowtie_solver(bow):
    """Fixture for a solver on the bowtie."""
    return VanKampenSolver(bow)


@pytest.fixture
def random_word():
    """Fixture for a seeded sampler of reduced words in two generators."""

    def sample(rng, length=5):
        letters = [(int(rng.integers(2)), int(rng.choice([-1, 1]))) for _ in range(length)]
        return FreeWord.from_letters(letters, rank=2)

    return sample
