"""Pytest configuration and fixtures."""
import asyncio
from pathlib import Path

import numpy as np
import pytest

from spectrum.zoo import make_example


SAMPLES_DIR = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture(scope="session")
def event_loop():
    """Create event loop for async tests."""
    loop = asyncio.get_event_loop_policy().new_event_loop()
    yield loop
    loop.close()


@pytest.fixture
def rng():
    """Seeded generator for test data."""
    return np.random.default_rng(20240204)


@pytest.fixture
def random_matrix():
    """Factory for complex Gaussian matrices."""
    def factory(n: int = 4, seed: int = 0) -> np.ndarray:
        gen = np.random.default_rng(seed)
        return gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))
    return factory


@pytest.fixture
def jordan2():
    """2x2 nilpotent Jordan block."""
    return make_example("jordan2").matrix


@pytest.fixture
def triangular_pm1():
    """[[1, 1], [0, -1]]."""
    return make_example("triangular_pm1").matrix


@pytest.fixture
def shifted_cone_b():
    """[[2, 1], [0, 0]]."""
    return make_example("shifted_cone_B").matrix


@pytest.fixture
def samples_dir():
    """Directory with ready-made matrix files."""
    return SAMPLES_DIR


@pytest.fixture
def jordan2_file(samples_dir):
    return samples_dir / "jordan2.json"
