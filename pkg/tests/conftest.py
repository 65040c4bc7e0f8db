import numpy as np
import pytest

from vidmetrics.synthgen import ScenarioSpec, generate
from vidmetrics.tensorio import VideoSet


@pytest.fixture(scope="session")
def sprite_videos():
    """Small synthetic corpus shared by perturbation/embedding tests."""
    return generate(ScenarioSpec("sprite_to_border", 16, 32, 32, seed=11), 12)


@pytest.fixture
def random_videos():
    rng = np.random.default_rng(42)
    return VideoSet(rng.integers(0, 256, size=(6, 10, 24, 20, 3), dtype=np.uint8))
