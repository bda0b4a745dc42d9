import numpy as np
import pytest

from di3stego.bench import synthetic_corpus
from di3stego.image_io import GrayImage

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def small_corpus():
    """50 textured 64x64 covers."""
    return synthetic_corpus(50, 64, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_image(rng, max_side=64) -> GrayImage:
    h, w = rng.integers(1, max_side + 1, 2)
    return GrayImage.from_array(rng.integers(0, 256, (h, w)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
