import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from permutex.image_core import GrayImage, load_pgm  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def baboon():
    return load_pgm(DATA / "baboon256.pgm")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_image(rng, h, w):
    return GrayImage(rng.integers(0, 256, size=(h, w), dtype=np.uint8))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
