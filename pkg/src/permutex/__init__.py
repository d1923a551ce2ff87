"""Feature-ranked chaotic pixel permutation for grayscale images."""

__version__ = "0.1.0"

from .image_core import GrayImage, load_pgm, save_pgm  # noqa: E402
from .keygen import ChaosParams  # noqa: E402
from .engine import PixelPermutation, permutex, unpermutex  # noqa: E402

__all__ = ["GrayImage", "load_pgm", "save_pgm", "ChaosParams", "PixelPermutation", "permutex", "unpermutex"]
