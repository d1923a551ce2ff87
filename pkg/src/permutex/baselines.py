"""Reference permutation schemes: random / chaotic row-column shuffles and key-only PermutEx."""

from __future__ import annotations

import dataclasses

import numpy as np

from . import __version__
from .engine import PixelPermutation, apply_permutation, compose_permutation
from .features import ImportanceRanking
from .image_core import GrayImage
from .keygen import ChaosParams, generate_key, generate_sequence

RANDOM_RC = "random_rc"
CHAOTIC_RC = "chaotic_rc"
KEY_ONLY = "key_only"
SCHEMES = (RANDOM_RC, CHAOTIC_RC, KEY_ONLY)


def row_column_permutation(row_perm: np.ndarray, col_perm: np.ndarray, **provenance) -> PixelPermutation:
    """Flat gather mapping for ``out[i, j] = in[row_perm[i], col_perm[j]]``."""
    width = len(col_perm)
    mapping = (np.asarray(row_perm, dtype=np.int64)[:, None] * width + np.asarray(col_perm, dtype=np.int64)[None, :])
    return PixelPermutation(mapping.reshape(-1), provenance)


def random_row_column_shuffle(img: GrayImage, seed: int = 0) -> tuple[GrayImage, PixelPermutation]:
    # PCG64 seeded through SeedSequence: numpy guarantees this stream is stable
    rng = np.random.Generator(np.random.PCG64(seed))
    rows = rng.permutation(img.height)
    cols = rng.permutation(img.width)
    perm = row_column_permutation(
        rows, cols, scheme=RANDOM_RC, seed=int(seed), prng="numpy.PCG64", shape=list(img.shape), version=__version__
    )
    return apply_permutation(img, perm), perm


def chaotic_row_column_shuffle(img: GrayImage, chaos: ChaosParams | None = None) -> tuple[GrayImage, PixelPermutation]:
    """Row order from the argsort of the first H chaotic values, column order from the next W."""
    h, w = img.shape
    chaos = dataclasses.replace(chaos or ChaosParams(), n=h + w)
    seq = generate_sequence(chaos)
    rows = np.argsort(seq[:h], kind="stable")
    cols = np.argsort(seq[h:], kind="stable")
    perm = row_column_permutation(
        rows, cols, scheme=CHAOTIC_RC, chaos=chaos.to_dict(), shape=list(img.shape), version=__version__
    )
    return apply_permutation(img, perm), perm


def key_only_permutation(img: GrayImage, chaos: ChaosParams | None = None) -> tuple[GrayImage, PixelPermutation]:
    chaos = dataclasses.replace(chaos or ChaosParams(), n=img.size)
    key = generate_key(chaos)
    identity = ImportanceRanking(np.arange(img.size, dtype=np.int64))
    perm = compose_permutation(
        identity,
        key,
        scheme=KEY_ONLY,
        chaos=chaos.to_dict(),
        key_collisions=key.collisions,
        shape=list(img.shape),
        version=__version__,
    )
    return apply_permutation(img, perm), perm
