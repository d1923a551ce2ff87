"""Composition, application and inversion of pixel permutations; the PermutEx pipeline.

Permutations use gather semantics: output slot ``z`` copies the input pixel
at flat index ``mapping[z]``.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import struct
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path

import numpy as np

from . import __version__
from .features import ImportanceRanking, extract_features, IMPORTANCE_NORM, rank_pixels
from .image_core import GrayImage, ShapeError
from .keygen import ChaosParams, PermutationKey, generate_key

PERM_MAGIC = b"PXPM"


def is_permutation(values) -> bool:
    values = np.asarray(values)
    n = values.size
    if values.ndim != 1:
        return False
    seen = np.zeros(n, dtype=bool)
    if n and (values.min() < 0 or values.max() >= n):
        return False
    seen[values] = True
    return bool(seen.all())


@dataclass(frozen=True, eq=False)
class PixelPermutation:
    mapping: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        mapping = np.asarray(self.mapping, dtype=np.int64)
        if not is_permutation(mapping):
            raise ValueError("mapping is not a permutation of 0..N-1")
        object.__setattr__(self, "mapping", mapping)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __eq__(self, other):
        if not isinstance(other, PixelPermutation):
            return NotImplemented
        return bool(np.array_equal(self.mapping, other.mapping))

    def __hash__(self):
        return hash(self.mapping.tobytes())


def identity_permutation(n: int, **provenance) -> PixelPermutation:
    return PixelPermutation(np.arange(n, dtype=np.int64), provenance)


def ranking_digest(ranking: ImportanceRanking) -> str:
    return hashlib.sha256(ranking.order.astype("<u4").tobytes()).hexdigest()


def compose_permutation(ranking: ImportanceRanking, key: PermutationKey, **provenance) -> PixelPermutation:
    """``mapping[z] = ranking.order[key[z]]``."""
    if ranking.n != key.n:
        raise ShapeError(f"ranking has {ranking.n} entries but key has {key.n}")
    return PixelPermutation(ranking.order[key.key], provenance)


def apply_permutation(img: GrayImage, p: PixelPermutation) -> GrayImage:
    if p.n != img.size:
        raise ShapeError(f"permutation covers {p.n} pixels, image has {img.size}")
    flat = img.pixels.reshape(-1)
    return GrayImage(flat[p.mapping].reshape(img.shape))


def invert_permutation(p: PixelPermutation) -> PixelPermutation:
    inverse = np.empty_like(p.mapping)
    inverse[p.mapping] = np.arange(p.n, dtype=np.int64)
    prov = dict(p.provenance)
    prov["inverted"] = not prov.get("inverted", False)
    return PixelPermutation(inverse, prov)


def permutex(img: GrayImage, chaos: ChaosParams | None = None, window: int = 3) -> tuple[GrayImage, PixelPermutation]:
    """Scramble ``img`` with the feature-ranked chaotic permutation.

    ``chaos.n`` is overridden with the pixel count. Returns the scrambled
    image and the permutation (with provenance) needed to undo it.
    """
    chaos = dataclasses.replace(chaos or ChaosParams(), n=img.size)
    ranking = rank_pixels(extract_features(img, window)[IMPORTANCE_NORM])
    key = generate_key(chaos)
    perm = compose_permutation(
        ranking,
        key,
        scheme="permutex",
        chaos=chaos.to_dict(),
        window=window,
        ranking_sha256=ranking_digest(ranking),
        key_collisions=key.collisions,
        shape=list(img.shape),
        version=__version__,
    )
    return apply_permutation(img, perm), perm


def unpermutex(img: GrayImage, p: PixelPermutation) -> GrayImage:
    return apply_permutation(img, invert_permutation(p))


def encode_permutation(p: PixelPermutation) -> bytes:
    meta = json.dumps(p.provenance, sort_keys=True).encode("utf-8")
    return b"".join(
        [
            PERM_MAGIC,
            struct.pack("<I", p.n),
            p.mapping.astype("<u4").tobytes(),
            struct.pack("<I", len(meta)),
            meta,
        ]
    )


def decode_permutation(data: bytes) -> PixelPermutation:
    if data[:4] != PERM_MAGIC:
        raise ValueError(f"bad permutation magic {data[:4]!r}")
    if len(data) < 8:
        raise ValueError("truncated permutation header")
    (n,) = struct.unpack_from("<I", data, 4)
    end = 8 + 4 * n
    if len(data) < end + 4:
        raise ValueError("truncated permutation payload")
    mapping = np.frombuffer(data, dtype="<u4", offset=8, count=n).astype(np.int64)
    (meta_len,) = struct.unpack_from("<I", data, end)
    meta = data[end + 4:end + 4 + meta_len]
    if len(meta) != meta_len or len(data) != end + 4 + meta_len:
        raise ValueError("permutation provenance length mismatch")
    return PixelPermutation(mapping, json.loads(meta.decode("utf-8")))


def save_permutation(p: PixelPermutation, path: str | PathLike) -> None:
    Path(path).write_bytes(encode_permutation(p))


def load_permutation(path: str | PathLike) -> PixelPermutation:
    return decode_permutation(Path(path).read_bytes())
