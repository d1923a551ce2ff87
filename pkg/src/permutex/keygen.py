"""Hybrid logistic-sine chaotic sequence and the double-argsort permutation key."""

from __future__ import annotations

import math
import struct
from dataclasses import asdict, dataclass
from os import PathLike
from pathlib import Path

import numpy as np

DEFAULT_R = 3.99
DEFAULT_X0 = 0.41
DEFAULT_SCALE = 1000

KEY_MAGIC = b"PXKY"


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class ChaosParams:
    r: float = DEFAULT_R
    x0: float = DEFAULT_X0
    scale: int = DEFAULT_SCALE
    n: int = 1

    def __post_init__(self):
        if not 0.0 < self.r < 4.0:
            raise ParameterError(f"r must lie in (0, 4), got {self.r}")
        if not 0.0 < self.x0 < 1.0:
            raise ParameterError(f"x0 must lie in (0, 1), got {self.x0}")
        if int(self.scale) != self.scale or self.scale < 1:
            raise ParameterError(f"scale must be a positive integer, got {self.scale}")
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n}")

    def to_dict(self) -> dict:
        return asdict(self)


def logistic_sine_step(x: float, r: float) -> float:
    """One step of ``(r x (1 - x) + (4 - r) sin(pi x) / 4) mod 1``.

    ``r = 4`` is accepted here (the pure logistic map) even though key
    generation itself requires ``r < 4``.
    """
    if not 0.0 < r <= 4.0:
        raise ParameterError(f"r must lie in (0, 4], got {r}")
    return (r * x * (1.0 - x) + (4.0 - r) * math.sin(math.pi * x) / 4.0) % 1.0


def trajectory(x0: float, r: float, steps: int) -> np.ndarray:
    """States x_1 .. x_steps of the hybrid map started from ``x0``."""
    if not 0.0 < r <= 4.0:
        raise ParameterError(f"r must lie in (0, 4], got {r}")
    out = np.empty(steps, dtype=np.float64)
    x = x0
    sin = math.sin
    pi = math.pi
    for i in range(steps):
        # must stay identical to logistic_sine_step, term for term
        x = (r * x * (1.0 - x) + (4.0 - r) * sin(pi * x) / 4.0) % 1.0
        out[i] = x
    return out


def generate_sequence(p: ChaosParams) -> np.ndarray:
    """Iterate 2n times from x0 and keep the last n states (transient discarded)."""
    return trajectory(p.x0, p.r, 2 * p.n)[p.n:]


def round_half_away(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    return np.sign(values) * np.floor(np.abs(values) + 0.5)


@dataclass(frozen=True, eq=False)
class PermutationKey:
    key: np.ndarray
    collisions: int = 0  # entries of D that repeat an earlier value

    @property
    def n(self) -> int:
        return len(self.key)

    def __eq__(self, other):
        if not isinstance(other, PermutationKey):
            return NotImplemented
        return bool(np.array_equal(self.key, other.key))

    def __hash__(self):
        return hash(self.key.tobytes())


def derive_permutation_key(s: np.ndarray, scale: int = DEFAULT_SCALE) -> PermutationKey:
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 1 or s.size == 0:
        raise ParameterError("chaotic sequence must be a non-empty 1-D array")
    d = round_half_away(s * scale).astype(np.int64)
    permute_sequence = np.argsort(d, kind="stable")
    key = np.argsort(permute_sequence, kind="stable")
    collisions = int(d.size - np.unique(d).size)
    return PermutationKey(key.astype(np.int64), collisions)


def generate_key(p: ChaosParams) -> PermutationKey:
    return derive_permutation_key(generate_sequence(p), p.scale)


def encode_key(k: PermutationKey) -> bytes:
    return KEY_MAGIC + struct.pack("<I", k.n) + k.key.astype("<u4").tobytes()


def decode_key(data: bytes) -> PermutationKey:
    if data[:4] != KEY_MAGIC:
        raise ValueError(f"bad key magic {data[:4]!r}")
    if len(data) < 8:
        raise ValueError("truncated key header")
    (n,) = struct.unpack_from("<I", data, 4)
    if len(data) != 8 + 4 * n:
        raise ValueError(f"key payload length {len(data) - 8} does not match n={n}")
    key = np.frombuffer(data, dtype="<u4", offset=8, count=n).astype(np.int64)
    if not np.array_equal(np.sort(key), np.arange(n)):
        raise ValueError("key payload is not a permutation")
    return PermutationKey(key)


def save_key(k: PermutationKey, path: str | PathLike) -> None:
    Path(path).write_bytes(encode_key(k))


def load_key(path: str | PathLike) -> PermutationKey:
    return decode_key(Path(path).read_bytes())


def key_csv_text(k: PermutationKey) -> str:
    return "index,key\n" + "".join(f"{i},{v}\n" for i, v in enumerate(k.key.tolist()))


def save_key_csv(k: PermutationKey, path: str | PathLike) -> None:
    Path(path).write_text(key_csv_text(k))
