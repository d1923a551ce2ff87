"""Grayscale image model, row-major flattening and PGM (P2/P5) I/O.

Images are stored as ``(height, width)`` uint8 arrays. Flat index of the
pixel in row ``y``, column ``x`` is ``y * width + x`` (0-based).
"""

from __future__ import annotations

from dataclasses import dataclass
from os import PathLike
from pathlib import Path

import numpy as np


class PGMFormatError(ValueError):
    """Malformed PGM data. ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class UnsupportedDepthError(PGMFormatError):
    pass


class ShapeError(ValueError):
    pass


class GrayImage:
    """Immutable H x W 8-bit grayscale image."""

    __slots__ = ("_pixels",)

    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"expected a non-empty 2-D pixel array, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("pixel intensities must lie in [0, 255]")
            if np.issubdtype(arr.dtype, np.floating) and not np.all(arr == np.round(arr)):
                raise ValueError("pixel intensities must be integers")
            arr = arr.astype(np.uint8)
        else:
            arr = arr.copy()
        arr.flags.writeable = False
        self._pixels = arr

    @classmethod
    def from_flat(cls, width: int, height: int, values) -> "GrayImage":
        values = np.asarray(values)
        if values.ndim != 1 or values.size != width * height:
            raise ShapeError(f"expected {width * height} values for {width}x{height}, got {values.size}")
        return cls(values.reshape(height, width))

    @property
    def pixels(self) -> np.ndarray:
        return self._pixels

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self._pixels.shape

    @property
    def size(self) -> int:
        return self._pixels.size

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._pixels, other._pixels))

    def __hash__(self):
        return hash((self.shape, self._pixels.tobytes()))

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height})"


@dataclass(frozen=True)
class FlatVector:
    values: np.ndarray
    origin_shape: tuple[int, int]  # (height, width)

    def __len__(self):
        return len(self.values)


def flat_index(x: int, y: int, width: int) -> int:
    return y * width + x


def flatten(img: GrayImage) -> FlatVector:
    return FlatVector(img.pixels.reshape(-1), img.shape)


def unflatten(v: FlatVector) -> GrayImage:
    h, w = v.origin_shape
    return GrayImage.from_flat(w, h, v.values)


_WHITESPACE = b" \t\n\r\v\f"


def _header_tokens(data: bytes, count: int) -> tuple[list[tuple[bytes, int]], int]:
    """Pull ``count`` whitespace-separated header tokens, skipping ``#`` comments.

    Returns the tokens with their starting offsets, and the offset just past
    the single whitespace byte that terminates the last token.
    """
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WHITESPACE:
            pos += 1
        if pos >= n:
            raise PGMFormatError("truncated header", pos)
        if data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        tokens.append((data[start:pos], start))
    if pos >= n or data[pos] not in _WHITESPACE:
        raise PGMFormatError("header must end with a single whitespace byte", pos)
    return tokens, pos + 1


def _header_int(token: bytes, offset: int, what: str) -> int:
    if not token.isdigit():
        raise PGMFormatError(f"invalid {what} {token!r}", offset)
    return int(token)


def parse_pgm(data: bytes) -> GrayImage:
    if len(data) < 2:
        raise PGMFormatError("file too short for a PGM magic number", 0)
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PGMFormatError(f"unsupported magic {magic!r}, expected P2 or P5", 0)
    tokens, body = _header_tokens(data, 4)
    (_, _), (w_tok, w_off), (h_tok, h_off), (m_tok, m_off) = tokens
    if tokens[0][0] != magic:
        raise PGMFormatError(f"unsupported magic {tokens[0][0]!r}", 0)
    width = _header_int(w_tok, w_off, "width")
    height = _header_int(h_tok, h_off, "height")
    maxval = _header_int(m_tok, m_off, "maxval")
    if width < 1 or height < 1:
        raise PGMFormatError(f"image dimensions must be positive, got {width}x{height}", w_off)
    if maxval < 1:
        raise PGMFormatError("maxval must be positive", m_off)
    if maxval > 255:
        raise UnsupportedDepthError(f"maxval {maxval} exceeds 255", m_off)
    n = width * height

    if magic == b"P5":
        payload = data[body:body + n]
        if len(payload) < n:
            raise PGMFormatError(f"expected {n} payload bytes, found {len(payload)}", len(data))
        values = np.frombuffer(payload, dtype=np.uint8)
        bad = np.flatnonzero(values > maxval)
        if bad.size:
            raise PGMFormatError(f"sample exceeds maxval {maxval}", body + int(bad[0]))
        return GrayImage.from_flat(width, height, values)

    # P2: the body is plain decimal tokens; comments are not allowed there
    values = np.empty(n, dtype=np.uint8)
    pos = body - 1
    end = len(data)
    for i in range(n):
        while pos < end and data[pos] in _WHITESPACE:
            pos += 1
        start = pos
        while pos < end and data[pos] not in _WHITESPACE:
            pos += 1
        if start == pos:
            raise PGMFormatError(f"expected {n} samples, found {i}", start)
        v = _header_int(data[start:pos], start, "sample")
        if v > maxval:
            raise PGMFormatError(f"sample {v} exceeds maxval {maxval}", start)
        values[i] = v
    return GrayImage.from_flat(width, height, values)


def load_pgm(path: str | PathLike) -> GrayImage:
    return parse_pgm(Path(path).read_bytes())


def encode_pgm(img: GrayImage) -> bytes:
    return f"P5\n{img.width} {img.height}\n255\n".encode("ascii") + img.pixels.tobytes()


def save_pgm(img: GrayImage, path: str | PathLike) -> None:
    Path(path).write_bytes(encode_pgm(img))
