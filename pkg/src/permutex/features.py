"""Spatial-frequency and local-contrast features, importance fusion, ranking."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from os import PathLike

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .image_core import GrayImage, ShapeError, save_pgm

FREQUENCY_NORM = "frequency_norm"
CONTRAST_RAW = "contrast_raw"
CONTRAST_NORM = "contrast_norm"
IMPORTANCE = "importance"
IMPORTANCE_NORM = "importance_norm"
KINDS = (FREQUENCY_NORM, CONTRAST_RAW, CONTRAST_NORM, IMPORTANCE, IMPORTANCE_NORM)


@dataclass(frozen=True, eq=False)
class FeatureMap:
    values: np.ndarray  # float64, shape (height, width)
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown feature kind {self.kind!r}")
        if np.ndim(self.values) != 2:
            raise ShapeError("feature map values must be 2-D")

    @property
    def shape(self):
        return self.values.shape

    def to_image(self) -> GrayImage:
        """Scale [0, 1] values to 8-bit with round-half-up."""
        scaled = np.floor(np.clip(self.values, 0.0, 1.0) * 255.0 + 0.5)
        return GrayImage(scaled.astype(np.uint8))

    def csv_text(self) -> str:
        """Raw values, one image row per line, 17 significant digits (lossless)."""
        return "".join(",".join("%.17g" % v for v in row) + "\n" for row in self.values)

    def to_csv(self, path: str | PathLike) -> None:
        with open(path, "w") as fh:
            fh.write(self.csv_text())


def read_feature_csv(path: str | PathLike, kind: str) -> FeatureMap:
    with open(path, newline="") as fh:
        rows = [[float(v) for v in row] for row in csv.reader(fh)]
    return FeatureMap(np.array(rows, dtype=np.float64), kind)


@dataclass(frozen=True, eq=False)
class ImportanceRanking:
    order: np.ndarray  # flat indices, most important first

    @property
    def n(self) -> int:
        return len(self.order)


def minmax_normalize(values: np.ndarray) -> np.ndarray:
    """Min-max scale to [0, 1]; a constant array maps to all zeros."""
    values = np.asarray(values, dtype=np.float64)
    lo = values.min()
    hi = values.max()
    if hi == lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


def dft2(img: GrayImage) -> np.ndarray:
    """2-D DFT, ``F[u, v] = sum_x sum_y I[x, y] exp(-2j*pi*(u*x/H + v*y/W))``.

    ``x``/``u`` run over rows and ``y``/``v`` over columns.
    """
    return np.fft.fft2(img.pixels.astype(np.float64))


def fft_shift(spec: np.ndarray) -> np.ndarray:
    """Move entry (u, v) to ((u + H//2) % H, (v + W//2) % W)."""
    h, w = spec.shape
    return np.roll(spec, (h // 2, w // 2), axis=(0, 1))


def magnitude_log_norm(spec: np.ndarray) -> FeatureMap:
    mag = np.hypot(spec.real, spec.imag)
    return FeatureMap(minmax_normalize(np.log(mag + 1.0)), FREQUENCY_NORM)


def frequency_map(img: GrayImage) -> FeatureMap:
    return magnitude_log_norm(fft_shift(dft2(img)))


def local_contrast(img: GrayImage, window: int = 3) -> FeatureMap:
    """Population standard deviation over an m x m window centred on each pixel.

    Borders use replicate (clamp-to-edge) padding so every window holds m*m
    samples.
    """
    if not isinstance(window, (int, np.integer)) or window < 1 or window % 2 == 0:
        raise ValueError(f"window must be an odd integer >= 1, got {window!r}")
    half = window // 2
    padded = np.pad(img.pixels.astype(np.float64), half, mode="edge")
    windows = sliding_window_view(padded, (window, window))
    mean = windows.mean(axis=(2, 3), keepdims=True)
    var = ((windows - mean) ** 2).mean(axis=(2, 3))
    return FeatureMap(np.sqrt(var), CONTRAST_RAW)


def importance_map(freq: FeatureMap, contrast: FeatureMap) -> FeatureMap:
    """Average normalized frequency with normalized contrast, then renormalize.

    ``contrast`` may be raw (it is min-max scaled first) or already normalized.
    """
    if freq.shape != contrast.shape:
        raise ShapeError(f"feature maps differ in shape: {freq.shape} vs {contrast.shape}")
    c_norm = minmax_normalize(contrast.values)
    p = (freq.values + c_norm) / 2.0
    return FeatureMap(minmax_normalize(p), IMPORTANCE_NORM)


def rank_pixels(imp: FeatureMap) -> ImportanceRanking:
    """Flat indices sorted by descending importance; ties keep ascending index."""
    flat = imp.values.reshape(-1)
    # stable ascending sort of the negated key keeps tied indices in order
    order = np.argsort(-flat, kind="stable")
    return ImportanceRanking(order.astype(np.int64))


def extract_features(img: GrayImage, window: int = 3) -> dict[str, FeatureMap]:
    freq = frequency_map(img)
    contrast = local_contrast(img, window)
    return {
        FREQUENCY_NORM: freq,
        CONTRAST_RAW: contrast,
        CONTRAST_NORM: FeatureMap(minmax_normalize(contrast.values), CONTRAST_NORM),
        IMPORTANCE_NORM: importance_map(freq, contrast),
    }


def save_feature_pgm(fmap: FeatureMap, path: str | PathLike) -> None:
    save_pgm(fmap.to_image(), path)
