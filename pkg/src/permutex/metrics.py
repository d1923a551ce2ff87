"""Correlation metrics: adjacent-pixel coefficients, GLCM correlation, corr2, scatter pairs.

Zero-variance inputs have no defined correlation; they score 0 and are
listed in ``MetricsReport.degenerate``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from os import PathLike

import numpy as np

from .image_core import GrayImage, ShapeError

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
DIAGONAL = "diagonal"
DIRECTIONS = (HORIZONTAL, VERTICAL, DIAGONAL)

DEFAULT_LEVELS = 8
DEFAULT_OFFSET = (0, 1)

CSV_HEADER = (
    "Image",
    "Horizontal Coeff",
    "Vertical Coeff",
    "Diagonal Coeff",
    "GLCM Correlation",
    "Correlation (Orig, Permuted) - Corr2",
    "Degenerate",
    "Params",
)


class DimensionError(ValueError):
    pass


def _pearson(a: np.ndarray, b: np.ndarray) -> float | None:
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    da = a - a.mean()
    db = b - b.mean()
    saa = np.dot(da, da)
    sbb = np.dot(db, db)
    if saa == 0.0 or sbb == 0.0:
        return None
    r = float(np.dot(da, db) / np.sqrt(saa * sbb))
    return min(1.0, max(-1.0, r))


def adjacent_pairs(img: GrayImage, direction: str) -> tuple[np.ndarray, np.ndarray]:
    """All in-bounds (pixel, neighbour) pairs, row-major over the first pixel."""
    p = img.pixels
    h, w = p.shape
    if direction == HORIZONTAL:
        if w < 2:
            raise DimensionError("horizontal pairs need width >= 2")
        return p[:, :-1].ravel(), p[:, 1:].ravel()
    if direction == VERTICAL:
        if h < 2:
            raise DimensionError("vertical pairs need height >= 2")
        return p[:-1, :].ravel(), p[1:, :].ravel()
    if direction == DIAGONAL:
        if h < 2 or w < 2:
            raise DimensionError("diagonal pairs need width and height >= 2")
        return p[:-1, :-1].ravel(), p[1:, 1:].ravel()
    raise ValueError(f"unknown direction {direction!r}")


def _adjacent(img: GrayImage, direction: str) -> float | None:
    return _pearson(*adjacent_pairs(img, direction))


def adjacent_correlation(img: GrayImage, direction: str) -> float:
    r = _adjacent(img, direction)
    return 0.0 if r is None else r


def glcm(img: GrayImage, levels: int = DEFAULT_LEVELS, offset=DEFAULT_OFFSET) -> np.ndarray:
    """Symmetric, normalized co-occurrence matrix after quantizing to ``levels`` bins."""
    if int(levels) != levels or levels < 2:
        raise ValueError(f"levels must be an integer >= 2, got {levels}")
    dy, dx = offset
    q = np.minimum(img.pixels.astype(np.int64) * levels // 256, levels - 1)
    h, w = q.shape
    if abs(dy) >= h or abs(dx) >= w:
        raise DimensionError(f"offset {offset} leaves no in-bounds pairs in a {h}x{w} image")
    src = q[max(0, -dy):h - max(0, dy), max(0, -dx):w - max(0, dx)]
    dst = q[max(0, dy):h - max(0, -dy), max(0, dx):w - max(0, -dx)]
    counts = np.bincount((src * levels + dst).ravel(), minlength=levels * levels)
    m = counts.reshape(levels, levels).astype(np.float64)
    m = m + m.T
    return m / m.sum()


def _glcm_correlation(img: GrayImage, levels: int, offset) -> float | None:
    p = glcm(img, levels, offset)
    i = np.arange(levels, dtype=np.float64)
    pi = p.sum(axis=1)
    pj = p.sum(axis=0)
    mu_i = i @ pi
    mu_j = i @ pj
    sd_i = np.sqrt(((i - mu_i) ** 2) @ pi)
    sd_j = np.sqrt(((i - mu_j) ** 2) @ pj)
    if sd_i == 0.0 or sd_j == 0.0:
        return None
    r = float(np.outer(i - mu_i, i - mu_j).ravel() @ p.ravel() / (sd_i * sd_j))
    return min(1.0, max(-1.0, r))


def glcm_correlation(img: GrayImage, levels: int = DEFAULT_LEVELS, offset=DEFAULT_OFFSET) -> float:
    r = _glcm_correlation(img, levels, offset)
    return 0.0 if r is None else r


def _corr2(a: GrayImage, b: GrayImage) -> float | None:
    if a.shape != b.shape:
        raise ShapeError(f"images differ in shape: {a.shape} vs {b.shape}")
    return _pearson(a.pixels, b.pixels)


def corr2(a: GrayImage, b: GrayImage) -> float:
    r = _corr2(a, b)
    return 0.0 if r is None else r


@dataclass(frozen=True, eq=False)
class ScatterPairs:
    direction: str
    pairs: np.ndarray  # (k, 2) int array of (intensity, neighbour intensity)

    def csv_text(self) -> str:
        return "intensity,neighbor\n" + "".join(f"{a},{b}\n" for a, b in self.pairs.tolist())

    def to_csv(self, path: str | PathLike) -> None:
        with open(path, "w") as fh:
            fh.write(self.csv_text())


def correlation_scatter(img: GrayImage, direction: str, sample_n: int = 0, seed: int = 0) -> ScatterPairs:
    """Adjacent pairs for plotting; ``sample_n=0`` keeps all of them in row-major order."""
    first, second = adjacent_pairs(img, direction)
    pairs = np.stack([first, second], axis=1).astype(np.int64)
    if sample_n < 0 or sample_n > len(pairs):
        raise ValueError(f"sample_n={sample_n} outside [0, {len(pairs)}]")
    if sample_n:
        rng = np.random.Generator(np.random.PCG64(seed))
        idx = np.sort(rng.choice(len(pairs), size=sample_n, replace=False))
        pairs = pairs[idx]
    return ScatterPairs(direction, pairs)


@dataclass
class MetricsReport:
    scheme: str
    horizontal: float
    vertical: float
    diagonal: float
    glcm_correlation: float
    corr2_with_original: float
    degenerate: list = field(default_factory=list)
    params_echo: dict = field(default_factory=dict)

    def row(self) -> list[str]:
        return [
            self.scheme,
            "%.17g" % self.horizontal,
            "%.17g" % self.vertical,
            "%.17g" % self.diagonal,
            "%.17g" % self.glcm_correlation,
            "%.17g" % self.corr2_with_original,
            ";".join(self.degenerate),
            json.dumps(self.params_echo, sort_keys=True),
        ]

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "horizontal": self.horizontal,
            "vertical": self.vertical,
            "diagonal": self.diagonal,
            "glcm_correlation": self.glcm_correlation,
            "corr2_with_original": self.corr2_with_original,
            "degenerate": list(self.degenerate),
            "params_echo": self.params_echo,
        }

    @classmethod
    def from_row(cls, row) -> "MetricsReport":
        scheme, h, v, d, g, c, degen, params = row
        return cls(scheme, float(h), float(v), float(d), float(g), float(c),
                   degen.split(";") if degen else [], json.loads(params))


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rep in reports:
        writer.writerow(rep.row())
    return buf.getvalue()


def reports_from_csv(text: str) -> list[MetricsReport]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("unexpected report header")
    return [MetricsReport.from_row(r) for r in rows[1:]]


def reports_to_json(reports, **extra) -> str:
    doc = dict(extra)
    doc["rows"] = [r.to_dict() for r in reports]
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def analysis_report(original: GrayImage, permuted: GrayImage, scheme: str, params_echo: dict | None = None,
                    levels: int = DEFAULT_LEVELS, offset=DEFAULT_OFFSET) -> MetricsReport:
    if original.shape != permuted.shape:
        raise ShapeError(f"images differ in shape: {original.shape} vs {permuted.shape}")
    values = {d: _adjacent(permuted, d) for d in DIRECTIONS}
    values["glcm_correlation"] = _glcm_correlation(permuted, levels, offset)
    values["corr2_with_original"] = _corr2(original, permuted)
    degenerate = [k for k, v in values.items() if v is None]
    echo = dict(params_echo or {})
    echo.setdefault("glcm", {"levels": levels, "offset": list(offset), "symmetric": True})
    return MetricsReport(
        scheme=scheme,
        degenerate=degenerate,
        params_echo=echo,
        **{k: (0.0 if v is None else v) for k, v in values.items()},
    )
