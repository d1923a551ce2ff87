"""Run every scheme on one image and tabulate the correlation metrics."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .baselines import CHAOTIC_RC, KEY_ONLY, RANDOM_RC, chaotic_row_column_shuffle, key_only_permutation, \
    random_row_column_shuffle
from .engine import PixelPermutation, permutex
from .image_core import GrayImage
from .keygen import ChaosParams
from .metrics import DEFAULT_LEVELS, DEFAULT_OFFSET, MetricsReport, analysis_report

ORIGINAL = "original"
PERMUTEX = "permutex"
ROW_ORDER = (ORIGINAL, RANDOM_RC, CHAOTIC_RC, KEY_ONLY, PERMUTEX)

RETRY_X0_STEP = 0.01
DEFAULT_ATTEMPTS = 3


@dataclass
class Comparison:
    reports: list[MetricsReport]
    images: dict[str, GrayImage]
    permutations: dict[str, PixelPermutation]
    ordering_ok: bool
    config: dict = field(default_factory=dict)


def run_scheme(name: str, img: GrayImage, chaos: ChaosParams, window: int = 3, seed: int = 0):
    if name == PERMUTEX:
        return permutex(img, chaos, window)
    if name == RANDOM_RC:
        return random_row_column_shuffle(img, seed)
    if name == CHAOTIC_RC:
        return chaotic_row_column_shuffle(img, chaos)
    if name == KEY_ONLY:
        return key_only_permutation(img, chaos)
    raise ValueError(f"unknown scheme {name!r}")


def glcm_ordering_ok(reports: list[MetricsReport]) -> bool:
    """True when permutex has strictly the smallest |GLCM correlation| of the four schemes."""
    by_name = {r.scheme: abs(r.glcm_correlation) for r in reports}
    return all(by_name[PERMUTEX] < by_name[s] for s in (RANDOM_RC, CHAOTIC_RC, KEY_ONLY))


def compare_schemes(img: GrayImage, chaos: ChaosParams | None = None, window: int = 3, seed: int = 0,
                    levels: int = DEFAULT_LEVELS, offset=DEFAULT_OFFSET) -> Comparison:
    chaos = chaos or ChaosParams()
    config = {
        "chaos": {"r": chaos.r, "x0": chaos.x0, "scale": chaos.scale},
        "window": window,
        "seed": seed,
        "glcm": {"levels": levels, "offset": list(offset), "symmetric": True},
    }
    images = {ORIGINAL: img}
    perms = {}
    reports = [analysis_report(img, img, ORIGINAL, {"scheme": ORIGINAL}, levels, offset)]
    for name in ROW_ORDER[1:]:
        out, perm = run_scheme(name, img, chaos, window, seed)
        images[name] = out
        perms[name] = perm
        reports.append(analysis_report(img, out, name, perm.provenance, levels, offset))
    return Comparison(reports, images, perms, glcm_ordering_ok(reports), config)


def retry_config(chaos: ChaosParams, seed: int, attempt: int) -> tuple[ChaosParams, int]:
    """Fixed retry schedule: attempt k shifts x0 by k * 0.01 (wrapping inside (0, 1)) and seed by k."""
    x0 = (chaos.x0 + attempt * RETRY_X0_STEP) % 1.0 or RETRY_X0_STEP
    return dataclasses.replace(chaos, x0=round(x0, 12)), seed + attempt


def ordering_attempts(img: GrayImage, chaos: ChaosParams | None = None, window: int = 3, seed: int = 0,
                      attempts: int = DEFAULT_ATTEMPTS, **kwargs) -> list[Comparison]:
    chaos = chaos or ChaosParams()
    results = []
    for k in range(attempts):
        c, sd = retry_config(chaos, seed, k)
        results.append(compare_schemes(img, c, window, sd, **kwargs))
    return results
