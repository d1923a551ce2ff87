import pytest

from permutex.compare import (
    CHAOTIC_RC,
    KEY_ONLY,
    PERMUTEX,
    RANDOM_RC,
    ROW_ORDER,
    compare_schemes,
    glcm_ordering_ok,
    retry_config,
    run_scheme,
)
from permutex.keygen import ChaosParams
from permutex.metrics import MetricsReport

from conftest import random_image


def _rep(name, g):
    return MetricsReport(name, 0, 0, 0, g, 0)


def test_ordering_flag():
    good = [_rep(RANDOM_RC, 0.04), _rep(CHAOTIC_RC, -0.03), _rep(KEY_ONLY, 0.02), _rep(PERMUTEX, -0.001)]
    assert glcm_ordering_ok(good)
    tie = [_rep(RANDOM_RC, 0.04), _rep(CHAOTIC_RC, 0.03), _rep(KEY_ONLY, 0.001), _rep(PERMUTEX, -0.001)]
    assert not glcm_ordering_ok(tie)


def test_compare_structure(rng):
    img = random_image(rng, 16, 16)
    result = compare_schemes(img, ChaosParams(x0=0.3), seed=9)
    assert [r.scheme for r in result.reports] == list(ROW_ORDER)
    assert result.reports[0].corr2_with_original == pytest.approx(1.0)
    assert set(result.permutations) == set(ROW_ORDER[1:])
    for name, perm in result.permutations.items():
        assert perm.provenance["scheme"] == name


def test_retry_schedule():
    chaos = ChaosParams(x0=0.41)
    assert retry_config(chaos, 5, 0) == (chaos, 5)
    c, s = retry_config(chaos, 5, 2)
    assert c.x0 == pytest.approx(0.43) and s == 7
    c, _ = retry_config(ChaosParams(x0=0.99), 0, 1)
    assert 0 < c.x0 < 1


def test_unknown_scheme(rng):
    with pytest.raises(ValueError):
        run_scheme("josephus", random_image(rng, 2, 2), ChaosParams())
