import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permutex.keygen import (
    ChaosParams,
    ParameterError,
    PermutationKey,
    decode_key,
    derive_permutation_key,
    encode_key,
    generate_key,
    generate_sequence,
    load_key,
    logistic_sine_step,
    round_half_away,
    save_key,
    save_key_csv,
    trajectory,
)


def test_step_zero_is_fixed_point():
    for r in (0.5, 2.0, 3.99):
        assert logistic_sine_step(0.0, r) == 0.0


def test_step_pure_logistic_at_r4():
    assert logistic_sine_step(0.3, 4.0) == pytest.approx(0.84, abs=1e-15)


def test_step_wraps_to_zero():
    # 2 * 0.25 + 2 * sin(pi / 2) / 4 = 1.0 exactly, and 1.0 mod 1 is 0
    assert logistic_sine_step(0.5, 2.0) == 0.0


@pytest.mark.parametrize("r", [0.0, -1.0, 4.5])
def test_step_rejects_bad_r(r):
    with pytest.raises(ParameterError):
        logistic_sine_step(0.3, r)


def test_two_step_hand_iteration():
    # x1 = 4 * 0.3 * 0.7 = 0.84, x2 = 4 * 0.84 * 0.16 = 0.5376
    xs = trajectory(0.3, 4.0, 2)
    assert xs[0] == pytest.approx(0.84, abs=1e-15)
    assert xs[1:].tolist() == pytest.approx([0.5376], abs=1e-14)


def test_trajectory_matches_step():
    x = 0.123
    xs = trajectory(x, 3.7, 50)
    for v in xs:
        x = logistic_sine_step(x, 3.7)
        assert v == x


def test_sequence_keeps_latter_half():
    p = ChaosParams(r=3.8, x0=0.2, n=40)
    full = trajectory(0.2, 3.8, 80)
    np.testing.assert_array_equal(generate_sequence(p), full[40:])


@settings(max_examples=40, deadline=None)
@given(r=st.floats(0.01, 3.999), x0=st.floats(1e-6, 1 - 1e-6), n=st.integers(1, 300))
def test_sequence_contract(r, x0, n):
    s = generate_sequence(ChaosParams(r=r, x0=x0, n=n))
    assert len(s) == n
    assert np.all((s >= 0.0) & (s < 1.0))


def test_sequence_deterministic():
    p = ChaosParams(n=500)
    np.testing.assert_array_equal(generate_sequence(p), generate_sequence(p))


def test_r4_equals_logistic_map():
    x = 0.41
    xs = trajectory(0.41, 4.0, 1000)
    for v in xs:
        x = (4.0 * x * (1.0 - x)) % 1.0
        assert v == x


@pytest.mark.parametrize(
    "kwargs",
    [dict(r=0.0), dict(r=4.0), dict(x0=0.0), dict(x0=1.0), dict(scale=0), dict(n=0), dict(scale=2.5)],
)
def test_params_validation(kwargs):
    with pytest.raises(ParameterError):
        ChaosParams(**kwargs)


def test_key_hand_example():
    k = derive_permutation_key(np.array([0.2, 0.7, 0.5]), 1000)
    assert k.key.tolist() == [0, 2, 1]
    # D = [200, 700, 500] -> argsort [0, 2, 1] -> argsort again [0, 2, 1]
    assert np.argsort([200, 700, 500]).tolist() == [0, 2, 1]


def test_key_duplicates_give_identity():
    k = derive_permutation_key(np.full(6, 0.4321), 1000)
    assert k.key.tolist() == list(range(6))
    assert k.collisions == 5


def test_key_is_rank_of_d():
    s = np.array([0.5, 0.1, 0.9, 0.1, 0.3])
    # D = [500, 100, 900, 100, 300]; ties keep trajectory order
    assert derive_permutation_key(s, 1000).key.tolist() == [3, 0, 4, 1, 2]


def test_round_half_away():
    assert round_half_away(np.array([0.5, 1.5, 2.5, -0.5, 0.49])).tolist() == [1, 2, 3, -1, 0]


@settings(max_examples=30, deadline=None)
@given(r=st.floats(0.01, 3.999), x0=st.floats(1e-6, 1 - 1e-6), n=st.integers(1, 2000), scale=st.integers(1, 10**6))
def test_key_is_permutation(r, x0, n, scale):
    k = generate_key(ChaosParams(r=r, x0=x0, scale=scale, n=n))
    seen = [False] * n
    for v in k.key.tolist():
        assert 0 <= v < n and not seen[v]
        seen[v] = True


def test_seed_sensitivity():
    a = generate_key(ChaosParams(x0=0.41, n=65536)).key
    b = generate_key(ChaosParams(x0=0.41 + 1e-10, n=65536)).key
    assert np.mean(a == b) < 0.01


def test_collision_count_default_scale():
    k = generate_key(ChaosParams(n=65536))
    # only 1001 distinct quantized values exist at scale 1000
    assert k.collisions >= 65536 - 1001


def test_key_binary_round_trip(tmp_path):
    k = generate_key(ChaosParams(n=257))
    data = encode_key(k)
    assert data[:4] == b"PXKY"
    assert int.from_bytes(data[4:8], "little") == 257
    assert data[8:12] == int(k.key[0]).to_bytes(4, "little")
    save_key(k, tmp_path / "k.pxky")
    assert load_key(tmp_path / "k.pxky") == k


def test_key_binary_rejects_garbage():
    with pytest.raises(ValueError):
        decode_key(b"NOPE\x00\x00\x00\x00")
    with pytest.raises(ValueError):
        decode_key(b"PXKY\x02\x00\x00\x00" + b"\x00" * 8)  # [0, 0] is not a permutation
    with pytest.raises(ValueError):
        decode_key(b"PXKY\x02\x00\x00\x00" + b"\x00" * 4)


def test_key_csv(tmp_path):
    save_key_csv(PermutationKey(np.array([2, 0, 1])), tmp_path / "k.csv")
    assert (tmp_path / "k.csv").read_text() == "index,key\n0,2\n1,0\n2,1\n"


def test_step_formula_literal():
    x, r = 0.37, 3.3
    expected = (r * x * (1 - x) + (4 - r) * math.sin(math.pi * x) / 4) % 1
    assert logistic_sine_step(x, r) == expected
