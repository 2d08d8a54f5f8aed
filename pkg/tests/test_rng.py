"""Tests for the seeded SplitMix64 generator."""
from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from repdays import SplitMix64

# First outputs for seed 0, transcribed from the published splitmix64.c
# reference implementation (Vigna); any correct implementation must agree.
_SEED0_STREAM = [
    0xE220A8397B1DCDAF,
    0x6E789E6AA1B965F4,
    0x06C45D188009454F,
]


def test_seed_zero_reference_stream():
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == _SEED0_STREAM


def test_same_seed_same_stream():
    a = SplitMix64(987654321)
    b = SplitMix64(987654321)
    assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]


def test_different_seeds_differ():
    a = SplitMix64(1)
    b = SplitMix64(2)
    assert [a.next_u64() for _ in range(10)] != [b.next_u64() for _ in range(10)]


def test_random_unit_interval():
    rng = SplitMix64(5)
    draws = [rng.random() for _ in range(10_000)]
    assert all(0.0 <= x < 1.0 for x in draws)
    assert abs(sum(draws) / len(draws) - 0.5) < 0.02


def test_uniform_bounds():
    rng = SplitMix64(6)
    draws = [rng.uniform(-2.0, 3.0) for _ in range(1000)]
    assert all(-2.0 <= x < 3.0 for x in draws)


def test_randint_bounds_and_coverage():
    rng = SplitMix64(7)
    draws = [rng.randint(6) for _ in range(6000)]
    assert set(draws) == set(range(6))
    counts = [draws.count(v) for v in range(6)]
    assert min(counts) > 700  # roughly uniform; expectation 1000 each


def test_randint_rejects_nonpositive():
    rng = SplitMix64(8)
    with pytest.raises(ValueError):
        rng.randint(0)


def test_normal_moments():
    rng = SplitMix64(9)
    draws = [rng.normal() for _ in range(20_000)]
    mean = sum(draws) / len(draws)
    var = sum((x - mean) ** 2 for x in draws) / len(draws)
    assert abs(mean) < 0.03
    assert abs(math.sqrt(var) - 1.0) < 0.03


def test_normal_location_scale():
    a = SplitMix64(10)
    b = SplitMix64(10)
    x = a.normal(5.0, 2.0)
    z = b.normal()
    assert x == pytest.approx(5.0 + 2.0 * z, abs=1e-12)


def test_normal_spare_keeps_stream_aligned():
    # an odd number of normal() calls must not desynchronize later draws
    a = SplitMix64(11)
    b = SplitMix64(11)
    a.normal()
    a.normal()
    b.normal()
    b.normal()
    assert a.next_u64() == b.next_u64()


def test_choice_weighted_distribution():
    rng = SplitMix64(12)
    weights = [0.0, 1.0, 3.0]
    draws = [rng.choice_weighted(weights) for _ in range(8000)]
    assert 0 not in draws
    share_two = draws.count(2) / len(draws)
    assert abs(share_two - 0.75) < 0.03


def test_choice_weighted_invalid():
    rng = SplitMix64(13)
    with pytest.raises(ValueError):
        rng.choice_weighted([0.0, 0.0])
    with pytest.raises(ValueError):
        rng.choice_weighted([1.0, -0.5])


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=0, max_value=2**64 - 1))
def test_randint_always_in_range(n, seed):
    rng = SplitMix64(seed)
    assert 0 <= rng.randint(n) < n
