"""Seeded portable random number generation.

All randomness in this package (synthetic data, k-means++ seeding) flows
through :class:`SplitMix64`, the 64-bit mixing generator of Steele, Lea &
Flood.  It is four lines of integer arithmetic, has no platform-dependent
state, and produces identical streams for identical seeds everywhere, which
is what makes seeded runs byte-reproducible.
"""

from __future__ import annotations

import math

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """Deterministic 64-bit generator seeded with a single integer."""

    def __init__(self, seed: int):
        self._state = seed & _MASK
        self._spare_normal: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n), rejection-sampled to avoid modulo bias."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (_MASK + 1) - (_MASK + 1) % n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def normal(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Gaussian draw via Box-Muller; caches the spare deviate."""
        if self._spare_normal is not None:
            z = self._spare_normal
            self._spare_normal = None
        else:
            # u1 in (0, 1] so log() is finite
            u1 = 1.0 - self.random()
            u2 = self.random()
            r = math.sqrt(-2.0 * math.log(u1))
            z = r * math.cos(2.0 * math.pi * u2)
            self._spare_normal = r * math.sin(2.0 * math.pi * u2)
        return mu + sigma * z

    def choice_weighted(self, weights) -> int:
        """Index drawn with probability proportional to nonnegative weights.

        If accumulated rounding pushes the draw past the final cumulative
        sum, the last positive-weight index is returned; an all-zero weight
        vector raises.
        """
        weights = list(weights)
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        total = float(sum(weights))
        if total <= 0.0:
            raise ValueError("weights must sum to a positive value")
        r = self.random() * total
        acc = 0.0
        last = 0
        for i, w in enumerate(weights):
            acc += w
            if r < acc:
                return i
            if w > 0:
                last = i
        return last
