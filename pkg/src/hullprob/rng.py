"""Deterministic, splittable 64-bit randomness (SplitMix64).

Every stochastic code path in the library draws from this generator so that
a (seed, input) pair reproduces bit-identically across platforms, runs and
thread counts.  The compiled Monte Carlo kernel re-implements exactly the
same arithmetic in C; the parity tests pin the two together.

Splitting scheme: the stream for trial ``i`` under ``master_seed`` starts at
state ``mix64((master_seed + (i + 1) * GOLDEN) mod 2**64)`` and then advances
by the usual SplitMix64 golden-ratio increment.  The finalizer scatters the
start states, so distinct trials get effectively independent streams while
remaining reproducible and order-free (trials can run concurrently).
"""

from __future__ import annotations

from fractions import Fraction

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Minimal sequential SplitMix64 stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)


def trial_seed(master_seed: int, index: int) -> int:
    """Documented split: derive the stream-start state for one trial."""
    return mix64((master_seed + (index + 1) * GOLDEN) & MASK64)


def presence_threshold(prob: Fraction) -> int:
    """floor(prob * 2**64): a point is included iff a uniform u64 draw is
    strictly below this value.  The quantization error is < 2**-64 per point
    and is the documented price of cross-platform reproducibility; prob 0
    and 1 are exact."""
    if not 0 <= prob <= 1:
        raise ValueError(f"probability out of range: {prob}")
    return (prob.numerator << 64) // prob.denominator


def draw_mask(thresholds: list[int], seed: int) -> int:
    """One inclusion decision per threshold, one u64 draw each; bit i of the
    result is the decision for index i."""
    gen = SplitMix64(seed)
    mask = 0
    for i, t in enumerate(thresholds):
        if gen.next_u64() < t:
            mask |= 1 << i
    return mask
