"""Seeded weight generation with a pinned SplitMix64 stream.

For seed s the generator state starts at s and, for each vertex i, does::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    z = z ^ (z >> 31)
    weight[i] = 1 + ((z * wmax) >> 64)

The last line is a multiply-shift range reduction onto [1, wmax].
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> tuple[int, int]:
    """Advance ``state`` once; return (new_state, output)."""
    state = (state + GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def random_weights(seed: int, n: int, wmax: int) -> tuple[int, ...]:
    if n < 0 or wmax < 1:
        raise ValueError("need n >= 0 and wmax >= 1")
    state = seed & MASK64
    out = []
    for _ in range(n):
        state, z = splitmix64(state)
        out.append(1 + ((z * wmax) >> 64))
    return tuple(out)


def random_below(state: int, bound: int) -> tuple[int, int]:
    """One draw in [0, bound) from the same stream; returns (new_state, value)."""
    state, z = splitmix64(state)
    return state, (z * bound) >> 64
