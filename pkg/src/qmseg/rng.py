"""Deterministic Gaussian random walks for fixtures and benchmarks.

Uniform deviates come from CPython's ``random.Random`` (MT19937), whose
``random()`` stream is guaranteed stable for a given integer seed across
Python releases.  Pairs of uniforms ``(u1, u2)`` become normal deviates by
the basic Box-Muller transform

    z1 = sqrt(-2 ln(1 - u1)) cos(2 pi u2)
    z2 = sqrt(-2 ln(1 - u1)) sin(2 pi u2)

consumed in that order.  The walk is ``y[0] = 0``, ``y[i+1] = y[i] + z[i]``.
"""

from __future__ import annotations

import math
import random

import numpy as np


def normal_deviates(count: int, seed: int) -> np.ndarray:
    rng = random.Random(seed)
    out = np.empty(count, dtype=np.float64)
    two_pi = 2.0 * math.pi
    for i in range(0, count, 2):
        u1 = rng.random()
        u2 = rng.random()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        out[i] = r * math.cos(two_pi * u2)
        if i + 1 < count:
            out[i + 1] = r * math.sin(two_pi * u2)
    return out


def random_walk(n: int, seed: int) -> np.ndarray:
    """``n`` samples of a standard Gaussian random walk starting at 0."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    y = np.zeros(n, dtype=np.float64)
    np.cumsum(normal_deviates(n - 1, seed), out=y[1:])
    return y
