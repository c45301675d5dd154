"""Independent reference computations used only by the tests."""

from functools import lru_cache
from itertools import combinations_with_replacement
from math import isqrt

import numpy as np


def min_squares_dp(limit):
    """Fewest positive squares for every x <= limit, by plain dynamic programming."""
    inf = 10**9
    best = [0] + [inf] * limit
    sq = [s * s for s in range(1, isqrt(limit) + 1)]
    for x in range(1, limit + 1):
        b = inf
        for q in sq:
            if q > x:
                break
            if best[x - q] + 1 < b:
                b = best[x - q] + 1
        best[x] = b
    return best


def min_squares_sumset(limit):
    """Fewest positive squares for x <= limit via repeated FFT sumsets of the square set."""
    n = limit + 1
    sq = np.zeros(n)
    s = np.arange(1, isqrt(limit) + 1)
    sq[s * s] = 1.0
    size = 1 << (2 * n - 1).bit_length()
    fsq = np.fft.rfft(sq, size)
    counts = np.full(n, -1, dtype=np.int64)
    counts[0] = 0
    reach = sq > 0.5
    counts[reach & (counts < 0)] = 1
    for k in (2, 3, 4):
        conv = np.fft.irfft(np.fft.rfft(reach.astype(float), size) * fsq, size)[:n]
        reach = conv > 0.5
        counts[reach & (counts < 0)] = k
    return counts


def all_minimal_decomps(x):
    """Every sorted (non-increasing) minimal square decomposition of x, by enumeration."""
    if x == 0:
        return [()]
    roots = range(1, isqrt(x) + 1)
    for k in range(1, 5):
        found = [
            tuple(sorted(c, reverse=True))
            for c in combinations_with_replacement(roots, k)
            if sum(t * t for t in c) == x
        ]
        if found:
            return sorted(set(found))
    raise AssertionError(f"{x} needs more than four squares")


@lru_cache(maxsize=None)
def naive_cp_rank(a, b, c):
    """Exact integer cp-rank by unpruned recursion over every possible next column."""
    if a == b == c == 0:
        return 0
    best = None
    for x in range(isqrt(a) + 1):
        for y in range(isqrt(c) + 1):
            if (x or y) and x * y <= b:
                r = naive_cp_rank(a - x * x, b - x * y, c - y * y)
                if r is not None and (best is None or r + 1 < best):
                    best = r + 1
    return best
