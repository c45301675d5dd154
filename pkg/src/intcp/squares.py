"""Sums of squares: the 4^r(8k+7) classifier, minimal counts, and witnesses."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

# smallest-prime-factor table, built once on first use
_SIEVE_LIMIT = 1 << 21
_spf: list[int] | None = None
_primes: np.ndarray | None = None
_primes_limit = 0
_spf_lock = threading.Lock()
# above this, the last two parts come from the Gaussian factorization
_SCAN_LIMIT = 1 << 22


@dataclass(frozen=True)
class SquareDecomp:
    target: int
    parts: tuple[int, ...]
    minimal: bool = True

    @property
    def count(self) -> int:
        return len(self.parts)

    def to_dict(self) -> dict:
        return {"x": self.target, "count": self.count, "parts": list(self.parts)}


def _check(x: int) -> None:
    if x < 0:
        raise ValueError(f"expected a nonnegative integer, got {x}")


def is_square(x: int) -> bool:
    if x < 0:
        return False
    r = isqrt(x)
    return r * r == x


def is_form_4r8k7(x: int) -> bool:
    """True iff x = 4^r (8k + 7) for some r, k >= 0."""
    _check(x)
    if x == 0:
        return False
    while x % 4 == 0:
        x //= 4
    return x % 8 == 7


def _spf_table() -> list[int]:
    global _spf
    if _spf is None:
        with _spf_lock:
            if _spf is None:
                spf = np.zeros(_SIEVE_LIMIT + 1, dtype=np.int32)
                for p in range(2, isqrt(_SIEVE_LIMIT) + 1):
                    if spf[p] == 0:
                        block = spf[p * p :: p]
                        block[block == 0] = p
                idx = np.nonzero(spf == 0)[0]
                spf[idx] = idx
                _spf = spf.tolist()
    return _spf


def _primes_upto(n: int) -> np.ndarray:
    global _primes
    if _primes is None or _primes_limit < n:
        with _spf_lock:
            if _primes is None or _primes_limit < n:
                limit = max(n, _SIEVE_LIMIT)
                mark = np.ones(limit + 1, dtype=bool)
                mark[:2] = False
                for p in range(2, isqrt(limit) + 1):
                    if mark[p]:
                        mark[p * p :: p] = False
                _set_primes(np.nonzero(mark)[0].astype(np.int64), limit)
    return _primes[_primes <= n]


def _set_primes(arr: np.ndarray, limit: int) -> None:
    global _primes, _primes_limit
    _primes, _primes_limit = arr, limit


def _prime_powers(x: int):
    """Yield (p, e) for the factorization of x > 0."""
    if x <= _SIEVE_LIMIT:
        spf = _spf_table()
        while x > 1:
            p = spf[x]
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            yield p, e
        return
    if x >= 1 << 62:
        # beyond int64: plain trial division
        p = 2
        while p * p <= x:
            if x % p == 0:
                e = 0
                while x % p == 0:
                    x //= p
                    e += 1
                yield p, e
            p += 1 if p == 2 else 2
        if x > 1:
            yield x, 1
        return
    # vectorized trial division by every prime up to sqrt(x); the cofactor is prime
    primes = _primes_upto(isqrt(x))
    for p in primes[np.int64(x) % primes == 0].tolist():
        e = 0
        while x % p == 0:
            x //= p
            e += 1
        yield p, e
    if x > 1:
        yield x, 1


def is_sum_of_two_squares(x: int) -> bool:
    """Two-square theorem: every prime 3 mod 4 divides x to an even power."""
    _check(x)
    if x == 0:
        return True
    x >>= (x & -x).bit_length() - 1
    if x % 4 == 3:
        return False
    return all(e % 2 == 0 for p, e in _prime_powers(x) if p % 4 == 3)


def _sqrt_minus_one(p: int) -> int:
    """r with r*r = -1 mod p, for a prime p = 1 mod 4."""
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return pow(c, (p - 1) // 4, p)
    raise ArithmeticError(f"no non-residue mod {p}")


def _gaussian_prime(p: int) -> tuple[int, int]:
    """(u, v) with u*u + v*v = p, by the Hermite-Serret Euclid descent."""
    a, b = p, _sqrt_minus_one(p)
    while b * b > p:
        a, b = b, a % b
    c = isqrt(p - b * b)
    return b, c


def _two_square_parts(x: int) -> tuple[int, int]:
    """Representation x = s^2 + t^2 with the largest possible s (s >= t >= 0).

    Enumerates every representation as a product of Gaussian primes over
    the factorization of x.
    """
    reps = [(1, 0)]
    for p, e in _prime_powers(x):
        if p == 2:
            unit = (1, 1)
            for _ in range(e):
                reps = [(u * unit[0] - v * unit[1], u * unit[1] + v * unit[0]) for u, v in reps]
        elif p % 4 == 3:
            q = p ** (e // 2)
            reps = [(u * q, v * q) for u, v in reps]
        else:
            g, h = _gaussian_prime(p)
            powers = []
            for k in range(e + 1):
                # g+hi to the k times g-hi to the (e-k)
                re, im = 1, 0
                for _ in range(k):
                    re, im = re * g - im * h, re * h + im * g
                for _ in range(e - k):
                    re, im = re * g + im * h, im * g - re * h
                powers.append((re, im))
            reps = [(u * a - v * b, u * b + v * a) for u, v in reps for a, b in powers]
    return max((max(abs(u), abs(v)), min(abs(u), abs(v))) for u, v in reps)


def min_square_count(x: int) -> int:
    """Fewest positive squares summing to x (0 for x = 0)."""
    _check(x)
    return _min_square_count(x)


@lru_cache(maxsize=1 << 18)
def _min_square_count(x: int) -> int:
    if x == 0:
        return 0
    if is_square(x):
        return 1
    if is_sum_of_two_squares(x):
        return 2
    if is_form_4r8k7(x):
        return 4
    return 3


def decompose(x: int) -> SquareDecomp:
    """Minimal decomposition of x, lexicographically greatest sorted parts.

    Greedy is exact here: the largest s with min_square_count(x - s*s) equal
    to count - 1 is the largest part over every minimal representation, so
    later parts never exceed it. The final pair comes from the Gaussian
    factorization rather than a scan.
    """
    _check(x)
    count = min_square_count(x)
    parts = []
    rest = x
    for budget in range(count, 0, -1):
        if budget == 2 and rest > _SCAN_LIMIT:
            parts.extend(_two_square_parts(rest))
            rest = 0
            break
        fits = _FITS[budget - 1]
        s = isqrt(rest)
        while not fits(rest - s * s):
            s -= 1
        parts.append(s)
        rest -= s * s
    assert rest == 0
    return SquareDecomp(x, tuple(parts), True)


# fits[k](y): y is a sum of at most k positive squares
_FITS = (
    lambda y: y == 0,
    is_square,
    lambda y: is_square(y) or is_sum_of_two_squares(y),
    lambda y: not is_form_4r8k7(y),
)


def neighbor_excluded(x: int) -> bool:
    """Self-check: if x is of form 4^r(8k+7), none of x-6, x-2, x+2, x+6 is."""
    if not is_form_4r8k7(x):
        return True
    return not any(is_form_4r8k7(y) for y in (x - 6, x - 2, x + 2, x + 6) if y >= 0)
