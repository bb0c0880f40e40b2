"""Prime enumeration and window factorization.

Primes are produced by a segmented sieve of Eratosthenes on odd numbers,
with O(sqrt(N)) memory for the base primes plus one cache-sized segment.
``factor_window`` factors every integer of a short interval at once by
sieving with primes up to sqrt of the upper endpoint; whatever cofactor
survives is prime.  Point factorizations of 64-bit integers go through
deterministic Miller-Rabin plus Pollard's rho.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator

import numpy as np

# Segment size in bytes; roughly L2-cache sized.
SEGMENT_BYTES = 1 << 21

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Witnesses proving primality for every n < 3.3e24 (covers 64-bit inputs).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def primes_up_to(n: int, segment_bytes: int = SEGMENT_BYTES) -> Iterator[int]:
    """Yield all primes <= n in increasing order."""
    if n < 2:
        return
    yield 2
    if n < 3:
        return
    root = isqrt(n)
    base = _odd_sieve(root)  # odd base primes <= sqrt(n)
    yield from (int(p) for p in base)
    # Sieve odd numbers above sqrt(n), one cache-sized segment at a time.
    seg_odds = 8 * segment_bytes  # odd numbers per segment
    lo = root + 1 if root % 2 == 0 else root + 2
    while lo <= n:
        hi = min(lo + 2 * seg_odds, n + 1)  # segment covers odds in [lo, hi)
        mask = np.ones((hi - lo + 1) // 2, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start < hi:
                mask[(start - lo) // 2 :: p] = False
        for off in np.flatnonzero(mask):
            yield lo + 2 * int(off)
        lo = hi if hi % 2 == 1 else hi + 1


def _odd_sieve(n: int) -> np.ndarray:
    """Odd primes <= n as an int64 array (simple non-segmented sieve)."""
    if n < 3:
        return np.empty(0, dtype=np.int64)
    mask = np.ones((n - 1) // 2, dtype=bool)  # mask[i] <-> 2i + 3 <= n
    for i in range((isqrt(n) - 1) // 2):
        if mask[i]:
            p = 2 * i + 3
            mask[(p * p - 3) // 2 :: p] = False
    return 2 * np.flatnonzero(mask).astype(np.int64) + 3


def prime_array(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (materialized)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(([np.int64(2)], _odd_sieve(n)))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit inputs."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int) -> int:
    """Pollard's rho (Brent cycle finding); returns a nontrivial factor."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def factorize(n: int) -> dict[int, int]:
    """Complete prime factorization {prime: exponent} of n >= 1."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


@dataclass(frozen=True)
class FactorizationWindow:
    """Complete factorizations of every integer in [base, base + len - 1]."""

    base: int
    factored: tuple[dict[int, int], ...]

    def factorization(self, m: int) -> dict[int, int]:
        if not self.base <= m < self.base + len(self.factored):
            raise KeyError(f"{m} outside window [{self.base}, {self.base + len(self.factored) - 1}]")
        return self.factored[m - self.base]

    def largest_prime_factor(self, m: int) -> int:
        return max(self.factorization(m))


def factor_window(m0: int, m1: int) -> FactorizationWindow:
    """Factor every integer in [m0, m1] by sieving primes <= sqrt(m1).

    No per-integer factoring calls are made: each sieve prime is divided
    out of the residual cofactors along its arithmetic progressions, and
    any cofactor left exceeding 1 is necessarily prime.
    """
    if m0 < 2:
        raise ValueError("window must start at 2 or above")
    if m1 < m0:
        raise ValueError("empty window")
    if m1 - m0 > (1 << 30):
        raise ValueError("window too wide")
    width = m1 - m0 + 1
    rest = np.arange(m0, m1 + 1, dtype=np.uint64)
    factors: list[dict[int, int]] = [dict() for _ in range(width)]
    for p in prime_array(isqrt(m1)):
        p = int(p)
        start = (-m0) % p
        idx = np.arange(start, width, p)
        live = idx
        while live.size:
            for i in live:
                d = factors[int(i)]
                d[p] = d.get(p, 0) + 1
            rest[live] //= p
            live = live[rest[live] % p == 0]
    for i in np.flatnonzero(rest > 1):
        q = int(rest[i])
        factors[int(i)][q] = factors[int(i)].get(q, 0) + 1
    return FactorizationWindow(base=m0, factored=tuple(factors))
