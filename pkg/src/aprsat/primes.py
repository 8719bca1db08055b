"""Prime tables indexed by rank (the i-th prime, 1-based)."""

from __future__ import annotations

import bisect
import math
import threading

__all__ = ["PrimeTable", "first_primes", "prime_rank", "is_prime"]


def _sieve(limit: int) -> list[int]:
    """All primes <= limit (Eratosthenes)."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


class PrimeTable:
    """Growable table of the first primes.

    The sieve limit grows geometrically until enough primes are known, so
    requests are by rank rather than by magnitude.
    """

    def __init__(self, initial_limit: int = 1024):
        self._limit = max(16, initial_limit)
        self._primes = _sieve(self._limit)
        self._lock = threading.Lock()

    @property
    def limit(self) -> int:
        """Number of primes currently generated."""
        return len(self._primes)

    @property
    def primes(self) -> list[int]:
        return list(self._primes)

    def _grow_to_count(self, n: int) -> None:
        with self._lock:
            while len(self._primes) < n:
                self._limit *= 2
                self._primes = _sieve(self._limit)

    def _grow_to_value(self, p: int) -> None:
        with self._lock:
            while self._limit < p:
                self._limit *= 2
                self._primes = _sieve(self._limit)

    def first(self, n: int) -> list[int]:
        if n < 0:
            raise ValueError(f"count must be >= 0, got {n}")
        self._grow_to_count(n)
        return self._primes[:n]

    def rank(self, p: int) -> int:
        if p < 2:
            raise ValueError(f"{p} is not a prime")
        self._grow_to_value(p)
        i = bisect.bisect_left(self._primes, p)
        if i == len(self._primes) or self._primes[i] != p:
            raise ValueError(f"{p} is not a prime")
        return i + 1

    def is_prime(self, p: int) -> bool:
        if p < 2:
            return False
        self._grow_to_value(p)
        i = bisect.bisect_left(self._primes, p)
        return i < len(self._primes) and self._primes[i] == p


_TABLE = PrimeTable()


def first_primes(n: int) -> list[int]:
    """The n smallest primes in increasing order."""
    return _TABLE.first(n)


def prime_rank(p: int) -> int:
    """Return i such that p is the i-th prime; raise ValueError otherwise."""
    return _TABLE.rank(p)


def is_prime(p: int) -> bool:
    return _TABLE.is_prime(p)
