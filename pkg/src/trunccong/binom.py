"""Binomial coefficients mod p by Lucas' theorem, and their vanishing intervals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .modmath import ceil_div

# int64 products of two residues stay exact below this bound
MAX_P = 1 << 31


class LucasTable:
    """Factorials and inverse factorials mod p, for digit binomials C(a, b), a, b < p."""

    def __init__(self, p: int):
        if not 2 <= p < MAX_P:
            raise ValueError(f"p={p} outside the supported range [2, 2**31)")
        self.p = p
        fact = [1] * p
        for i in range(1, p):
            fact[i] = fact[i - 1] * i % p
        inv = [1] * p
        inv[p - 1] = pow(fact[p - 1], -1, p)
        for i in range(p - 1, 0, -1):
            inv[i - 1] = inv[i] * i % p
        self.fact = tuple(fact)
        self.inv_fact = tuple(inv)
        self._fact_arr = np.array(fact, dtype=np.int64)
        self._inv_arr = np.array(inv, dtype=np.int64)

    def digit_binom(self, a: int, b: int) -> int:
        if b > a:
            return 0
        p = self.p
        return self.fact[a] * self.inv_fact[b] % p * self.inv_fact[a - b] % p


@lru_cache(maxsize=128)
def lucas_table(p: int) -> LucasTable:
    """Shared table per prime."""
    return LucasTable(p)


def binom_mod_lucas(N: int, K: int, p: int, table: LucasTable | None = None) -> int:
    """C(N, K) mod p as the product of base-p digit binomials."""
    if K < 0 or N < 0:
        return 0
    if K > N:
        return 0
    if table is None:
        table = lucas_table(p)
    result = 1
    while K:
        N, n_d = divmod(N, p)
        K, k_d = divmod(K, p)
        if k_d > n_d:
            return 0
        result = result * table.digit_binom(n_d, k_d) % p
        if not result:
            return 0
    return result


def binom_mod_lucas_array(N: np.ndarray, K: np.ndarray, table: LucasTable) -> np.ndarray:
    """Vectorized ``binom_mod_lucas`` over equal-shaped arrays of nonnegative ints."""
    p = table.p
    N = np.array(N, dtype=np.int64)
    K = np.array(K, dtype=np.int64)
    out = (K <= N).astype(np.int64)
    fact, inv = table._fact_arr, table._inv_arr
    while True:
        live = K > 0
        if not live.any():
            break
        n_d = N % p
        k_d = K % p
        ok = k_d <= n_d
        diff = np.where(ok, n_d - k_d, 0)
        term = fact[n_d] * inv[k_d] % p * inv[diff] % p
        term = np.where(ok, term, 0)
        out = np.where(live, out * term % p, out)
        N = N // p
        K = K // p
    return out


def shifted_binomials(r: int, e: int, lo: int, hi: int, table: LucasTable) -> np.ndarray:
    """C(r*k + e, k) mod p for lo <= k < hi."""
    k = np.arange(lo, max(lo, hi), dtype=np.int64)
    return binom_mod_lucas_array(r * k + e, k, table)


def iter_shifted_binomials(r: int, e: int, lo: int, hi: int, table: LucasTable, chunk: int = 1 << 16):
    """Stream (start, values) blocks of C(r*k + e, k) mod p over lo <= k < hi."""
    for start in range(lo, hi, chunk):
        stop = min(hi, start + chunk)
        yield start, shifted_binomials(r, e, start, stop, table)


@dataclass(frozen=True)
class VanishingRanges:
    """Subintervals of [0, q) outside which C(r*k + e, k) is divisible by p.

    ``intervals`` holds one ``(m, range)`` pair per m = 1..r; empty ranges are kept
    so the labels stay aligned.
    """

    r: int
    e: int
    q: int
    intervals: tuple[tuple[int, range], ...]

    def __contains__(self, k: int) -> bool:
        return any(k in rng for _, rng in self.intervals)

    def nonempty(self):
        return [(m, rng) for m, rng in self.intervals if len(rng)]

    def interval(self, m: int) -> range:
        return self.intervals[m - 1][1]


def vanishing_ranges(r: int, e: int, q: int) -> VanishingRanges:
    if r < 2:
        raise ValueError("need r >= 2")
    if not 0 <= e < q:
        raise ValueError("need 0 <= e < q")
    intervals = []
    for m in range(1, r + 1):
        lo = max(0, ceil_div((m - 1) * q - e, r - 1))
        hi = min(q, ceil_div(m * q - e, r))
        intervals.append((m, range(lo, max(lo, hi))))
    return VanishingRanges(r, e, q, tuple(intervals))
