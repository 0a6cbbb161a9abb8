from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trunccong.binom import (
    binom_mod_lucas,
    binom_mod_lucas_array,
    iter_shifted_binomials,
    lucas_table,
    shifted_binomials,
    vanishing_ranges,
)
from trunccong.congruences import no_adjacent_ones

from conftest import small_primes


def test_examples():
    assert binom_mod_lucas(0, 0, 7) == 1
    assert binom_mod_lucas(3 * 49, 49, 7) == 3
    assert binom_mod_lucas(9, 3, 7) == 0
    assert binom_mod_lucas(3, 5, 7) == 0


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_lucas_against_pascal_rows(p):
    # every row of Pascal's triangle up to N = 2000, built by addition mod p
    table = lucas_table(p)
    row = np.array([1], dtype=np.int64)
    for n in range(2001):
        got = binom_mod_lucas_array(np.full(n + 1, n), np.arange(n + 1), table)
        assert (got == row).all(), n
        row = np.concatenate([row, [0]]) + np.concatenate([[0], row])
        row %= p


@given(small_primes, st.integers(0, 10**12), st.integers(0, 10**12))
def test_scalar_and_array_paths_agree(p, N, K):
    table = lucas_table(p)
    arr = binom_mod_lucas_array(np.array([N]), np.array([K]), table)
    assert int(arr[0]) == binom_mod_lucas(N, K, p)


@given(small_primes, st.integers(0, 300), st.integers(0, 300))
def test_small_values_exact(p, N, K):
    assert binom_mod_lucas(N, K, p) == comb(N, K) % p


def test_shifted_binomials_chunks():
    table = lucas_table(11)
    whole = shifted_binomials(3, 4, 5, 1000, table)
    pieces = np.concatenate([v for _, v in iter_shifted_binomials(3, 4, 5, 1000, table, chunk=97)])
    assert whole.tolist() == pieces.tolist()
    assert whole.tolist() == [comb(3 * k + 4, k) % 11 for k in range(5, 1000)]


def test_vanishing_range_examples():
    vr = vanishing_ranges(3, 0, 25)
    assert len(vr.interval(3)) == 0
    assert vr.interval(1) == range(0, 9)
    vr = vanishing_ranges(3, 5, 25)
    assert [list(r) for _, r in vr.nonempty()] == [list(range(0, 7)), list(range(10, 15)), [23]]


@pytest.mark.parametrize("p", [5, 7, 11, 13])
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("r", [2, 3])
def test_binomials_vanish_outside_ranges(p, n, r):
    q = p**n
    table = lucas_table(p)
    for e in range(min(q - 1, 15) + 1):
        vr = vanishing_ranges(r, e, q)
        vals = shifted_binomials(r, e, 0, q, table)
        for k in range(q):
            if k not in vr:
                assert vals[k] == 0, (r, e, k)
        for _, rng in vr.nonempty():
            assert any(vals[k] for k in rng)


def test_ranges_disjoint_and_ascending():
    for q in (25, 49, 121):
        for e in range(q):
            for r in (2, 3, 4):
                rngs = [rng for _, rng in vanishing_ranges(r, e, q).nonempty()]
                for a, b in zip(rngs, rngs[1:]):
                    assert a.stop <= b.start


def test_parity_of_3k_choose_k():
    k = np.arange(1 << 16, dtype=np.int64)
    odd = binom_mod_lucas_array(3 * k, k, lucas_table(2)) == 1
    assert (odd == no_adjacent_ones(k)).all()
