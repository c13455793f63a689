"""Compiled inner loops for the quadratic-character prime sweep."""

import numba
import numpy as np


@numba.njit(cache=True)
def quadratic_residue_flags(p):
    """flags[x] = 1 iff x is a nonzero square mod p (squares walked by odd increments)."""
    flags = np.zeros(p, dtype=np.uint8)
    sq = 0
    for x in range(1, (p - 1) // 2 + 1):
        sq += 2 * x - 1
        sq -= p * (sq >= p)
        flags[sq] = 1
    return flags


@numba.njit(cache=True)
def longest_equal_run(flags):
    """Longest block of equal entries in flags[1:], as (length, N, flag) with N = start - 1.

    Ties keep the leftmost block.
    """
    n = flags.shape[0]
    best_len = 1
    best_end = 1
    cur = 1
    # branch-free run counter; the improvement branch is rarely taken
    for x in range(2, n):
        cur = cur * (flags[x] == flags[x - 1]) + 1
        if cur > best_len:
            best_len = cur
            best_end = x
    start = best_end - best_len + 1
    return best_len, start - 1, flags[start]


@numba.njit(cache=True)
def quadratic_max_run(p):
    """(H, N, is_residue) for the Legendre symbol mod an odd prime p.

    chi(p - x) = chi(-1) chi(x), so runs on [1, p-1] mirror about p/2 and only
    the first half is scanned.  For p = 1 (mod 4) the run ending at (p-1)/2
    continues symmetrically past the middle; for p = 3 (mod 4) the values at
    (p-1)/2 and (p+1)/2 differ and no run crosses.
    """
    flags = quadratic_residue_flags(p)
    if p < 5:
        return longest_equal_run(flags)
    m = (p - 1) // 2
    best_len = 1
    best_end = 1
    cur = 1
    for x in range(2, m + 1):
        cur = cur * (flags[x] == flags[x - 1]) + 1
        if cur > best_len:
            best_len = cur
            best_end = x
    if p % 4 == 1 and 2 * cur > best_len:
        start = m - cur + 1
        return 2 * cur, start - 1, flags[start]
    start = best_end - best_len + 1
    return best_len, start - 1, flags[start]


@numba.njit(cache=True)
def quadratic_max_runs(primes):
    """(H, N, is_residue) for every prime in the array."""
    k = primes.shape[0]
    out = np.empty((k, 3), dtype=np.int64)
    for i in range(k):
        h, n, flag = quadratic_max_run(primes[i])
        out[i, 0] = h
        out[i, 1] = n
        out[i, 2] = flag
    return out
