"""Integer and modular arithmetic for prime moduli up to 64 bits.

Python integers are unbounded, so the 128-bit intermediate products a C
implementation would need come for free from ``pow`` and ``*``.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

__all__ = [
    "PrimeModulus",
    "ReducedFraction",
    "is_prime",
    "factorize",
    "prime_factors",
    "pow_mod",
    "primitive_root",
    "discrete_log",
    "legendre",
    "primes_up_to",
]

# Exact rationals; ``Fraction`` keeps gcd(|num|, den) = 1 and den >= 1.
ReducedFraction = Fraction

U64_MAX = (1 << 64) - 1
TRIAL_DIVISION_CUTOFF = 10**6

# First twelve primes: a deterministic Miller-Rabin witness set for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES: list[int] | None = None


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a bytearray sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _small_primes() -> list[int]:
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        _SMALL_PRIMES = primes_up_to(TRIAL_DIVISION_CUTOFF)
    return _SMALL_PRIMES


def _check_u64(n: int, name: str = "n") -> None:
    if not 0 <= n <= U64_MAX:
        raise ValueError(f"{name}={n} is not an unsigned 64-bit integer")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit input."""
    _check_u64(n)
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


class PrimeModulus(int):
    """An odd prime p >= 3 that fits in 64 bits, checked on construction."""

    def __new__(cls, p: int) -> "PrimeModulus":
        p = int(p)
        if p < 3 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime modulus")
        return super().__new__(cls, p)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of the odd composite n (Brent's cycle variant)."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs in increasing prime order.

    Trial division by primes below 10**6, then Pollard-Brent rho on the
    cofactor.  The random walk is seeded from n so results are reproducible.
    """
    _check_u64(n)
    if n < 2:
        raise ValueError(f"cannot factorize {n} < 2")
    out: dict[int, int] = {}
    for q in _small_primes():
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out[q] = e
    if n > 1:
        _split(n, out, random.Random(n))
    return sorted(out.items())


def prime_factors(n: int) -> list[int]:
    return [q for q, _ in factorize(n)]


def pow_mod(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise ValueError("negative exponent")
    return pow(base, exp, modulus)


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/pZ)*."""
    p = PrimeModulus(p)
    cofactors = [(p - 1) // q for q in prime_factors(p - 1)]
    for g in range(2, p):
        if all(pow(g, c, p) != 1 for c in cofactors):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


def bsgs(base: int, y: int, modulus: int, order: int) -> int | None:
    """Baby-step giant-step: k in [0, order) with base**k == y, or None."""
    m = math.isqrt(order - 1) + 1 if order > 1 else 1
    table: dict[int, int] = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * base % modulus
    # base**(-m)
    step = pow(base, order - m % order if m % order else 0, modulus)
    gamma = y % modulus
    for i in range(m):
        j = table.get(gamma)
        if j is not None:
            k = i * m + j
            if k < order:
                return k
        gamma = gamma * step % modulus
    return None


def discrete_log(g: int, y: int, p: int) -> int:
    """k in [0, p-2] with g**k == y (mod p), for a primitive root g."""
    y %= p
    if y == 0:
        raise ValueError("no discrete logarithm of 0")
    k = bsgs(g % p, y, p, p - 1)
    if k is None:
        raise ValueError(f"{y} is not a power of {g} mod {p}")
    return k


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
