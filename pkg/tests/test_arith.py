import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from burgess.arith import (
    PrimeModulus,
    ReducedFraction,
    bsgs,
    discrete_log,
    factorize,
    is_prime,
    legendre,
    pow_mod,
    prime_factors,
    primes_up_to,
    primitive_root,
)
from conftest import naive_generator, naive_primes

# Strong pseudoprimes to several small bases: the classic traps for Miller-Rabin.
PSEUDOPRIMES = [2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
                341550071728321, 3825123056546413051, 318665857834031151167461 % (1 << 64)]


def test_primes_up_to_matches_trial_division():
    assert primes_up_to(1000) == naive_primes(1000)
    assert primes_up_to(1) == []


def test_is_prime_small_range():
    expected = set(naive_primes(5000))
    assert [n for n in range(5001) if is_prime(n)] == sorted(expected)


@pytest.mark.parametrize("n", PSEUDOPRIMES)
def test_is_prime_rejects_strong_pseudoprimes(n):
    assert not is_prime(n) or all(n % q for q in range(2, 10**5))
    assert is_prime(n) == (len(factorize(n)) == 1 and factorize(n)[0][1] == 1)


def test_is_prime_large_known():
    assert is_prime(2**61 - 1)
    assert is_prime(18446744073709551557)  # largest 64-bit prime
    assert not is_prime(2**64 - 1)


def test_is_prime_rejects_beyond_64_bits():
    with pytest.raises(ValueError):
        is_prime(2**64 + 13)


@given(st.integers(min_value=2, max_value=2**62))
def test_factorize_reconstructs(n):
    fac = factorize(n)
    assert math.prod(q**k for q, k in fac) == n
    assert [q for q, _ in fac] == sorted(q for q, _ in fac)
    assert all(is_prime(q) and k >= 1 for q, k in fac)


def test_factorize_semiprime_with_large_factors():
    p, q = 4294967291, 4294967279
    assert factorize(p * q) == [(q, 1), (p, 1)]
    assert prime_factors(2**10 * 3**5) == [2, 3]
    with pytest.raises(ValueError):
        factorize(1)


def test_prime_modulus_validation():
    assert PrimeModulus(7) == 7
    for bad in (2, 1, 0, -7, 9, 561):
        with pytest.raises(ValueError):
            PrimeModulus(bad)


def test_pow_mod():
    assert pow_mod(3, 4, 7) == 81 % 7
    with pytest.raises(ValueError):
        pow_mod(3, 4, 1)
    with pytest.raises(ValueError):
        pow_mod(3, -1, 7)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 41, 101, 257, 7919])
def test_primitive_root_is_smallest_generator(p):
    assert primitive_root(p) == naive_generator(p)


@given(st.sampled_from(naive_primes(3000)[1:]), st.data())
def test_discrete_log_inverts_pow(p, data):
    g = primitive_root(p)
    k = data.draw(st.integers(0, p - 2))
    assert discrete_log(g, pow(g, k, p), p) == k


def test_discrete_log_of_zero():
    with pytest.raises(ValueError):
        discrete_log(3, 0, 7)


def test_bsgs_in_subgroup():
    p = 101
    gamma = pow(primitive_root(p), 20, p)  # order 5
    for k in range(5):
        assert bsgs(gamma, pow(gamma, k, p), p, 5) == k
    assert bsgs(gamma, primitive_root(p), p, 5) is None


@given(st.sampled_from(naive_primes(500)[1:]), st.integers())
def test_legendre_matches_square_set(p, a):
    squares = {x * x % p for x in range(1, p)}
    expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
    assert legendre(a, p) == expected


def test_reduced_fraction_is_normalised():
    assert ReducedFraction(6, 4) == Fraction(3, 2)
    assert ReducedFraction(6, 4).denominator == 2
