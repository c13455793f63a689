import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from burgess.characters import (
    ONE,
    ZERO,
    Character,
    CharValue,
    all_nonprincipal,
    characters_of_order,
    kth_power_coset,
    log_table,
    quadratic_character,
)
from burgess.arith import primitive_root
from conftest import naive_char, naive_char_exponents, naive_primes

PRIMES = [p for p in naive_primes(400) if p > 2]


@pytest.mark.parametrize("p", [3, 5, 7, 13, 101, 211])
def test_every_character_matches_naive_definition(p):
    for chi in all_nonprincipal(p):
        ref = naive_char(p, chi.e)
        got = chi.complex_values()
        expected = np.array([ref(x) for x in range(p)])
        assert np.allclose(got, expected, atol=1e-12)


@given(st.sampled_from(PRIMES), st.data())
def test_strategies_agree(p, data):
    e = data.draw(st.integers(1, p - 2))
    a = Character(p, e, strategy="full-log-table")
    b = Character(p, e, strategy="subgroup-log")
    xs = np.arange(-p, 2 * p)
    assert np.array_equal(a.indices(xs), b.indices(xs))
    for x in data.draw(st.lists(st.integers(-10**6, 10**6), max_size=10)):
        assert a.eval(x) == b.eval(x)


@given(st.sampled_from(PRIMES), st.data())
def test_complete_multiplicativity_and_periodicity(p, data):
    chi = Character(p, data.draw(st.integers(1, p - 2)))
    x = data.draw(st.integers(-10**5, 10**5))
    y = data.draw(st.integers(-10**5, 10**5))
    assert chi(x * y) == chi(x) * chi(y)
    assert chi(x + p) == chi(x)
    assert chi(p) == ZERO
    assert chi(1) == ONE


@given(st.sampled_from(PRIMES), st.data())
def test_order_and_value_roots(p, data):
    e = data.draw(st.integers(1, p - 2))
    chi = Character(p, e)
    values = {chi(x) for x in range(1, p)}
    # image is exactly the n-th roots of unity
    assert len(values) == chi.n
    assert all(v ** chi.n == ONE for v in values)
    assert chi.n == (p - 1) // np.gcd(e, p - 1)


def test_quadratic_character_is_legendre():
    for p in PRIMES[:30]:
        chi = quadratic_character(p)
        squares = {x * x % p for x in range(1, p)}
        assert chi.is_real
        assert all(chi.real_values()[x] == (1 if x in squares else -1) for x in range(1, p))
        assert chi.real_values()[0] == 0


def test_real_values_rejects_complex():
    with pytest.raises(ValueError):
        Character(7, 1).real_values()


def test_conjugate():
    chi = Character(13, 5)
    bar = chi.conjugate()
    for x in range(1, 13):
        assert bar(x) == chi(x).conjugate()
        assert (chi(x) * bar(x)) == ONE


def test_principal_and_out_of_range_rejected():
    with pytest.raises(ValueError):
        Character(7, 0)
    with pytest.raises(ValueError):
        Character(7, 6)
    with pytest.raises(ValueError):
        Character(9, 1)
    with pytest.raises(ValueError):
        Character(7, 1, strategy="magic")


def test_log_table_inverts_powers():
    p = 1009
    g = primitive_root(p)
    table = log_table(p, g)
    assert table[0] == -1
    for k in range(p - 1):
        assert table[pow(g, k, p)] == k


def test_charvalue_algebra():
    w = CharValue.root(1, 3)
    assert w * w * w == ONE
    assert w ** 3 == ONE
    assert w.conjugate() == CharValue.root(2, 3)
    assert CharValue.root(2, 4) == CharValue(1, 2)
    assert ZERO * w == ZERO
    assert cmath.isclose(w.to_complex(), cmath.exp(2j * cmath.pi / 3))
    with pytest.raises(ValueError):
        CharValue(2, 4)
    with pytest.raises(ValueError):
        CharValue(1, 0)


def test_all_nonprincipal_count_and_limit():
    assert len(all_nonprincipal(101)) == 99
    with pytest.raises(ValueError):
        all_nonprincipal(10007)


def test_characters_of_order():
    p = 13
    for n in (2, 3, 4, 6, 12):
        chars = characters_of_order(p, n)
        assert len(chars) == sum(1 for j in range(1, n) if np.gcd(j, n) == 1)
        assert all(c.n == n for c in chars)
    assert characters_of_order(13, 5) == []


@pytest.mark.parametrize("p", [7, 13, 31, 101])
def test_kth_power_coset(p):
    for k in (2, 3, 4, 5, 6):
        powers = {pow(x, k, p) for x in range(1, p)}
        for x in range(1, p):
            assert (kth_power_coset(p, k, x) == 0) == (x in powers)
        assert kth_power_coset(p, k, 0) is None


def test_large_prime_uses_subgroup_strategy():
    p = 18446744073709551557
    chi = quadratic_character(p)
    assert chi.strategy == "subgroup-log"
    assert chi(4) == ONE
    # -1 is a square iff p = 1 mod 4
    assert chi(-1) == (ONE if p % 4 == 1 else CharValue(1, 2))
    cubic = characters_of_order(1000003, 3)[0]
    assert cubic.with_strategy("subgroup-log")(12345) == cubic(12345)


def test_naive_exponent_oracle_consistent_with_index():
    p = 37
    for e in (1, 4, 9, 18):
        exps = naive_char_exponents(p, e)
        chi = Character(p, e)
        for x in range(1, p):
            assert CharValue.root(exps[x], p - 1) == chi(x)
