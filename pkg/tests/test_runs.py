import numpy as np
import pytest
from hypothesis import given, strategies as st

from burgess import _kernels
from burgess.approx import run_hypotheses
from burgess.characters import Character, CharValue, quadratic_character
from burgess.runs import (
    find_prop1_witness,
    max_constant_run,
    max_run_over_characters,
    prime_sieve,
    record_table,
    scan_primes,
)
from conftest import naive_char_exponents, naive_longest_run, naive_primes

PRIMES = [p for p in naive_primes(3000) if p > 2]


def brute_run(p, e):
    exps = naive_char_exponents(p, e)
    n = (p - 1) // np.gcd(e, p - 1)
    values = [None] + [exps[x] * n // (p - 1) for x in range(1, p)]
    return naive_longest_run(values)


def test_spec_examples():
    rec = max_constant_run(quadratic_character(7))
    assert (rec.H, rec.N) == (2, 0)
    rec = max_constant_run(quadratic_character(13))
    # non-residues 5, 6, 7, 8
    assert (rec.H, rec.N, rec.value) == (4, 4, CharValue(1, 2))


@given(st.sampled_from(PRIMES), st.data())
def test_single_character_against_brute_force(p, data):
    e = data.draw(st.integers(1, p - 2))
    rec = max_constant_run(Character(p, e))
    assert (rec.H, rec.N) == brute_run(p, e)
    chi = Character(p, e)
    vals = {chi(x) for x in range(rec.N + 1, rec.N + rec.H + 1)}
    assert vals == {rec.value}


@pytest.mark.parametrize("p", [3, 5, 7, 13, 31, 101, 211])
def test_all_characters_against_brute_force(p):
    best = max(((brute_run(p, e), e) for e in range(1, p - 1)), key=lambda t: (t[0][0], -t[1], -t[0][1]))
    (H, N), e = best
    rec = max_run_over_characters(p, "all")
    assert (rec.H, rec.e, rec.N) == (H, e, N)


def test_order_filters():
    p = 31
    rec = max_run_over_characters(p, 3)
    assert rec.order == 3
    brute = max(brute_run(p, e)[0] for e in (10, 20))
    assert rec.H == brute
    assert max_run_over_characters(p, 7) is None
    assert max_run_over_characters(p, 2).e == 15
    with pytest.raises(ValueError):
        max_run_over_characters(10007, "all")
    with pytest.raises(ValueError):
        max_run_over_characters(31, 1)


def test_quadratic_kernel_half_scan_matches_full_scan():
    for p in PRIMES:
        flags = _kernels.quadratic_residue_flags(p)
        full = _kernels.longest_equal_run(flags)
        half = _kernels.quadratic_max_run(p)
        assert tuple(int(v) for v in half) == tuple(int(v) for v in full), p


def test_quadratic_flags_are_squares():
    for p in PRIMES[:40]:
        squares = {x * x % p for x in range(1, p)}
        flags = _kernels.quadratic_residue_flags(p)
        assert {x for x in range(p) if flags[x]} == squares


def test_prime_sieve():
    assert prime_sieve(3, 3000).tolist() == PRIMES
    assert prime_sieve(0, 2).tolist() == []
    assert prime_sieve(100, 110).tolist() == [101, 103, 107, 109]


def test_scan_count_and_brauer():
    recs = list(scan_primes(3, 100))
    assert len(recs) == 24  # odd primes; 2 is not a valid modulus
    assert [r.p for r in recs] == prime_sieve(3, 100).tolist()
    assert all(r.within_brauer for r in recs)
    assert all(r.below_burgess is None for r in recs)


def test_scan_parallel_matches_serial():
    serial = list(scan_primes(3, 20000, chunk_size=200))
    parallel = list(scan_primes(3, 20000, parallelism=2, chunk_size=200))
    assert serial == parallel


def test_scan_all_characters_matches_single_calls():
    recs = list(scan_primes(3, 200, order_filter="all"))
    assert recs == [max_run_over_characters(p) for p in prime_sieve(3, 200).tolist()]


def test_scan_limits():
    with pytest.raises(ValueError):
        list(scan_primes(3, 10**5, order_filter="all"))
    with pytest.raises(ValueError):
        list(scan_primes(3, 100, parallelism=0))


def test_record_table():
    recs = list(scan_primes(3, 100))
    table = record_table(recs)
    assert [(r.p, r.H) for r in table] == [(3, 1), (5, 2), (11, 3), (13, 4), (41, 5), (53, 6), (83, 7)]


def test_burgess_annotation_from_threshold():
    rec = max_run_over_characters(50021, 2)
    assert rec.burgess is not None and rec.below_burgess is True
    assert not rec.burgess_applicable


def test_witness_is_first_valid_prime():
    w = find_prop1_witness(14, limit=10**4)
    assert (w.p, w.N, w.H, w.h) == (2753, 1282, 14, 1)
    assert run_hypotheses(w.p, w.H, w.h) == []
    vals = {w.chi(x) for x in range(w.N + 1, w.N + w.H + 1)}
    assert len(vals) == 1
    # no smaller prime has any character with a fitting run: H^3 <= p needs p >= 2744
    for p in prime_sieve(2744, 2752).tolist():
        assert max_run_over_characters(p).H < 14


def test_witness_errors():
    with pytest.raises(ValueError):
        find_prop1_witness(13)
    with pytest.raises(LookupError):
        find_prop1_witness(14, limit=1000)
