"""Brute-force oracles shared by the test modules.

Nothing here imports the package under test: every oracle recomputes its
answer from definitions with plain loops.
"""

import cmath
import math

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def naive_primes(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, math.isqrt(k) + 1))]


def naive_generator(p):
    for g in range(2, p):
        if len({pow(g, k, p) for k in range(p - 1)}) == p - 1:
            return g
    return 1  # p = 2


def naive_char_exponents(p, e):
    """{x: e*log_g(x) mod (p-1)} for the smallest generator g, by walking powers."""
    g = naive_generator(p)
    out, cur = {}, 1
    for k in range(p - 1):
        out[cur] = e * k % (p - 1)
        cur = cur * g % p
    return out


def naive_char(p, e):
    """chi(x) as a Python complex, 0 at multiples of p."""
    exps = naive_char_exponents(p, e)

    def chi(x):
        x %= p
        if x == 0:
            return 0j
        return cmath.exp(2j * cmath.pi * exps[x] / (p - 1))

    return chi


def naive_moment_real(p, e, h, r):
    """Exact double sum for a real character (values in {-1, 0, 1})."""
    exps = naive_char_exponents(p, e)

    def val(x):
        x %= p
        return 0 if x == 0 else (1 if exps[x] == 0 else -1)

    return sum(abs(sum(val(x + m) for m in range(1, h + 1))) ** (2 * r) for x in range(p))


def naive_moment_mp(p, e, h, r, dps=40):
    """High-precision double sum with mpmath."""
    import mpmath

    with mpmath.workdps(dps):
        exps = naive_char_exponents(p, e)
        total = mpmath.mpf(0)
        for x in range(p):
            s = mpmath.mpc(0)
            for m in range(1, h + 1):
                y = (x + m) % p
                if y:
                    s += mpmath.expjpi(mpmath.mpf(2 * exps[y]) / (p - 1))
            total += abs(s) ** (2 * r)
        return total


def naive_longest_run(values):
    """(H, N) of the longest block of equal entries of values[1:], leftmost first."""
    best = (0, 0)
    x = 1
    while x < len(values):
        y = x
        while y + 1 < len(values) and values[y + 1] == values[x]:
            y += 1
        if y - x + 1 > best[0]:
            best = (y - x + 1, x - 1)
        x = y + 1
    return best


@pytest.fixture(scope="session")
def small_primes():
    return [p for p in naive_primes(200) if p > 2]


# one line per acceptance criterion, appended by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
