"""Maximal runs (N, N+H] on which a character is constant, swept over primes."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from . import _kernels
from .approx import run_hypotheses
from .arith import PrimeModulus, factorize, primitive_root
from .bounds import UNCONDITIONAL_MIN_P, BURGESS_MIN_P, brauer_bound, burgess_bound
from .characters import EXHAUSTIVE_LIMIT, Character, CharValue, log_table, quadratic_character
from .interval import RigorousScalar

__all__ = [
    "RunRecord",
    "Witness",
    "max_constant_run",
    "max_run_over_characters",
    "scan_primes",
    "record_table",
    "find_prop1_witness",
    "prime_sieve",
    "QUADRATIC_SIEVE_LIMIT",
    "ALL_CHARACTERS_LIMIT",
]

QUADRATIC_SIEVE_LIMIT = 10**8
ALL_CHARACTERS_LIMIT = EXHAUSTIVE_LIMIT
WITNESS_SEARCH_LIMIT = 10**7

OrderFilter = Union[int, str]


@dataclass(frozen=True)
class RunRecord:
    p: int
    e: int
    order: int
    H: int
    N: int
    value: CharValue
    brauer: RigorousScalar
    burgess: RigorousScalar | None
    burgess_applicable: bool

    @property
    def within_brauer(self) -> bool | None:
        """H <= sqrt(2p) + 2, or None if the enclosure cannot decide."""
        return self.brauer.ge(self.H)

    @property
    def below_burgess(self) -> bool | None:
        """H < C g(p) p^(1/4) log p, or None when p < 5*10^4 (no bound)."""
        return None if self.burgess is None else self.burgess.gt(self.H)


def _annotate(p: int, e: int, order: int, H: int, N: int, value: CharValue) -> RunRecord:
    burgess = burgess_bound(p) if p >= BURGESS_MIN_P else None
    return RunRecord(p, e, order, H, N, value, brauer_bound(p), burgess, p >= UNCONDITIONAL_MIN_P)


def _longest_run(idx: np.ndarray) -> tuple[int, int]:
    """(H, N) for the longest block of equal entries of idx[1:p], leftmost on ties."""
    body = idx[1:]
    starts = np.flatnonzero(np.r_[True, body[1:] != body[:-1]])
    lengths = np.diff(np.r_[starts, body.size])
    best = int(np.argmax(lengths))
    return int(lengths[best]), int(starts[best])


def max_constant_run(chi: Character) -> RunRecord:
    """Longest run of equal nonzero values of chi on [1, p-1]; smallest N on ties."""
    idx = chi.residue_indices()
    H, N = _longest_run(idx)
    return _annotate(chi.p, chi.e, chi.n, H, N, CharValue.root(int(idx[N + 1]), chi.n))


def _quadratic_record(p: int) -> RunRecord:
    H, N, flag = _kernels.quadratic_max_run(p)
    value = CharValue(0, 1) if flag else CharValue(1, 2)
    return _annotate(p, (p - 1) // 2, 2, int(H), int(N), value)


def _divisor_runs(p: int, divisors) -> dict[int, tuple[int, int]]:
    """For each divisor d of p-1, (H, N) of the characters with gcd(e, p-1) = d.

    chi_e(x+1) = chi_e(x) iff e * (log(x+1) - log(x)) = 0 mod p-1, which
    depends on e only through d = gcd(e, p-1).  So all characters sharing d
    have the same runs, and the smallest such index is e = d.
    """
    table = log_table(p, primitive_root(p)).astype(np.int64)
    step = (table[2:] - table[1:-1]) % (p - 1)
    out = {}
    for d in divisors:
        same = (step * d) % (p - 1) == 0
        # runs of consecutive True in `same` extend runs of constant value
        breaks = np.flatnonzero(np.r_[True, ~same, True])
        lengths = np.diff(breaks)
        best = int(np.argmax(lengths))
        out[d] = (int(lengths[best]), int(breaks[best]))
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for q, k in factorize(n):
        divs = [d * q**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def _filtered_record(p: int, order_filter: OrderFilter) -> RunRecord | None:
    if order_filter == 2:
        return _quadratic_record(p)
    if order_filter == "all":
        divisors = [d for d in _divisors(p - 1) if d < p - 1]
    else:
        k = int(order_filter)
        if (p - 1) % k:
            return None
        divisors = [(p - 1) // k]
    runs = _divisor_runs(p, divisors)
    H_max = max(H for H, _ in runs.values())
    e = min(d for d, (H, _) in runs.items() if H == H_max)
    N = runs[e][1]
    chi = Character(p, e)
    return _annotate(p, e, chi.n, H_max, N, chi.eval(N + 1))


def max_run_over_characters(p: int, order_filter: OrderFilter = "all",
                            limit: int = ALL_CHARACTERS_LIMIT) -> RunRecord | None:
    """Best run over the selected characters, ties broken by (H desc, e asc, N asc).

    ``order_filter`` is ``"all"``, ``2`` or an order k (None if k does not
    divide p-1).  ``"all"`` is refused above ``limit``.
    """
    p = int(PrimeModulus(p))
    if order_filter == "all" and p > limit:
        raise ValueError(f"p={p} exceeds the all-characters limit {limit}; use a single order")
    return _filtered_record(p, _normalize_filter(order_filter))


def _normalize_filter(order_filter: OrderFilter) -> OrderFilter:
    if order_filter in ("all", 2):
        return order_filter
    k = int(order_filter)
    if k < 2:
        raise ValueError(f"character order must be >= 2, got {k}")
    return k


def prime_sieve(lo: int, hi: int) -> np.ndarray:
    """Odd primes in [lo, hi] as an int64 array."""
    if hi < 3:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(hi) + 1, 2):
        if sieve[i]:
            sieve[i * i :: 2 * i] = False
    primes = np.flatnonzero(sieve)
    return primes[(primes >= max(lo, 3))].astype(np.int64)


def _scan_chunk(args) -> list[RunRecord]:
    primes, order_filter = args
    if order_filter == 2:
        raw = _kernels.quadratic_max_runs(np.asarray(primes, dtype=np.int64))
        return [
            _annotate(int(p), (int(p) - 1) // 2, 2, int(H), int(N),
                      CharValue(0, 1) if flag else CharValue(1, 2))
            for p, (H, N, flag) in zip(primes, raw)
        ]
    out = []
    for p in primes:
        rec = _filtered_record(int(p), order_filter)
        if rec is not None:
            out.append(rec)
    return out


def _chunks(primes: np.ndarray, size: int):
    for i in range(0, primes.size, size):
        yield primes[i : i + size].tolist()


def scan_primes(p_min: int, p_max: int, order_filter: OrderFilter = 2, parallelism: int = 1,
                chunk_size: int = 512) -> Iterator[RunRecord]:
    """One RunRecord per prime in [p_min, p_max], in ascending p order.

    With ``parallelism > 1`` chunks of primes go to worker processes; the
    ordered ``map`` keeps the output identical to a serial run.
    """
    order_filter = _normalize_filter(order_filter)
    limit = QUADRATIC_SIEVE_LIMIT if order_filter != "all" else ALL_CHARACTERS_LIMIT
    if p_max > limit:
        raise ValueError(f"p_max={p_max} exceeds the sweep limit {limit} for order filter {order_filter!r}")
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    primes = prime_sieve(p_min, p_max)
    tasks = ((chunk, order_filter) for chunk in _chunks(primes, chunk_size))
    if parallelism == 1:
        for task in tasks:
            yield from _scan_chunk(task)
        return
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        for records in pool.map(_scan_chunk, tasks):
            yield from records


def record_table(records) -> list[RunRecord]:
    """The records that set a new maximum H, in scan order."""
    table = []
    best = 0
    for rec in records:
        if rec.H > best:
            best = rec.H
            table.append(rec)
    return table


@dataclass(frozen=True)
class Witness:
    p: int
    chi: Character
    N: int
    H: int
    h: int


def _fit_run(p: int, H: int, min_run: int) -> tuple[int, int] | None:
    """Largest H' in [min_run, H] with h = floor(H'/14) meeting 14h <= H' <= ((2h-1)p)^(1/3)."""
    for H2 in range(H, min_run - 1, -1):
        h = H2 // 14
        if h >= 1 and not run_hypotheses(p, H2, h):
            return H2, h
    return None


def find_prop1_witness(min_run: int = 14, limit: int = WITNESS_SEARCH_LIMIT,
                       order_filter: OrderFilter = "all") -> Witness:
    """Smallest prime p with a character constant on some (N, N+H], H >= min_run,
    satisfying 14h <= H <= (2h-1)^(1/3) p^(1/3) for h = floor(H/14).

    Per prime the quadratic character is tried first, then the remaining
    characters by increasing index.  Raises LookupError when the search
    reaches ``limit``.
    """
    if min_run < 14:
        raise ValueError("min_run must be >= 14 so that h = floor(H/14) >= 1")
    order_filter = _normalize_filter(order_filter)
    # H^3 <= (2h-1)p with h <= H/14 forces p >= 7 H^2 / 2 > min_run^2
    start = min_run**2
    for p in prime_sieve(start, limit).tolist():
        H, N, _ = _kernels.quadratic_max_run(p)
        fit = _fit_run(p, int(H), min_run) if H >= min_run else None
        if fit is not None:
            return Witness(p, quadratic_character(p), int(N), *fit)
        if order_filter == 2:
            continue
        if order_filter == "all":
            divisors = [d for d in _divisors(p - 1) if d < p - 1 and d != (p - 1) // 2]
        elif (p - 1) % order_filter == 0 and order_filter != 2:
            divisors = [(p - 1) // order_filter]
        else:
            continue
        runs = _divisor_runs(p, divisors)
        for d in sorted(runs):
            H_d, N_d = runs[d]
            fit = _fit_run(p, H_d, min_run) if H_d >= min_run else None
            if fit is not None:
                return Witness(p, Character(p, d), N_d, *fit)
    raise LookupError(f"no witness with run >= {min_run} below {limit}")
