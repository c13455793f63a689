"""The moment S(chi, h, r) = sum_x |sum_{m=1}^h chi(x+m)|^(2r), its upper bound,
and the combinatorial and Weil-type checks that sit behind that bound."""

from __future__ import annotations

import itertools
import math
import sys
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import Character, all_nonprincipal, log_table
from .interval import RigorousScalar, exact

__all__ = [
    "MomentParams",
    "MomentResult",
    "WeilCheck",
    "moment",
    "moment_sweep",
    "moment_upper_bound",
    "log_moment_upper_bound",
    "count_repeated_tuples",
    "count_nth_power_exceptions",
    "weil_check",
    "ENUMERATION_BUDGET",
]

EPS = sys.float_info.epsilon
ENUMERATION_BUDGET = 10**8

# Above this window length the complex path switches from summing shifted
# slices (error O(h^2 eps)) to prefix-sum differences (error O((p+h)^2 eps)).
SLICE_WINDOW_MAX = 64

# |computed chi(x) - exact root of unity|, in units of eps, for exp(2 pi i j/n)
_VALUE_ERR_ULPS = 30


@dataclass(frozen=True)
class MomentParams:
    h: int
    r: int

    def __post_init__(self):
        if self.h < 1 or self.r < 1:
            raise ValueError(f"h and r must be positive integers, got h={self.h}, r={self.r}")


@dataclass(frozen=True)
class MomentResult:
    value: int | float
    exact: bool
    abs_error: float = 0.0

    def enclosure(self) -> RigorousScalar:
        """[value - abs_error, value + abs_error], rounded outward."""
        if self.exact:
            return exact(self.value)
        v, err = exact(self.value), exact(self.abs_error)
        return RigorousScalar((v - err).lo, (v + err).hi)


@dataclass(frozen=True)
class WeilCheck:
    magnitude: float
    bound: float
    ok: bool


def _params(h, r=None) -> MomentParams:
    if isinstance(h, MomentParams):
        return h
    return MomentParams(int(h), int(r))


def _window_error(h: int, p: int) -> float:
    """Bound on |computed window sum - exact window sum| for the complex path."""
    if h <= SLICE_WINDOW_MAX:
        return (_VALUE_ERR_ULPS * h + 2 * h * h) * EPS
    n = p + h
    return (2 * _VALUE_ERR_ULPS * n + 3 * n * n + 2 * n) * EPS


def _power_sum_with_error(mag: np.ndarray, r: int, delta: float, axis=-1):
    """Sum of mag**(2r) and a bound on its distance from the exact moment."""
    two_r = 2 * r
    s = np.sum(mag**two_r, axis=axis)
    up = mag * (1 + 2 * EPS) + delta
    down = np.maximum(mag * (1 - 2 * EPS) - delta, 0.0)
    spread = np.sum(up**two_r - down**two_r, axis=axis)
    count = mag.shape[axis]
    err = spread + (4 * two_r + 2 * count) * EPS * np.sum(up**two_r, axis=axis)
    return s, err


def moment(chi: Character, h, r=None) -> MomentResult:
    """S(chi, h, r) by a sliding window over one period.

    Real characters are summed exactly in integers.  Other characters use
    complex doubles, and ``abs_error`` bounds the distance to the true value.
    ``h`` is reduced mod p first: a full period of a non-principal character
    sums to zero, so S(chi, h, r) = S(chi, h - p, r).
    """
    params = _params(h, r)
    p = chi.p
    h_eff = params.h % p
    if h_eff == 0:
        return MomentResult(0, True, 0.0)
    if chi.is_real:
        v = chi.real_values()
        ext = np.concatenate([v, v])
        c = np.concatenate([[0], np.cumsum(ext)])
        w = c[1 + h_eff : 1 + h_eff + p] - c[1 : 1 + p]
        mags, counts = np.unique(np.abs(w), return_counts=True)
        total = sum(int(k) * int(m) ** (2 * params.r) for m, k in zip(mags, counts))
        return MomentResult(total, True, 0.0)
    v = chi.complex_values()
    ext = np.concatenate([v, v])
    if h_eff <= SLICE_WINDOW_MAX:
        w = np.zeros(p, dtype=np.complex128)
        for m in range(1, h_eff + 1):
            w += ext[m : m + p]
    else:
        c = np.concatenate([[0], np.cumsum(ext)])
        w = c[1 + h_eff : 1 + h_eff + p] - c[1 : 1 + p]
    s, err = _power_sum_with_error(np.abs(w), params.r, _window_error(h_eff, p))
    return MomentResult(float(s), False, float(err))


def moment_sweep(p: int, hs, rs, characters=None):
    """S(chi, h, r) for many characters mod p at once.

    Yields ``(chi, h, r, MomentResult)``.  Non-real characters are processed
    as one (characters x residues) complex matrix; the real character goes
    through the exact path of :func:`moment`.
    """
    chars = list(characters) if characters is not None else all_nonprincipal(p)
    hs, rs = sorted(set(hs)), sorted(set(rs))
    complex_chars = [c for c in chars if not c.is_real]
    for c in chars:
        if c.is_real:
            for h in hs:
                for r in rs:
                    yield c, h, r, moment(c, h, r)
    if not complex_chars:
        return
    # every character mod p shares one log table
    table = log_table(p, complex_chars[0].g).astype(np.int64)
    es = np.array([c.e for c in complex_chars], dtype=np.int64)
    expo = (es[:, None] * table[None, :]) % (p - 1)
    roots = np.exp(2j * np.pi * np.arange(p - 1) / (p - 1))
    vals = roots[expo]
    vals[:, 0] = 0
    ext = np.concatenate([vals, vals], axis=1)
    del expo, vals
    windows: dict[int, np.ndarray] = {}
    w = np.zeros((len(complex_chars), p), dtype=np.complex128)
    h_needed = sorted({h % p for h in hs} - {0})
    done = 0
    for h_eff in h_needed:
        if h_eff <= SLICE_WINDOW_MAX:
            for m in range(done + 1, h_eff + 1):
                w += ext[:, m : m + p]
            done = h_eff
            windows[h_eff] = np.abs(w)
        else:
            c = np.concatenate([np.zeros((len(complex_chars), 1)), np.cumsum(ext, axis=1)], axis=1)
            windows[h_eff] = np.abs(c[:, 1 + h_eff : 1 + h_eff + p] - c[:, 1 : 1 + p])
    for h in hs:
        h_eff = h % p
        for r in rs:
            if h_eff == 0:
                for c in complex_chars:
                    yield c, h, r, MomentResult(0, True, 0.0)
                continue
            s, err = _power_sum_with_error(windows[h_eff], r, _window_error(h_eff, p), axis=1)
            for i, c in enumerate(complex_chars):
                yield c, h, r, MomentResult(float(s[i]), False, float(err[i]))


def moment_upper_bound(p: int, h, r=None) -> RigorousScalar:
    """Enclosure of (1/4)(4r)^r p h^r + (2r-1) sqrt(p) h^(2r).

    Raises OverflowError beyond double range; use :func:`log_moment_upper_bound`.
    """
    params = _params(h, r)
    h, r = params.h, params.r
    first = exact(Fraction((4 * r) ** r * p * h**r, 4))
    second = exact((2 * r - 1) * h ** (2 * r)) * exact(p).sqrt()
    total = first + second
    if math.isinf(total.hi):
        raise OverflowError(f"moment bound for p={p}, h={h}, r={r} exceeds double range")
    return total


def log_moment_upper_bound(p: int, h, r=None) -> RigorousScalar:
    """Enclosure of the natural log of :func:`moment_upper_bound`."""
    params = _params(h, r)
    h, r = params.h, params.r
    log_p = exact(p).log()
    log_first = r * exact(4 * r).log() + log_p + r * exact(h).log() - exact(4).log()
    log_second = exact(2 * r - 1).log() + log_p / 2 + 2 * r * exact(h).log()
    big = log_first if log_first.lo >= log_second.lo else log_second
    small = log_second if big is log_first else log_first
    # log(a + b) = log a + log(1 + exp(log b - log a)), with b <= a up to overlap
    diff = small - big
    return big + (1 + diff.exp()).log()


def _check_budget(h: int, r: int, budget: int) -> None:
    if h ** (2 * r) > budget:
        raise ValueError(f"enumerating {h}^{2 * r} tuples exceeds the budget of {budget}")


def count_repeated_tuples(h: int, r: int, budget: int = ENUMERATION_BUDGET) -> int:
    """Vectors in [1, h]^(2r) in which every value that occurs occurs at least twice."""
    MomentParams(h, r)
    _check_budget(h, r, budget)
    return sum(
        1
        for m in itertools.product(range(1, h + 1), repeat=2 * r)
        if min(Counter(m).values()) >= 2
    )


def count_nth_power_exceptions(p: int, chi: Character, h: int, r: int,
                               budget: int = ENUMERATION_BUDGET) -> int:
    """Vectors m in [1, h]^(2r) for which
    f_m(x) = (x+m_1)...(x+m_r) (x+m_{r+1})^(n-1)...(x+m_{2r})^(n-1)
    is an n-th power in F_p[x], n the order of chi.

    f_m is an n-th power iff every root -m_i mod p has multiplicity divisible
    by n, i.e. the root occurs as often (mod n) among the first r entries as
    among the last r.
    """
    MomentParams(h, r)
    if chi.p != p:
        raise ValueError(f"character modulus {chi.p} does not match p={p}")
    _check_budget(h, r, budget)
    n = chi.n
    count = 0
    for m in itertools.product(range(h), repeat=2 * r):
        mult: dict[int, int] = {}
        for i, v in enumerate(m):
            root = (v + 1) % p
            mult[root] = mult.get(root, 0) + (1 if i < r else n - 1)
        if all(k % n == 0 for k in mult.values()):
            count += 1
    return count


def weil_check(chi: Character, roots, tolerance: float = 1e-9) -> WeilCheck:
    """Compare |sum_x chi(f(x))| with (m-1) sqrt(p) for f(x) = prod (x + root)^mult.

    ``roots`` is a list of ``(root, multiplicity)`` pairs; roots are merged mod p.
    """
    p, n = chi.p, chi.n
    merged: dict[int, int] = {}
    for root, mult in roots:
        if mult < 1:
            raise ValueError("multiplicities must be positive")
        merged[root % p] = merged.get(root % p, 0) + mult
    if not merged:
        raise ValueError("empty polynomial")
    if all(k % n == 0 for k in merged.values()):
        raise ValueError(f"f is an {n}-th power: every root multiplicity is divisible by {n}")
    x = np.arange(p, dtype=np.int64)
    total = np.zeros(p, dtype=np.int64)
    zero = np.zeros(p, dtype=bool)
    for root, mult in merged.items():
        idx = chi.indices(x + root)
        zero |= idx < 0
        total += mult * np.where(idx < 0, 0, idx)
    total %= n
    hist = np.bincount(total[~zero], minlength=n)
    if n == 2:
        magnitude = float(abs(int(hist[0]) - int(hist[1])))
    else:
        s = np.sum(hist * np.exp(2j * np.pi * np.arange(n) / n))
        magnitude = float(abs(s))
    bound = (len(merged) - 1) * math.sqrt(p)
    return WeilCheck(magnitude, bound, magnitude <= bound + tolerance * p)
