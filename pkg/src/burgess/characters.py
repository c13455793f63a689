"""Dirichlet characters modulo a prime, with exact root-of-unity values.

A character is indexed by its exponent ``e`` on the smallest primitive root
``g``: ``chi(g**k) = exp(2*pi*i*e*k/(p-1))``.  Writing ``n = (p-1)/gcd(e, p-1)``
for the order and ``e' = e/gcd(e, p-1)``, the value at ``x = g**k`` is
``zeta_n ** (e' * k mod n)``; that residue mod ``n`` is what :meth:`Character.index`
returns and what every downstream scan compares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import PrimeModulus, bsgs, discrete_log, primitive_root

__all__ = [
    "CharValue",
    "ZERO",
    "ONE",
    "Character",
    "make_character",
    "all_nonprincipal",
    "characters_of_order",
    "quadratic_character",
    "kth_power_coset",
    "log_table",
    "LOG_TABLE_THRESHOLD",
    "EXHAUSTIVE_LIMIT",
]

LOG_TABLE_THRESHOLD = 1 << 24
EXHAUSTIVE_LIMIT = 10**4

# numpy int64 products stay exact while both factors are below 2**31
_VECTOR_MODULUS_LIMIT = 1 << 31


@dataclass(frozen=True)
class CharValue:
    """``Zero`` (``d == 0``) or the root of unity ``exp(2*pi*i*j/d)``."""

    j: int
    d: int

    def __post_init__(self):
        if self.d == 0:
            if self.j != 0:
                raise ValueError("Zero must be CharValue(0, 0)")
        elif not (0 <= self.j < self.d and math.gcd(self.j, self.d) == 1):
            if not (self.j == 0 and self.d == 1):
                raise ValueError(f"unreduced root of unity exponent {self.j}/{self.d}")

    @classmethod
    def root(cls, j: int, d: int) -> "CharValue":
        j %= d
        g = math.gcd(j, d)
        return cls(j // g, d // g)

    @property
    def is_zero(self) -> bool:
        return self.d == 0

    def __mul__(self, other: "CharValue") -> "CharValue":
        if self.is_zero or other.is_zero:
            return ZERO
        return CharValue.root(self.j * other.d + other.j * self.d, self.d * other.d)

    def __pow__(self, k: int) -> "CharValue":
        if self.is_zero:
            return ONE if k == 0 else ZERO
        return CharValue.root(self.j * k, self.d)

    def conjugate(self) -> "CharValue":
        return self if self.is_zero else CharValue.root(-self.j, self.d)

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        if self.d <= 2:
            return complex(1 - 2 * self.j)
        t = 2 * math.pi * self.j / self.d
        return complex(math.cos(t), math.sin(t))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return "1" if self.d == 1 else f"e(2pi i {self.j}/{self.d})"


ZERO = CharValue(0, 0)
ONE = CharValue(0, 1)


@lru_cache(maxsize=8)
def log_table(p: int, g: int) -> np.ndarray:
    """``table[x] = log_g(x)`` for ``1 <= x < p``; ``table[0] = -1``.

    Powers of ``g`` are generated by repeated doubling of a numpy block so the
    build is vectorised.
    """
    if p >= _VECTOR_MODULUS_LIMIT:
        raise ValueError("log tables are limited to p < 2**31")
    powers = np.ones(1, dtype=np.int64)
    while powers.size < p - 1:
        shift = pow(g, int(powers.size), p)
        powers = np.concatenate([powers, powers * shift % p])
    powers = powers[: p - 1]
    dtype = np.int32
    table = np.full(p, -1, dtype=dtype)
    table[powers] = np.arange(p - 1, dtype=dtype)
    table.setflags(write=False)
    return table


def _vec_pow(base: np.ndarray, exp: int, p: int) -> np.ndarray:
    result = np.ones_like(base)
    b = base % p
    while exp:
        if exp & 1:
            result = result * b % p
        exp >>= 1
        if exp:
            b = b * b % p
    return result


def _vec_bsgs(ys: np.ndarray, gamma: int, order: int, p: int) -> np.ndarray:
    """Logs base ``gamma`` (of multiplicative order ``order``) of every entry of ys."""
    m = math.isqrt(order - 1) + 1 if order > 1 else 1
    baby = np.ones(m, dtype=np.int64)
    for j in range(1, m):
        baby[j] = baby[j - 1] * gamma % p
    sorter = np.argsort(baby, kind="stable")
    sorted_baby = baby[sorter]
    giant = pow(gamma, (order - m % order) % order, p)
    out = np.full(ys.shape, -1, dtype=np.int64)
    pending = np.arange(ys.size)
    cur = ys.astype(np.int64).ravel().copy()
    flat = out.ravel()
    for i in range(m):
        pos = np.searchsorted(sorted_baby, cur)
        pos_c = np.minimum(pos, m - 1)
        hit = sorted_baby[pos_c] == cur
        if hit.any():
            k = i * m + sorter[pos_c[hit]]
            flat[pending[hit]] = k
            keep = ~hit
            pending, cur = pending[keep], cur[keep]
            if pending.size == 0:
                break
        cur = cur * giant % p
    if pending.size:
        raise AssertionError("element outside the subgroup generated by gamma")
    return flat.reshape(ys.shape) % order


class Character:
    """A non-principal Dirichlet character mod a prime ``p``.

    ``strategy`` is ``"full-log-table"`` (O(1) evaluation through a cached
    p-entry log table) or ``"subgroup-log"`` (project ``x`` into the order-n
    subgroup with ``x**((p-1)/n)`` and take a baby-step giant-step log there).
    """

    def __init__(self, p: int, e: int, strategy: str | None = None,
                 threshold: int = LOG_TABLE_THRESHOLD):
        self.p = int(PrimeModulus(p))
        if not 1 <= e <= self.p - 2:
            raise ValueError(f"character index e={e} outside [1, {self.p - 2}]"
                             + (" (e=0 is the principal character)" if e % (self.p - 1) == 0 else ""))
        self.e = int(e)
        self.g = primitive_root(self.p)
        gcd = math.gcd(self.e, self.p - 1)
        self.n = (self.p - 1) // gcd
        self._mult = (self.e // gcd) % self.n
        if strategy is None:
            strategy = "full-log-table" if self.p < threshold else "subgroup-log"
        if strategy not in ("full-log-table", "subgroup-log"):
            raise ValueError(f"unknown evaluation strategy {strategy!r}")
        self.strategy = strategy
        self._gamma = pow(self.g, (self.p - 1) // self.n, self.p)

    def __repr__(self) -> str:
        return f"Character(p={self.p}, e={self.e}, n={self.n}, strategy={self.strategy!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    @property
    def is_real(self) -> bool:
        return self.n == 2

    def conjugate(self) -> "Character":
        return Character(self.p, self.p - 1 - self.e, self.strategy)

    def with_strategy(self, strategy: str) -> "Character":
        return Character(self.p, self.e, strategy)

    # scalar evaluation ------------------------------------------------------

    def index(self, x: int) -> int | None:
        """Exponent ``j`` in ``[0, n)`` with ``chi(x) = zeta_n**j``; None at multiples of p."""
        x %= self.p
        if x == 0:
            return None
        if self.strategy == "full-log-table":
            k = int(log_table(self.p, self.g)[x])
        else:
            y = pow(x, (self.p - 1) // self.n, self.p)
            if self.n == 2:
                k = 0 if y == 1 else 1
            else:
                k = bsgs(self._gamma, y, self.p, self.n)
        return k * self._mult % self.n

    def __call__(self, x: int) -> CharValue:
        return self.eval(x)

    def eval(self, x: int) -> CharValue:
        j = self.index(x)
        return ZERO if j is None else CharValue.root(j, self.n)

    # vectorised evaluation --------------------------------------------------

    def indices(self, xs) -> np.ndarray:
        """Vectorised :meth:`index`; -1 marks multiples of p."""
        xs = np.asarray(xs, dtype=np.int64) % self.p
        if self.strategy == "full-log-table":
            k = log_table(self.p, self.g)[xs].astype(np.int64)
        elif self.p < _VECTOR_MODULUS_LIMIT:
            nz = xs != 0
            k = np.full(xs.shape, -1, dtype=np.int64)
            ys = _vec_pow(xs[nz], (self.p - 1) // self.n, self.p)
            if self.n == 2:
                k[nz] = (ys != 1).astype(np.int64)
            else:
                k[nz] = _vec_bsgs(ys, self._gamma, self.n, self.p)
        else:
            k = np.array([-1 if v is None else v
                          for v in (self.index(int(x)) for x in xs.ravel())],
                         dtype=np.int64).reshape(xs.shape)
            return k
        out = k * self._mult % self.n
        out[k < 0] = -1
        return out

    def residue_indices(self) -> np.ndarray:
        """``index(x)`` for x = 0, 1, ..., p-1 (one full period)."""
        return self.indices(np.arange(self.p, dtype=np.int64))

    def complex_values(self, xs=None) -> np.ndarray:
        idx = self.residue_indices() if xs is None else self.indices(xs)
        if self.n == 2:
            vals = (1 - 2 * idx).astype(np.complex128)
        else:
            vals = np.exp(2j * np.pi * idx / self.n)
        vals[idx < 0] = 0
        return vals

    def real_values(self) -> np.ndarray:
        """Values in {-1, 0, 1} over one period; only for real characters."""
        if not self.is_real:
            raise ValueError(f"character of order {self.n} is not real")
        idx = self.residue_indices()
        vals = 1 - 2 * idx
        vals[idx < 0] = 0
        return vals


def make_character(p: int, e: int, threshold: int = LOG_TABLE_THRESHOLD) -> Character:
    return Character(p, e, threshold=threshold)


def quadratic_character(p: int, **kw) -> Character:
    """The Legendre symbol mod p."""
    return Character(p, (p - 1) // 2, **kw)


def all_nonprincipal(p: int, limit: int = EXHAUSTIVE_LIMIT) -> list[Character]:
    if p > limit:
        raise ValueError(f"p={p} exceeds the exhaustive character limit {limit}")
    return [Character(p, e) for e in range(1, p - 1)]


def characters_of_order(p: int, n: int) -> list[Character]:
    """All characters of exact order n (empty unless n divides p-1)."""
    if n < 2 or (p - 1) % n:
        return []
    step = (p - 1) // n
    return [Character(p, j * step) for j in range(1, n) if math.gcd(j, n) == 1]


def kth_power_coset(p: int, k: int, x: int) -> int | None:
    """Index of x's coset in (Z/pZ)* / (k-th powers); 0 iff x is a k-th power residue.

    Returns None when p divides x.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    p = PrimeModulus(p)
    if x % p == 0:
        return None
    d = math.gcd(k, p - 1)
    return discrete_log(primitive_root(p), x, p) % d
