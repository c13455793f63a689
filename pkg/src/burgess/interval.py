"""Outward-rounded interval arithmetic over IEEE doubles.

Every operation rounds to nearest and then steps each endpoint one or more
ulps outward with ``math.nextafter``.  Basic arithmetic and ``sqrt`` are
correctly rounded, so one ulp suffices; ``log``/``exp`` from libm are
accurate to within one ulp, so they get two.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["RigorousScalar", "Indeterminate", "PI", "E", "exact"]

_INF = math.inf

Number = Union[int, float, Fraction]


class Indeterminate(ArithmeticError):
    """Raised when overlapping enclosures cannot decide a comparison."""


def _down(x: float, ulps: int = 1) -> float:
    for _ in range(ulps):
        x = math.nextafter(x, -_INF)
    return x


def _up(x: float, ulps: int = 1) -> float:
    for _ in range(ulps):
        x = math.nextafter(x, _INF)
    return x


def _float_enclosure(x: Number) -> tuple[float, float]:
    if isinstance(x, float):
        return x, x
    q = Fraction(x)
    try:
        f = float(q)
    except OverflowError:
        return (math.nextafter(_INF, 0), _INF) if q > 0 else (-_INF, math.nextafter(-_INF, 0))
    if Fraction(f) == q:
        return f, f
    if Fraction(f) < q:
        return f, _up(f)
    return _down(f), f


class RigorousScalar:
    """A closed interval ``[lo, hi]`` guaranteed to contain an exact real."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        hi = lo if hi is None else hi
        lo, hi = float(lo), float(hi)
        if math.isnan(lo) or math.isnan(hi) or lo > hi:
            raise ValueError(f"invalid enclosure [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    # construction -----------------------------------------------------------

    @classmethod
    def exact(cls, x: "Number | RigorousScalar") -> "RigorousScalar":
        """Tightest double enclosure of an exact int, Fraction or float."""
        if isinstance(x, RigorousScalar):
            return x
        if not isinstance(x, (int, float, Rational)):
            raise TypeError(f"cannot enclose {type(x).__name__}")
        return cls(*_float_enclosure(x))

    # inspection -------------------------------------------------------------

    @property
    def mid(self) -> float:
        return self.lo + (self.hi - self.lo) / 2

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def rel_width(self) -> float:
        m = max(abs(self.lo), abs(self.hi))
        return 0.0 if m == 0 else self.width / m

    def contains(self, x) -> bool:
        """Membership test; ``x`` may be an int, Fraction, float or mpmath mpf."""
        try:
            return Fraction(self.lo) <= Fraction(x) <= Fraction(self.hi)
        except (TypeError, ValueError):
            return self.lo <= x <= self.hi

    def __repr__(self) -> str:
        return f"RigorousScalar({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RigorousScalar) and (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # arithmetic -------------------------------------------------------------

    def __neg__(self) -> "RigorousScalar":
        return RigorousScalar(-self.hi, -self.lo)

    def __add__(self, other) -> "RigorousScalar":
        o = exact(other)
        return RigorousScalar(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "RigorousScalar":
        o = exact(other)
        return RigorousScalar(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other) -> "RigorousScalar":
        return exact(other) - self

    def __mul__(self, other) -> "RigorousScalar":
        o = exact(other)
        products = []
        for a in (self.lo, self.hi):
            for b in (o.lo, o.hi):
                # 0 * inf only arises from a degenerate zero endpoint
                products.append(0.0 if a == 0 or b == 0 else a * b)
        return RigorousScalar(_down(min(products)), _up(max(products)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RigorousScalar":
        o = exact(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"divisor {o!r} contains zero")
        quotients = [a / b for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return RigorousScalar(_down(min(quotients)), _up(max(quotients)))

    def __rtruediv__(self, other) -> "RigorousScalar":
        return exact(other) / self

    def __pow__(self, n: int) -> "RigorousScalar":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported; use exp/log")
        if n == 0:
            return RigorousScalar(1.0)
        if n % 2 == 0 and self.lo < 0 < self.hi:
            m = max(-self.lo, self.hi)
            return RigorousScalar(0.0, (RigorousScalar(m) ** n).hi)
        if n % 2 == 0 and self.hi <= 0:
            return (-self) ** n
        result = RigorousScalar(1.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # elementary functions ---------------------------------------------------

    def sqrt(self) -> "RigorousScalar":
        if self.lo < 0:
            raise ValueError(f"sqrt of {self!r}")
        lo = 0.0 if self.lo == 0 else max(0.0, _down(math.sqrt(self.lo)))
        return RigorousScalar(lo, _up(math.sqrt(self.hi)) if self.hi != _INF else _INF)

    def log(self) -> "RigorousScalar":
        if self.lo <= 0:
            raise ValueError(f"log of non-positive enclosure {self!r}")
        hi = _INF if self.hi == _INF else _up(math.log(self.hi), 2)
        return RigorousScalar(_down(math.log(self.lo), 2), hi)

    def exp(self) -> "RigorousScalar":
        lo = 0.0 if self.lo == -_INF else max(0.0, _down(_safe_exp(self.lo), 2))
        hi = _safe_exp(self.hi)
        return RigorousScalar(lo, hi if hi == _INF else _up(hi, 2))

    def root(self, k: int) -> "RigorousScalar":
        """k-th root of a positive enclosure, via exp(log(x)/k)."""
        if k == 2:
            return self.sqrt()
        return (self.log() / k).exp()

    # certified comparisons --------------------------------------------------

    def lt(self, other) -> bool | None:
        """True/False when certain, None when the enclosures overlap."""
        o = exact(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        return None

    def le(self, other) -> bool | None:
        o = exact(other)
        if self.hi <= o.lo:
            return True
        if self.lo > o.hi:
            return False
        return None

    def gt(self, other) -> bool | None:
        return exact(other).lt(self)

    def ge(self, other) -> bool | None:
        return exact(other).le(self)

    def certainly(self, verdict: bool | None, what: str = "comparison") -> bool:
        if verdict is None:
            raise Indeterminate(f"{what} is indeterminate at double precision: {self!r}")
        return verdict


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return _INF


def exact(x) -> RigorousScalar:
    return RigorousScalar.exact(x)


PI = RigorousScalar(_down(math.pi), _up(math.pi))
E = RigorousScalar(_down(math.e), _up(math.e))
