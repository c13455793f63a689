"""Certified evaluation of the explicit bound H < C g(p) p^(1/4) log p and the
functions and thresholds it is assembled from.

Moduli may be far beyond 64 bits (5e55, 1e100); they enter only through
log p, so they are accepted as ints, Fractions, decimal strings such as
``"5e55"`` or ``(mantissa, decimal_exponent)`` pairs and handled in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .interval import E, PI, Indeterminate, RigorousScalar, exact

__all__ = [
    "C",
    "A",
    "B",
    "BoundConstants",
    "BoundReport",
    "GateVerdict",
    "ThresholdRecord",
    "SymbolicExp",
    "BURGESS_MIN_P",
    "UNCONDITIONAL_MIN_P",
    "CONSTANT_THRESHOLDS",
    "magnitude",
    "log_p",
    "f_of_X",
    "g_of_p",
    "Cg_of_p",
    "burgess_bound",
    "prop1_H_bound",
    "logs_condition",
    "log_schedule_inequality",
    "theorem2_report",
    "cube_root_ceiling",
    "unconditional_chain",
    "corollary1_gate",
    "brauer_bound",
    "parameter_schedule",
    "bound_report",
]

Modulus = Union[int, float, Fraction, str, tuple]

BURGESS_MIN_P = 5 * 10**4
UNCONDITIONAL_MIN_P = 5 * 10**18
# (threshold, constant) pairs: C g(p) < constant for p >= threshold
CONSTANT_THRESHOLDS = ((5 * 10**18, Fraction(706, 100)), (5 * 10**55, Fraction(7)))


@dataclass(frozen=True)
class SymbolicExp:
    """The exact real ``coeff * e**power`` for rationals coeff, power."""

    coeff: Fraction
    power: Fraction

    def enclose(self) -> RigorousScalar:
        return exact(self.coeff) * exact(self.power).exp()

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymbolicExp)
                and Fraction(self.coeff) == Fraction(other.coeff)
                and Fraction(self.power) == Fraction(other.power))

    def __hash__(self) -> int:
        return hash((Fraction(self.coeff), Fraction(self.power)))


@dataclass(frozen=True)
class BoundConstants:
    C: RigorousScalar
    A: RigorousScalar
    B: Fraction
    A_exact: SymbolicExp


A_EXACT = SymbolicExp(Fraction(1), Fraction(2))
C = PI * E * exact(6).sqrt() / 3
A = E**2
B = Fraction(1, 4)
CONSTANTS = BoundConstants(C, A, B, A_EXACT)

_LN10 = exact(10).log()


def magnitude(p: Modulus) -> Fraction:
    """Exact rational value of a modulus given in any accepted form."""
    if isinstance(p, tuple):
        mantissa, exponent = p
        return Fraction(mantissa) * Fraction(10) ** int(exponent)
    if isinstance(p, str):
        return Fraction(p.replace("_", ""))
    return Fraction(p)


def log_p(p: Modulus) -> RigorousScalar:
    """Enclosure of log p, computed without materialising huge p as a double."""
    if isinstance(p, tuple):
        mantissa, exponent = p
        return exact(Fraction(mantissa)).log() + int(exponent) * _LN10
    q = magnitude(p)
    if q <= 0:
        raise ValueError(f"log of non-positive modulus {p}")
    num, den = q.numerator, q.denominator
    return _log_int(num) - _log_int(den)


def _log_int(n: int) -> RigorousScalar:
    # math.log accepts arbitrarily large ints; shift large ones into double range
    if n.bit_length() <= 1000:
        return exact(n).log()
    shift = n.bit_length() - 900
    return exact(n >> shift).log() + shift * exact(2).log() + (
        RigorousScalar(0.0, math.nextafter(1.0 / (n >> shift), math.inf)))


def _quarter_power(p: Modulus) -> RigorousScalar:
    return (log_p(p) / 4).exp()


def f_of_X(X) -> RigorousScalar:
    """f(X) = 1 - (pi^2/3)(log X/(2X) + 1/X + 1/(2X^2)), for X >= 7."""
    x = exact(X)
    if x.lo < 7:
        raise ValueError(f"f(X) requires X >= 7, got {x!r}")
    return 1 - PI**2 / 3 * (x.log() / (2 * x) + 1 / x + 1 / (2 * x**2))


def _f_from_log(log_x: RigorousScalar) -> RigorousScalar:
    """f evaluated from an enclosure of log X; stays finite when X overflows a double."""
    if log_x.exp().lo < 7:
        raise ValueError(f"f(X) requires X >= 7, got log X in {log_x!r}")
    if log_x.hi < 700:
        return f_of_X(log_x.exp())
    inv = (-log_x).exp()
    return 1 - PI**2 / 3 * (log_x * inv / 2 + inv + inv**2 / 2)


def _require_range(p: Modulus) -> None:
    if magnitude(p) < BURGESS_MIN_P:
        raise ValueError(f"p={p} is below the range p >= 5*10^4 of the bound")


def g_of_p(p: Modulus) -> RigorousScalar:
    """g(p) = sqrt( (1 + 1/log p) / f(C p^(1/4) / (2 e^2)) ), for p >= 5*10^4."""
    _require_range(p)
    lp = log_p(p)
    log_arg = C.log() + lp / 4 - (2 * E**2).log()
    return ((1 + 1 / lp) / _f_from_log(log_arg)).sqrt()


def Cg_of_p(p: Modulus) -> RigorousScalar:
    return C * g_of_p(p)


def burgess_bound(p: Modulus) -> RigorousScalar:
    """C g(p) p^(1/4) log p."""
    _require_range(p)
    return C * g_of_p(p) * _quarter_power(p) * log_p(p)


def prop1_H_bound(p: Modulus, h: int, r: int, X) -> RigorousScalar:
    """(2 pi h / sqrt(3 f(X))) p^(1/4) [ (1/(4h)) (4r/h)^r p^(1/2) + (2r-1)/h ]^(1/2).

    X is taken as given; whether (p, H, h) satisfies the hypotheses under
    which this bounds H is a separate question (see approx.run_hypotheses).
    """
    if h < 1 or r < 1:
        raise ValueError("h and r must be positive")
    fx = f_of_X(X)
    lp = log_p(p)
    # (4r/h)^r p^(1/2) in log space so that huge p does not overflow
    first = (r * exact(Fraction(4 * r, h)).log() + lp / 2).exp() / (4 * h)
    bracket = first + exact(Fraction(2 * r - 1, h))
    return 2 * PI * h / (3 * fx).sqrt() * (lp / 4).exp() * bracket.sqrt()


def logs_condition(A_value, B_value) -> bool:
    """Certify A >= 4B exp(1/(2B)).

    ``A_value`` may be a :class:`SymbolicExp`; with a rational B the right-hand
    side is the symbolic ``4B e^(1/(2B))`` and exact equality is recognised.
    Raises :class:`Indeterminate` when overlapping enclosures cannot decide.
    """
    if isinstance(B_value, RigorousScalar):
        if B_value.lo <= 0:
            raise ValueError("B must be positive")
        rhs = 4 * B_value * (1 / (2 * B_value)).exp()
    else:
        b = Fraction(B_value)
        if b <= 0:
            raise ValueError("B must be positive")
        rhs_exact = SymbolicExp(4 * b, 1 / (2 * b))
        if isinstance(A_value, SymbolicExp):
            if A_value == rhs_exact:
                return True
            if A_value.power == rhs_exact.power:
                return A_value.coeff >= rhs_exact.coeff
        rhs = rhs_exact.enclose()
    lhs = A_value.enclose() if isinstance(A_value, SymbolicExp) else exact(A_value)
    if lhs.lo <= 0:
        raise ValueError("A must be positive")
    return lhs.certainly(lhs.ge(rhs), "A >= 4B exp(1/(2B))")


def log_schedule_inequality(p: Modulus, h: int | None = None, r: int | None = None) -> bool:
    """Certify (1/(2h)) (4r/h)^r <= 1/(A p^(1/2) log p), by default at the schedule (h, r)."""
    if h is None or r is None:
        h, r = parameter_schedule(p)
    lp = log_p(p)
    lhs = r * exact(Fraction(4 * r, h)).log() - exact(2 * h).log()
    rhs = -(A.log() + lp / 2 + lp.log())
    return lhs.certainly(lhs.le(rhs), "(1/(2h))(4r/h)^r <= 1/(A p^(1/2) log p)")


def parameter_schedule(p: Modulus) -> tuple[int, int]:
    """h = floor(e^2 log p), r = floor(log p / 4), with the side conditions certified.

    Certifies 14h <= C p^(1/4) log p and 2r + 1 <= h; a floor whose enclosure
    straddles an integer raises :class:`Indeterminate`.
    """
    _require_range(p)
    lp = log_p(p)
    h = _certified_floor(A * lp, "floor(e^2 log p)")
    r = _certified_floor(lp / 4, "floor(log p / 4)")
    ceiling = C * _quarter_power(p) * lp
    if not ceiling.certainly(ceiling.ge(14 * h), "14h <= C p^(1/4) log p"):
        raise AssertionError(f"14h = {14 * h} exceeds C p^(1/4) log p at p={p}")
    if not 2 * r + 1 <= h:
        raise AssertionError(f"2r+1 <= h fails at p={p}")
    return h, r


def _certified_floor(x: RigorousScalar, what: str) -> int:
    lo, hi = math.floor(x.lo), math.floor(x.hi)
    if lo != hi:
        raise Indeterminate(f"{what} straddles an integer: {x!r}")
    return lo


def brauer_bound(p: Modulus) -> RigorousScalar:
    """sqrt(2p) + 2."""
    if magnitude(p) < 3:
        raise ValueError("Brauer's bound is stated for primes p >= 3")
    two_p = exact(2 * magnitude(p))
    if math.isinf(two_p.hi):
        return ((exact(2).log() + log_p(p)) / 2).exp() + 2
    return two_p.sqrt() + 2


def cube_root_ceiling(p: Modulus) -> RigorousScalar:
    """(2 e^2 log p - 3)^(1/3) p^(1/3): the largest H the conditional bound covers."""
    lp = log_p(p)
    return ((2 * E**2 * lp - 3).log() / 3 + lp / 3).exp()


def unconditional_chain(p: Modulus = UNCONDITIONAL_MIN_P) -> bool:
    """Certify 7.06 p^(1/4) log p < (2 e^2 log p - 3)^(1/3) p^(1/3) - 1."""
    lhs = exact(Fraction(706, 100)) * _quarter_power(p) * log_p(p)
    rhs = cube_root_ceiling(p) - 1
    return lhs.certainly(lhs.lt(rhs), "7.06 p^(1/4) log p < ceiling - 1")


@dataclass(frozen=True)
class ThresholdRecord:
    p_threshold: Fraction
    constant: Fraction | None
    Cg: RigorousScalar
    verified: bool


def theorem2_report(extra_thresholds=(BURGESS_MIN_P,)) -> list[ThresholdRecord]:
    """Certify C g(p) < constant at each stated threshold.

    The constants carry to all larger p because g is decreasing there; that
    monotonicity is checked numerically on grids, not proved here.
    """
    out = []
    for threshold, constant in CONSTANT_THRESHOLDS:
        cg = Cg_of_p(threshold)
        out.append(ThresholdRecord(Fraction(threshold), constant, cg,
                                   cg.certainly(cg.lt(constant), f"Cg({threshold}) < {constant}")))
    for threshold in extra_thresholds:
        out.append(ThresholdRecord(Fraction(threshold), None, Cg_of_p(threshold), False))
    return out


@dataclass(frozen=True)
class GateVerdict:
    """Which result bounds a run of length H mod p, and the bound it gives.

    ``theorem`` is ``"unconditional"`` (p >= 5e18), ``"conditional"``
    (5e4 <= p, H at most the cube-root ceiling) or ``"none"``.
    """

    theorem: str
    bound: RigorousScalar | None
    constant: Fraction | None
    ceiling: RigorousScalar | None
    reason: str


def corollary1_gate(p: Modulus, H: int) -> GateVerdict:
    q = magnitude(p)
    if q < BURGESS_MIN_P:
        return GateVerdict("none", None, None, None, "p < 5*10^4")
    ceiling = cube_root_ceiling(p)
    if q >= UNCONDITIONAL_MIN_P:
        constant = None
        for threshold, c in CONSTANT_THRESHOLDS:
            if q >= threshold:
                constant = c
        return GateVerdict("unconditional", burgess_bound(p), constant, ceiling,
                           "p >= 5*10^18: no hypothesis on H")
    below = ceiling.ge(H)
    if below is None:
        raise Indeterminate(f"H={H} against the cube-root ceiling {ceiling!r}")
    if below:
        return GateVerdict("conditional", burgess_bound(p), None, ceiling,
                           "H <= (2e^2 log p - 3)^(1/3) p^(1/3)")
    return GateVerdict("none", None, None, ceiling,
                       "H exceeds (2e^2 log p - 3)^(1/3) p^(1/3) and p < 5*10^18")


@dataclass(frozen=True)
class BoundReport:
    p: Fraction
    h: int
    r: int
    X_floor: RigorousScalar
    f_value: RigorousScalar
    g_value: RigorousScalar
    Cg_value: RigorousScalar
    burgess_value: RigorousScalar
    brauer_value: RigorousScalar
    burgess_applicable: bool
    unconditional: bool
    below_7_06: bool
    below_7: bool


def bound_report(p: Modulus) -> BoundReport:
    _require_range(p)
    q = magnitude(p)
    h, r = parameter_schedule(p)
    x_floor = C * _quarter_power(p) / (2 * E**2)
    g = g_of_p(p)
    return BoundReport(
        p=q, h=h, r=r, X_floor=x_floor, f_value=f_of_X(x_floor), g_value=g,
        Cg_value=C * g, burgess_value=burgess_bound(p), brauer_value=brauer_bound(p),
        burgess_applicable=True,
        unconditional=q >= UNCONDITIONAL_MIN_P,
        below_7_06=q >= CONSTANT_THRESHOLDS[0][0],
        below_7=q >= CONSTANT_THRESHOLDS[1][0],
    )
