"""Counting fractions (at+b)/q, Dirichlet approximation by continued fractions,
and the family of disjoint intervals I(q, t) on which a character is constant."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import Character, CharValue
from .interval import PI, RigorousScalar, exact

__all__ = [
    "ApproxResult",
    "FractionFamily",
    "IntervalFamily",
    "Interval",
    "ConstructionError",
    "distinct_fraction_count",
    "distinct_fraction_counts",
    "fraction_family",
    "fraction_count_lower_bound",
    "convergents",
    "dirichlet_approx",
    "build_interval_family",
    "run_hypotheses",
]


class ConstructionError(AssertionError):
    """The interval construction produced something its proof rules out."""


@dataclass(frozen=True)
class ApproxResult:
    a: int
    b: int


@dataclass(frozen=True)
class FractionFamily:
    a: int
    b: int
    X: Fraction
    members: frozenset


@dataclass(frozen=True)
class Interval:
    """The half-open real interval (lo, hi] = ((N+pt)/q, (N+H+pt)/q]."""

    q: int
    t: int
    lo: Fraction
    hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def integers(self) -> range:
        return range(math.floor(self.lo) + 1, math.floor(self.hi) + 1)


@dataclass
class IntervalFamily:
    p: int
    N: int
    H: int
    h: int
    X: Fraction
    a: int
    b: int
    intervals: list[Interval] = field(default_factory=list)
    value: CharValue | None = None

    @property
    def count(self) -> int:
        return len(self.intervals)


def _check_ab(a: int, b: int) -> None:
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    if math.gcd(a, b) != 1:
        raise ValueError(f"a={a} and b={b} are not coprime")


def _reduced(num: int, den: int) -> tuple[int, int]:
    g = math.gcd(num, den)
    return num // g, den // g


def distinct_fraction_counts(a: int, b: int, q_max: int) -> list[int]:
    """``counts[k]`` = number of distinct (at+b)/q with 0 <= t < q <= k, for k <= q_max."""
    _check_ab(a, b)
    seen: set[tuple[int, int]] = set()
    counts = [0]
    for q in range(1, q_max + 1):
        for t in range(q):
            seen.add(_reduced(a * t + b, q))
        counts.append(len(seen))
    return counts


def distinct_fraction_count(a: int, b: int, X) -> int:
    """Number of distinct rationals (at+b)/q with 0 <= t < q <= X."""
    if X < 1:
        raise ValueError(f"X must be >= 1, got {X}")
    return distinct_fraction_counts(a, b, math.floor(X))[-1]


def fraction_family(a: int, b: int, X) -> FractionFamily:
    _check_ab(a, b)
    members = {Fraction(a * t + b, q) for q in range(1, math.floor(X) + 1) for t in range(q)}
    return FractionFamily(a, b, Fraction(X), frozenset(members))


def fraction_count_lower_bound(X) -> RigorousScalar:
    """Lower-rounded X^2 (3/pi^2 - log X/(2X) - 1/X - 1/(2X^2)), valid for X >= 7."""
    x = exact(X)
    if x.lo < 7:
        raise ValueError(f"the fraction count bound needs X >= 7, got {X}")
    inner = 3 / PI**2 - x.log() / (2 * x) - 1 / x - 1 / (2 * x**2)
    return x**2 * inner


def convergents(theta: Fraction):
    """Successive continued-fraction convergents (num, den) of a rational."""
    theta = Fraction(theta)
    num, den = theta.numerator, theta.denominator
    p0, q0, p1, q1 = 0, 1, 1, 0
    while den:
        a, rem = divmod(num, den)
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        yield p1, q1
        num, den = den, rem


def dirichlet_approx(theta, A) -> ApproxResult:
    """Coprime (a, b) with 0 < a < A and |a*theta - b| <= 1/A.

    Takes the last convergent b/a of theta whose denominator is below A.  If
    the next denominator a' exists it is >= A and |a*theta - b| < 1/a' <= 1/A;
    otherwise theta = b/a exactly.
    """
    theta = Fraction(theta)
    A = Fraction(A)
    if A <= 1:
        raise ValueError(f"A must exceed 1, got {A}")
    best = None
    for b, a in convergents(theta):
        if a >= A:
            break
        best = (a, b)
    a, b = best  # the first convergent has denominator 1 < A
    if not abs(a * theta - b) <= 1 / A:
        raise ConstructionError(f"convergent {b}/{a} misses the 1/A bound for theta={theta}, A={A}")
    return ApproxResult(a, b)


def run_hypotheses(p: int, H: int, h: int) -> list[str]:
    """Names of the violated hypotheses 14h <= H <= (2h-1)^(1/3) p^(1/3); empty if all hold."""
    violated = []
    if h < 1:
        violated.append("h >= 1")
    if 14 * h > H:
        violated.append(f"14h <= H (14*{h} = {14 * h} > {H})")
    if H**3 > (2 * h - 1) * p:
        violated.append(f"H^3 <= (2h-1)p ({H}^3 = {H**3} > {(2 * h - 1) * p})")
    return violated


def build_interval_family(p: int, N: int, H: int, h: int,
                          chi: Character | None = None) -> IntervalFamily:
    """Disjoint intervals I(q, t) = ((N+pt)/q, (N+H+pt)/q], one per distinct (at+b)/q.

    (a, b) approximates N/p to within 1/H.  Candidates are visited in order of
    increasing q then t, and the first candidate of each fraction class is kept.
    Disjointness is verified by exact comparison over *all* candidates: any two
    that overlap must share a fraction class.  When ``chi`` is given it must be
    constant on (N, N+H], and every integer z of every kept interval is checked
    against chi(z) = conj(chi(q)) * zeta.
    """
    violated = run_hypotheses(p, H, h)
    if violated:
        raise ValueError("hypotheses violated: " + "; ".join(violated))
    X = Fraction(H, 2 * h)
    approx = dirichlet_approx(Fraction(N, p), H)
    a, b = approx.a, approx.b
    family = IntervalFamily(p, N, H, h, X, a, b)

    candidates = []
    chosen: dict[Fraction, Interval] = {}
    for q in range(1, math.floor(X) + 1):
        for t in range(q):
            iv = Interval(q, t, Fraction(N + p * t, q), Fraction(N + H + p * t, q))
            key = Fraction(a * t + b, q)
            candidates.append((iv, key))
            chosen.setdefault(key, iv)
    family.intervals = list(chosen.values())

    for iv in family.intervals:
        if iv.length != Fraction(H, iv.q) or iv.length < 2 * h:
            raise ConstructionError(f"interval {iv} has length {iv.length} < 2h = {2 * h}")

    # sweep candidates by left endpoint; (lo1, hi1] and (lo2, hi2] overlap iff lo2 < hi1
    candidates.sort(key=lambda c: c[0].lo)
    active: list[tuple[Interval, Fraction]] = []
    for iv, key in candidates:
        active = [c for c in active if c[0].hi > iv.lo]
        for other, other_key in active:
            if other_key != key:
                raise ConstructionError(
                    f"I({other.q},{other.t}) and I({iv.q},{iv.t}) overlap with distinct "
                    f"fractions {other_key} != {key}")
        active.append((iv, key))

    kept = sorted(family.intervals, key=lambda iv: iv.lo)
    for left, right in zip(kept, kept[1:]):
        if left.hi > right.lo:
            raise ConstructionError(f"kept intervals I({left.q},{left.t}) and I({right.q},{right.t}) overlap")

    if chi is not None:
        if chi.p != p:
            raise ValueError("character modulus does not match p")
        zeta = chi.eval(N + 1)
        for z in range(N + 1, N + H + 1):
            if chi.eval(z) != zeta or zeta.is_zero:
                raise ValueError(f"chi is not constant and nonzero on ({N}, {N + H}]")
        family.value = zeta
        for iv in family.intervals:
            expected = chi.eval(iv.q).conjugate() * zeta
            for z in iv.integers():
                if chi.eval(z) != expected:
                    raise ConstructionError(
                        f"chi({z}) != conj(chi({iv.q})) * zeta on I({iv.q},{iv.t})")
    return family
