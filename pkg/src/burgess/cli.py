"""Command-line front end.

Every subcommand writes a list of flat rows as CSV (default) or JSON and
exits 0 on success, 1 when a verification fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import approx, bounds, moments, runs
from .arith import PrimeModulus
from .characters import EXHAUSTIVE_LIMIT, Character, CharValue
from .interval import PI, Indeterminate, RigorousScalar, exact

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SCAN_COLUMNS = ("p", "e", "order", "H", "N", "value_num", "value_den", "brauer",
                "burgess_lo", "burgess_hi", "burgess_applicable")

ReportRow = dict


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    exhaustive_limit: int = EXHAUSTIVE_LIMIT
    enumeration_budget: int = moments.ENUMERATION_BUDGET
    sieve_limit: int = runs.QUADRATIC_SIEVE_LIMIT
    jobs: int = 1
    fmt: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if min(self.exhaustive_limit, self.enumeration_budget, self.sieve_limit) < 1:
            raise UsageError("limits must be positive")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if self.fmt not in ("csv", "json"):
            raise UsageError(f"unknown format {self.fmt!r}")


# ---------------------------------------------------------------- row helpers

def _put(row: ReportRow, name: str, value) -> None:
    """Flatten value into row: enclosures become name_lo/name_hi pairs."""
    if isinstance(value, RigorousScalar):
        row[f"{name}_lo"] = value.lo
        row[f"{name}_hi"] = value.hi
    elif isinstance(value, CharValue):
        row[f"{name}_num"] = value.j
        row[f"{name}_den"] = value.d
    elif isinstance(value, Fraction):
        row[name] = value.numerator if value.denominator == 1 else str(value)
    else:
        row[name] = value


def _row(**fields) -> ReportRow:
    row: ReportRow = {}
    for name, value in fields.items():
        _put(row, name, value)
    return row


def run_row(rec: runs.RunRecord) -> ReportRow:
    """A RunRecord in the fixed scan column order."""
    burgess = rec.burgess
    return {
        "p": rec.p, "e": rec.e, "order": rec.order, "H": rec.H, "N": rec.N,
        "value_num": rec.value.j, "value_den": rec.value.d,
        "brauer": rec.brauer.hi,
        "burgess_lo": None if burgess is None else burgess.lo,
        "burgess_hi": None if burgess is None else burgess.hi,
        "burgess_applicable": rec.burgess_applicable,
    }


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def format_rows(rows: list[ReportRow], fmt: str, columns=None) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    if columns is None:
        columns = list(dict.fromkeys(k for row in rows for k in row))
    if not columns:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def _emit(rows: list[ReportRow], config: Config, columns=None) -> None:
    text = format_rows(rows, config.fmt, columns)
    if config.out is None:
        sys.stdout.write(text)
        return
    try:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {config.out}: {exc.strerror}") from exc


def _modulus(text: str) -> int:
    """Integer from '12345', '5e18' or '5*10^18'."""
    t = text.replace("*10^", "e").replace("*10**", "e")
    try:
        value = Fraction(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value.denominator != 1:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return value.numerator


def _order(text: str):
    if text == "all":
        return "all"
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--order must be 'all' or an integer, got {text!r}") from None
    if k < 2:
        raise argparse.ArgumentTypeError("--order must be >= 2")
    return k


def _require(args, *names) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join(missing))


def _prime(p: int) -> int:
    try:
        return int(PrimeModulus(p))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _character(p: int, e: int) -> Character:
    if e % (p - 1) == 0:
        raise UsageError(f"e={e} gives the principal character mod {p}")
    return Character(p, e)


# ---------------------------------------------------------------- subcommands

def _against_bound(p: int, h: int, r: int, res: moments.MomentResult,
                   bound_cache: dict) -> tuple[RigorousScalar, bool]:
    """The moment bound at (p, h, r) and whether it certainly covers res."""
    key = (p, h, r)
    if key not in bound_cache:
        bound_cache[key] = moments.moment_upper_bound(p, h, r)
    bound = bound_cache[key]
    return bound, bound.ge(res.enclosure()) is True


def cmd_moment(args, config: Config):
    _require(args, "p", "e", "h", "r")
    p = _prime(args.p)
    chi = _character(p, args.e)
    if args.h < 1 or args.r < 1:
        raise UsageError("--h and --r must be positive")
    res = moments.moment(chi, args.h, args.r)
    bound, ok = _against_bound(p, args.h, args.r, res, {})
    row = _row(p=p, e=args.e, order=chi.n, h=args.h, r=args.r, value=res.value,
               exact=res.exact, abs_error=res.abs_error, bound=bound, ok=ok)
    return [row], ok


def cmd_verify_moment_bound(args, config: Config):
    _require(args, "p", "h", "r")
    p_max, h_max, r_max = args.p, args.h, args.r
    if h_max < 1 or r_max < 1:
        raise UsageError("--h and --r must be positive")
    if p_max > config.exhaustive_limit:
        raise UsageError(f"--p {p_max} exceeds the all-characters limit {config.exhaustive_limit}")
    hs, rs = range(1, h_max + 1), range(1, r_max + 1)
    cache: dict = {}
    cases = characters = 0
    failures = []
    for p in runs.prime_sieve(args.p_min, p_max).tolist():
        seen = set()
        for chi, h, r, res in moments.moment_sweep(p, hs, rs):
            seen.add(chi.e)
            cases += 1
            bound, ok = _against_bound(p, h, r, res, cache)
            if not ok:
                failures.append(_row(kind="failure", p=p, e=chi.e, h=h, r=r, value=res.value,
                                     abs_error=res.abs_error, bound=bound))
        characters += len(seen)
    summary = _row(kind="summary", p_min=args.p_min, p_max=p_max, h_max=h_max, r_max=r_max,
                   characters=characters, cases=cases, failures=len(failures))
    return [summary, *failures], not failures


def cmd_fractions(args, config: Config):
    _require(args, "a", "b", "x_max")
    X = args.x_max
    try:
        count = approx.distinct_fraction_count(args.a, args.b, X)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if X >= 7:
        lower = approx.fraction_count_lower_bound(X)
        ok = lower.le(count) is True
    else:
        lower, ok = None, True
    row = _row(a=args.a, b=args.b, X=X, count=count, lower_bound=lower, ok=ok)
    if lower is None:
        row.update(lower_bound_lo=None, lower_bound_hi=None)
    return [row], ok


def cmd_approx(args, config: Config):
    _require(args, "n", "p", "H")
    theta = Fraction(args.n, args.p)
    try:
        res = approx.dirichlet_approx(theta, args.H)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    err = abs(res.a * theta - res.b)
    ok = math.gcd(res.a, res.b) == 1 and 0 < res.a < args.H and err <= Fraction(1, args.H)
    return [_row(N=args.n, p=args.p, A=args.H, a=res.a, b=res.b, error=err, ok=ok)], ok


def _witness_moment(chi: Character, h: int, X: Fraction):
    """S(chi, h, 1) against the lower bound (3/pi^2) X^2 h^3 f(X)."""
    res = moments.moment(chi, h, 1)
    lower = 3 / PI**2 * exact(X) ** 2 * h**3 * bounds.f_of_X(X)
    return res, lower, lower.le(res.enclosure()) is True


def cmd_intervals(args, config: Config):
    _require(args, "p", "n", "H", "h")
    p = _prime(args.p)
    chi = _character(p, args.e) if args.e is not None else None
    try:
        fam = approx.build_interval_family(p, args.n, args.H, args.h, chi)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [_row(kind="interval", q=iv.q, t=iv.t, lo=iv.lo, hi=iv.hi, length=iv.length,
                 integers=len(iv.integers()))
            for iv in fam.intervals]
    lower = approx.fraction_count_lower_bound(fam.X)
    required = math.ceil(lower.hi)
    ok = fam.count >= required
    summary = _row(kind="summary", p=p, N=args.n, H=args.H, h=args.h, X=fam.X, a=fam.a, b=fam.b,
                   count=fam.count, required=required, count_lower_bound=lower)
    if chi is not None:
        res, m_lower, m_ok = _witness_moment(chi, args.h, fam.X)
        _put(summary, "value", fam.value)
        summary.update(_row(moment=res.value, moment_lower_bound=m_lower, moment_ok=m_ok))
        ok = ok and m_ok
    summary["ok"] = ok
    return [*rows, summary], ok


def cmd_bounds(args, config: Config):
    _require(args, "p")
    try:
        rep = bounds.bound_report(args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    row = _row(p=rep.p, h=rep.h, r=rep.r, X=rep.X_floor, f=rep.f_value, g=rep.g_value,
               Cg=rep.Cg_value, burgess=rep.burgess_value, brauer=rep.brauer_value,
               burgess_applicable=rep.burgess_applicable,
               unconditional=rep.unconditional,
               below_7_06=rep.below_7_06, below_7=rep.below_7)
    return [row], True


def cmd_thresholds(args, config: Config):
    recs = bounds.theorem2_report(extra_thresholds=())
    rows = [_row(p=r.p_threshold, constant=r.constant, Cg=r.Cg, ok=r.verified) for r in recs]
    return rows, all(r.verified for r in recs)


def _brauer_ok(rec: runs.RunRecord) -> bool:
    return rec.within_brauer is True


def cmd_max_run(args, config: Config):
    _require(args, "p")
    p = _prime(args.p)
    if args.e is not None:
        rec = runs.max_constant_run(_character(p, args.e))
    else:
        try:
            rec = runs.max_run_over_characters(p, args.order, limit=config.exhaustive_limit)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if rec is None:
            raise UsageError(f"no character of order {args.order} mod {p}")
    return [run_row(rec)], _brauer_ok(rec)


def cmd_scan(args, config: Config):
    _require(args, "p")
    try:
        records = list(runs.scan_primes(args.p_min, args.p, args.order, parallelism=config.jobs))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    violations = [r.p for r in records if not _brauer_ok(r)]
    empirical = [r.p for r in records if r.below_burgess is False]
    print(f"scanned {len(records)} primes; Brauer violations: {len(violations)}; "
          f"runs reaching the Burgess expression (empirical only): {len(empirical)}",
          file=sys.stderr)
    return [run_row(r) for r in records], not violations


def cmd_witness(args, config: Config):
    limit = args.limit if args.limit is not None else runs.WITNESS_SEARCH_LIMIT
    try:
        w = runs.find_prop1_witness(limit=limit, order_filter=args.order)
    except LookupError as exc:
        print(str(exc), file=sys.stderr)
        return [], False
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    row = _row(p=w.p, e=w.chi.e, order=w.chi.n, N=w.N, H=w.H, h=w.h,
               value=w.chi.eval(w.N + 1), X=Fraction(w.H, 2 * w.h))
    return [row], True


COMMANDS = {
    "moment": (cmd_moment, "S(chi, h, r) against its upper bound"),
    "verify-lemma2": (cmd_verify_moment_bound, "sweep the moment bound over primes, characters, h and r"),
    "fractions": (cmd_fractions, "count distinct (at+b)/q and compare with the lower bound"),
    "approx": (cmd_approx, "rational approximation a N/p ~ b with 0 < a < A"),
    "intervals": (cmd_intervals, "build and validate the interval family I(q, t)"),
    "bounds": (cmd_bounds, "f, g, C g, Burgess and Brauer bounds at p"),
    "thresholds": (cmd_thresholds, "certify C g(p) < 7.06 at 5e18 and < 7 at 5e55"),
    "max-run": (cmd_max_run, "longest constant run mod p"),
    "scan": (cmd_scan, "longest constant runs for every prime in a range"),
    "witness": (cmd_witness, "smallest prime with a run meeting the interval hypotheses"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=_modulus, help="prime (or p_max for sweeps); accepts 5e18")
    common.add_argument("--p-min", type=int, default=3, help="lower end of a prime range")
    common.add_argument("--e", type=int, help="character index: chi(g^k) = e(ek/(p-1))")
    common.add_argument("--h", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--x-max", type=int, help="X in the fraction count")
    common.add_argument("--a", type=int)
    common.add_argument("--b", type=int)
    common.add_argument("--n", type=int, help="run offset N")
    common.add_argument("--H", type=int, help="run length H (also A for approx)")
    common.add_argument("--order", type=_order, default=None, help="2, all, or an order k")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--limit", type=int, help="search or exhaustive-character limit")

    parser = argparse.ArgumentParser(prog="burgess", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


_DEFAULT_ORDER = {"scan": 2, "max-run": "all", "witness": "all"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.order is None:
        args.order = _DEFAULT_ORDER.get(args.command, "all")
    try:
        limit = args.limit if args.limit is not None and args.command != "witness" else EXHAUSTIVE_LIMIT
        config = Config(exhaustive_limit=limit, jobs=args.jobs, fmt=args.format, out=args.out)
        func = COMMANDS[args.command][0]
        rows, ok = func(args, config)
        _emit(rows, config, SCAN_COLUMNS if args.command in ("scan", "max-run") else None)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Indeterminate, approx.ConstructionError) as exc:
        print(f"{parser.prog} {args.command}: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
