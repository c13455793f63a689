"""Explicit bounds for runs of consecutive integers on which a Dirichlet
character mod a prime is constant, with the numerical checks behind them."""

from .arith import PrimeModulus, factorize, is_prime, legendre, primitive_root
from .bounds import (
    C,
    Cg_of_p,
    bound_report,
    brauer_bound,
    burgess_bound,
    f_of_X,
    g_of_p,
    theorem2_report,
)
from .characters import CharValue, Character, all_nonprincipal, quadratic_character
from .interval import RigorousScalar
from .moments import moment, moment_sweep, moment_upper_bound
from .runs import RunRecord, find_prop1_witness, max_constant_run, max_run_over_characters, scan_primes

__version__ = "0.1.0"
