"""Exact smallest periods of g_{k,f}(n) = prod |f(n+i)| / lcm f(n+i) for quadratic f."""

from .arith import INF, ExtNat, QuadPoly, kf_bound, legendre_symbol, lcm_big, mod_inverse
from .arith import p_adic_valuation, sqrt_mod_prime_power
from .congruence import SolutionSet, solve, solve_brute
from .distance import MinimalDistance, NotEventuallyPeriodic, e_bracket, min_distance_closed, min_distance_from_set
from .oracle import OracleReport, empirical_smallest_period, g_eval, g_p_eval, hua_check
from .period import PeriodReport, compute_Ak, compute_Bk, is_eventually_periodic, normalize, smallest_period

__version__ = "0.1.0"

__all__ = [
    "INF", "ExtNat", "QuadPoly", "kf_bound", "legendre_symbol", "lcm_big", "mod_inverse",
    "p_adic_valuation", "sqrt_mod_prime_power", "SolutionSet", "solve", "solve_brute",
    "MinimalDistance", "NotEventuallyPeriodic", "e_bracket", "min_distance_closed",
    "min_distance_from_set", "OracleReport", "empirical_smallest_period", "g_eval", "g_p_eval",
    "hua_check", "PeriodReport", "compute_Ak", "compute_Bk", "is_eventually_periodic",
    "normalize", "smallest_period",
]
