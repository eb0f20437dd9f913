"""Invariant grid checks shared by the ``selftest`` command and the acceptance tests."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .arith import QuadPoly, _val
from .congruence import solve, solve_brute
from .distance import min_distance_closed, min_distance_from_set
from .oracle import (
    _window_hits_zero,
    asymptotic_slope,
    default_start,
    empirical_smallest_period,
    g_eval,
    g_p_eval,
    h_p_i,
    hua_check,
)
from .period import (
    bk_valuations,
    compute_Bk,
    is_eventually_periodic,
    local_period_via_bracket,
    normalize,
    smallest_period,
)

GRID_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f", first failures: {self.failures[:3]}" if self.failures else ""
        return f"[{status}] {self.name}: {self.cases} cases{extra}"


def primitive_grid(bound: int = 9) -> Iterable[QuadPoly]:
    for a in range(-bound, bound + 1):
        if a == 0:
            continue
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                if math.gcd(a, b, c) == 1:
                    yield QuadPoly(a, b, c)


def _exponents(p: int, limit: int) -> range:
    e = 0
    while p ** (e + 1) <= limit:
        e += 1
    return range(e + 1)


def check_congruence(bound: int = 9, primes=GRID_PRIMES, limit: int = 10**4) -> CheckResult:
    fails, n = [], 0
    for f in primitive_grid(bound):
        for p in primes:
            for e in _exponents(p, limit):
                n += 1
                if solve(f, p, e) != solve_brute(f, p, e):
                    fails.append((str(f), p, e))
    return CheckResult("closed-form roots equal exhaustive scan", not fails, n, fails)


def check_distance(bound: int = 9, primes=GRID_PRIMES, limit: int = 10**4) -> CheckResult:
    fails, n = [], 0
    for f in primitive_grid(bound):
        for p in primes:
            prev = None
            for e in _exponents(p, limit):
                n += 1
                brute = min_distance_from_set(solve_brute(f, p, e)).d
                if min_distance_closed(f, p, e).d != brute:
                    fails.append(("closed", str(f), p, e))
                if prev is not None and prev > brute:
                    fails.append(("monotone", str(f), p, e))
                prev = brute
    return CheckResult("minimal distance closed form and monotonicity", not fails, n, fails)


def period_candidates(bound: int = 9, k_max: int = 8, b_cap: int = 10**9) -> dict[int, list[tuple[int, QuadPoly]]]:
    """Distinct normalized (f, k) on the grid with k admissible and B_k <= b_cap, keyed by k."""
    seen: set[QuadPoly] = set()
    out: dict[int, list[tuple[int, QuadPoly]]] = {k: [] for k in range(1, k_max + 1)}
    for f in primitive_grid(bound):
        g = normalize(f)
        if g in seen:
            continue
        seen.add(g)
        for k in range(1, k_max + 1):
            if not is_eventually_periodic(g, k):
                break
            B = compute_Bk(g, k)
            if B > b_cap:
                break
            out[k].append((B, g))
    for k in out:
        out[k].sort(key=lambda t: (t[0], t[1].coeffs()))
    return out


def select_instances(per_k: int = 30, k_max: int = 8, b_cap: int = 2 * 10**6, bound: int = 9) -> list[tuple[QuadPoly, int]]:
    """Deterministic spread: evenly strided over each k's candidates sorted by B_k."""
    chosen = []
    for k, cands in period_candidates(bound, k_max, b_cap).items():
        if not cands:
            continue
        if len(cands) <= per_k:
            picks = cands
        else:
            step = (len(cands) - 1) / (per_k - 1)
            picks = [cands[round(j * step)] for j in range(per_k)]
        chosen += [(f, k) for _, f in picks]
    return chosen


def check_headline(instances, horizon: int = 3) -> CheckResult:
    fails = []
    for f, k in instances:
        P = smallest_period(f, k).P
        E = empirical_smallest_period(f, k, horizon=horizon)
        if P != E:
            fails.append((str(f), k, P, E))
    return CheckResult("smallest period equals empirical period", not fails, len(instances), fails)


def check_local_global(instances) -> CheckResult:
    fails = []
    for f, k in instances:
        r = smallest_period(f, k)
        if math.prod(r.local_periods.values()) != r.P:
            fails.append(("product", str(f), k))
        vals = bk_valuations(r.f, k)
        for p, lp in r.local_periods.items():
            if p ** vals[p] % lp:
                fails.append(("divides", str(f), k, p))
            if r.f.a % p and local_period_via_bracket(r.f, p, k) != lp:
                fails.append(("bracket", str(f), k, p))
        if r.B_k % r.A_k or r.A_k % r.P:
            fails.append(("chain", str(f), k))
    return CheckResult("local-global factorization and bracket path", not fails, len(instances), fails)


def _sample_points(f: QuadPoly, k: int, count: int) -> list[int]:
    n, out = default_start(f), []
    while len(out) < count:
        if not _window_hits_zero(f, k, n):
            out.append(n)
        n += 1
    return out


def check_hua(instances, per: int = 20, k_max: int = 4) -> CheckResult:
    fails, n = [], 0
    for f, k in instances:
        if k > k_max:
            continue
        for x in _sample_points(f, k, per):
            n += 1
            if not hua_check(f, k, x):
                fails.append((str(f), k, x))
    return CheckResult("alternating gcd product equals g", not fails, n, fails)


def check_level_sums(instances, per: int = 20) -> CheckResult:
    fails, n = [], 0
    for f, k in instances:
        primes = sorted(bk_valuations(normalize(f), k))
        for x in _sample_points(f, k, per):
            g = g_eval(f, k, x)
            for p in primes:
                n += 1
                top = max(_val(f(x + j), p) for j in range(k + 1))
                levels = sum(h_p_i(f, k, x, p, i) for i in range(1, top + 1))
                if _val(g, p) != levels or g_p_eval(f, k, x, p) != levels:
                    fails.append((str(f), k, x, p))
    return CheckResult("p-adic valuation of g equals level-count sum", not fails, n, fails)


def check_asymptotics(points=(10**3, 10**4, 10**5), tol: float = 0.10) -> CheckResult:
    fails = []
    cases = [(QuadPoly(1, 0, 1), 1, 4), (QuadPoly(1, 2, 0), 2, 5)]
    for f, k, C in cases:
        rep = asymptotic_slope(f, k, points)
        if rep.predicted_C != C or rep.deviation > tol or not rep.monotone:
            fails.append((str(f), k, rep.predicted_C, round(rep.deviation, 4), rep.monotone))
    return CheckResult("log lcm / log n approaches predicted slope", not fails, len(cases), fails)


def check_invariance(instances) -> CheckResult:
    fails = []
    for f, k in instances:
        P = smallest_period(f, k).P
        for h in (QuadPoly(2 * f.a, 2 * f.b, 2 * f.c), QuadPoly(3 * f.a, 3 * f.b, 3 * f.c),
                  QuadPoly(-f.a, -f.b, -f.c)):
            if smallest_period(h, k).P != P:
                fails.append((str(f), str(h), k))
    return CheckResult("period invariant under scaling and negation", not fails, len(instances), fails)


def check_unbounded_literal(n_max: int = 100) -> CheckResult:
    """The claim g(n) = n + 1 for x(x+1), k = 1. It is false at even n."""
    f = QuadPoly(1, 1, 0)
    fails = [(n, g_eval(f, 1, n)) for n in range(1, n_max + 1) if g_eval(f, 1, n) != n + 1]
    return CheckResult("g(n) = n + 1 for x(x+1), k = 1", not fails, n_max, fails)


def check_unbounded(n_max: int = 100) -> CheckResult:
    """g(n) = (n + 1) gcd(n, 2) for x(x+1), k = 1, so g >= n + 1 and is unbounded."""
    f = QuadPoly(1, 1, 0)
    fails = []
    for n in range(1, n_max + 1):
        g = g_eval(f, 1, n)
        if g != (n + 1) * math.gcd(n, 2) or g < n + 1:
            fails.append((n, g))
    return CheckResult("g(n) = (n+1) gcd(n,2) >= n + 1 for x(x+1), k = 1", not fails, n_max, fails)


def run_all(quick: bool = True) -> list[CheckResult]:
    if quick:
        bound, limit, per_k, b_cap = 4, 10**3, 4, 10**4
    else:
        bound, limit, per_k, b_cap = 9, 10**4, 30, 2 * 10**6
    inst = select_instances(per_k=per_k, b_cap=b_cap, bound=bound)
    return [
        check_congruence(bound, limit=limit),
        check_distance(bound, limit=limit),
        check_headline(inst),
        check_local_global(inst),
        check_hua(inst, per=5 if quick else 20),
        check_level_sums(inst, per=5 if quick else 20),
        check_asymptotics(),
        check_invariance(inst[:50]),
        check_unbounded(),
    ]
