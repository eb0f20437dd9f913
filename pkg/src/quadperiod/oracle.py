"""Reference computations by direct evaluation.

Nothing here uses the closed forms. A period found by ``empirical_smallest_period``
is only checked on a finite window, so agreement with the period engine is
evidence, not proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .arith import QuadPoly, _check_prime, _val, factorize, integer_roots
from .period import (
    NotEventuallyPeriodic,
    compute_Bk,
    is_eventually_periodic,
    normalize,
    periodicity_witness,
)

HUA_K_CAP = 12
WINDOW_CAP = 6 * 10**7
_INT64_SAFE = 1 << 62


def _zero_set(f: QuadPoly) -> set[int]:
    return set(integer_roots(f))


def _window_hits_zero(f: QuadPoly, k: int, n: int, zeros: set[int] | None = None) -> bool:
    zeros = _zero_set(f) if zeros is None else zeros
    return any(n + i in zeros for i in range(k + 1))


def _g_raw(f: QuadPoly, k: int, n: int) -> int:
    vals = [abs(f(n + i)) for i in range(k + 1)]
    return math.prod(vals) // math.lcm(*vals)


def _shift_off_zeros(f: QuadPoly, k: int, n: int) -> int:
    zeros = _zero_set(f)
    if not _window_hits_zero(f, k, n, zeros):
        return n
    if not is_eventually_periodic(f, k):
        raise NotEventuallyPeriodic("undefined (no periodic extension)", periodicity_witness(f, k))
    B = compute_Bk(normalize(f), k)
    a0 = 1
    while _window_hits_zero(f, k, n + a0 * B, zeros):
        a0 += 1
    return n + a0 * B


def g_eval(f: QuadPoly, k: int, n: int) -> int:
    """prod |f(n+i)| / lcm |f(n+i)| over 0 <= i <= k."""
    if k < 1:
        raise ValueError("k must be positive")
    return _g_raw(f, k, _shift_off_zeros(f, k, n))


def h_p_i(f: QuadPoly, k: int, n: int, p: int, i: int) -> int:
    q = p**i
    hits = sum(1 for j in range(k + 1) if f(n + j) % q == 0)
    return max(0, hits - 1)


def g_p_eval(f: QuadPoly, k: int, n: int, p: int) -> int:
    """nu_p(g(n)), computed directly and as a sum of level counts."""
    _check_prime(p)
    n = _shift_off_zeros(f, k, n)
    direct = _val(_g_raw(f, k, n), p)
    top = max(_val(f(n + j), p) for j in range(k + 1))
    levels = sum(h_p_i(f, k, n, p, i) for i in range(1, top + 1))
    if direct != levels:
        raise RuntimeError(f"valuation routes disagree at n={n}, p={p}: {direct} vs {levels}")
    return direct


def default_start(f: QuadPoly) -> int:
    roots = integer_roots(f)
    return (max(roots) if roots else 0) + 1


def _valuation_array(vals: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(vals.shape, dtype=np.int16)
    x = np.abs(vals)
    idx = np.flatnonzero(x % p == 0)
    while idx.size:
        out[idx] += 1
        x[idx] //= p
        idx = idx[x[idx] % p == 0]
    return out


def _gp_windows(v: np.ndarray, k: int, length: int) -> np.ndarray:
    total = v[:length].astype(np.int32)
    top = v[:length].copy()
    for i in range(1, k + 1):
        s = v[i : i + length]
        total += s
        np.maximum(top, s, out=top)
    return (total - top).astype(np.int16)


def _is_period(rows: list[np.ndarray], t: int, span: int) -> bool:
    return all(np.array_equal(r[t : t + span], r[:span]) for r in rows)


@dataclass
class EmpiricalPeriod:
    period: int
    n0: int
    horizon: int
    B_k: int
    divisor_checks: dict[int, bool] = field(default_factory=dict)


def empirical_period_details(
    f: QuadPoly,
    k: int,
    n0: int | None = None,
    horizon: int = 3,
    window_cap: int = WINDOW_CAP,
    only_prime: int | None = None,
) -> EmpiricalPeriod:
    """Greedy descent from B_k; with ``only_prime`` the word is n -> nu_p(g(n)) alone."""
    if horizon < 2:
        raise ValueError("horizon must be at least 2")
    if not is_eventually_periodic(f, k):
        raise NotEventuallyPeriodic("not eventually periodic", periodicity_witness(f, k))
    g = normalize(f)
    B = compute_Bk(g, k)
    n0 = default_start(f) if n0 is None else n0
    span = horizon * B + 1  # offsets checked: n0 .. n0 + horizon*B
    length = span + B
    total = length + k
    if total > window_cap:
        raise ValueError(f"window of {total} terms exceeds cap {window_cap}")
    lo, hi = n0, n0 + total - 1
    bound = max(abs(f(lo)), abs(f(hi)), abs(f.c)) + abs(f.a) + abs(f.b) + 1
    if bound * 4 >= _INT64_SAFE or abs(lo) * abs(f.a) * 4 >= _INT64_SAFE:
        raise ValueError("window values exceed 64-bit range")
    n = np.arange(lo, hi + 1, dtype=np.int64)
    fv = (f.a * n + f.b) * n + f.c
    if np.any(fv == 0):
        raise ValueError("window contains a zero of f; start later")

    divisors = [p for p, _ in factorize(B)] if B > 1 else []
    primes = divisors
    if only_prime is not None:
        primes = [only_prime] if only_prime in divisors else []
    rows = [_gp_windows(_valuation_array(fv, p), k, length) for p in primes]

    # spot check against exact evaluation
    for off in sorted({0, 1, length // 2, length - 1}):
        expect = _g_raw(f, k, lo + off)
        if only_prime is not None:
            expect = only_prime ** _val(expect, only_prime)
        got = math.prod(p ** int(r[off]) for p, r in zip(primes, rows))
        if expect != got:
            raise RuntimeError(f"vectorized g disagrees at n={lo + off}: {got} vs {expect}")

    checks: dict[int, bool] = {}
    ok = _is_period(rows, B, span)
    checks[B] = ok
    if not ok:
        raise RuntimeError(f"B_k = {B} is not a period on the window")
    # The word is long enough that any two periods dividing B_k have their gcd as a
    # period too, so stripping primes greedily reaches the least one.
    T = B
    for p in divisors:
        while T % p == 0:
            cand = T // p
            ok = _is_period(rows, cand, span)
            checks[cand] = ok
            if not ok:
                break
            T = cand
    return EmpiricalPeriod(T, n0, horizon, B, checks)


def empirical_smallest_period(
    f: QuadPoly, k: int, n0: int | None = None, horizon: int = 3
) -> int:
    """Least divisor t of B_k with g(n+t) = g(n) on [n0, n0 + horizon*B_k]."""
    return empirical_period_details(f, k, n0, horizon).period


def empirical_local_period(f: QuadPoly, k: int, p: int, n0: int | None = None, horizon: int = 3) -> int:
    """Least period of n -> nu_p(g(n)) among divisors of B_k, on the same window."""
    _check_prime(p)
    return empirical_period_details(f, k, n0, horizon, only_prime=p).period


def hua_check(f: QuadPoly, k: int, n: int, cap: int = HUA_K_CAP) -> bool:
    """Alternating gcd product over subsets of size >= 2 equals g(n)."""
    if k > cap:
        raise ValueError(f"k = {k} exceeds subset-enumeration cap {cap}")
    if _window_hits_zero(f, k, n):
        raise ValueError("window contains a zero of f")
    vals = [abs(f(n + i)) for i in range(k + 1)]
    acc = Fraction(1)
    for size in range(2, k + 2):
        sign = 1 if size % 2 == 0 else -1
        for sub in combinations(vals, size):
            gcd = math.gcd(*sub)
            acc = acc * gcd if sign > 0 else acc / gcd
    return acc.denominator == 1 and acc.numerator == _g_raw(f, k, n)


def gcd_divides_Bk_check(f: QuadPoly, k: int, n: int) -> bool:
    if not is_eventually_periodic(f, k):
        raise NotEventuallyPeriodic("not eventually periodic", periodicity_witness(f, k))
    if _window_hits_zero(f, k, n):
        raise ValueError("window contains a zero of f")
    B = compute_Bk(normalize(f), k)
    vals = [f(n + i) for i in range(k + 1)]
    return all(B % math.gcd(x, y) == 0 for x, y in combinations(vals, 2))


@dataclass(frozen=True)
class SlopeReport:
    points: tuple[tuple[int, float, float], ...]  # (n, log lcm, ratio)
    predicted_C: int
    deviation: float
    monotone: bool


def predicted_slope(f: QuadPoly, k: int) -> int:
    i0 = periodicity_witness(f, k)
    return 2 * (k + 1) if i0 is None else k + i0 + 1


def asymptotic_slope(f: QuadPoly, k: int, n_samples: Sequence[int]) -> SlopeReport:
    C = predicted_slope(f, k)
    pts = []
    for n in sorted(n_samples):
        if n < 2:
            raise ValueError("sample points must be at least 2")
        vals = [abs(f(n + i)) for i in range(k + 1)]
        if 0 in vals:
            raise ValueError(f"sample point {n} hits a zero of f")
        ll = math.log(math.lcm(*vals))
        pts.append((n, ll, ll / math.log(n)))
    errs = [abs(r - C) for _, _, r in pts]
    monotone = all(b <= a for a, b in zip(errs, errs[1:]))
    dev = errs[-1] / C if errs else float("nan")
    return SlopeReport(tuple(pts), C, dev, monotone)


def unboundedness_witness(
    f: QuadPoly, k: int, count: int, start: int | None = None, scan_cap: int = 10**6
) -> list[tuple[int, int]]:
    """Points n with g(n) strictly increasing, for a window that is not eventually periodic."""
    if is_eventually_periodic(f, k):
        raise ValueError("g is eventually periodic here; no unbounded witness exists")
    zeros = _zero_set(f)
    n = default_start(f) if start is None else start
    out: list[tuple[int, int]] = []
    best = 0
    for _ in range(scan_cap):
        if len(out) >= count:
            break
        if not _window_hits_zero(f, k, n, zeros):
            g = _g_raw(f, k, n)
            if g > best:
                best = g
                out.append((n, g))
        n += 1
    if len(out) < count:
        raise RuntimeError(f"found only {len(out)} record values within the scan cap")
    return out


@dataclass
class OracleReport:
    f: QuadPoly
    k: int
    samples: list[tuple[int, int]]
    empirical_period: int
    hua_consistent: bool | None
    divisor_checks: dict[int, bool]
    gcd_checks: bool
    n0: int
    horizon: int
    B_k: int
    note: str = "empirical period is checked on a finite window: a falsifier, not a proof"


def oracle_report(
    f: QuadPoly, k: int, n0: int | None = None, horizon: int = 3, n_samples: int = 10
) -> OracleReport:
    det = empirical_period_details(f, k, n0, horizon)
    ns = [det.n0 + j for j in range(n_samples)]
    samples = [(n, g_eval(f, k, n)) for n in ns]
    hua = all(hua_check(f, k, n) for n in ns) if k <= HUA_K_CAP else None
    gcd_ok = all(gcd_divides_Bk_check(f, k, n) for n in ns)
    return OracleReport(
        f=f,
        k=k,
        samples=samples,
        empirical_period=det.period,
        hua_consistent=hua,
        divisor_checks=det.divisor_checks,
        gcd_checks=gcd_ok,
        n0=det.n0,
        horizon=det.horizon,
        B_k=det.B_k,
    )
