"""Smallest period of g_{k,f}(n) = prod |f(n+i)| / lcm f(n+i), i = 0..k.

The answer is assembled twice: from the global correction factors (xi_2,
eta_p and the exceptional-prime rule) and as a product of per-prime local
periods. ``smallest_period`` refuses to answer if the two disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .arith import (
    KfBound,
    NotPrimitive,
    QuadPoly,
    WrongCase,
    _check_prime,
    _val,
    factorize,
    floor_log,
    kf_bound,
    lcm_big,
    legendre_symbol,
    square_witness,
)
from .distance import NotEventuallyPeriodic, e_bracket

__all__ = [
    "KfBound",
    "NotEventuallyPeriodic",
    "PeriodReport",
    "compute_Ak",
    "compute_Ak_parts",
    "periodicity_witness",
    "compute_Bk",
    "bk_valuations",
    "is_eventually_periodic",
    "kf_bound",
    "local_period_2",
    "local_period_odd_p",
    "local_period_p_divides_a",
    "local_period_via_bracket",
    "normalize",
    "smallest_period",
]

DEFAULT_K_CAP = 10**4


def normalize(f: QuadPoly) -> QuadPoly:
    g = f.content
    a, b, c = f.a // g, f.b // g, f.c // g
    if a < 0:
        a, b, c = -a, -b, -c
    return QuadPoly(a, b, c)


def periodicity_witness(f: QuadPoly, k: int) -> int | None:
    """i0 in [1, k] with D = a^2 i0^2, or None."""
    m = square_witness(normalize(f))
    return m if m is not None and m <= k else None


def is_eventually_periodic(f: QuadPoly, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    return k in kf_bound(normalize(f))


def _gate(f: QuadPoly, k: int) -> None:
    if k < 1:
        raise ValueError("k must be positive")
    i0 = periodicity_witness(f, k)
    if i0 is not None:
        g = normalize(f)
        raise NotEventuallyPeriodic(
            f"not eventually periodic: D = {g.D} = a^2 * {i0}^2 with a = {g.a}, i0 = {i0} <= k = {k}",
            witness=i0,
        )


def _check_k(k: int, k_cap: int) -> None:
    if k > k_cap:
        raise ValueError(f"k = {k} exceeds the cap {k_cap}")


@lru_cache(maxsize=4096)
def compute_Bk(f: QuadPoly, k: int, k_cap: int = DEFAULT_K_CAP) -> int:
    """lcm over 1 <= i <= k of i (a^2 i^2 - D)."""
    _check_k(k, k_cap)
    a2, D = f.a * f.a, f.D
    return lcm_big(i * (a2 * i * i - D) for i in range(1, k + 1))


@lru_cache(maxsize=4096)
def bk_valuations(f: QuadPoly, k: int) -> dict[int, int]:
    """nu_p(B_k) for every prime p dividing B_k."""
    a2, D = f.a * f.a, f.D
    out: dict[int, int] = {}
    for i in range(1, k + 1):
        term = a2 * i * i - D
        if term == 0:
            raise ValueError("zero term in lcm")
        local: dict[int, int] = {}
        for src in (i, term):
            for p, e in factorize(src):
                local[p] = local.get(p, 0) + e
        for p, e in local.items():
            if e > out.get(p, 0):
                out[p] = e
    return out


def _nu_B(f: QuadPoly, k: int, p: int) -> int:
    return bk_valuations(f, k).get(p, 0)


def _nu_k1(k: int, p: int) -> int:
    return _val(k + 1, p)


def _require_primitive(f: QuadPoly) -> None:
    if not f.primitive:
        raise NotPrimitive("reduce by content first")


def local_period_p_divides_a(f: QuadPoly, p: int, k: int) -> int:
    _check_prime(p)
    _require_primitive(f)
    if f.a % p:
        raise WrongCase("wrong case: p does not divide a")
    vb = _nu_B(f, k, p)
    if f.b % p and _nu_k1(k, p) < vb:
        return p**vb
    return 1


def local_period_2(f: QuadPoly, k: int) -> int:
    _require_primitive(f)
    if f.a % 2 == 0:
        raise WrongCase("wrong case: a is even")
    _gate(f, k)
    vb, vl, t, D = _nu_B(f, k, 2), floor_log(k, 2), _nu_k1(k, 2), f.D
    if D == 0:
        # nu_2(D) infinite: k is always below 2^floor(nu_2(D)/2)
        return 2 ** (vb - 2 * vl) if t < vl else 1
    v = _val(D, 2)
    h = v // 2
    D4 = D >> (2 * h)
    if k < 2**h and t < vl:
        return 2 ** (vb - 2 * vl)
    if k >= 2**h and D4 % 8 != 1 and t < h:
        return 2**h
    if k >= 2**h and D4 % 8 == 1:
        return 2 ** (vb - v - 1)
    return 1


def local_period_odd_p(f: QuadPoly, p: int, k: int) -> int:
    _check_prime(p)
    _require_primitive(f)
    if p == 2 or f.a % p == 0:
        raise WrongCase("wrong case: need odd p not dividing a")
    _gate(f, k)
    vb, vl, t, D = _nu_B(f, k, p), floor_log(k, p), _nu_k1(k, p), f.D
    if D == 0:
        return p ** (vb - 2 * vl) if t < vl else 1
    v = _val(D, p)
    c = (v + 1) // 2
    leg = legendre_symbol(D // p**v, p)
    if k < p**c and t < vl:
        return p ** (vb - 2 * vl)
    if k >= p**c and t < c and (v % 2 or leg == -1):
        return p**c
    if k >= p**c and t < vb - v and v % 2 == 0 and leg == 1:
        return p ** (vb - v)
    return 1


def local_period_via_bracket(f: QuadPoly, p: int, k: int) -> int:
    """Local period from the bracket exponent e with d_{p^e} <= k < d_{p^(e+1)}."""
    _check_prime(p)
    _require_primitive(f)
    if f.a % p == 0:
        raise WrongCase("wrong case: p divides a")
    _gate(f, k)
    e = e_bracket(f, p, k)
    if e == 0:
        return 1
    t, D = _nu_k1(k, p), f.D
    cu = (e + 1) // 2
    v = _val(D, p) if D else None
    if p == 2:
        if v is None:
            return 2**cu if t < cu else 1
        h = v // 2
        D4 = D >> (2 * h)
        if (e == v and D4 % 4 == 1) or e <= 2 * h - 1:
            return 2**cu if t < cu else 1
        if e > v and D4 % 8 == 1:
            return 2 ** (e - v // 2)
        raise RuntimeError(f"bracket exponent {e} outside the tabulated cases for {f}")
    if v is None or e <= v:
        return p**cu if t < cu else 1
    w = e - v // 2
    return p**w if t < w else 1


def _xi2(f: QuadPoly, k: int) -> int:
    a, b, D = f.a, f.b, f.D
    vb, vl, t = _nu_B(f, k, 2), floor_log(k, 2), _nu_k1(k, 2)
    if a % 2 == 0 and b % 2 and t < vb:
        return 1
    if a % 2:
        if D == 0:
            if t < vl:
                return 2 ** (2 * vl)
            return 2**vb
        v = _val(D, 2)
        h = v // 2
        D4 = D >> (2 * h)
        if k < 2**h and t < vl:
            return 2 ** (2 * vl)
        if k >= 2**h and D4 % 8 != 1 and t < h:
            return 2 ** (vb - h)
        if k >= 2**h and D4 % 8 == 1:
            return 2 ** (v + 1)
    return 2**vb


def _eta(f: QuadPoly, k: int, p: int) -> int:
    D = f.D
    vb, vl, t = _nu_B(f, k, p), floor_log(k, p), _nu_k1(k, p)
    if D == 0:
        return p ** (2 * vl) if t < vl else p**vb
    v = _val(D, p)
    c = (v + 1) // 2
    leg = legendre_symbol(D // p**v, p)
    if k < p**c and t < vl:
        return p ** (2 * vl)
    if k >= p**c and t < c and (v % 2 or leg == -1):
        return p ** (vb - c)
    if k >= p**c and t < vb - v and v % 2 == 0 and leg == 1:
        return p**v
    return p**vb


@dataclass(frozen=True)
class AkParts:
    B_k: int
    xi2: int
    gcd_ab_part: int
    nonresidue_part: int
    eta: dict[int, int]
    A_k: int


def compute_Ak_parts(f: QuadPoly, k: int) -> AkParts:
    _require_primitive(f)
    if f.a < 0:
        raise ValueError("leading coefficient must be positive")
    _gate(f, k)
    B = compute_Bk(f, k)
    vals = bk_valuations(f, k)
    a, b, D = f.a, f.b, f.D
    xi2 = _xi2(f, k)
    gab, nonres, eta = 1, 1, {}
    for p in sorted(vals):
        if p == 2:
            continue
        vb = vals[p]
        if a % p == 0:
            if b % p == 0:
                gab *= p**vb
        elif D % p == 0:
            eta[p] = _eta(f, k, p)
        elif legendre_symbol(D, p) == -1:
            nonres *= p**vb
    denom = xi2 * gab * nonres * math.prod(eta.values())
    if B % denom:
        raise RuntimeError(f"A_k is not integral for {f}, k={k}: B_k={B}, divisor={denom}")
    return AkParts(B, xi2, gab, nonres, eta, B // denom)


def compute_Ak(f: QuadPoly, k: int) -> int:
    return compute_Ak_parts(f, k).A_k


def _local_period(f: QuadPoly, p: int, k: int) -> int:
    if f.a % p == 0:
        return local_period_p_divides_a(f, p, k)
    if p == 2:
        return local_period_2(f, k)
    return local_period_odd_p(f, p, k)


@dataclass(frozen=True)
class PeriodReport:
    f: QuadPoly
    k: int
    B_k: int
    L_k: int
    xi2: int
    eta: dict[int, int]
    A_k: int
    local_periods: dict[int, int]
    exceptional_prime: tuple[int, int] | None
    P: int
    original: QuadPoly | None = field(default=None, compare=False)


def _exceptional(f: QuadPoly, k: int, A: int) -> tuple[int, int] | None:
    a, b, D = f.a, f.b, f.D
    found = []
    for p, _ in factorize(A) if A > 1 else ():
        if p == 2:
            continue
        va = _val(A, p)
        if not (_nu_k1(k, p) >= va >= 1):
            continue
        if (a % p == 0 and b % p) or (
            (2 * a * D) % p and legendre_symbol(D, p) == 1
        ):
            found.append((p, va))
    if len(found) > 1:
        raise RuntimeError(f"more than one exceptional prime for {f}, k={k}: {found}")
    return found[0] if found else None


def smallest_period(f: QuadPoly, k: int, k_cap: int = DEFAULT_K_CAP) -> PeriodReport:
    _check_k(k, k_cap)
    _gate(f, k)
    g = normalize(f)
    parts = compute_Ak_parts(g, k)
    exc = _exceptional(g, k, parts.A_k)
    P_global = parts.A_k // exc[0] ** exc[1] if exc else parts.A_k

    vals = bk_valuations(g, k)
    local = {}
    for p in sorted(vals):
        lp = _local_period(g, p, k)
        if p ** vals[p] % lp:
            raise RuntimeError(f"local period {lp} does not divide {p}^{vals[p]}")
        local[p] = lp
    P_local = math.prod(local.values())
    if P_local != P_global:
        raise RuntimeError(
            f"period routes disagree for {g}, k={k}: global {P_global}, local product {P_local}"
        )
    return PeriodReport(
        f=g,
        k=k,
        B_k=parts.B_k,
        L_k=math.lcm(*range(1, k + 1)),
        xi2=parts.xi2,
        eta=parts.eta,
        A_k=parts.A_k,
        local_periods=local,
        exceptional_prime=exc,
        P=P_global,
        original=f,
    )
