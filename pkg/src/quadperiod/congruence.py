"""Roots of a quadratic modulo a prime power.

``solve`` uses the closed-form case analysis; ``solve_brute`` scans every
residue and serves as the reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import (
    NotPrimitive,
    QuadPoly,
    WrongCase,
    _check_prime,
    _val,
    hensel_lift,
    mod_inverse,
    sqrt_mod_prime_power,
)

DEFAULT_ORACLE_CAP = 10**6

RESIDUE_NOTE = "residues are canonical in [0, p^e); 0 stands for p^e"


@dataclass(frozen=True)
class SolutionSet:
    p: int
    e: int
    residues: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.p**self.e

    def __len__(self) -> int:
        return len(self.residues)

    def __iter__(self):
        return iter(self.residues)

    def __contains__(self, r: int) -> bool:
        return r in self.residues


def _make(p: int, e: int, residues) -> SolutionSet:
    return SolutionSet(p, e, tuple(sorted(set(residues))))


def _coset_family(base: int, step: int, count: int, m: int) -> list[int]:
    base %= step
    return [(base + j * step) % m for j in range(count)]


def solve_p_divides_a(f: QuadPoly, p: int, e: int) -> SolutionSet:
    """p | a: at most one root, lifted from the linear part."""
    _check_prime(p)
    if f.a % p:
        raise WrongCase("wrong case: p does not divide a")
    if e < 1:
        raise ValueError("e must be positive")
    if f.b % p == 0:
        return _make(p, e, [])
    x0 = (-f.c * mod_inverse(f.b, p)) % p
    return _make(p, e, [hensel_lift(f, x0, p, e)])


def _smallest_root(n: int, p: int, e: int, upper: int) -> int:
    roots = [r for r in sqrt_mod_prime_power(n, p, e) if 1 <= r <= upper]
    if not roots and upper == p**e and n % p**e == 0:
        return upper
    return min(roots)


def solve_odd_a_mod_2(f: QuadPoly, e: int) -> SolutionSet:
    """a odd, modulus 2^e."""
    a, b, D = f.a, f.b, f.D
    if a % 2 == 0:
        raise WrongCase("wrong case: a is even")
    if e < 1:
        raise ValueError("e must be positive")
    m = 1 << e
    ainv = mod_inverse(a, m)
    cu, fl = (e + 1) // 2, e // 2

    if D == 0:
        # nu_2(D) is infinite, so only the first family applies
        return _make(2, e, _coset_family(-ainv * (b // 2), 1 << cu, 1 << fl, m))

    v = _val(D, 2)
    h = v // 2
    D4 = D >> (2 * h)

    if (e == 2 * h - 1 and D4 % 4 == 2) or e <= 2 * h - 2:
        res = _coset_family(-ainv * (b // 2), 1 << cu, 1 << fl, m)
    elif (e == 2 * h - 1 and D4 % 4 != 2) or (e == 2 * h and D4 % 4 == 1):
        half = v // 2
        res = _coset_family(ainv * ((1 << (half - 1)) - b // 2), 1 << half, 1 << fl, m)
    elif (e == 2 * h and D4 % 4 != 1) or (e > 2 * h and D4 % 8 != 1):
        res = []
    else:
        # D4 = 1 (mod 8) and e > nu_2(D)
        if v == 0:
            res = [hensel_lift(f, 0, 2, e), hensel_lift(f, 1, 2, e)]
        else:
            step = 1 << (e - v // 2)
            X = _smallest_root(D // 4, 2, e, step)
            res = []
            for s in (X, -X):
                res += _coset_family(ainv * (s - b // 2), step, 1 << (v // 2), m)
    return _make(2, e, res)


def solve_odd_p(f: QuadPoly, p: int, e: int) -> SolutionSet:
    """Odd p not dividing a."""
    _check_prime(p)
    if p == 2 or f.a % p == 0:
        raise WrongCase("wrong case: need odd p not dividing a")
    if e < 1:
        raise ValueError("e must be positive")
    m = p**e
    inv2a = mod_inverse(2 * f.a, m)
    D = f.D
    v = _val(D, p) if D else None

    if v is None or e <= v:
        cu, fl = (e + 1) // 2, e // 2
        return _make(p, e, _coset_family(-inv2a * f.b, p**cu, p**fl, m))
    if v % 2 or pow(D // p**v % p, (p - 1) // 2, p) != 1:
        return _make(p, e, [])
    step = p ** (e - v // 2)
    X = _smallest_root(D, p, e, step)
    res = []
    for s in (X, -X):
        res += _coset_family(inv2a * (s - f.b), step, p ** (v // 2), m)
    return _make(p, e, res)


def solve(f: QuadPoly, p: int, e: int) -> SolutionSet:
    """Dispatch on (p | a, p = 2)."""
    _check_prime(p)
    if not f.primitive:
        raise NotPrimitive("reduce by content first")
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e == 0:
        return SolutionSet(p, 0, (0,))
    if f.a % p == 0:
        return solve_p_divides_a(f, p, e)
    if p == 2:
        return solve_odd_a_mod_2(f, e)
    return solve_odd_p(f, p, e)


def solve_brute(f: QuadPoly, p: int, e: int, cap: int = DEFAULT_ORACLE_CAP) -> SolutionSet:
    """Exhaustive scan of every residue mod p^e."""
    _check_prime(p)
    if e < 0:
        raise ValueError("e must be nonnegative")
    m = p**e
    if m > cap:
        raise ValueError("modulus exceeds oracle cap")
    if e == 0:
        return SolutionSet(p, 0, (0,))
    if m < 2**31:
        x = np.arange(m, dtype=np.int64)
        a, b, c = f.a % m, f.b % m, f.c % m
        # each intermediate stays below m^2 < 2^62
        val = ((a * x) % m + b) % m
        val = (val * x + c) % m
        res = np.flatnonzero(val == 0).tolist()
    else:
        res = [x for x in range(m) if f(x) % m == 0]
    return SolutionSet(p, e, tuple(res))
