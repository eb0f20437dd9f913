"""Minimal circular distance between roots mod p^e."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import (
    INF,
    ExtNat,
    NotPrimitive,
    QuadPoly,
    _check_prime,
    _val,
    kf_bound,
)
from .congruence import SolutionSet, solve


class NotEventuallyPeriodic(ValueError):
    """k lies outside the admissible window sizes; ``witness`` is i0 with D = a^2 i0^2."""

    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class MinimalDistance:
    p: int
    e: int
    d: ExtNat


def pair_distance(x1: int, x2: int, modulus: int) -> int:
    if not (0 <= x1 < modulus and 0 <= x2 < modulus):
        raise ValueError("residue out of range")
    if x1 == x2:
        return modulus
    return min((x1 - x2) % modulus, (x2 - x1) % modulus)


def min_distance_from_set(s: SolutionSet) -> MinimalDistance:
    if s.e == 0:
        return MinimalDistance(s.p, 0, ExtNat(1))
    r = s.residues
    if not r:
        return MinimalDistance(s.p, s.e, INF)
    m = s.modulus
    if len(r) == 1:
        return MinimalDistance(s.p, s.e, ExtNat(m))
    # sorted residues: the closest pair is adjacent on the circle
    gaps = [r[i + 1] - r[i] for i in range(len(r) - 1)]
    gaps.append(r[0] + m - r[-1])
    return MinimalDistance(s.p, s.e, ExtNat(min(gaps)))


def _smallest_positive_root(f: QuadPoly, p: int, e: int) -> ExtNat:
    # roots of a^2 x^2 - D mod p^e; the content is a unit at p since p does not divide a
    aux = QuadPoly(f.a * f.a, 0, -f.D)
    g = aux.content
    aux = QuadPoly(aux.a // g, 0, aux.c // g)
    roots = solve(aux, p, e).residues
    if not roots:
        return INF
    m = p**e
    return ExtNat(min(r if r else m for r in roots))


def min_distance_closed(f: QuadPoly, p: int, e: int) -> MinimalDistance:
    _check_prime(p)
    if not f.primitive:
        raise NotPrimitive("reduce by content first")
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e == 0:
        return MinimalDistance(p, 0, ExtNat(1))
    a, b, D = f.a, f.b, f.D

    if a % p == 0:
        d = INF if b % p == 0 else ExtNat(p**e)
        return MinimalDistance(p, e, d)

    half_up = p ** ((e + 1) // 2)
    if D == 0:
        return MinimalDistance(p, e, ExtNat(half_up))
    v = _val(D, p)

    if p == 2:
        h = v // 2
        D4 = D >> (2 * h)
        if (e == v and D4 % 4 == 1) or e <= 2 * h - 1:
            d = ExtNat(half_up)
        elif (e == 2 * h and D4 % 4 != 1) or (e > 2 * h and D4 % 8 != 1):
            d = INF
        else:
            d = _smallest_positive_root(f, 2, e + 1)
        return MinimalDistance(p, e, d)

    if e <= v:
        d = ExtNat(half_up)
    elif v % 2 or pow(D // p**v % p, (p - 1) // 2, p) != 1:
        d = INF
    else:
        d = _smallest_positive_root(f, p, e)
    return MinimalDistance(p, e, d)


def _ilog_ceil(x: int, p: int) -> int:
    t, q = 0, 1
    while q < x:
        q *= p
        t += 1
    return t


def e_bracket(f: QuadPoly, p: int, k: int) -> int:
    """The unique e >= 0 with d_{p^e} <= k < d_{p^(e+1)}."""
    _check_prime(p)
    if k < 1 or k not in kf_bound(f):
        raise NotEventuallyPeriodic("not eventually periodic at this k")
    D = f.D
    size = _ilog_ceil(f.a * f.a * k * k + abs(D) + 1, p) + 1
    if D == 0:
        ceiling = 2 * size + 2
    else:
        ceiling = max(_val(D, p) + 1, size) + 2
    e = 0
    while True:
        if e > ceiling:
            raise RuntimeError(f"e_bracket exceeded ceiling {ceiling} for {f}, p={p}, k={k}")
        if min_distance_closed(f, p, e + 1).d > k:
            return e
        e += 1
