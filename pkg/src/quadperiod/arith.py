"""Exact integer utilities: valuations, Legendre symbols, modular square roots.

Everything here works on plain Python ints, so inputs may be arbitrarily large.
Residues are canonical in ``[0, m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Iterable


class NotInvertible(ValueError):
    pass


class WrongCase(ValueError):
    pass


class NotPrimitive(ValueError):
    pass


@total_ordering
class ExtNat:
    """A nonnegative integer or infinity.

    Compares and adds with plain ints; ``INF`` is larger than every int.
    """

    __slots__ = ("_value",)

    def __init__(self, value: int | None):
        if value is not None and value < 0:
            raise ValueError("ExtNat values are nonnegative")
        self._value = value

    @property
    def finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> int:
        if self._value is None:
            raise ValueError("infinite ExtNat has no integer value")
        return self._value

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def _coerce(self, other):
        if isinstance(other, ExtNat):
            return other._value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._value == o

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self._value is None:
            return False
        if o is None:
            return True
        return self._value < o

    def __hash__(self):
        return hash(("ExtNat", self._value))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self._value is None or o is None:
            return INF
        return ExtNat(self._value + o)

    __radd__ = __add__

    def __repr__(self):
        return "ExtNat(inf)" if self._value is None else f"ExtNat({self._value})"

    def __str__(self):
        return "inf" if self._value is None else str(self._value)

    def to_json(self) -> str:
        return "inf" if self._value is None else str(self._value)


INF = ExtNat(None)


@dataclass(frozen=True)
class QuadPoly:
    """f(x) = a x^2 + b x + c with a != 0."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def D(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return math.gcd(self.a, self.b, self.c)

    @property
    def primitive(self) -> bool:
        return self.content == 1

    def __call__(self, x: int) -> int:
        return (self.a * x + self.b) * x + self.c

    def derivative(self, x: int) -> int:
        return 2 * self.a * x + self.b

    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if w % n == 0:
            continue
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def p_adic_valuation(n: int, p: int) -> ExtNat:
    """Largest t with p**t | n; infinity for n == 0."""
    _check_prime(p)
    if n == 0:
        return INF
    return ExtNat(_val(n, p))


def _val(n: int, p: int) -> int:
    # n != 0, p prime (unchecked)
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    t = 0
    while n % p == 0:
        n //= p
        t += 1
    return t


@dataclass(frozen=True)
class DiscriminantParts:
    """nu_p(D) and D with its p-part stripped.

    For odd p the part is D / p^nu; for p = 2 it is D / 4^floor(nu/2), which
    is never divisible by 4.
    """

    p: int
    nu_D: ExtNat
    part: int


def discriminant_parts(D: int, p: int) -> DiscriminantParts:
    _check_prime(p)
    if D == 0:
        raise ValueError("discriminant parts undefined for D = 0")
    v = _val(D, p)
    if p == 2:
        part = D // 4 ** (v // 2)
    else:
        part = D // p**v
    return DiscriminantParts(p, ExtNat(v), part)


def legendre_symbol(n: int, p: int) -> int:
    """(n/p) for odd prime p, via Euler's criterion."""
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime")
    _check_prime(p)
    r = pow(n % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def mod_inverse(x: int, m: int) -> int:
    if m < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(x, m) != 1:
        raise NotInvertible(f"{x} not invertible mod {m}")
    return pow(x, -1, m) if m > 1 else 0


def lcm_big(values: Iterable[int]) -> int:
    values = list(values)
    if any(v == 0 for v in values):
        raise ValueError("zero term in lcm")
    return math.lcm(*(abs(v) for v in values)) if values else 1


def _tonelli_shanks(n: int, p: int) -> int:
    # n a nonzero quadratic residue mod odd p
    n %= p
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _unit_sqrt(u: int, p: int, s: int) -> list[int]:
    """Roots of y^2 = u mod p^s for u coprime to p, s >= 1."""
    mod = p**s
    u %= mod
    if p == 2:
        if s == 1:
            return [1]
        if s == 2:
            return [1, 3] if u % 4 == 1 else []
        if u % 8 != 1:
            return []
        x = 1
        for j in range(3, s):
            if (x * x - u) % (1 << (j + 1)):
                x += 1 << (j - 1)
        half = 1 << (s - 1)
        return sorted({x % mod, -x % mod, (x + half) % mod, (half - x) % mod})
    if legendre_symbol(u, p) != 1:
        return []
    x = _tonelli_shanks(u, p)
    # Newton lifting, precision doubles each round
    prec = p
    while prec < mod:
        prec = min(prec * prec, mod)
        x = (x - (x * x - u) * pow(2 * x, -1, prec)) % prec
    return sorted({x, (-x) % mod})


def sqrt_mod_prime_power(n: int, p: int, e: int) -> list[int]:
    """All x in [0, p^e) with x^2 = n (mod p^e), sorted."""
    _check_prime(p)
    if e < 1:
        raise ValueError("exponent must be positive")
    m = p**e
    n %= m
    if n == 0:
        step = p ** ((e + 1) // 2)
        return list(range(0, m, step))
    v = _val(n, p)
    if v % 2:
        return []
    h = v // 2
    sub = e - v
    base = _unit_sqrt(n // p**v, p, sub)
    ph, psub = p**h, p**sub
    return sorted({(ph * (y + t * psub)) % m for y in base for t in range(ph)})


def hensel_lift(f: QuadPoly, x0: int, p: int, e: int) -> int:
    """Lift a simple root x0 of f mod p to the unique root mod p^e."""
    mod = p**e
    if f.derivative(x0) % p == 0:
        raise ValueError("root is not simple")
    x, prec = x0 % p, p
    while prec < mod:
        prec = min(prec * prec, mod)
        x = (x - f(x) * pow(f.derivative(x), -1, prec)) % prec
    return x % mod


def floor_log(k: int, p: int) -> int:
    """floor(log_p k) for k >= 1, in exact arithmetic."""
    t, q = 0, p
    while q <= k:
        q *= p
        t += 1
    return t


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorization of |n| as ((p, e), ...); n != 0."""
    if n == 0:
        raise ValueError("cannot factor zero")
    n = abs(n)
    out = []
    for d in (2, 3):
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            if n % q == 0:
                e = 0
                while n % q == 0:
                    n //= q
                    e += 1
                out.append((q, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def integer_roots(f: QuadPoly) -> list[int]:
    """Integer zeros of f, sorted."""
    D = f.D
    if D < 0:
        return []
    s = math.isqrt(D)
    if s * s != D:
        return []
    roots = set()
    for num in (-f.b + s, -f.b - s):
        if num % (2 * f.a) == 0:
            roots.add(num // (2 * f.a))
    return sorted(roots)


@dataclass(frozen=True)
class KfBound:
    """Set of window sizes k with D != a^2 i^2 for all 1 <= i <= k.

    ``bound`` is INF when every k qualifies, otherwise the largest such k
    (0 means none).
    """

    bound: ExtNat

    def __contains__(self, k: int) -> bool:
        return k >= 1 and ExtNat(k) <= self.bound


def square_witness(f: QuadPoly) -> int | None:
    """m >= 1 with D = a^2 m^2, if it exists."""
    D, a2 = f.D, f.a * f.a
    if D <= 0 or D % a2:
        return None
    m = math.isqrt(D // a2)
    return m if m * m * a2 == D else None


def kf_bound(f: QuadPoly) -> KfBound:
    m = square_witness(f)
    return KfBound(INF if m is None else ExtNat(m - 1))
