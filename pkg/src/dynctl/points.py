"""Points of P^1(Q) as normalized coprime integer pairs, with heights and S-integrality."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import BothZeroError, ParseError

LN2 = math.log(2)


def log_of_int(n: int) -> float:
    """Natural log of a positive integer of arbitrary size.

    math.log overflows past ~1e308; split off the top 64 bits instead.
    """
    if n <= 0:
        raise ValueError("log_of_int needs a positive integer")
    bits = n.bit_length()
    if bits <= 900:
        return math.log(n)
    shift = bits - 64
    return math.log(n >> shift) + shift * LN2


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, order=True)
class ProjPointQ:
    """A point [a : b] of P^1(Q) in normalized coordinates.

    Invariants: gcd(|a|, |b|) = 1, and either b > 0 or (b = 0 and a = 1).
    Construct through normalize(); the raw constructor trusts its inputs.
    """

    a: int
    b: int

    def is_infinity(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b == 0:
            raise ZeroDivisionError("the point at infinity is not a rational number")
        return Fraction(self.a, self.b)

    def __str__(self) -> str:
        return format_point(self)


INFINITY = ProjPointQ(1, 0)
ZERO = ProjPointQ(0, 1)


def normalize(a: int, b: int) -> ProjPointQ:
    """Unique normalized representative of [a : b]; raises BothZeroError on (0, 0)."""
    if a == 0 and b == 0:
        raise BothZeroError("[0 : 0] is not a point of the projective line")
    if b == 0:
        return INFINITY
    g = math.gcd(abs(a), abs(b))
    a //= g
    b //= g
    if b < 0:
        a, b = -a, -b
    return ProjPointQ(a, b)


def from_fraction(q: Fraction | int) -> ProjPointQ:
    q = Fraction(q)
    return ProjPointQ(q.numerator, q.denominator)


@dataclass(frozen=True)
class HeightValue:
    """Multiplicative Weil height H >= 1 and its natural log h = ln H."""

    mult: int
    log: float


def weil_height(p: ProjPointQ) -> HeightValue:
    """H([a : b]) = max(|a|, |b|) on normalized coordinates; h = ln H."""
    m = max(abs(p.a), abs(p.b))
    return HeightValue(m, log_of_int(m))


@dataclass(frozen=True)
class SIntSpec:
    """A finite set of rational primes S; O_S is Z localized at S (Z itself when empty)."""

    primes: frozenset[int]

    def __init__(self, primes=()):
        ps = frozenset(int(p) for p in primes)
        for p in ps:
            if p < 2 or not is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.primes))

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __le__(self, other: "SIntSpec") -> bool:
        return self.primes <= other.primes

    def __str__(self) -> str:
        return ",".join(str(p) for p in self)


EMPTY_S = SIntSpec()


def strip_s_part(n: int, s: SIntSpec) -> int:
    """Divide out of n every power of every prime in S; n must be nonzero."""
    n = abs(n)
    for p in s:
        while n % p == 0:
            n //= p
    return n


def is_s_integral(p: ProjPointQ, s: SIntSpec) -> bool:
    """True iff p is a rational number whose denominator's prime factors all lie in S.

    The point at infinity is never S-integral: it is not an element of Q.
    """
    if p.b == 0:
        return False
    return strip_s_part(p.b, s) == 1


def enumerate_points(bound: int) -> list[ProjPointQ]:
    """All points of P^1(Q) with H <= bound, ordered by (H, a, b).

    Brute force over coprime pairs: b in 1..bound, |a| <= bound, gcd filter,
    plus the point at infinity (H = 1).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    gcd = math.gcd
    out = [INFINITY]
    for b in range(1, bound + 1):
        for a in range(-bound, bound + 1):
            if gcd(abs(a), b) == 1:
                out.append(ProjPointQ(a, b))
    out.sort(key=lambda p: (max(abs(p.a), abs(p.b)), p.a, p.b))
    return out


def count_points(bound: int) -> int:
    """|{P : H(P) <= bound}| without materializing the points."""
    gcd = math.gcd
    total = 1
    for b in range(1, bound + 1):
        total += sum(1 for a in range(-bound, bound + 1) if gcd(abs(a), b) == 1)
    return total


def format_point(p: ProjPointQ) -> str:
    """Serialize as "a/b", a plain integer, or "inf"."""
    if p.b == 0:
        return "inf"
    if p.b == 1:
        return str(p.a)
    return f"{p.a}/{p.b}"


def parse_point(text: str) -> ProjPointQ:
    """Parse the format_point grammar back into a normalized point."""
    text = text.strip()
    if text in ("inf", "Inf", "INF", "oo"):
        return INFINITY
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return normalize(int(num), int(den))
        except ValueError as exc:
            raise ParseError(f"bad point literal {text!r}", 0) from exc
    try:
        return ProjPointQ(int(text), 1)
    except ValueError as exc:
        raise ParseError(f"bad point literal {text!r}", 0) from exc
