"""Level bookkeeping for the curves attached to Gamma_0(p^2).

Genus, cusp set, hyperbolic volume and index depend only on the prime p and
its residue class mod 12; everything here is exact except the volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .numerics import DomainError

# Residue class of p mod 12 -> the constant c in genus = 1 + ((p+1)(p-6) - 12c)/12.
# Derived once by equating that formula with the per-class polynomial genus
# formulas (12k^2-3k-1, 12k^2+5k, 12k^2+9k+1, 12k^2+17k+6); regression-tested.
C_BY_RESIDUE = {
    1: Fraction(7, 6),
    5: Fraction(1, 2),
    7: Fraction(2, 3),
    11: Fraction(0),
}

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 2^64."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
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


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes in the closed interval [lo, hi] (simple sieve)."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for q in range(2, math.isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q:: q] = b"\x00" * len(range(q * q, hi + 1, q))
    return [i for i in range(max(lo, 2), hi + 1) if sieve[i]]


def _check_prime(p: int, minimum: int = 2) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p < minimum:
        raise DomainError(f"prime {p} below supported minimum {minimum}")


def c_of(p: int) -> Fraction:
    """The genus-formula constant c attached to p mod 12."""
    _check_prime(p, 5)
    return C_BY_RESIDUE[p % 12]


def genus(p: int) -> int:
    """Genus of the level-p^2 curve, p prime >= 5."""
    _check_prime(p, 5)
    g = 1 + Fraction((p + 1) * (p - 6) - 12 * c_of(p), 12)
    k, r = divmod(p, 12)
    g_case = {1: 12 * k * k - 3 * k - 1, 5: 12 * k * k + 5 * k,
              7: 12 * k * k + 9 * k + 1, 11: 12 * k * k + 17 * k + 6}[r]
    if g.denominator != 1 or g != g_case:
        raise ArithmeticError(f"genus formulas disagree at p={p}: {g} vs {g_case}")
    return int(g)


def cusps(p: int) -> list[str]:
    """Cusp labels: 0, oo and 1/(l*p) for l = 1..p-1; cardinality p+1."""
    _check_prime(p)
    return ["0", "oo"] + [f"1/{l * p}" for l in range(1, p)]


def volume(p: int) -> float:
    """Hyperbolic area of the level-p^2 curve: pi*p*(p+1)/3."""
    _check_prime(p)
    return math.pi * p * (p + 1) / 3.0


def index(p: int) -> int:
    """Index of the level-p^2 subgroup in the full modular group: p(p+1)."""
    _check_prime(p)
    return p * (p + 1)


@dataclass(frozen=True)
class CurveLevel:
    """All level data for one prime."""

    p: int
    N: int
    residue: int
    c: Fraction
    genus: int
    volume: float
    index: int


def curve_level(p: int) -> CurveLevel:
    _check_prime(p, 7)
    return CurveLevel(p=p, N=p * p, residue=p % 12, c=c_of(p),
                      genus=genus(p), volume=volume(p), index=index(p))
