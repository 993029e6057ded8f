"""Scattering data for the level-p^2 Eisenstein series at the cusp pair (oo, oo) / (oo, 0).

The zeroth Kloosterman sums vanish away from arithmetically forced moduli,
which collapses the scattering Dirichlet series to a closed form in zeta
quotients; both the truncated series (with a rigorous tail bound) and the
closed form are provided, together with their Laurent data at s=1 and the
coprime-lattice identity that the weight-zero series satisfies.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .modular import volume
from .numerics import (
    EULER_GAMMA,
    DomainError,
    LaurentPiece,
    PoleError,
    TruncatedSum,
    TruncationError,
    digamma,
    gamma_fn,
    riemann_zeta,
    zeta_prime_at_2,
)


class CuspPair(enum.Enum):
    INF_INF = "inf_inf"
    INF_ZERO = "inf_zero"


def totient_sieve(n: int) -> np.ndarray:
    """Euler phi for 0..n."""
    phi = np.arange(n + 1, dtype=np.int64)
    for q in range(2, n + 1):
        if phi[q] == q:  # q prime
            phi[q::q] -= phi[q::q] // q
    return phi


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler phi needs n >= 1, got {n}")
    result, m, q = 1, n, 2
    while q * q <= m:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            result *= (q - 1) * q ** (e - 1)
        q += 1
    if m > 1:
        result *= m - 1
    return result


def kloosterman_zero(pair: CuspPair, c: int, p: int) -> int:
    """Zeroth Kloosterman sum S(0,0;c) for the two supported cusp pairs at level p^2."""
    if c < 1:
        raise DomainError(f"modulus must be positive, got {c}")
    if pair is CuspPair.INF_INF:
        return euler_phi(c) if c % (p * p) == 0 else 0
    n, r = divmod(c, p)
    if r != 0 or n % p == 0:
        return 0
    return euler_phi(n)


def _gamma_prefactor(s: complex) -> complex:
    return math.sqrt(math.pi) * gamma_fn(s - 0.5) / gamma_fn(s)


def phi_series(pair: CuspPair, s: float, p: int, c_max: int,
               tol: float | None = None) -> TruncatedSum:
    """Truncated scattering Dirichlet sum with its Gamma prefactor and a tail bound.

    The tail uses S(0,0;c) <= phi(c) < c, so the discarded part is at most
    prefactor * sum_{c > c_max} c^(1-2s).
    """
    if s <= 1:
        raise DomainError(f"series evaluation needs s > 1, got {s}")
    phi = totient_sieve(c_max) if c_max >= 1 else None
    acc = 0.0
    if pair is CuspPair.INF_INF:
        for c in range(p * p, c_max + 1, p * p):
            acc += float(phi[c]) * c ** (-2 * s)
    else:
        for c in range(p, c_max + 1, p):
            n = c // p
            if n % p:
                acc += float(phi[n]) * c ** (-2 * s)
    pref = _gamma_prefactor(s).real
    tail = pref * (c_max ** (2 - 2 * s) / (2 * s - 2) + c_max ** (1 - 2 * s))
    if tol is not None and tail > tol:
        raise TruncationError(f"c_max {c_max} leaves tail bound {tail:.3e} > tol {tol:.3e}")
    return TruncatedSum(pref * acc, tail)


def phi_closed(pair: CuspPair, s: complex | float, p: int) -> complex | float:
    """Closed form of the scattering function; pole at s = 1."""
    if s == 1:
        raise PoleError("scattering function has its pole at s=1")
    z1 = riemann_zeta(2 * s - 1)
    z2 = riemann_zeta(2 * s)
    ps = p ** (2 * s) if not isinstance(s, complex) else complex(p) ** (2 * s)
    base = (p * (p - 1)) / (ps * (ps - 1)) * _gamma_prefactor(s) * z1 / z2
    if pair is CuspPair.INF_INF:
        val = base
    else:
        val = (ps - p) / (p * (p - 1)) * base
    if isinstance(s, complex) and s.imag != 0:
        return val
    return complex(val).real


@lru_cache(maxsize=1)
def constant_a() -> float:
    """Derivative at s=1 of sqrt(pi)*Gamma(s-1/2)/(Gamma(s)*zeta(2s)).

    Log-derivative route: the factor equals 6/pi at s=1 and
    a = (6/pi) * (psi(1/2) - psi(1) - 2 zeta'(2)/zeta(2)).
    """
    zeta2 = math.pi ** 2 / 6.0
    return (6.0 / math.pi) * (digamma(0.5) - digamma(1.0) - 2.0 * zeta_prime_at_2() / zeta2)


@dataclass(frozen=True)
class ScatteringExpansion:
    pair: CuspPair
    p: int
    piece: LaurentPiece


def scattering_expansion(pair: CuspPair, p: int) -> ScatteringExpansion:
    """Laurent data of the scattering function at s=1 (pole and constant term)."""
    if p < 5:
        raise DomainError(f"scattering expansion needs p >= 5, got {p}")
    v = volume(p)
    logp2 = math.log(p * p)
    common = 2 * EULER_GAMMA + constant_a() * math.pi / 6.0
    if pair is CuspPair.INF_INF:
        const = (common - (2 * p * p - 1) * logp2 / (p * p - 1)) / v
    else:
        const = (common - (p * p - p - 1) * logp2 / (p * p - 1)) / v
    return ScatteringExpansion(pair, p, LaurentPiece(1.0 / v, const, 0.0, order=0))


# ---------------------------------------------------------------------------
# Lattice sums and the coprime-lattice identity
# ---------------------------------------------------------------------------

def _strip_tail_bound(alpha: float, beta: float, t: float, s: float,
                      box_m: int, box_n: int) -> float:
    """Rigorous bound on the sum of ((alpha*m+t*n)^2+(beta*m)^2)^-s outside the box.

    The discarded region sits inside {|m| > box_m} union {|n| > box_n}; each
    strip is bounded by its extreme term plus the line integral across it.
    """
    cs = _gamma_prefactor(s).real  # integral of (1+w^2)^-s
    def ztail(k: float, b: int) -> float:
        if b == 0:
            return 1.0 + 1.0 / (k - 1)
        return b ** (1 - k) / (k - 1) + b ** (-k)
    strip_m = 2 * (beta ** (-2 * s) * ztail(2 * s, box_m)
                   + cs / t * beta ** (1 - 2 * s) * ztail(2 * s - 1, box_m))
    hyp = math.hypot(alpha, beta)
    g0 = t * beta / hyp
    strip_n = 2 * (g0 ** (-2 * s) * ztail(2 * s, box_n)
                   + cs / hyp * g0 ** (1 - 2 * s) * ztail(2 * s - 1, box_n))
    return strip_m + strip_n


def lattice_sum(z: complex, s: float, p: int, t: int, box: int,
                tol: float | None = None) -> TruncatedSum:
    """sum over 0 < max(|m|,|n|) <= box of y^s / |p^2 m z + t n|^(2s), with tail bound."""
    y = z.imag
    if y <= 0:
        raise DomainError("need Im(z) > 0")
    if s <= 1:
        raise DomainError(f"lattice sum needs s > 1, got {s}")
    if t not in (1, p):
        raise DomainError(f"t must be 1 or p, got {t}")
    alpha, beta = p * p * z.real, p * p * y
    ns = np.arange(-box, box + 1, dtype=np.float64)
    rows = []
    for m in range(-box, box + 1):
        q = (alpha * m + t * ns) ** 2 + (beta * m) ** 2
        if m == 0:
            q = q[ns != 0]
        rows.append(float(np.sum(q ** (-s))))
    ys = y ** s
    value = ys * math.fsum(rows)
    tail = ys * _strip_tail_bound(alpha, beta, float(t), s, box, box)
    if tol is not None and tail > tol:
        raise TruncationError(f"box {box} leaves tail bound {tail:.3e} > tol {tol:.3e}")
    return TruncatedSum(value, tail)


def eisenstein_coprime_sum(z: complex, s: float, p: int, box: int) -> TruncatedSum:
    """(1/2) sum over coprime (m, n) with p^2 | m of y^s / |m z + n|^(2s), truncated."""
    y = z.imag
    if y <= 0:
        raise DomainError("need Im(z) > 0")
    N = p * p
    ns = np.arange(-box, box + 1)
    acc = []
    for m in range(-(box // N) * N, box + 1, N):
        qn = (m * z.real + ns) ** 2 + (m * y) ** 2
        mask = np.gcd(abs(m), np.abs(ns)) == 1
        acc.append(float(np.sum(qn[mask] ** (-s))))
    value = 0.5 * y ** s * math.fsum(acc)
    # the inner index of the strips is m' = m / p^2, truncated at box // N;
    # dropping the coprimality constraint only enlarges the tail
    tail = 0.5 * y ** s * _strip_tail_bound(N * z.real, N * y, 1.0, s, box // N, box)
    return TruncatedSum(value, tail)


def verify_es1(z: complex, s: float, p: int, box: int) -> float:
    """Residual |LHS - RHS| of the coprime-lattice identity for the weight-zero series.

    LHS sums y^s/|mz+n|^(2s) over coprime pairs with p^2 | m directly; RHS
    combines the two full lattice sums with the zeta and p-Euler factors.
    """
    lhs = eisenstein_coprime_sum(z, s, p, box)
    s1 = lattice_sum(z, s, p, 1, box)
    sp = lattice_sum(z, s, p, p, box)
    zeta2s = riemann_zeta(2 * s)
    rhs = 0.5 / (zeta2s * (1 - p ** (-2.0 * s))) * (s1.value - sp.value)
    return abs(lhs.value - rhs)


def L_series(M: int, s: complex | float, p: int) -> complex | float:
    """Parabolic Dirichlet series: L_1 = zeta(2s-1)/zeta(2s), L_p its p-part."""
    base = riemann_zeta(2 * s - 1) / riemann_zeta(2 * s)
    if M == 1:
        return base
    if M == p:
        ps = p ** (2 * s) if not isinstance(s, complex) else complex(p) ** (2 * s)
        return (p - 1) / (ps - 1) * base
    raise DomainError(f"M must be 1 or p={p}, got {M}")
