"""Shared numeric kernel: exact rationals, special functions, truncated Laurent arithmetic.

Exact quantities (intersection numbers, multiplicities, genus constants) live in
``fractions.Fraction``.  Floating work is binary64 throughout; every series
evaluation carries an explicit remainder bound so callers can budget errors.
The Riemann zeta function and its derivative are evaluated by Euler-Maclaurin
summation with a rigorous tail estimate rather than a library call, since the
acceptance tolerances downstream need provable error control.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import mpmath

# Exact rational scalar used across the package.
Rat = Fraction

EULER_GAMMA = 0.5772156649015328606


class PoleError(ArithmeticError):
    """Evaluation requested at a pole of the function."""


class DomainError(ValueError):
    """Argument outside the supported domain."""


class TruncationError(RuntimeError):
    """Truncated sum cannot meet the requested tolerance."""


class TruncatedSum(NamedTuple):
    """A partial sum together with a rigorous bound on the discarded tail."""

    value: float
    tail_bound: float


def require_finite(z: complex) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ArithmeticError(f"non-finite value escaped a computation: {z!r}")
    return z


# ---------------------------------------------------------------------------
# Gamma and digamma
# ---------------------------------------------------------------------------

def gamma_fn(s: complex) -> complex:
    """Gamma function for real or complex s; errors at non-positive integers."""
    if s == int(s.real) and s.imag == 0 and s.real <= 0:
        raise PoleError(f"gamma pole at s={s}")
    if isinstance(s, complex) and s.imag != 0:
        return require_finite(complex(mpmath.gamma(mpmath.mpc(s.real, s.imag))))
    return float(mpmath.gamma(s.real if isinstance(s, complex) else s))


def digamma(x: float) -> float:
    """Logarithmic derivative of Gamma, for x > 0."""
    if x <= 0:
        raise DomainError(f"digamma needs x > 0, got {x}")
    return float(mpmath.digamma(x))


# ---------------------------------------------------------------------------
# Riemann zeta by Euler-Maclaurin
# ---------------------------------------------------------------------------

# B_{2k} for k = 1..15, exact.
_BERNOULLI_2K = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
    Fraction(-236364091, 2730), Fraction(8553103, 6),
    Fraction(-23749461029, 870), Fraction(8615841276005, 14322),
]
_B2K_OVER_FACT = [float(b) / math.factorial(2 * k) for k, b in enumerate(_BERNOULLI_2K, start=1)]


def _zeta_em_raw(s: complex, n_terms: int, k_order: int) -> tuple[complex, float]:
    """Euler-Maclaurin partial evaluation of zeta(s) with a rigorous remainder bound.

    Valid for Re(s) > 0, s != 1.  Returns (value, bound), where bound dominates
    the absolute truncation error of the correction series.
    """
    n = n_terms
    acc = complex(sum(j ** (-s) for j in range(1, n)))
    acc += n ** (1 - s) / (s - 1)
    acc += 0.5 * n ** (-s)
    # correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * n^{-s-2k+1}
    poch = complex(s)  # (s)(s+1)...(s+2k-2), one factor at k=1
    for k in range(1, k_order + 1):
        acc += _B2K_OVER_FACT[k - 1] * poch * n ** (-s - 2 * k + 1)
        poch *= (s + 2 * k - 1) * (s + 2 * k)
    # remainder bound: |R| <= |(s+2K+1)/(sigma+2K+1)| * |first omitted term|
    sigma = s.real
    k = k_order + 1
    term = abs(_B2K_OVER_FACT[k - 1]) * abs(poch) * n ** (-sigma - 2 * k + 1)
    bound = abs(s + 2 * k - 1) / (sigma + 2 * k - 1) * term
    return acc, bound


def riemann_zeta(s: complex | float) -> complex | float:
    """zeta(s) for Re(s) > 0, s != 1, by Euler-Maclaurin with checked tail.

    Relative accuracy is ~1e-13 for Re(s) >= 1.1 and remains usable on
    0 < Re(s) < 1.1 (analytic continuation through the Euler-Maclaurin
    formula).  Raises PoleError at s = 1.
    """
    sc = complex(s)
    if sc == 1:
        raise PoleError("zeta pole at s=1")
    if sc.real <= 0:
        raise DomainError(f"zeta evaluation restricted to Re(s) > 0, got {s}")
    val, bound = _zeta_em_raw(sc, 40, 12)
    if bound > 1e-13 * max(abs(val), 1.0):
        val, bound = _zeta_em_raw(sc, 120, 14)
        if bound > 1e-12 * max(abs(val), 1.0):
            raise TruncationError(f"zeta({s}): Euler-Maclaurin bound {bound} too large")
    require_finite(val)
    if isinstance(s, complex) and s.imag != 0:
        return val
    return val.real


def zeta_prime(s: float) -> float:
    """zeta'(s) for real s > 0, s != 1: term-wise differentiated Euler-Maclaurin."""
    if s == 1:
        raise PoleError("zeta' pole at s=1")
    if s <= 0:
        raise DomainError(f"zeta' restricted to s > 0, got {s}")
    n, kmax = 60, 12
    ln = math.log(n)
    acc = 0.0
    for j in range(2, n):
        acc -= math.log(j) * j ** (-s)
    acc += -ln * n ** (1 - s) / (s - 1) - n ** (1 - s) / (s - 1) ** 2
    acc += -0.5 * ln * n ** (-s)
    poch, dpoch = s, 1.0  # pochhammer product and its s-derivative
    for k in range(1, kmax + 1):
        npow = n ** (-s - 2 * k + 1)
        acc += _B2K_OVER_FACT[k - 1] * (dpoch - poch * ln) * npow
        for f in (s + 2 * k - 1, s + 2 * k):
            dpoch = dpoch * f + poch
            poch *= f
    return acc


@lru_cache(maxsize=1)
def zeta_prime_at_2() -> float:
    return zeta_prime(2.0)


@lru_cache(maxsize=1)
def stieltjes_gamma1() -> float:
    """First Stieltjes constant, from Euler-Maclaurin applied to log(x)/x.

    gamma_1 = lim_N [sum_{k<=N} log(k)/k - log(N)^2/2]; the finite-N defect is
    corrected with the asymptotic series built from
    (log x / x)^{(n)} = (-1)^n n! (log x - H_n) / x^{n+1}.
    """
    n = 120
    ln = math.log(n)
    acc = sum(math.log(k) / k for k in range(1, n + 1)) - 0.5 * ln * ln
    acc -= 0.5 * ln / n  # remove half of the k = N summand
    harmonic = 0.0
    for j in range(1, 7):
        harmonic += 1.0 / (2 * j - 1)
        deriv = -math.factorial(2 * j - 1) * (ln - harmonic) / n ** (2 * j)
        acc -= _B2K_OVER_FACT[j - 1] * deriv
        harmonic += 1.0 / (2 * j)
    return acc


# ---------------------------------------------------------------------------
# Truncated Laurent pieces at s = 1
# ---------------------------------------------------------------------------

class DoublePoleError(ArithmeticError):
    """Product of two Laurent pieces that both carry a pole is not representable."""


# order sentinel: the stored coefficients ARE the function (everything above
# the linear term vanishes identically), as for constants and monomials
ORDER_EXACT = 2


@dataclass(frozen=True)
class LaurentPiece:
    """Laurent data at s=1: pole/(s-1) + constant + linear*(s-1), exact through `order`.

    `order` is the largest power of (s-1) whose coefficient is certified
    (ORDER_EXACT marks a piece with no hidden higher terms at all);
    multiplication tracks it honestly, so a product may be certified only
    through its constant term even when three coefficients are stored.
    """

    pole: float
    constant: float
    linear: float = 0.0
    order: int = 1

    def min_degree(self) -> int:
        if self.pole != 0.0:
            return -1
        if self.constant != 0.0:
            return 0
        return 1

    def eval_at(self, h: float) -> float:
        """Evaluate the stored truncation at s = 1 + h."""
        return self.pole / h + self.constant + self.linear * h

    def __mul__(self, other: "LaurentPiece") -> "LaurentPiece":
        return laurent_mul(self, other)


def laurent_mul(x: LaurentPiece, y: LaurentPiece) -> LaurentPiece:
    """Cauchy product of two truncated Laurent pieces, order recorded honestly."""
    if x.pole != 0.0 and y.pole != 0.0:
        raise DoublePoleError("both factors carry a pole; a double pole is not representable")
    pole = x.pole * y.constant + x.constant * y.pole
    constant = x.pole * y.linear + x.constant * y.constant + x.linear * y.pole
    linear = x.constant * y.linear + x.linear * y.constant
    if x.order >= ORDER_EXACT and y.order >= ORDER_EXACT and x.linear * y.linear == 0.0:
        return LaurentPiece(pole, constant, linear, ORDER_EXACT)
    eff = lambda p: 3 if p.order >= ORDER_EXACT else p.order
    order = min(eff(x) + y.min_degree(), eff(y) + x.min_degree(), 1)
    if order < 1:
        linear = 0.0
    if order < 0:
        constant = 0.0
    return LaurentPiece(pole, constant, linear, order)


def zeta_2sm1_laurent() -> LaurentPiece:
    """Laurent data of zeta(2s-1) at s=1: 1/(2(s-1)) + gamma_EM - 2*gamma_1*(s-1)."""
    return LaurentPiece(0.5, EULER_GAMMA, -2.0 * stieltjes_gamma1(), order=1)


# ---------------------------------------------------------------------------
# Extrapolation helper
# ---------------------------------------------------------------------------

def extrapolate_to_zero(hs: Sequence[float], fs: Sequence[float]) -> float:
    """Neville polynomial extrapolation of f(h) to h = 0."""
    if len(hs) != len(fs) or len(hs) < 2:
        raise ValueError("need matching sequences of length >= 2")
    x = list(map(float, hs))
    t = list(map(float, fs))
    m = len(t)
    for j in range(1, m):
        for i in range(m - j):
            t[i] = t[i + 1] + (t[i + 1] - t[i]) * x[i + j] / (x[i] - x[i + j])
    return t[0]
