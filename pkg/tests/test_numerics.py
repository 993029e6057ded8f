import math
import random
from fractions import Fraction

import pytest

from x0p2.numerics import (
    ORDER_EXACT,
    EULER_GAMMA,
    DomainError,
    DoublePoleError,
    LaurentPiece,
    PoleError,
    digamma,
    extrapolate_to_zero,
    gamma_fn,
    laurent_mul,
    riemann_zeta,
    stieltjes_gamma1,
    zeta_2sm1_laurent,
    zeta_prime,
    zeta_prime_at_2,
)

# High-precision references. ZETA3 and ZETA_PRIME_2 were frozen from an
# Euler-Maclaurin run at oversized (N, K); GAMMA1 from the log-sum limit.
ZETA3 = 1.2020569031595942854
ZETA_PRIME_2 = -0.9375482543158437537
GAMMA1 = -0.0728158454836767249
ZETA_HALF = -1.4603545088095868
ZETA_2_3J = 0.7980219851462758 - 0.1137443080529385j


def test_rational_arithmetic_is_exact():
    rng = random.Random(20240601)
    for _ in range(200):
        a, b, c = (Fraction(rng.randint(-900, 900), rng.randint(1, 900)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        if a != 0:
            assert (b / a) * a == b
        assert a.denominator > 0


def test_gamma_examples():
    assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-12)
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert gamma_fn(2.5) == pytest.approx(3 * math.sqrt(math.pi) / 4, rel=1e-12)


def test_gamma_functional_equation_on_strip():
    rng = random.Random(42)
    for _ in range(50):
        s = complex(rng.uniform(0.4, 3.0), rng.uniform(-2.0, 2.0))
        lhs = gamma_fn(s + 1)
        rhs = s * gamma_fn(s)
        assert abs(lhs - rhs) <= 1e-11 * abs(lhs)


def test_gamma_pole():
    with pytest.raises(PoleError):
        gamma_fn(0.0)
    with pytest.raises(PoleError):
        gamma_fn(-3.0)


def test_zeta_closed_forms():
    assert riemann_zeta(2.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-11)
    assert riemann_zeta(4.0) == pytest.approx(math.pi ** 4 / 90, rel=1e-11)
    assert riemann_zeta(6.0) == pytest.approx(math.pi ** 6 / 945, rel=1e-11)
    assert riemann_zeta(8.0) == pytest.approx(math.pi ** 8 / 9450, rel=1e-11)
    assert riemann_zeta(3.0) == pytest.approx(ZETA3, rel=1e-12)


def test_zeta_pole_and_domain():
    with pytest.raises(PoleError):
        riemann_zeta(1.0)
    with pytest.raises(DomainError):
        riemann_zeta(-0.5)


def test_zeta_analytic_continuation_region():
    assert riemann_zeta(0.5) == pytest.approx(ZETA_HALF, rel=1e-12)
    assert riemann_zeta(2 + 3j) == pytest.approx(ZETA_2_3J, rel=1e-12)


def test_zeta_prime_against_finite_differences():
    # independent oracle: central differences of the zeta evaluator itself
    hs = [1e-3, 5e-4, 2.5e-4]
    fd = [(riemann_zeta(2 + h) - riemann_zeta(2 - h)) / (2 * h) for h in hs]
    oracle = extrapolate_to_zero([h * h for h in hs], fd)
    assert zeta_prime_at_2() == pytest.approx(oracle, abs=1e-10)
    assert zeta_prime_at_2() == pytest.approx(ZETA_PRIME_2, abs=1e-10)
    assert zeta_prime(3.0) < 0


def test_digamma_values():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-12)
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2 * math.log(2), abs=1e-12)
    with pytest.raises(DomainError):
        digamma(-1.0)


def test_stieltjes_gamma1():
    assert stieltjes_gamma1() == pytest.approx(GAMMA1, abs=1e-13)


def test_zeta_2sm1_laurent_coefficients():
    piece = zeta_2sm1_laurent()
    assert piece.pole == 0.5
    assert piece.constant == pytest.approx(0.5772156649, abs=1e-10)
    # linear coefficient against a direct limit of the defect
    hs = [1e-2, 5e-3, 2.5e-3]
    defect = [(riemann_zeta(1 + 2 * h) - 0.5 / h - EULER_GAMMA) / h for h in hs]
    assert piece.linear == pytest.approx(extrapolate_to_zero(hs, defect), abs=1e-6)
    one = LaurentPiece(0.0, 1.0, 0.0, order=ORDER_EXACT)
    assert laurent_mul(piece, one) == piece


def test_laurent_mul_examples():
    pole = LaurentPiece(1.0, 0.0, 0.0)
    lin = LaurentPiece(0.0, 0.0, 1.0)
    prod = laurent_mul(pole, lin)
    assert (prod.pole, prod.constant) == (0.0, 1.0)

    zpiece = LaurentPiece(0.5, EULER_GAMMA, 0.0, order=0)
    gpiece = LaurentPiece(0.0, 6 / math.pi, -0.4705, order=1)
    assert laurent_mul(zpiece, gpiece).pole == pytest.approx(3 / math.pi, rel=1e-15)

    c, d = LaurentPiece(0.0, 2.5, 0.0), LaurentPiece(0.0, -1.25, 0.0)
    out = laurent_mul(c, d)
    assert (out.pole, out.constant, out.linear) == (0.0, -3.125, 0.0)
    assert out.order == 1


def test_laurent_mul_order_tracking():
    withpole = LaurentPiece(2.0, 1.0, 3.0, order=1)
    nopole = LaurentPiece(0.0, 4.0, 5.0, order=1)
    # the product's linear slot would need the quadratic coefficient of nopole
    assert laurent_mul(withpole, nopole).order == 0
    assert laurent_mul(nopole, nopole).order == 1
    with pytest.raises(DoublePoleError):
        laurent_mul(withpole, withpole)


def test_laurent_mul_matches_numeric_products():
    rng = random.Random(777)
    hs = [1e-3, 1e-4]
    for _ in range(40):
        x = LaurentPiece(rng.choice([0.0, rng.uniform(-2, 2)]),
                         rng.uniform(-2, 2), rng.uniform(-2, 2))
        y = LaurentPiece(0.0, rng.uniform(-2, 2), rng.uniform(-2, 2))
        z = laurent_mul(x, y)
        numeric = [x.eval_at(h) * y.eval_at(h) - z.pole / h for h in hs]
        const = extrapolate_to_zero(hs, numeric)
        assert const == pytest.approx(z.constant, abs=1e-6)


def test_extrapolate_to_zero_polynomial():
    f = lambda h: 3.5 - 2.0 * h + 7.0 * h * h
    hs = [0.1, 0.05, 0.025]
    assert extrapolate_to_zero(hs, [f(h) for h in hs]) == pytest.approx(3.5, abs=1e-12)
