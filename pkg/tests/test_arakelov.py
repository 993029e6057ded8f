import math
from fractions import Fraction

import pytest

from x0p2.arakelov import (
    check_dm_orthogonal,
    e_p_flag,
    green_estimate,
    omega_sq,
    s_p,
    scan,
)
from x0p2.eisenstein import CuspPair, constant_a, scattering_expansion
from x0p2.fiber import edixhoven_fiber, minimal_model
from x0p2.modular import genus, primes_in, volume
from x0p2.numerics import DomainError, EULER_GAMMA


def _exact_ratio(p: int) -> float:
    # ratio in main_term mode has log p cancelling exactly
    g = genus(p)
    return float(Fraction(8 * (g - 1), p * (p + 1)) + Fraction(4 * (g * g - 1), g * (p * p - 1)))


def test_s_p():
    assert s_p(11) == 5
    assert s_p(13) == 7
    for p in primes_in(7, 100):
        mm, _ = minimal_model(edixhoven_fiber(p))
        assert mm.pairing("C20", "C02") == s_p(p)
        assert s_p(p).denominator == 1


def test_orthogonality_exact():
    for p in primes_in(11, 200):
        w = check_dm_orthogonal(p)
        assert w.ok and all(v == 0 for v in w.pairings.values()), p
        assert w.canonical_degree == genus(p) - 1


def test_orthogonality_negative_control():
    # perturbing the vertical coefficient by 1 must break the pairing
    p = 13
    g, s = genus(p), s_p(p)
    mm, _ = minimal_model(edixhoven_fiber(p))
    broken = Fraction(g - 1) - (2 * g - 2) - (Fraction(g - 1) / s + 1) * mm.pairing("C20", "C20")
    assert broken != 0


def test_green_estimate_values():
    gm = green_estimate(11, "main_term")
    assert gm.value == pytest.approx(6 * math.log(121) / 132, rel=1e-15)
    assert gm.remainder_class == "o(log(p^2)/g)"
    gc = green_estimate(11, "constants")
    expect = -2 * math.pi * scattering_expansion(CuspPair.INF_ZERO, 11).piece.constant
    assert gc.value == pytest.approx(expect, rel=1e-15)
    with pytest.raises(DomainError):
        green_estimate(11, "bogus")
    with pytest.raises(DomainError):
        green_estimate(7)  # genus 1


def test_green_modes_converge():
    rel = []
    for p in primes_in(11, 199):
        main = green_estimate(p, "main_term").value
        cons = green_estimate(p, "constants").value
        rel.append(abs(cons - main) / main)
    # dropped terms are O(1) against log(p^2), so the decay is slow but monotone
    assert all(a > b for a, b in zip(rel, rel[1:]))
    assert rel[-1] < rel[0] / 3 and rel[-1] < 0.10


def test_green_difference_closed_form():
    for p in (11, 13, 101):
        v = volume(p)
        diff = green_estimate(p, "constants").value - green_estimate(p, "main_term").value
        closed = -(2 * math.pi / v) * (2 * EULER_GAMMA + constant_a() * math.pi / 6
                                       + math.log(p * p) * p / (p * p - 1))
        assert diff == pytest.approx(closed, rel=1e-12)


def test_omega_examples():
    r11 = omega_sq(11)
    assert r11.algebraic == pytest.approx(7 * math.log(11), rel=1e-14)
    assert Fraction(r11.g ** 2 - 1, 1) / r11.s_p == 7
    r13 = omega_sq(13)
    assert Fraction(r13.g ** 2 - 1, 1) / r13.s_p == 9 == 2 * r13.g - 7
    assert r13.total == pytest.approx(r13.algebraic + r13.analytic, rel=1e-15)
    assert r13.target == pytest.approx(3 * 8 * math.log(169), rel=1e-15)
    assert omega_sq(1009).ratio == pytest.approx(1.0, abs=0.10)
    assert e_p_flag(11) == "0" and e_p_flag(13) == "O(log p)"
    with pytest.raises(DomainError):
        omega_sq(7)


def test_scan_rows_match_pointwise_and_formula():
    result = scan(11, 199)
    rows = {r.p: r for r in result.rows}
    single = omega_sq(11)
    assert rows[11] == single
    for r in result.rows:
        assert r.ratio == pytest.approx(_exact_ratio(r.p), rel=1e-12)
        assert 0.45 < r.ratio < 1.5
        if r.p >= 17:
            assert 0.5 < r.ratio < 1.5
    assert result.largest_residual == max(abs(r.ratio - 1) for r in result.rows)


def test_ratio_residual_decreases_across_decades():
    deviations = []
    for p in (11, 101, 1009):
        deviations.append(abs(omega_sq(p).ratio - 1))
    assert deviations[0] > deviations[1] > deviations[2]


def test_scan_empty_range():
    with pytest.raises(DomainError):
        scan(32, 36)
