from fractions import Fraction as F

import pytest

from x0p2.fiber import (
    blow_down,
    canonical_degrees,
    contractible,
    derive_multiplicities,
    edixhoven_fiber,
    minimal_model,
    validate_fiber,
)
from x0p2.modular import genus, primes_in
from x0p2.numerics import DomainError

PULLBACK_BY_RESIDUE = {
    1: lambda p: {"C11": F(p - 1, 2), "E": F(p - 1, 4), "F": F(p - 1, 6)},
    5: lambda p: {"C11": F(p - 1, 2), "E": F(p - 1, 4), "F": F(p + 1, 6)},
    7: lambda p: {"C11": F(p - 1, 2), "E": F(p + 1, 4), "F": F(p - 1, 6)},
    11: lambda p: {"C11": F(p - 1, 2), "E": F(p + 1, 4), "F": F(p + 1, 6)},
}


def test_intersection_tables():
    m13 = edixhoven_fiber(13)
    assert m13.pairing("C20", "C20") == -13
    assert m13.pairing("C20", "C02") == 1
    assert m13.pairing("C11", "C11") == -1
    assert m13.pairing("E", "E") == -2
    assert m13.pairing("F", "F") == -3
    assert m13.pairing("C20", "E") == 0 and m13.pairing("C20", "F") == 0

    m17 = edixhoven_fiber(17)
    assert m17.pairing("C20", "C20") == -F(17 * 17 - 17 + 4, 12) == -23
    assert m17.pairing("C20", "F") == 1 and m17.pairing("C20", "E") == 0

    m19 = edixhoven_fiber(19)
    assert m19.pairing("C20", "C20") == -F(19 * 19 - 19 + 6, 12)
    assert m19.pairing("C20", "E") == 1 and m19.pairing("C20", "F") == 0

    m23 = edixhoven_fiber(23)
    assert m23.pairing("C20", "E") == 1 and m23.pairing("C20", "F") == 1
    assert m23.pairing("C20", "C02") == 1


def test_multiplicities():
    assert [c.multiplicity for c in edixhoven_fiber(13).components] == [1, 1, 12, 6, 4]
    assert derive_multiplicities(edixhoven_fiber(13).inter) == (1, 1, 12, 6, 4)
    assert derive_multiplicities(edixhoven_fiber(17).inter) == (1, 1, 16, 8, 6)
    assert derive_multiplicities(edixhoven_fiber(23).inter) == (1, 1, 22, 12, 8)


def test_derive_multiplicities_kernel_errors():
    with pytest.raises(DomainError):
        derive_multiplicities([[F(1), F(0)], [F(0), F(1)]])
    with pytest.raises(DomainError):
        derive_multiplicities([[F(0)] * 3] * 3)


def test_canonical_degrees():
    m13 = edixhoven_fiber(13)
    assert canonical_degrees(m13) == (11, 11, -1, 0, 1)
    assert sum(c.multiplicity * k for c, k in zip(m13.components, m13.kdeg)) == 14 == 2 * genus(13) - 2
    m11 = edixhoven_fiber(11)
    assert sum(c.multiplicity * k for c, k in zip(m11.components, m11.kdeg)) == 10
    for p in (13, 17, 19, 23):
        m = edixhoven_fiber(p)
        e = m.idx("E")
        assert m.inter[e][e] == -2 and m.kdeg[e] == 0  # K.E = 0 whenever E^2 = -2


def test_structural_validation_per_residue_class():
    for p in (13, 17, 19, 23):
        assert all(validate_fiber(edixhoven_fiber(p)).values()), p


def test_contraction_narrative():
    m13 = edixhoven_fiber(13)
    assert [c.name for c in contractible(m13)] == ["C11"]
    m1, pull1 = blow_down(m13, "C11")
    assert m1.pairing("E", "E") == -1
    assert [c.name for c in contractible(m1)] == ["E"]
    m2, pull2 = blow_down(m1, "E")
    assert m2.pairing("F", "F") == -1
    composed = pull2.compose(pull1)
    assert composed.coeffs["F"] == {"F": 1, "C11": 2, "E": 1}
    m3, _ = blow_down(m2, "F")
    assert contractible(m3) == []
    with pytest.raises(DomainError):
        blow_down(m13, "E")  # E^2 = -2, not contractible


def test_blow_down_preserves_structure():
    for p in (13, 23):
        model = edixhoven_fiber(p)
        g = genus(p)
        while contractible(model):
            model, _ = blow_down(model, contractible(model)[0].name)
            n = len(model.components)
            assert all(model.inter[i][j] == model.inter[j][i]
                       for i in range(n) for j in range(n))
            mult = [c.multiplicity for c in model.components]
            assert all(sum(mult[i] * model.inter[i][j] for i in range(n)) == 0
                       for j in range(n))
            # adjunction with the carried arithmetic genera
            assert sum(m * k for m, k in zip(mult, model.kdeg)) == 2 * g - 2
            for comp, i in zip(model.components, range(n)):
                assert comp.arith_genus == 1 + (model.kdeg[i] + model.inter[i][i]) / 2


def test_minimal_model_all_primes_to_200():
    for p in primes_in(7, 200):
        mm, pull = minimal_model(edixhoven_fiber(p))
        s = F(p * p - 1, 24)
        assert mm.names() == ("C20", "C02")
        assert mm.pairing("C20", "C02") == s
        assert mm.pairing("C20", "C20") == -s and mm.pairing("C02", "C02") == -s
        expected = PULLBACK_BY_RESIDUE[p % 12](p)
        for cname in ("C20", "C02"):
            row = pull.coeffs[cname]
            assert row[cname] == 1
            for other, val in expected.items():
                assert row[other] == val, (p, cname, other)
        base = edixhoven_fiber(p)
        for cname in ("C20", "C02"):
            for contracted in ("C11", "E", "F"):
                dot = sum(coef * base.pairing(b, contracted)
                          for b, coef in pull.coeffs[cname].items())
                assert dot == 0, (p, cname, contracted)


def test_minimal_model_examples():
    mm13, _ = minimal_model(edixhoven_fiber(13))
    assert mm13.inter == ((F(-7), F(7)), (F(7), F(-7)))
    mm11, _ = minimal_model(edixhoven_fiber(11))
    assert mm11.pairing("C20", "C02") == 5
    mm19, _ = minimal_model(edixhoven_fiber(19))
    assert mm19.pairing("C20", "C02") == 15


def test_fiber_guard():
    with pytest.raises(DomainError):
        edixhoven_fiber(5)
    with pytest.raises(DomainError):
        edixhoven_fiber(9)
