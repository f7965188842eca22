"""Eta-quotient expansion against naive product oracles, plus the
weight/character/cusp bookkeeping."""

from fractions import Fraction

import pytest

from growthcong import EtaQuotient, Zmod, brute_force_p, cusp_order, cusp_width
from growthcong.eta import divisors, expand, modularity_check, squarefree_kernel


def naive_eta_factor(delta, trunc24):
    """Grain-24 dict of eta(delta z) by direct product multiplication."""
    poly = {0: 1}
    n = 1
    while 24 * delta * n < trunc24:
        step = 24 * delta * n
        poly = {
            e: c
            for e in set(poly) | {e + step for e in poly}
            if (c := poly.get(e, 0) - poly.get(e - step, 0)) or True
            if e < trunc24
        }
        n += 1
    return {e + delta: c for e, c in poly.items() if c and e + delta < trunc24}


def naive_mul(da, db, trunc24):
    out = {}
    for ea, ca in da.items():
        for eb, cb in db.items():
            if ea + eb < trunc24:
                out[ea + eb] = out.get(ea + eb, 0) + ca * cb
    return out


def test_single_eta_factor_matches_naive_product():
    for delta in (1, 2, 12):
        series = expand(EtaQuotient(24 * delta, {delta: 1}), 24 * 8 * delta)
        oracle = naive_eta_factor(delta, 24 * 8 * delta)
        lifted = series.lift(24)
        for e in range(lifted.start, lifted.trunc):
            assert lifted.coeff(e) == oracle.get(e, 0)


def test_positive_quotient_matches_naive_product():
    # eta(z)^2 * eta(2z) at level 4... any level multiple works the same
    quotient = EtaQuotient(4, {1: 2, 2: 1})
    t24 = 24 * 9
    series = expand(quotient, t24).lift(24)
    oracle = naive_mul(
        naive_mul(naive_eta_factor(1, t24), naive_eta_factor(1, t24), t24),
        naive_eta_factor(2, t24), t24)
    for e in range(series.start, series.trunc):
        assert series.coeff(e) == oracle.get(e, 0)


def test_congruence_carrier_expansion():
    # eta(z)^25/eta(25z): the inverse factor is the 25-dilated partition
    # generating function, supplied by independent enumeration
    t = 28
    series = expand(EtaQuotient(25, {1: 25, 25: -1}), 24 * t)
    assert series.grain == 1 and series.start == 0
    base = naive_eta_factor(1, 24 * t)
    power = {0: 1}
    for _ in range(25):
        power = naive_mul(power, base, 25 * 24 * t)
    power = {e: c for e, c in power.items() if e % 24 == 25 % 24 or c}
    inv_dilated = {24 * 25 * k + 25: brute_force_p(k) for k in range(t // 25 + 1)}
    oracle24 = naive_mul(power, inv_dilated, 24 * t + 25 * 2)
    for n in range(series.start, series.trunc):
        # grain-24 exponent of q^n is 24n + (25 - 25) = 24n... shifted by
        # the two leading q^(delta/24) factors cancelling: 25 - 25 = 0,
        # while the oracle carries both explicit delta offsets (25 + 25)
        assert series.coeff(n) == oracle24.get(24 * n + 50, 0)


def test_inverse_quotient_multiplies_back_to_one():
    q_pos = EtaQuotient(12, {1: 3, 12: 2})
    q_neg = EtaQuotient(12, {1: -3, 12: -2})
    t24 = 24 * 12
    prod = expand(q_pos, t24) * expand(q_neg, t24)
    prod = prod.normalized()
    assert prod.coeff(0) == 1
    assert all(prod.coeff(n) == 0 for n in range(1, prod.trunc))


def test_modular_ring_expansion_matches_reduction():
    quotient = EtaQuotient(144, {12: -2})
    exact = expand(quotient, 24 * 20)
    reduced = expand(quotient, 24 * 20, Zmod(25))
    for n in range(exact.start, exact.trunc):
        assert reduced.coeff(n) == exact.coeff(n) % 25


def test_quotient_validation():
    with pytest.raises(ValueError):
        EtaQuotient(10, {3: 1})  # 3 does not divide 10
    q = EtaQuotient(12, {1: 1, 2: 0, 12: -1})
    assert dict(q.exponents) == {1: 1, 12: -1}  # zero exponents dropped


def test_weight_and_leading_exponent():
    q = EtaQuotient(25, {1: 25, 25: -1})
    assert q.weight == Fraction(12)
    assert q.leading_exponent_24 == 0
    f = EtaQuotient(144, {12: -2})
    assert f.weight == Fraction(-1)
    assert f.leading_exponent_24 == -24


def test_modularity_conditions():
    info = modularity_check(EtaQuotient(25, {1: 25, 25: -1}))
    assert info.integral_weight and info.condition_delta and info.condition_inverse
    assert info.satisfies_conditions
    assert info.kronecker_top == 1  # squarefree kernel of 25 is trivial
    bad = modularity_check(EtaQuotient(2, {1: 1, 2: 1}))
    assert not bad.satisfies_conditions


def test_squarefree_kernel():
    assert squarefree_kernel(1) == 1
    assert squarefree_kernel(25) == 1
    assert squarefree_kernel(12) == 3
    assert squarefree_kernel(-18) == 2
    assert squarefree_kernel(30) == 30


def test_cusp_order_at_infinity_matches_leading_exponent():
    for quotient in (
        EtaQuotient(25, {1: 25, 25: -1}),
        EtaQuotient(144, {12: -2}),
        EtaQuotient(12, {1: 2, 3: 1, 12: -1}),
    ):
        n = quotient.level
        assert cusp_order(quotient, n) == Fraction(quotient.leading_exponent_24, 24)


def test_cusp_widths_partition_the_index():
    # sum of widths over cusp denominators c | N times the number of cusps
    # with that denominator equals the index [SL2(Z) : Gamma_0(N)]; spot
    # check the two extreme denominators instead
    assert cusp_width(144, 144) == 1
    assert cusp_width(144, 1) == 144
    assert cusp_width(25, 5) == 1


def test_cusp_order_lifting_preserves_positivity():
    carrier = EtaQuotient(25, {1: 25, 25: -1})
    for c in divisors(25 * 144):
        if c % 25 == 0:
            continue
        assert cusp_order(carrier, c, level=25 * 144) > 0
