"""Partition tables and series against independent enumeration oracles."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growthcong import (
    ZZ,
    Zmod,
    asymptotic_ratio,
    brute_force_p,
    brute_force_pk,
    colored_series,
    colored_table,
    euler_series,
    partition_series,
    partition_table,
)
from growthcong.partitions import pentagonal_terms


def test_pentagonal_terms():
    terms = pentagonal_terms(60)
    assert [g for g, _ in terms] == [1, 2, 5, 7, 12, 15, 22, 26, 35, 40, 51, 57]
    signs = dict(terms)
    assert signs[1] == signs[2] == -1 and signs[5] == signs[7] == 1
    assert signs[12] == signs[15] == -1


def test_euler_product_coefficients():
    # prod (1-q^n) = 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + ...
    e = euler_series(30, ZZ)
    expect = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1, 22: 1, 26: 1}
    for n in range(30):
        assert e.coeff(n) == expect.get(n, 0)


def test_partition_values_match_enumeration():
    table = partition_table(40)
    for n in range(41):
        assert table[n] == brute_force_p(n)


def test_colored_values_match_enumeration():
    table = colored_table(2, 25)
    for n in range(26):
        assert table[n] == brute_force_pk(n, 2)


def test_colored_3_matches_enumeration():
    table = colored_table(3, 15)
    for n in range(16):
        assert table[n] == brute_force_pk(n, 3)


def test_colored_2_is_self_convolution():
    top = 400
    p = partition_table(top)
    p2 = colored_table(2, top)
    for n in range(top + 1):
        assert p2[n] == sum(p[i] * p[n - i] for i in range(n + 1))


@given(st.sampled_from([5, 7, 11, 49, 125, 2**40 + 15]), st.integers(1, 3))
@settings(max_examples=12)
def test_modular_table_matches_exact_reduction(modulus, k):
    exact = colored_table(k, 120)
    modular = colored_table(k, 120, modulus)
    for n in range(121):
        assert modular[n] == exact[n] % modulus


def test_series_matches_table():
    s = partition_series(80, Zmod(97))
    t = partition_table(79, 97)
    assert [s.coeff(n) for n in range(80)] == [t[n] for n in range(80)]
    s2 = colored_series(2, 60)
    t2 = colored_table(2, 59)
    assert [s2.coeff(n) for n in range(60)] == [t2[n] for n in range(60)]


def test_euler_series_with_step():
    # prod (1-q^(12n)) only has support on 12Z
    e = euler_series(40, ZZ, step=12)
    assert e.coeff(0) == 1 and e.coeff(12) == -1 and e.coeff(24) == -1
    assert all(e.coeff(n) == 0 for n in range(40) if n % 12)


def test_table_range_check():
    table = partition_table(10)
    with pytest.raises(IndexError):
        table[11]


def test_asymptotic_ratio_shape():
    values = [asymptotic_ratio(n) for n in (100, 500, 1000)]
    assert all(0.9 < v < 1.0 for v in values)
    assert values == sorted(values)
