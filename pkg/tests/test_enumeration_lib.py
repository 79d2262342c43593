#!/usr/bin/env python3
"""
Tests for the enumeration library: spirograph counts, the two closed formulas
for s(n), the refined census tables and growth ratios
"""

from math import factorial

import pytest
import sympy

from libs.enumeration_lib import (
    IntPolynomial,
    bell_b,
    bell_b_from_partitions,
    census,
    growth_ratio,
    noncrossing_partitions,
    s3_count,
    smooth_count_bell,
    smooth_count_by_partitions,
    smooth_count_coeff,
    spirograph_count,
)

SMOOTH_COUNTS = [2, 5, 16, 61, 256, 1132, 5174, 24229, 115654]

S1_TABLE = [
    [1, 1],
    [1, 3, 1],
    [1, 7, 7, 1],
    [1, 15, 29, 15, 1],
    [1, 31, 96, 96, 31, 1],
    [1, 63, 282, 440, 282, 63, 1],
    [1, 127, 771, 1688, 1688, 771, 127, 1],
    [1, 255, 2011, 5803, 8089, 5803, 2011, 255, 1],
    [1, 511, 5074, 18520, 33721, 33721, 18520, 5074, 511, 1],
    [1, 1023, 12488, 55998, 127698, 166325, 127698, 55998, 12488, 1023, 1],
]

S2_TABLE = [
    [2],
    [1, 4],
    [2, 6, 8],
    [3, 18, 24, 16],
    [4, 40, 100, 80, 32],
    [5, 78, 305, 440, 240, 64],
    [6, 140, 798, 1750, 1680, 672, 128],
    [7, 236, 1876, 5838, 8400, 5824, 1792, 256],
    [8, 378, 4056, 17136, 34524, 35616, 18816, 4608, 512],
    [9, 580, 8190, 45480, 122682, 175896, 137760, 57600, 11520, 1024],
]


def test_polynomial_arithmetic():
    one_plus_x = IntPolynomial((1, 1))
    assert (one_plus_x * one_plus_x).to_list() == [1, 2, 1]
    assert one_plus_x.power(5, cap=2).to_list() == [1, 5, 10]
    assert one_plus_x.power(0).to_list() == [1]
    assert (one_plus_x + IntPolynomial((0, -1))).to_list() == [1]
    assert IntPolynomial((1, 2, 3)).evaluate(2) == 17
    assert IntPolynomial((0, 0)).degree == -1
    assert IntPolynomial.monomial(2, 5).to_list(4) == [0, 0, 5, 0]


def test_spirograph_count():
    assert [spirograph_count(n) for n in (1, 2, 5)] == [2, 1, 4]
    with pytest.raises(ValueError):
        spirograph_count(0)


def test_smooth_counts_from_both_formulas():
    assert [smooth_count_coeff(n) for n in range(1, 10)] == SMOOTH_COUNTS
    assert [smooth_count_bell(n) for n in range(1, 10)] == SMOOTH_COUNTS
    assert smooth_count_coeff(10) == smooth_count_bell(10) == sum(S1_TABLE[9])


def test_formulas_agree_up_to_60():
    for n in range(1, 61):
        assert smooth_count_coeff(n) == smooth_count_bell(n)


@pytest.mark.slow
def test_formulas_agree_up_to_200():
    for n in range(1, 201):
        assert smooth_count_coeff(n) == smooth_count_bell(n)


def test_bell_boundary_values():
    assert bell_b(0, 0) == 1
    assert bell_b(1, 1) == 2
    assert bell_b(2, 1) == 2
    assert bell_b(2, 2) == 4
    assert all(bell_b(n, 0) == 0 for n in range(1, 8))
    with pytest.raises(ValueError):
        bell_b(2, 3)


def test_bell_recurrence_matches_set_partitions():
    for n in range(0, 9):
        for k in range(0, n + 1):
            assert bell_b(n, k) == bell_b_from_partitions(n, k)


def test_bell_recurrence_matches_sympy():
    for n in range(1, 11):
        for k in range(1, n + 1):
            values = tuple(spirograph_count(i) * factorial(i) for i in range(1, n - k + 2))
            assert bell_b(n, k) == int(sympy.bell(n, k, values))


def test_bell_quotients_are_integers():
    for n in range(1, 101):
        for k in range(1, n + 1):
            assert bell_b(n, k) % factorial(n - k + 1) == 0
    assert s3_count(5, 3) == 100


def test_noncrossing_partitions():
    assert [sum(1 for _ in noncrossing_partitions(n)) for n in range(0, 7)] == [1, 1, 2, 5, 14, 42, 132]
    for blocks in noncrossing_partitions(4):
        assert sorted(e for b in blocks for e in b) == [1, 2, 3, 4]
    assert [(1, 3), (2, 4)] not in list(noncrossing_partitions(4))


def test_composition_identity():
    for n in range(1, 11):
        assert smooth_count_by_partitions(n) == smooth_count_coeff(n)


def test_census_tables():
    result = census(10)
    assert result.totals == SMOOTH_COUNTS + [sum(S1_TABLE[9])]
    assert [row.values(0) for row in result.s1] == S1_TABLE
    assert [row.values(1) for row in result.s2] == S2_TABLE
    assert [row.values(1) for row in result.s3] == S2_TABLE
    assert result.s1[3].by_k[2] == 29
    assert result.s2[4].by_k[3] == 100


def test_q_polynomials_specialize_to_totals():
    result = census(20)
    for m, total in enumerate(result.totals, 1):
        for rows in (result.s1, result.s2, result.s3):
            row = rows[m - 1]
            assert IntPolynomial(tuple(row.q_polynomial())).evaluate(1) == total
        assert result.s2[m - 1].q_polynomial() == result.s3[m - 1].q_polynomial()


def test_census_dict_layout():
    data = census(2).to_dict()
    assert data["s"] == {"1": 2, "2": 5}
    assert data["s1"]["2"] == {"row": [1, 3, 1], "q": [1, 3, 1]}
    assert data["s2"]["2"] == {"row": [1, 4], "q": [0, 1, 4]}


@pytest.mark.parametrize(
    "n, digits, expected",
    [
        (50, 8, "5.4489775"),
        (100, 7, "5.528236"),
        (150, 7, "5.555362"),
        (200, 7, "5.569062"),
        (250, 8, "5.5773263"),
    ],
)
def test_growth_ratios(n, digits, expected):
    assert growth_ratio(n, digits) == expected


def test_growth_ratio_small():
    assert growth_ratio(1, 3) == "2.5"
    assert growth_ratio(3, 4) == "3.813"
    with pytest.raises(ValueError):
        growth_ratio(0, 3)
