#!/usr/bin/env python3
"""
Tests for the permutation library: group operations, Bruhat order and
canonical coset representatives
"""

import itertools

import pytest

from libs.permutation_lib import (
    Permutation,
    all_permutations,
    bruhat_covers,
    bruhat_interval,
    bruhat_interval_by_covers,
    bruhat_leq,
    canonical_rep,
    grassmannian_descent,
    is_k_grassmannian,
    ksubset,
    length,
    mask_to_subset,
    subset_to_mask,
)


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))
    with pytest.raises(ValueError):
        Permutation(())


@pytest.mark.parametrize("value", [1.7, 2.0, "2", True])
def test_rejects_non_integer_entries(value):
    with pytest.raises(ValueError, match="Expected an integer"):
        Permutation((1, value, 3))
    with pytest.raises(ValueError, match="Expected an integer"):
        ksubset([value, 3], 4)


def test_composition_applies_right_factor_first():
    w = Permutation((2, 3, 1))
    v = Permutation((2, 1, 3))
    assert (w * v).values == (3, 2, 1)
    assert w.inverse().values == (3, 1, 2)
    assert (w * w.inverse()) == Permutation.identity(3)


def test_length_counts_inversions():
    assert length(Permutation.identity(5)) == 0
    assert length(Permutation.longest(4)) == 6
    assert length(Permutation.from_string("241365")) == 4
    assert length(Permutation.from_string("561234")) == 8


def test_grassmannian_descent():
    assert grassmannian_descent(Permutation.from_string("561234")) == 2
    assert grassmannian_descent(Permutation.identity(4)) == 0
    assert grassmannian_descent(Permutation.from_string("2413")) == 2
    assert grassmannian_descent(Permutation.from_string("4321")) is None
    assert is_k_grassmannian(Permutation.from_string("346912578"), 4)


def test_masks_round_trip():
    assert subset_to_mask((1, 3)) == 0b101
    assert mask_to_subset(0b101) == (1, 3)
    assert mask_to_subset(0) == ()


@pytest.mark.parametrize("n", [3, 4])
def test_bruhat_order_matches_cover_closure(n):
    for u in all_permutations(n):
        up = {u}
        frontier = [u]
        while frontier:
            frontier = [z for y in frontier for z in bruhat_covers(y) if z not in up]
            up.update(frontier)
        assert up == {v for v in all_permutations(n) if bruhat_leq(u, v)}


def test_interval_matches_cover_search():
    perms = list(all_permutations(4))
    for u, v in itertools.product(perms, repeat=2):
        if bruhat_leq(u, v):
            assert set(bruhat_interval(u, v)) == bruhat_interval_by_covers(u, v)


def test_interval_requires_comparable_endpoints():
    with pytest.raises(ValueError):
        bruhat_interval(Permutation.from_string("21"), Permutation.from_string("12"))
    with pytest.raises(ValueError):
        bruhat_interval(Permutation.identity(9), Permutation.longest(9))


def test_canonical_rep_worked_example():
    v = Permutation.from_string("561234")
    assert str(canonical_rep((1, 2), v, 2)) == "216534"


def test_canonical_rep_is_maximal_with_its_initial_set():
    n = 5
    perms = list(all_permutations(n))
    for v in perms:
        k = grassmannian_descent(v)
        if not k:
            continue
        for subset in itertools.combinations(range(1, n + 1), k):
            if any(i > v(j) for j, i in enumerate(subset, 1)):
                continue
            candidates = [y for y in perms if y.initial_set(k) == subset and bruhat_leq(y, v)]
            rep = canonical_rep(subset, v, k)
            assert rep in candidates
            assert all(bruhat_leq(y, rep) for y in candidates)


def test_canonical_rep_rejects_subset_above_v():
    with pytest.raises(ValueError):
        canonical_rep((3, 4), Permutation.from_string("2413"), 2)
