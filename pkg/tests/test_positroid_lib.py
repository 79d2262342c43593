#!/usr/bin/env python3
"""
Tests for the positroid library: bases from every representation, Johnson
graphs, codimension, the exact Jacobian oracle and matroid operations
"""

import random

import networkx as nx
import pytest
import sympy

from libs.decorated_lib import (
    DecoratedPermutation,
    all_decorated_permutations,
    alignments,
    direct_sum,
    grassmann_necklace,
    random_decorated,
    spirograph,
    to_grassmann_interval,
)
from libs.permutation_lib import subset_to_mask
from libs.positroid_lib import (
    Positroid,
    codimension,
    connected_components,
    coordinate_matrix,
    decorated_from_positroid,
    gale_bounds_hold,
    gale_leq,
    is_direct_sum_of_uniform,
    jacobian_matrix,
    jacobian_rank_oracle,
    johnson_degree,
    johnson_degree_sequence,
    johnson_graph,
    matroid_ops,
    necklace_from_positroid,
    positroid_from_decorated,
    positroid_from_interval,
    positroid_from_matrix,
    rational_matrix,
    tangent_codim,
)

EXAMPLE_BASES = [(2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (4, 6), (5, 6)]


@pytest.fixture
def small_example():
    return DecoratedPermutation.create([1, 3, 6, 5, 2, 4], ccw=[1])


@pytest.fixture
def example_positroid():
    return Positroid.from_subsets(6, EXAMPLE_BASES)


def test_matrix_pipeline(small_example, example_positroid):
    positroid, tnn = positroid_from_matrix([[0, 3, 1, 2, 4, 0], [0, 0, 0, 1, 2, 1]])
    assert tnn
    assert positroid == example_positroid
    assert necklace_from_positroid(positroid).to_list() == [[2, 4], [2, 4], [3, 4], [4, 6], [5, 6], [2, 6]]
    assert decorated_from_positroid(positroid) == small_example
    assert positroid.nonbases() == [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (4, 5)]


def test_positroid_from_decorated_example(small_example, example_positroid):
    assert positroid_from_decorated(small_example) == example_positroid
    interval = to_grassmann_interval(small_example)
    assert positroid_from_interval(interval) == example_positroid


def test_matrix_parsing_and_sign():
    matrix = rational_matrix([["1/2", 0], [0, "3"]])
    assert matrix[0, 0] == sympy.Rational(1, 2)
    positroid, tnn = positroid_from_matrix([[1, 0, 1], [0, 1, 1]])
    assert positroid.subsets() == [(1, 2), (1, 3), (2, 3)]
    assert not tnn
    with pytest.raises(ValueError):
        positroid_from_matrix([[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        rational_matrix([[1, 2], [3]])


def test_dict_round_trip(example_positroid):
    data = example_positroid.to_dict()
    assert data["k"] == 2
    assert Positroid.from_dict(data) == example_positroid
    with pytest.raises(ValueError):
        Positroid.from_dict({"n": 6, "k": 3, "bases": [[2, 4]]})
    with pytest.raises(ValueError):
        Positroid.from_subsets(4, [[1, 2], [3]])


def test_not_a_positroid():
    with pytest.raises(ValueError):
        decorated_from_positroid(Positroid.from_subsets(4, [[1, 2], [3, 4]]))


def test_is_matroid():
    assert not Positroid.from_subsets(4, [[1, 2], [3, 4]]).is_matroid()
    for n in range(1, 7):
        for dp in all_decorated_permutations(n):
            assert positroid_from_decorated(dp).is_matroid()


def test_shifted_gale_order():
    assert gale_leq((2, 4), (3, 5), 1, 6)
    assert not gale_leq((2, 4), (1, 5), 1, 6)
    # In the order 4 < 5 < 6 < 1 < 2 < 3, {1, 5} sits below {2, 6}
    assert gale_leq((1, 5), (2, 6), 4, 6)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_positroid_round_trip(n):
    for dp in all_decorated_permutations(n):
        positroid = positroid_from_decorated(dp)
        assert decorated_from_positroid(positroid) == dp
        assert necklace_from_positroid(positroid) == grassmann_necklace(dp)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_interval_initial_sets_give_the_positroid(n):
    for dp in all_decorated_permutations(n):
        assert positroid_from_interval(to_grassmann_interval(dp)) == positroid_from_decorated(dp)


def test_interval_initial_sets_random_n6():
    rng = random.Random(20240601)
    for _ in range(100):
        dp = random_decorated(6, rng)
        assert positroid_from_interval(to_grassmann_interval(dp)) == positroid_from_decorated(dp)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_gale_bounds(n):
    for dp in all_decorated_permutations(n):
        assert gale_bounds_hold(positroid_from_decorated(dp), dp)


def test_johnson_degrees_of_example(example_positroid):
    degrees = johnson_degree_sequence(example_positroid)
    assert degrees == {
        (2, 4): 4, (2, 5): 4, (2, 6): 5, (3, 4): 4,
        (3, 5): 4, (3, 6): 5, (4, 6): 5, (5, 6): 5,
    }
    assert johnson_degree(example_positroid, (2, 6)) == 5
    assert tangent_codim(example_positroid, (2, 4)) == 4
    assert tangent_codim(example_positroid, (5, 6)) == 3
    with pytest.raises(ValueError):
        tangent_codim(example_positroid, (1, 2))


def test_johnson_graph(example_positroid):
    graph = johnson_graph(example_positroid)
    assert graph.number_of_nodes() == 8
    assert graph.degree[(2, 6)] == 5
    oriented = johnson_graph(example_positroid, oriented=True)
    assert oriented.number_of_edges() == graph.number_of_edges()
    assert oriented.has_edge((2, 4), (3, 4))
    assert not oriented.has_edge((3, 4), (2, 4))
    assert oriented.nodes[(2, 4)]["label"] == "{2,4}"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_johnson_graph_geodesics(n):
    for dp in all_decorated_permutations(n):
        positroid = positroid_from_decorated(dp)
        graph = johnson_graph(positroid)
        assert nx.is_connected(graph)
        distances = dict(nx.all_pairs_shortest_path_length(graph))
        for first in positroid.subsets():
            for second in positroid.subsets():
                assert distances[first][second] == len(set(first) - set(second))


def test_uniform_johnson_graph_is_regular():
    graph = johnson_graph(positroid_from_decorated(spirograph(5, 2)))
    assert {degree for _, degree in graph.degree} == {6}


def test_codimension(small_example):
    assert codimension(small_example) == 4
    assert codimension(spirograph(6, 3)) == 0
    assert codimension(DecoratedPermutation.create([5, 4, 1, 2, 7, 6, 9, 8, 3], cw=[6], ccw=[8])) == 13


def test_jacobian_worked_example():
    matrix = sympy.Matrix([[1, 2, 3, 0, 4, 0], [0, 1, 0, 0, 2, 1]])
    positroid, _ = positroid_from_matrix(matrix)
    nonbases = positroid.nonbases()
    assert nonbases == [(1, 3), (1, 4), (2, 4), (2, 5), (3, 4), (4, 5), (4, 6)]
    jacobian = jacobian_matrix(nonbases, matrix)
    assert jacobian.shape == (7, 12)
    assert jacobian.rank() == 4
    # Columns x_23, x_24, x_14, x_15 in row-major order
    block = jacobian.extract([0, 1, 2, 3], [8, 9, 3, 4])
    assert block == sympy.Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 2, -1, 0], [0, 0, 0, -1]])
    assert all(block[i, j] == 0 for i in range(4) for j in range(i + 1, 4))
    assert tangent_codim(positroid, (1, 2)) == 4
    assert jacobian_rank_oracle(positroid, (1, 2)) == 4


def test_coordinate_matrix():
    assert coordinate_matrix((2, 4), 5) == sympy.Matrix([[0, 1, 0, 0, 0], [0, 0, 0, 1, 0]])


def _jacobian_oracle_agrees(n):
    for dp in all_decorated_permutations(n):
        positroid = positroid_from_decorated(dp)
        for subset in positroid.subsets():
            assert jacobian_rank_oracle(positroid, subset) == tangent_codim(positroid, subset)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_jacobian_rank_is_tangent_codimension(n):
    _jacobian_oracle_agrees(n)


@pytest.mark.slow
def test_jacobian_rank_is_tangent_codimension_n5():
    _jacobian_oracle_agrees(5)


def _rigid_motions_commute(n):
    for dp in all_decorated_permutations(n):
        positroid = positroid_from_decorated(dp)
        assert positroid_from_decorated(dp.reverse_arcs()) == positroid.dual()
        assert positroid_from_decorated(dp.rotate(1)) == positroid.cyclic_shift(1)
        assert positroid_from_decorated(dp.reflect()) == positroid.dual().ground_reversal()
        assert positroid_from_decorated(dp.reverse_arcs().reflect()) == positroid.ground_reversal()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_rigid_motions_match_positroid_operations(n):
    _rigid_motions_commute(n)


def test_matroid_ops_dispatch(example_positroid):
    assert matroid_ops(example_positroid, "dual").k == 4
    assert matroid_ops(example_positroid, "cyclic_shift", shift=6) == example_positroid
    assert matroid_ops(example_positroid, "ground_reversal").ground_reversal() == example_positroid
    with pytest.raises(ValueError):
        matroid_ops(example_positroid, "direct_sum")
    with pytest.raises(ValueError):
        matroid_ops(example_positroid, "transpose")


def test_connected_components(example_positroid):
    assert connected_components(example_positroid) == [(1,), (2, 3, 4, 5, 6)]
    uniform, block = is_direct_sum_of_uniform(example_positroid)
    assert not uniform
    assert block == (2, 3, 4, 5, 6)
    restricted = example_positroid.restriction((2, 3, 4, 5, 6))
    assert restricted.n == 5 and restricted.k == 2


def test_direct_sum_laws():
    rng = random.Random(7)
    for _ in range(200):
        n1 = rng.randint(1, 6)
        n2 = rng.randint(1, 10 - n1)
        first, second = random_decorated(n1, rng), random_decorated(n2, rng)
        total = direct_sum(first, second)
        k1, k2 = first.k, second.k
        cross = k1 * (n2 - k2) + k2 * (n1 - k1)

        assert len(alignments(total)) == len(alignments(first)) + len(alignments(second)) + cross

        m1, m2 = positroid_from_decorated(first), positroid_from_decorated(second)
        summed = positroid_from_decorated(total)
        assert summed == m1.direct_sum(m2)

        j1, j2 = m1.subsets()[0], m2.subsets()[0]
        joined = j1 + tuple(j + n1 for j in j2)
        assert subset_to_mask(joined) in summed
        assert tangent_codim(summed, joined) == tangent_codim(m1, j1) + tangent_codim(m2, j2) + cross

