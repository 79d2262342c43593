#!/usr/bin/env python3
"""
Positroid library: basis collections built from decorated permutations,
Grassmann intervals, necklaces and matrices; Johnson graphs, tangent space
codimensions and the exact Jacobian rank at torus fixed points
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
import sympy

from libs.decorated_lib import (
    DecoratedPermutation,
    GrassmannInterval,
    GrassmannNecklace,
    alignments,
    from_necklace,
    grassmann_necklace,
    to_grassmann_interval,
)
from libs.permutation_lib import (
    InvariantError,
    KSubset,
    as_integer,
    bruhat_interval,
    ksubset,
    length,
    mask_to_subset,
    popcount,
    subset_to_mask,
)

logger = logging.getLogger(__name__)

MAX_GROUND_SET = 64


def _lex_key(mask: int) -> KSubset:
    return mask_to_subset(mask)


@dataclass(frozen=True)
class Positroid:
    """Rank k basis collection on [n], bases stored as bitmasks

    The class accepts any nonempty family of k-subsets; whether it is a
    positroid is settled by decorated_from_positroid.
    """

    n: int
    k: int
    bases: Tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GROUND_SET:
            raise ValueError(f"Ground set size must be in [1, {MAX_GROUND_SET}], got {self.n}")
        masks = sorted(set(self.bases), key=_lex_key)
        if not masks:
            raise ValueError("A positroid has at least one basis")
        limit = 1 << self.n
        for mask in masks:
            if mask < 0 or mask >= limit:
                raise ValueError(f"Basis mask {mask} outside [1, {self.n}]")
            if popcount(mask) != self.k:
                raise ValueError(f"Basis {list(mask_to_subset(mask))} does not have size {self.k}")
        object.__setattr__(self, "bases", tuple(masks))

    @classmethod
    def from_subsets(cls, n: int, subsets: Iterable[Sequence[int]]) -> "Positroid":
        subsets = [ksubset(s, n) for s in subsets]
        if not subsets:
            raise ValueError("A positroid has at least one basis")
        return cls(n, len(subsets[0]), tuple(subset_to_mask(s) for s in subsets))

    @classmethod
    def from_dict(cls, data: dict) -> "Positroid":
        n = as_integer(data["n"])
        positroid = cls.from_subsets(n, data["bases"])
        if "k" in data and as_integer(data["k"]) != positroid.k:
            raise ValueError(f"Declared k={data['k']} but bases have size {positroid.k}")
        return positroid

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "bases": [list(s) for s in self.subsets()]}

    @cached_property
    def basis_set(self) -> FrozenSet[int]:
        return frozenset(self.bases)

    def __contains__(self, subset) -> bool:
        if isinstance(subset, int):
            return subset in self.basis_set
        return subset_to_mask(subset) in self.basis_set

    def __len__(self):
        return len(self.bases)

    def subsets(self) -> List[KSubset]:
        return [mask_to_subset(m) for m in self.bases]

    def nonbases(self) -> List[KSubset]:
        """Every k-subset of [n] that is not a basis, lexicographically"""
        return [
            subset
            for subset in itertools.combinations(range(1, self.n + 1), self.k)
            if subset_to_mask(subset) not in self.basis_set
        ]

    def is_matroid(self) -> bool:
        """Basis Exchange Property"""
        for first in self.bases:
            for second in self.bases:
                for a in mask_to_subset(first & ~second):
                    without = first & ~(1 << (a - 1))
                    if not any(
                        without | (1 << (b - 1)) in self.basis_set
                        for b in mask_to_subset(second & ~first)
                    ):
                        return False
        return True

    def is_uniform(self) -> bool:
        return len(self.bases) == comb(self.n, self.k)

    def dual(self) -> "Positroid":
        full = (1 << self.n) - 1
        return Positroid(self.n, self.n - self.k, tuple(full & ~m for m in self.bases))

    def cyclic_shift(self, shift: int) -> "Positroid":
        """I -> I + shift mod n"""
        n = self.n
        return Positroid.from_subsets(
            n, [[(i + shift - 1) % n + 1 for i in s] for s in self.subsets()]
        )

    def ground_reversal(self) -> "Positroid":
        """I -> w0 I"""
        n = self.n
        return Positroid.from_subsets(n, [[n + 1 - i for i in s] for s in self.subsets()])

    def direct_sum(self, other: "Positroid") -> "Positroid":
        """M + other with the ground set of other shifted past [n]"""
        offset = self.n
        return Positroid(
            self.n + other.n,
            self.k + other.k,
            tuple(a | (b << offset) for a in self.bases for b in other.bases),
        )

    def restriction(self, block: Sequence[int]) -> "Positroid":
        """Bases met with a component block, relabeled to [|block|]"""
        block = sorted(block)
        rank = {e: idx for idx, e in enumerate(block, 1)}
        block_mask = subset_to_mask(block)
        return Positroid.from_subsets(
            len(block),
            sorted({tuple(rank[e] for e in mask_to_subset(m & block_mask)) for m in self.bases}),
        )


MATROID_OPS = ("dual", "cyclic_shift", "ground_reversal", "direct_sum")


def matroid_ops(positroid: Positroid, name: str, shift: int = 0, other: Positroid = None) -> Positroid:
    if name == "dual":
        return positroid.dual()
    if name == "cyclic_shift":
        return positroid.cyclic_shift(shift)
    if name == "ground_reversal":
        return positroid.ground_reversal()
    if name == "direct_sum":
        if other is None:
            raise ValueError("direct_sum needs a second positroid")
        return positroid.direct_sum(other)
    raise ValueError(f"Unknown matroid operation {name!r}, expected one of {', '.join(MATROID_OPS)}")


def gale_leq(first: Sequence[int], second: Sequence[int], r: int, n: int) -> bool:
    """Shifted Gale order I <=_r J"""
    if len(first) != len(second):
        raise ValueError(f"Gale order compares sets of equal size, got {len(first)} and {len(second)}")
    if not 1 <= r <= n:
        raise ValueError(f"r={r} outside [1, {n}]")

    def position(i):
        return (i - r) % n

    return all(
        position(a) <= position(b)
        for a, b in zip(sorted(first, key=position), sorted(second, key=position))
    )


def positroid_from_decorated(dp: DecoratedPermutation) -> Positroid:
    """All k-subsets above every I_r in the r-shifted Gale order"""
    n = dp.n
    necklace = grassmann_necklace(dp)
    bases = [
        subset
        for subset in itertools.combinations(range(1, n + 1), necklace.k)
        if all(gale_leq(necklace[r], subset, r, n) for r in range(1, n + 1))
    ]
    return Positroid.from_subsets(n, bases)


def positroid_from_interval(interval: GrassmannInterval) -> Positroid:
    """Initial k-sets of the permutations in [u, v]"""
    positroid = Positroid.from_subsets(
        interval.n, {y.initial_set(interval.k) for y in bruhat_interval(interval.u, interval.v)}
    )
    logger.debug(f"Interval [{interval.u}, {interval.v}] gives {len(positroid)} bases")
    return positroid


def parse_rational(value) -> sympy.Rational:
    if isinstance(value, bool):
        raise ValueError(f"Not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return sympy.Rational(value)
    if isinstance(value, str):
        fraction = Fraction(value.strip())
        return sympy.Rational(fraction.numerator, fraction.denominator)
    raise ValueError(f"Not a rational number: {value!r}")


def rational_matrix(rows: Sequence[Sequence]) -> sympy.Matrix:
    """Exact matrix from rows of integers or 'p/q' strings"""
    if not rows or not rows[0]:
        raise ValueError("Matrix must have at least one row and one column")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("Matrix rows have different lengths")
    return sympy.Matrix([[parse_rational(x) for x in row] for row in rows])


def positroid_from_matrix(matrix) -> Tuple[Positroid, bool]:
    """Matroid of nonvanishing maximal minors plus a total nonnegativity flag"""
    if not isinstance(matrix, sympy.MatrixBase):
        matrix = rational_matrix(matrix)
    k, n = matrix.shape
    if matrix.rank() != k:
        raise ValueError(f"Matrix has rank {matrix.rank()} but {k} rows")
    bases = []
    tnn = True
    for columns in itertools.combinations(range(n), k):
        minor = matrix.extract(list(range(k)), list(columns)).det(method="bareiss")
        if minor != 0:
            bases.append(tuple(c + 1 for c in columns))
        if minor < 0:
            tnn = False
    return Positroid.from_subsets(n, bases), tnn


def necklace_from_positroid(positroid: Positroid) -> GrassmannNecklace:
    """The r-shifted Gale minimum of the bases for every r"""
    n = positroid.n
    subsets = positroid.subsets()
    sets = []
    for r in range(1, n + 1):

        def shifted(subset, r=r):
            return tuple(sorted((i - r) % n for i in subset))

        sets.append(min(subsets, key=shifted))
    return GrassmannNecklace(n, positroid.k, tuple(sets))


def decorated_from_positroid(positroid: Positroid) -> DecoratedPermutation:
    try:
        dp = from_necklace(necklace_from_positroid(positroid))
    except ValueError as e:
        raise ValueError(f"Not a positroid: {e}") from e
    if positroid_from_decorated(dp) != positroid:
        raise ValueError("Not a positroid: the bases differ from those of the recovered decorated permutation")
    return dp


def johnson_degree(positroid: Positroid, subset) -> int:
    """#{I in M : |I ∩ J| = k - 1}"""
    mask = subset if isinstance(subset, int) else subset_to_mask(subset)
    return sum(1 for other in _johnson_neighbours(mask, positroid.n) if other in positroid.basis_set)


def _johnson_neighbours(mask: int, n: int) -> Iterable[int]:
    inside = mask_to_subset(mask)
    outside = mask_to_subset(((1 << n) - 1) & ~mask)
    for a in inside:
        for b in outside:
            yield (mask & ~(1 << (a - 1))) | (1 << (b - 1))


def johnson_degree_sequence(positroid: Positroid) -> Dict[KSubset, int]:
    return {mask_to_subset(m): johnson_degree(positroid, m) for m in positroid.bases}


def johnson_graph(positroid: Positroid, oriented: bool = False) -> nx.Graph:
    """Induced Johnson graph on the bases; oriented I -> J when J = I - i + j with i < j"""
    graph = nx.DiGraph() if oriented else nx.Graph()
    for mask in positroid.bases:
        subset = mask_to_subset(mask)
        graph.add_node(subset, label="{" + ",".join(str(i) for i in subset) + "}")
    for first, second in itertools.combinations(positroid.bases, 2):
        if popcount(first & second) != positroid.k - 1:
            continue
        source, target = mask_to_subset(first), mask_to_subset(second)
        if oriented:
            removed = mask_to_subset(first & ~second)[0]
            added = mask_to_subset(second & ~first)[0]
            if removed > added:
                source, target = target, source
        graph.add_edge(source, target)
    return graph


def codimension(dp: DecoratedPermutation) -> int:
    """Number of alignments, checked against k(n-k) - (l(v) - l(u))"""
    interval = to_grassmann_interval(dp)
    count = len(alignments(dp))
    expected = interval.k * (dp.n - interval.k) - (length(interval.v) - length(interval.u))
    if count != expected:
        raise InvariantError(f"{dp} has {count} alignments but k(n-k) - (l(v) - l(u)) = {expected}")
    return count


def _require_basis(positroid: Positroid, subset) -> int:
    mask = subset_to_mask(ksubset(subset, positroid.n))
    if mask not in positroid.basis_set:
        raise ValueError(f"{list(mask_to_subset(mask))} is not a basis")
    return mask


def tangent_codim(positroid: Positroid, subset) -> int:
    """Nonbases at Johnson distance one from a basis J"""
    mask = _require_basis(positroid, subset)
    return sum(1 for other in _johnson_neighbours(mask, positroid.n) if other not in positroid.basis_set)


def coordinate_matrix(subset: Sequence[int], n: int) -> sympy.Matrix:
    """A_J: the k x n 0/1 matrix with column J_t equal to the t-th unit vector"""
    subset = ksubset(subset, n)
    matrix = sympy.zeros(len(subset), n)
    for row, column in enumerate(subset):
        matrix[row, column - 1] = 1
    return matrix


def jacobian_matrix(nonbases: Sequence[Sequence[int]], matrix: sympy.Matrix) -> sympy.Matrix:
    """Partial derivatives of the nonbasis minors, evaluated at a k x n matrix

    Rows follow nonbases in the given order, columns are x_11, ..., x_1n,
    x_21, ..., x_kn.
    """
    k, n = matrix.shape
    jacobian = sympy.zeros(len(nonbases), k * n)
    for row, subset in enumerate(nonbases):
        columns = [j - 1 for j in subset]
        if k == 1:
            cofactors = sympy.ones(1, 1)
        else:
            cofactors = matrix.extract(list(range(k)), columns).cofactor_matrix()
        for i in range(k):
            for position, j in enumerate(columns):
                jacobian[row, i * n + j] = cofactors[i, position]
    return jacobian


def jacobian_rank_oracle(positroid: Positroid, subset) -> int:
    """Rank of the nonbasis Jacobian at A_J, computed exactly"""
    _require_basis(positroid, subset)
    nonbases = positroid.nonbases()
    if not nonbases:
        return 0
    jacobian = jacobian_matrix(nonbases, coordinate_matrix(subset, positroid.n))
    return jacobian.rank()


def gale_bounds_hold(positroid: Positroid, dp: DecoratedPermutation) -> bool:
    """I_r <=_r I <=_r w^-1(I_r) for every basis I and every r"""
    n = positroid.n
    necklace = grassmann_necklace(dp)
    inverse = dp.perm.inverse()
    for r in range(1, n + 1):
        lower = necklace[r]
        upper = [inverse(i) for i in lower]
        for subset in positroid.subsets():
            if not (gale_leq(lower, subset, r, n) and gale_leq(subset, upper, r, n)):
                return False
    return True


def connected_components(positroid: Positroid) -> List[KSubset]:
    """Matroid components: e ~ f when some basis B has e in B, f not in B and B - e + f a basis"""
    graph = nx.Graph()
    graph.add_nodes_from(range(1, positroid.n + 1))
    for mask in positroid.bases:
        for other in _johnson_neighbours(mask, positroid.n):
            if other in positroid.basis_set:
                removed = mask_to_subset(mask & ~other)[0]
                added = mask_to_subset(other & ~mask)[0]
                graph.add_edge(removed, added)
    return sorted(tuple(sorted(component)) for component in nx.connected_components(graph))


def is_direct_sum_of_uniform(positroid: Positroid) -> Tuple[bool, KSubset]:
    """Whether every connected component is uniform; returns the first offending block"""
    for block in connected_components(positroid):
        if not positroid.restriction(block).is_uniform():
            return False, block
    return True, ()

