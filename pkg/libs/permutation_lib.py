#!/usr/bin/env python3
"""
Permutation library: one-line permutations of [n], Bruhat order and
canonical coset representatives for Grassmann intervals
"""

import itertools
import logging
import operator
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

# Largest n for which S_n is filtered element by element
MAX_INTERVAL_N = 8

KSubset = Tuple[int, ...]


class InvariantError(RuntimeError):
    """Raised when two independent computations of the same quantity disagree"""


def as_integer(value) -> int:
    """Exact integer value; floats, strings and booleans are rejected"""
    if isinstance(value, bool):
        raise ValueError(f"Expected an integer, got {value!r}")
    try:
        return operator.index(value)
    except TypeError:
        raise ValueError(f"Expected an integer, got {value!r}")


def ksubset(elements: Iterable[int], n: int) -> KSubset:
    """Validate and normalize a subset of [n] to a sorted tuple"""
    values = tuple(sorted(as_integer(e) for e in elements))
    if len(set(values)) != len(values):
        raise ValueError(f"Repeated elements in subset {list(values)}")
    for e in values:
        if e < 1 or e > n:
            raise ValueError(f"Element {e} outside the ground set [1, {n}]")
    return values


def subset_to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def mask_to_subset(mask: int) -> KSubset:
    elements = []
    i = 1
    while mask:
        if mask & 1:
            elements.append(i)
        mask >>= 1
        i += 1
    return tuple(elements)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def gale_leq_sets(first: Sequence[int], second: Sequence[int]) -> bool:
    """Componentwise comparison of two equal-size sets after sorting"""
    if len(first) != len(second):
        raise ValueError("Gale order compares sets of equal size")
    return all(a <= b for a, b in zip(sorted(first), sorted(second)))


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of [n] in 1-based one-line notation"""

    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(as_integer(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError("Permutations need n >= 1")
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"Not a permutation of [1, {len(values)}]: {list(values)}")

    @classmethod
    def from_string(cls, word: str) -> "Permutation":
        """Parse compact one-line notation such as '3124' (n <= 9)"""
        return cls(tuple(int(ch) for ch in word))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("Cannot compose permutations of different sizes")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, value in enumerate(self.values, 1):
            inv[value - 1] = i
        return Permutation(tuple(inv))

    def fixed_points(self) -> Tuple[int, ...]:
        return tuple(i for i, value in enumerate(self.values, 1) if i == value)

    def initial_set(self, k: int) -> KSubset:
        if not 0 <= k <= self.n:
            raise ValueError(f"k={k} outside [0, {self.n}]")
        return tuple(sorted(self.values[:k]))

    def swap_positions(self, i: int, j: int) -> "Permutation":
        """Right multiplication by the transposition t_ij"""
        values = list(self.values)
        values[i - 1], values[j - 1] = values[j - 1], values[i - 1]
        return Permutation(tuple(values))

    def to_list(self) -> List[int]:
        return list(self.values)

    def __str__(self):
        if self.n <= 9:
            return "".join(str(v) for v in self.values)
        return " ".join(str(v) for v in self.values)


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order"""
    for values in itertools.permutations(range(1, n + 1)):
        yield Permutation(values)


def length(w: Permutation) -> int:
    """Number of inversions of w"""
    values = w.values
    return sum(
        1
        for i in range(len(values))
        for j in range(i + 1, len(values))
        if values[i] > values[j]
    )


def is_k_grassmannian(w: Permutation, k: int) -> bool:
    if not 0 <= k <= w.n:
        raise ValueError(f"k={k} outside [0, {w.n}]")
    head, tail = w.values[:k], w.values[k:]
    return all(a < b for a, b in zip(head, head[1:])) and all(a < b for a, b in zip(tail, tail[1:]))


def grassmannian_descent(w: Permutation) -> Optional[int]:
    """The k for which w is k-Grassmannian with its unique descent at k, 0 for
    the identity, None when w has two or more descents"""
    descents = [i for i in range(1, w.n) if w(i) > w(i + 1)]
    if not descents:
        return 0
    if len(descents) == 1:
        return descents[0]
    return None


def _tableau_leq(u: Permutation, v: Permutation) -> bool:
    return all(gale_leq_sets(u.values[:i], v.values[:i]) for i in range(1, u.n))


def _grassmannian_leq(u: Permutation, v: Permutation, k: int) -> bool:
    return all(u(j) <= v(j) for j in range(1, k + 1)) and all(
        u(m) >= v(m) for m in range(k + 1, u.n + 1)
    )


def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    """Bruhat order u <= v by the tableau criterion, with the direct
    comparison when v is Grassmannian"""
    if u.n != v.n:
        raise ValueError(f"Bruhat order compares permutations of equal size, got {u.n} and {v.n}")
    k = grassmannian_descent(v)
    if k is None:
        return _tableau_leq(u, v)
    result = _grassmannian_leq(u, v, k)
    if __debug__:
        if result != _tableau_leq(u, v):
            raise InvariantError(f"Bruhat criteria disagree on ({u}, {v})")
    return result


def bruhat_interval(u: Permutation, v: Permutation) -> List[Permutation]:
    """All y with u <= y <= v, lexicographically sorted"""
    if u.n != v.n:
        raise ValueError("Interval endpoints must have equal size")
    if u.n > MAX_INTERVAL_N:
        raise ValueError(f"Interval enumeration is limited to n <= {MAX_INTERVAL_N}, got n={u.n}")
    if not bruhat_leq(u, v):
        raise ValueError(f"{u} is not below {v} in Bruhat order")
    members = [y for y in all_permutations(u.n) if bruhat_leq(u, y) and bruhat_leq(y, v)]
    logger.debug(f"Bruhat interval [{u}, {v}] has {len(members)} elements")
    return members


def bruhat_covers(w: Permutation) -> List[Permutation]:
    """All w t_ij covering w"""
    base = length(w)
    covers = []
    for i in range(1, w.n):
        for j in range(i + 1, w.n + 1):
            if w(i) < w(j):
                y = w.swap_positions(i, j)
                if length(y) == base + 1:
                    covers.append(y)
    return covers


def _cocovers(w: Permutation) -> List[Permutation]:
    base = length(w)
    result = []
    for i in range(1, w.n):
        for j in range(i + 1, w.n + 1):
            if w(i) > w(j):
                y = w.swap_positions(i, j)
                if length(y) == base - 1:
                    result.append(y)
    return result


def bruhat_interval_by_covers(u: Permutation, v: Permutation) -> set:
    """[u, v] as the up-set of u met with the down-set of v under covers"""
    if u.n > MAX_INTERVAL_N:
        raise ValueError(f"Interval enumeration is limited to n <= {MAX_INTERVAL_N}, got n={u.n}")
    top = length(v)
    bottom = length(u)

    def closure(start, step, keep):
        seen = {start}
        queue = deque([start])
        while queue:
            y = queue.popleft()
            for z in step(y):
                if z not in seen and keep(z):
                    seen.add(z)
                    queue.append(z)
        return seen

    up = closure(u, bruhat_covers, lambda z: length(z) <= top)
    down = closure(v, _cocovers, lambda z: length(z) >= bottom)
    return up & down


def canonical_rep(subset: Sequence[int], v: Permutation, k: int) -> Permutation:
    """The maximal u(I, v) below v with initial set I"""
    if not is_k_grassmannian(v, k):
        raise ValueError(f"{v} is not {k}-Grassmannian")
    elements = ksubset(subset, v.n)
    if len(elements) != k:
        raise ValueError(f"Subset {list(elements)} does not have size {k}")
    for j, i_j in enumerate(elements, 1):
        if i_j > v(j):
            raise ValueError(f"Subset {list(elements)} is not below {list(v.values[:k])} entrywise")

    values = [0] * (v.n + 1)
    used = set()
    for j in range(1, k + 1):
        candidates = [i for i in elements if i <= v(j) and i not in used]
        if not candidates:
            raise ValueError(f"No admissible value at position {j} for {list(elements)}")
        values[j] = max(candidates)
        used.add(values[j])
    for j in range(v.n, k, -1):
        candidates = [x for x in range(v(j), v.n + 1) if x not in used]
        if not candidates:
            raise ValueError(f"No admissible value at position {j} for {list(elements)}")
        values[j] = min(candidates)
        used.add(values[j])
    return Permutation(tuple(values[1:]))
