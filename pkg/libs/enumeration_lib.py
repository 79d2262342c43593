#!/usr/bin/env python3
"""
Enumeration library: exact counts of smooth positroids

Everything here is arbitrary-precision integer arithmetic. Counts come from
three independent routes: coefficient extraction from a power of the
spirograph generating function, partial Bell numbers, and a dynamic program
over noncrossing partitions that also refines the counts by rank and by the
number of SIF components.
"""

import itertools
import logging
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal, localcontext
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Tuple

from sympy.utilities.iterables import multiset_partitions

from libs.permutation_lib import InvariantError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficient i of x**i; trailing zeros dropped"""

    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        coefficients = [int(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial"""
        return len(self.coefficients) - 1

    def coefficient(self, degree: int) -> int:
        if 0 <= degree < len(self.coefficients):
            return self.coefficients[degree]
        return 0

    def __bool__(self):
        return bool(self.coefficients)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        result = list(a)
        for i, c in enumerate(b):
            result[i] += c
        return IntPolynomial(tuple(result))

    def multiply(self, other: "IntPolynomial", cap: Optional[int] = None) -> "IntPolynomial":
        """Product, dropping every term above degree cap when one is given"""
        if not self or not other:
            return IntPolynomial()
        top = self.degree + other.degree
        if cap is not None:
            top = min(top, cap)
        if top < 0:
            return IntPolynomial()
        result = [0] * (top + 1)
        for i, a in enumerate(self.coefficients[: top + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coefficients[: top - i + 1]):
                result[i + j] += a * b
        return IntPolynomial(tuple(result))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self.multiply(other)

    def power(self, exponent: int, cap: Optional[int] = None) -> "IntPolynomial":
        """Binary powering with truncation at degree cap"""
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        result = IntPolynomial.one()
        base = self.truncate(cap)
        while exponent:
            if exponent & 1:
                result = result.multiply(base, cap)
            exponent >>= 1
            if exponent:
                base = base.multiply(base, cap)
        return result

    def truncate(self, cap: Optional[int]) -> "IntPolynomial":
        if cap is None:
            return self
        return IntPolynomial(self.coefficients[: cap + 1])

    def evaluate(self, x: int) -> int:
        value = 0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def to_list(self, length: Optional[int] = None) -> List[int]:
        """Coefficients lowest degree first, zero padded to length"""
        values = list(self.coefficients)
        if length is not None:
            values += [0] * (length - len(values))
        return values


def spirograph_count(n: int) -> int:
    """Number of spirographs on [n]: 2 for n = 1, n - 1 otherwise"""
    if n < 1:
        raise ValueError(f"Spirographs need n >= 1, got {n}")
    return 2 if n == 1 else n - 1


def spirograph_series(cap: int) -> IntPolynomial:
    """1 + 2x + x^2 + 2x^3 + ... + (cap - 1)x^cap"""
    return IntPolynomial((1,) + tuple(spirograph_count(i) for i in range(1, cap + 1)))


def smooth_count_coeff(n: int) -> int:
    """s(n) as the x^n coefficient of the (n+1)-st power of the spirograph series, over n + 1"""
    if n < 1:
        raise ValueError(f"s(n) needs n >= 1, got {n}")
    coefficient = spirograph_series(n).power(n + 1, cap=n).coefficient(n)
    quotient, remainder = divmod(coefficient, n + 1)
    if remainder:
        raise InvariantError(f"[x^{n}] of the power is {coefficient}, not divisible by {n + 1}")
    return quotient


def _bell_weight(i: int) -> int:
    return spirograph_count(i) * factorial(i)


@lru_cache(maxsize=8)
def _bell_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    table = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for m in range(1, n + 1):
        for k in range(1, m + 1):
            table[m][k] = sum(
                comb(m - 1, i - 1) * _bell_weight(i) * table[m - i][k - 1]
                for i in range(1, m - k + 2)
            )
    return tuple(tuple(row) for row in table)


def bell_b(n: int, k: int) -> int:
    """Partial Bell number B_{n,k} at x_i = s_c(i) * i!"""
    if not 0 <= k <= n:
        raise ValueError(f"bell_b needs 0 <= k <= n, got n={n}, k={k}")
    return _bell_table(n)[n][k]


def bell_b_from_partitions(n: int, k: int) -> int:
    """b_{n,k} summed over the set partitions of [n] into k blocks"""
    if not 0 <= k <= n:
        raise ValueError(f"bell_b needs 0 <= k <= n, got n={n}, k={k}")
    if n == 0:
        return 1
    if k == 0:
        return 0
    total = 0
    for partition in multiset_partitions(list(range(1, n + 1)), k):
        product = 1
        for block in partition:
            product *= _bell_weight(len(block))
        total += product
    return total


def smooth_count_bell(n: int) -> int:
    """s(n) = sum over k of b_{n,k} / (n - k + 1)!"""
    if n < 1:
        raise ValueError(f"s(n) needs n >= 1, got {n}")
    total = 0
    for k in range(1, n + 1):
        total += s3_count(n, k)
    return total


def s3_count(n: int, k: int) -> int:
    quotient, remainder = divmod(bell_b(n, k), factorial(n - k + 1))
    if remainder:
        raise InvariantError(f"b_{{{n},{k}}} is not divisible by ({n - k + 1})!")
    return quotient


def noncrossing_partitions(n: int) -> Iterator[List[Tuple[int, ...]]]:
    """Every noncrossing partition of [n], blocks sorted"""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    for blocks in _noncrossing(tuple(range(1, n + 1))):
        yield sorted(blocks)


def _noncrossing(elements: Tuple[int, ...]) -> Iterator[List[Tuple[int, ...]]]:
    if not elements:
        yield []
        return
    head, rest = elements[0], elements[1:]
    for size in range(len(rest) + 1):
        for partners in itertools.combinations(range(len(rest)), size):
            block = (head,) + tuple(rest[i] for i in partners)
            cuts = [-1] + list(partners) + [len(rest)]
            gaps = [rest[a + 1 : b] for a, b in zip(cuts, cuts[1:])]
            for parts in itertools.product(*[list(_noncrossing(gap)) for gap in gaps]):
                yield [block] + [b for part in parts for b in part]


def smooth_count_by_partitions(n: int) -> int:
    total = 0
    for blocks in noncrossing_partitions(n):
        product = 1
        for block in blocks:
            product *= spirograph_count(len(block))
        total += product
    return total


def _rank_weight(m: int) -> IntPolynomial:
    # Loops give k = 0 or 1, a spirograph on m > 1 points gives k = 1, ..., m - 1
    if m == 1:
        return IntPolynomial((1, 1))
    return IntPolynomial((0,) + (1,) * (m - 1))


def _component_weight(m: int) -> IntPolynomial:
    return IntPolynomial.monomial(1, spirograph_count(m))


def _noncrossing_series(n: int, weight) -> List[IntPolynomial]:
    """F_0, ..., F_n for F = 1 + sum_m W(m) x^m F^m with polynomial weights

    powers[m][j] holds [x^j] F^m and is filled along antidiagonals m + j.
    """
    series = [IntPolynomial.one()] + [IntPolynomial()] * n
    powers = [[IntPolynomial()] * (n + 1) for _ in range(n + 1)]
    powers[0][0] = IntPolynomial.one()
    weights = [None] + [weight(m) for m in range(1, n + 1)]
    for total in range(1, n + 1):
        value = IntPolynomial()
        for m in range(1, total + 1):
            j = total - m
            entry = IntPolynomial()
            for i in range(j + 1):
                if series[i] and powers[m - 1][j - i]:
                    entry = entry + series[i] * powers[m - 1][j - i]
            powers[m][j] = entry
            value = value + weights[m] * entry
        series[total] = value
    return series


@dataclass
class CensusRow:
    n: int
    by_k: Dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.by_k.values())

    def values(self, first_k: int) -> List[int]:
        return [self.by_k.get(k, 0) for k in range(first_k, self.n + 1)]

    def q_polynomial(self) -> List[int]:
        """Coefficients of sum_k count(k) q^k, lowest degree first"""
        return [self.by_k.get(k, 0) for k in range(0, self.n + 1)]

    def to_dict(self) -> dict:
        return {"n": self.n, "by_k": {str(k): v for k, v in sorted(self.by_k.items())}}


# First k column of each table: rank starts at 0, component counts at 1
TABLE_FIRST_K = {"s1": 0, "s2": 1, "s3": 1}


@dataclass
class CensusResult:
    n: int
    totals: List[int]
    s1: List[CensusRow]
    s2: List[CensusRow]
    s3: List[CensusRow]

    def table(self, name: str) -> List[CensusRow]:
        if name not in TABLE_FIRST_K:
            raise ValueError(f"Unknown table {name!r}, expected one of {', '.join(TABLE_FIRST_K)}")
        return getattr(self, name)

    def to_dict(self) -> dict:
        data = {"n": self.n, "s": {str(m): total for m, total in enumerate(self.totals, 1)}}
        for name in TABLE_FIRST_K:
            data[name] = {
                str(row.n): {"row": row.values(TABLE_FIRST_K[name]), "q": row.q_polynomial()}
                for row in self.table(name)
            }
        return data


def census(n: int) -> CensusResult:
    """Refined tables s1 (by rank), s2 (by SIF components) and s3 (Bell formula) for 1..n"""
    if n < 1:
        raise ValueError(f"Census needs n >= 1, got {n}")
    by_rank = _noncrossing_series(n, _rank_weight)
    by_components = _noncrossing_series(n, _component_weight)

    s1, s2, s3, totals = [], [], [], []
    for m in range(1, n + 1):
        row1 = CensusRow(m, {k: c for k, c in enumerate(by_rank[m].to_list(m + 1))})
        row2 = CensusRow(m, {k: c for k, c in enumerate(by_components[m].to_list(m + 1)) if k >= 1})
        row3 = CensusRow(m, {k: s3_count(m, k) for k in range(1, m + 1)})
        if row2.by_k != row3.by_k:
            raise InvariantError(f"Component counts {row2.values(1)} differ from the Bell formula {row3.values(1)} at n={m}")
        total = smooth_count_coeff(m)
        if row1.total != total or row2.total != total:
            raise InvariantError(f"Census rows at n={m} sum to {row1.total} and {row2.total}, expected {total}")
        s1.append(row1)
        s2.append(row2)
        s3.append(row3)
        totals.append(total)
    logger.info(f"Census computed for n <= {n}")
    return CensusResult(n, totals, s1, s2, s3)


def growth_ratio(n: int, digits: int) -> str:
    """s(n+1)/s(n) rounded half up to the given number of significant digits"""
    if n < 1:
        raise ValueError(f"growth_ratio needs n >= 1, got {n}")
    if digits < 1:
        raise ValueError(f"digits must be positive, got {digits}")
    numerator = smooth_count_coeff(n + 1)
    denominator = smooth_count_coeff(n)
    with localcontext() as context:
        context.prec = digits
        context.rounding = ROUND_HALF_UP
        ratio = Decimal(numerator) / Decimal(denominator)
    return format(ratio, "f")


def census_rows_from_counts(n: int, counts: Dict[str, Dict[int, int]]) -> Dict[str, CensusRow]:
    """Wrap raw per-k counters, as produced by a brute-force sweep, into rows"""
    return {name: CensusRow(n, dict(sorted(by_k.items()))) for name, by_k in counts.items()}

