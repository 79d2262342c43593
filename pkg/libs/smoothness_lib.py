#!/usr/bin/env python3
"""
Smoothness of positroid varieties

Evaluates the equivalent smoothness criteria side by side (interval degrees,
Johnson degrees against the alignment count, Johnson regularity, crossed
alignments, spirograph components, uniform components), locates singular
torus fixed points, and implements the anti-exchange pairs at I_1 together
with the map Psi from anti-exchange pairs into alignments.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Set, Tuple

from libs.decorated_lib import (
    ALIGNMENT,
    Alignment,
    DecoratedPermutation,
    GrassmannInterval,
    anti_exceedance_set,
    classify_pair,
    crossed_alignments,
    is_spirograph,
    normalize_crossed_alignment,
    sif_decomposition,
    to_grassmann_interval,
)
from libs.permutation_lib import (
    InvariantError,
    KSubset,
    bruhat_interval,
    length,
    mask_to_subset,
    subset_to_mask,
)
from libs.positroid_lib import (
    Positroid,
    codimension,
    decorated_from_positroid,
    is_direct_sum_of_uniform,
    johnson_degree,
    johnson_degree_sequence,
    johnson_graph,
    positroid_from_decorated,
    tangent_codim,
)

logger = logging.getLogger(__name__)

SMOOTH = "smooth"
SINGULAR = "singular"

AE_GT = "AE_gt"
AE_1 = "AE_1"
AE_2 = "AE_2"

# Largest n for which C2 walks the Bruhat interval unless the caller raises it
C2_DEFAULT_MAX_N = 6

WITNESS_PRIORITY = ("crossed_alignment", "irregular_basis", "singular_fixed_point")


class SmoothnessContext:
    """Lazily computed data shared by the criteria for one decorated permutation"""

    def __init__(self, dp: DecoratedPermutation):
        self.dp = dp

    @cached_property
    def positroid(self) -> Positroid:
        return positroid_from_decorated(self.dp)

    @cached_property
    def interval(self) -> GrassmannInterval:
        return to_grassmann_interval(self.dp)

    @cached_property
    def dimension(self) -> int:
        """l(v) - l(u)"""
        return length(self.interval.v) - length(self.interval.u)

    @cached_property
    def codimension(self) -> int:
        return codimension(self.dp)

    @cached_property
    def degrees(self) -> Dict[KSubset, int]:
        return johnson_degree_sequence(self.positroid)

    @property
    def k(self) -> int:
        return self.positroid.k

    @property
    def n(self) -> int:
        return self.dp.n


def criterion_c2(context: SmoothnessContext, max_n: int = C2_DEFAULT_MAX_N) -> Tuple[bool, Optional[dict]]:
    """Johnson degree at every y[k], y in [u, v], equals l(v) - l(u)"""
    if context.n > max_n:
        raise ValueError(f"Criterion C2 enumerates the Bruhat interval and is limited to n <= {max_n}")
    interval = context.interval
    for y in bruhat_interval(interval.u, interval.v):
        subset = y.initial_set(interval.k)
        degree = johnson_degree(context.positroid, subset)
        if degree != context.dimension:
            return False, {"type": "irregular_basis", "basis": list(subset), "degree": degree}
    return True, None


def criterion_c3(context: SmoothnessContext) -> Tuple[bool, Optional[dict]]:
    """Johnson degree at every basis equals k(n-k) - #alignments"""
    target = context.k * (context.n - context.k) - context.codimension
    for subset, degree in context.degrees.items():
        if degree != target:
            return False, {"type": "irregular_basis", "basis": list(subset), "degree": degree}
    return True, None


def criterion_c4(context: SmoothnessContext) -> Tuple[bool, Optional[dict]]:
    """J(M) is regular of degree l(v) - l(u)"""
    graph = johnson_graph(context.positroid)
    for subset in sorted(graph.nodes):
        degree = graph.degree[subset]
        if degree != context.dimension:
            return False, {"type": "irregular_basis", "basis": list(subset), "degree": degree}
    return True, None


def criterion_c5(context: SmoothnessContext) -> Tuple[bool, Optional[dict]]:
    """No crossed alignments"""
    found = crossed_alignments(context.dp)
    if found:
        witness = {"type": "crossed_alignment"}
        witness.update(found[0].to_dict())
        return False, witness
    return True, None


def criterion_c6(context: SmoothnessContext) -> Tuple[bool, Optional[dict]]:
    """Every SIF component is a spirograph"""
    partition, components = sif_decomposition(context.dp, check_components=False)
    for block, component in zip(partition.blocks, components):
        if is_spirograph(component) is None:
            return False, {"type": "non_spirograph_component", "block": list(block)}
    return True, None


def criterion_c7(context: SmoothnessContext) -> Tuple[bool, Optional[dict]]:
    """M is a direct sum of uniform matroids"""
    uniform, block = is_direct_sum_of_uniform(context.positroid)
    if not uniform:
        return False, {"type": "non_uniform_component", "block": list(block)}
    return True, None


CRITERIA: Dict[str, Callable] = {
    "C3": criterion_c3,
    "C4": criterion_c4,
    "C5": criterion_c5,
    "C6": criterion_c6,
    "C7": criterion_c7,
}


@dataclass
class SmoothnessReport:
    verdict: str
    criteria: Dict[str, bool]
    witnesses: List[dict] = field(default_factory=list)

    @property
    def is_smooth(self) -> bool:
        return self.verdict == SMOOTH

    @property
    def witness(self) -> Optional[dict]:
        for kind in WITNESS_PRIORITY:
            for witness in self.witnesses:
                if witness["type"] == kind:
                    return witness
        return self.witnesses[0] if self.witnesses else None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "criteria": dict(sorted(self.criteria.items())),
            "witness": self.witness,
            "witnesses": self.witnesses,
        }


def singular_tfixed_points(positroid: Positroid, dp: Optional[DecoratedPermutation] = None) -> Set[KSubset]:
    """Bases J whose tangent space codimension falls short of the codimension"""
    if dp is None:
        dp = decorated_from_positroid(positroid)
    target = codimension(dp)
    return {
        mask_to_subset(mask)
        for mask in positroid.bases
        if tangent_codim(positroid, mask_to_subset(mask)) < target
    }


def smoothness_report(
    dp: DecoratedPermutation, include_c2: bool = False, c2_max_n: int = C2_DEFAULT_MAX_N
) -> SmoothnessReport:
    context = SmoothnessContext(dp)
    results = {name: check(context) for name, check in CRITERIA.items()}
    if include_c2:
        results["C2"] = criterion_c2(context, max_n=c2_max_n)

    criteria = {name: passed for name, (passed, _) in results.items()}
    if len(set(criteria.values())) != 1:
        raise InvariantError(f"Smoothness criteria disagree for {dp}: {criteria}")
    smooth = criteria["C5"]

    witnesses = []
    seen = set()
    for name in ("C5", "C4", "C3", "C2", "C6", "C7"):
        if name not in results:
            continue
        witness = results[name][1]
        if witness is None:
            continue
        marker = repr(sorted(witness.items()))
        if marker not in seen:
            seen.add(marker)
            witnesses.append(witness)

    singular = sorted(singular_tfixed_points(context.positroid, dp))
    if bool(singular) == smooth:
        raise InvariantError(f"Singular fixed points {singular} contradict the verdict for {dp}")
    if singular:
        witnesses.append({"type": "singular_fixed_point", "basis": list(singular[0])})

    logger.debug(f"{dp} is {SMOOTH if smooth else SINGULAR} with {len(witnesses)} witnesses")
    return SmoothnessReport(SMOOTH if smooth else SINGULAR, criteria, witnesses)


def smooth_component_count(dp: DecoratedPermutation) -> Optional[int]:
    """Number of SIF components when every one is a spirograph, None otherwise"""
    partition, components = sif_decomposition(dp, check_components=False)
    if all(is_spirograph(component) is not None for component in components):
        return len(partition.blocks)
    return None


def is_smooth(dp: DecoratedPermutation) -> bool:
    """Criterion C6 alone"""
    return smooth_component_count(dp) is not None


@dataclass(frozen=True)
class AntiExchangePair:
    a: int
    b: int
    kind: str
    witness_r: Optional[int] = None

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "class": self.kind, "witness_r": self.witness_r}


def _condition_one(inverse, a: int, r: int, n: int) -> bool:
    """Some x in [a, r-1] has w^-1(x) in [r, n]"""
    return any(r <= inverse(x) <= n for x in range(a, r))


def _condition_two(inverse, b: int, r: int) -> bool:
    """Some y in [r, b] has w^-1(y) in [1, r-1]"""
    return any(1 <= inverse(y) <= r - 1 for y in range(r, b + 1))


def _first_set(dp: DecoratedPermutation, a: int, b: int) -> KSubset:
    first = anti_exceedance_set(dp, 1)
    if a not in first:
        raise ValueError(f"a={a} is not in I_1 = {list(first)}")
    if b in first or not 1 <= b <= dp.n:
        raise ValueError(f"b={b} is not in [n] minus I_1 = {list(first)}")
    return first


def exchange_test_I1(dp: DecoratedPermutation, a: int, b: int) -> bool:
    """Whether I_1 - a + b is a basis, decided from the permutation alone"""
    _first_set(dp, a, b)
    if a > b:
        return False
    inverse = dp.perm.inverse()
    return all(
        _condition_one(inverse, a, r, dp.n) and _condition_two(inverse, b, r)
        for r in range(a + 1, b + 1)
    )


def anti_exchange_pairs(dp: DecoratedPermutation, positroid: Positroid = None) -> List[AntiExchangePair]:
    """Pairs (a, b) with a in I_1, b outside, I_1 - a + b a nonbasis; sorted by (a, b)"""
    if positroid is None:
        positroid = positroid_from_decorated(dp)
    n = dp.n
    inverse = dp.perm.inverse()
    first = anti_exceedance_set(dp, 1)
    first_mask = subset_to_mask(first)
    pairs = []
    for a in first:
        for b in range(1, n + 1):
            if b in first:
                continue
            exchanged = (first_mask & ~(1 << (a - 1))) | (1 << (b - 1))
            if exchanged in positroid:
                continue
            if a > b:
                pairs.append(AntiExchangePair(a, b, AE_GT))
                continue
            failing_one = [r for r in range(a + 1, b + 1) if not _condition_one(inverse, a, r, n)]
            if failing_one:
                pairs.append(AntiExchangePair(a, b, AE_1, min(failing_one)))
                continue
            failing_two = [r for r in range(a + 1, b + 1) if not _condition_two(inverse, b, r)]
            if not failing_two:
                raise InvariantError(f"({a}, {b}) is exchangeable by the permutation test but {list(first)} - {a} + {b} is no basis of {dp}")
            pairs.append(AntiExchangePair(a, b, AE_2, max(failing_two)))
    return pairs


def psi_map(dp: DecoratedPermutation, pair: AntiExchangePair) -> Alignment:
    """Follow w^-1 from the heads b and a until the pair of arcs is an alignment"""
    n = dp.n
    inverse = dp.perm.inverse()
    _first_set(dp, pair.a, pair.b)
    if exchange_test_I1(dp, pair.a, pair.b):
        raise ValueError(f"({pair.a}, {pair.b}) is not an anti-exchange pair of {dp}")
    p = inverse(pair.b)
    s = inverse(pair.a)
    steps = 0
    if pair.kind == AE_1:
        while p < pair.witness_r:
            p = inverse(p)
            steps += 1
            if steps > n:
                raise InvariantError(f"Psi does not terminate on {pair} for {dp}")
    elif pair.kind == AE_2:
        while not 1 <= s <= pair.witness_r - 1:
            s = inverse(s)
            steps += 1
            if steps > n:
                raise InvariantError(f"Psi does not terminate on {pair} for {dp}")
    elif pair.kind != AE_GT:
        raise ValueError(f"Unknown anti-exchange class {pair.kind!r}")

    port, starboard = dp.arc(p), dp.arc(s)
    kind, alignment = classify_pair(dp, port, starboard)
    if kind != ALIGNMENT or alignment.key != (p, s):
        raise InvariantError(f"Psi image ({p}, {s}) of {pair} is not an alignment of {dp}")
    return alignment


def uncovered_crossed_alignments(dp: DecoratedPermutation) -> List[Tuple[int, int, int]]:
    """Crossed alignments that, once normalized, receive no anti-exchange pair under Psi

    Each crossed alignment is reflected to starboard tacking and rotated so
    the crossing arc starts at 1. Returns the normalized keys (p, s, 1).
    """
    gaps = []
    for crossed in crossed_alignments(dp):
        target, normalized = normalize_crossed_alignment(dp, crossed)
        images = {psi_map(target, pair).key for pair in anti_exchange_pairs(target)}
        if normalized.alignment.key not in images:
            gaps.append(normalized.key)
    return gaps

