#!/usr/bin/env python3
"""
Decorated permutations and their chord diagrams

Covers the shifted anti-exceedance sets (Grassmann necklaces), the shuffle
bijection with Grassmann intervals, alignments and crossings between arcs,
spirographs, the decomposition into stabilized-interval-free components on a
noncrossing partition, and the rigid motions of the chord diagram.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from libs.permutation_lib import (
    InvariantError,
    KSubset,
    Permutation,
    all_permutations,
    as_integer,
    bruhat_leq,
    is_k_grassmannian,
    ksubset,
)

logger = logging.getLogger(__name__)

CW = "cw"
CCW = "ccw"

PORT = "port"
STARBOARD = "starboard"

CROSSING = "crossing"
ALIGNMENT = "alignment"
MISALIGNMENT = "misalignment"


def cyclic_interval(a: int, b: int, n: int) -> FrozenSet[int]:
    """[a, b] read cyclically on [n]; endpoints are reduced mod n first"""
    a = (a - 1) % n + 1
    b = (b - 1) % n + 1
    if a <= b:
        return frozenset(range(a, b + 1))
    return frozenset(itertools.chain(range(a, n + 1), range(1, b + 1)))


def cyclic_less(i: int, j: int, r: int, n: int) -> bool:
    """i <_r j in the linear order r < r+1 < ... < n < 1 < ... < r-1"""
    return (i - r) % n < (j - r) % n


@dataclass(frozen=True)
class DecoratedPermutation:
    """A permutation together with an orientation on each fixed point"""

    perm: Permutation
    cw_points: FrozenSet[int] = frozenset()

    def __post_init__(self):
        cw_points = frozenset(as_integer(i) for i in self.cw_points)
        object.__setattr__(self, "cw_points", cw_points)
        stray = cw_points - set(self.perm.fixed_points())
        if stray:
            raise ValueError(f"Orientation given for non-fixed points {sorted(stray)}")

    @classmethod
    def create(cls, values: Sequence[int], cw: Sequence[int] = (), ccw: Sequence[int] = ()) -> "DecoratedPermutation":
        """Build from one-line values and explicit cw/ccw fixed point lists"""
        perm = Permutation(tuple(values))
        fixed = set(perm.fixed_points())
        cw_set, ccw_set = {as_integer(i) for i in cw}, {as_integer(i) for i in ccw}
        if cw_set & ccw_set:
            raise ValueError(f"Fixed points {sorted(cw_set & ccw_set)} are both cw and ccw")
        if cw_set | ccw_set != fixed:
            raise ValueError(
                f"Orientations {sorted(cw_set | ccw_set)} must cover exactly the fixed points {sorted(fixed)}"
            )
        return cls(perm, frozenset(cw_set))

    @classmethod
    def from_dict(cls, data: dict) -> "DecoratedPermutation":
        values = data["w"]
        if "n" in data and as_integer(data["n"]) != len(values):
            raise ValueError(f"Declared n={data['n']} but w has {len(values)} entries")
        return cls.create(values, data.get("cw", []), data.get("ccw", []))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "w": self.perm.to_list(),
            "cw": sorted(self.cw_points),
            "ccw": sorted(self.ccw_points),
        }

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def ccw_points(self) -> FrozenSet[int]:
        return frozenset(self.perm.fixed_points()) - self.cw_points

    @property
    def orientation(self) -> Dict[int, str]:
        return {i: (CW if i in self.cw_points else CCW) for i in self.perm.fixed_points()}

    @property
    def k(self) -> int:
        return len(anti_exceedance_set(self, 1))

    def __call__(self, i: int) -> int:
        return self.perm(i)

    def arc(self, tail: int) -> "Arc":
        head = self.perm(tail)
        if head == tail:
            return Arc(tail, head, self.orientation[tail])
        return Arc(tail, head)

    def arcs(self) -> List["Arc"]:
        return [self.arc(i) for i in range(1, self.n + 1)]

    def reverse_arcs(self) -> "DecoratedPermutation":
        return DecoratedPermutation(self.perm.inverse(), self.ccw_points)

    def reflect(self) -> "DecoratedPermutation":
        n = self.n
        values = tuple(n + 1 - self.perm(n + 1 - i) for i in range(1, n + 1))
        return DecoratedPermutation(Permutation(values), frozenset(n + 1 - i for i in self.ccw_points))

    def rotate(self, shift: int) -> "DecoratedPermutation":
        n = self.n
        values = [0] * n
        for i in range(1, n + 1):
            values[(i + shift - 1) % n] = (self.perm(i) + shift - 1) % n + 1
        return DecoratedPermutation(
            Permutation(tuple(values)),
            frozenset((i + shift - 1) % n + 1 for i in self.cw_points),
        )

    def __str__(self):
        marks = []
        for i, value in enumerate(self.perm.values, 1):
            if i == value:
                marks.append(f"{value}{'↻' if i in self.cw_points else '↺'}")
            else:
                marks.append(str(value))
        return " ".join(marks)


@dataclass(frozen=True, order=True)
class Arc:
    """A directed arc i -> w(i) of the chord diagram"""

    tail: int
    head: int
    loop_orientation: Optional[str] = None

    def __post_init__(self):
        if (self.tail == self.head) != (self.loop_orientation is not None):
            raise ValueError("Loop orientation is present exactly on loops")

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def to_list(self) -> List[int]:
        return [self.tail, self.head]


@dataclass(frozen=True)
class Alignment:
    port: Arc
    starboard: Arc

    @property
    def key(self) -> Tuple[int, int]:
        """The (p, s) label A(p, s)"""
        return (self.port.tail, self.starboard.tail)

    def to_dict(self) -> dict:
        return {"port": self.port.to_list(), "starboard": self.starboard.to_list()}


@dataclass(frozen=True)
class CrossedAlignment:
    alignment: Alignment
    crosser: Arc
    tacking: str

    @property
    def key(self) -> Tuple[int, int, int]:
        """The (p, s, x) label A(p, s, x)"""
        return self.alignment.key + (self.crosser.tail,)

    def to_dict(self) -> dict:
        data = self.alignment.to_dict()
        data["crosser"] = self.crosser.to_list()
        data["tacking"] = self.tacking
        return data


@dataclass(frozen=True)
class GrassmannInterval:
    """A Bruhat interval [u, v] with v k-Grassmannian"""

    u: Permutation
    v: Permutation
    k: int

    def __post_init__(self):
        if self.u.n != self.v.n:
            raise ValueError("Interval endpoints must have equal size")
        if not is_k_grassmannian(self.v, self.k):
            raise ValueError(f"{self.v} is not {self.k}-Grassmannian")
        if not bruhat_leq(self.u, self.v):
            raise ValueError(f"{self.u} is not below {self.v} in Bruhat order")

    @property
    def n(self) -> int:
        return self.v.n

    @classmethod
    def from_dict(cls, data: dict) -> "GrassmannInterval":
        return cls(Permutation(tuple(data["u"])), Permutation(tuple(data["v"])), as_integer(data["k"]))

    def to_dict(self) -> dict:
        return {"u": self.u.to_list(), "v": self.v.to_list(), "k": self.k}


@dataclass(frozen=True)
class GrassmannNecklace:
    n: int
    k: int
    sets: Tuple[KSubset, ...]

    def __post_init__(self):
        sets = tuple(ksubset(s, self.n) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if len(sets) != self.n:
            raise ValueError(f"A necklace on [{self.n}] has {self.n} sets, got {len(sets)}")
        if any(len(s) != self.k for s in sets):
            raise ValueError(f"Every necklace set must have size {self.k}")

    @classmethod
    def from_sets(cls, sets: Sequence[Sequence[int]]) -> "GrassmannNecklace":
        if not sets:
            raise ValueError("Empty necklace")
        n = len(sets)
        return cls(n, len(sets[0]), tuple(tuple(s) for s in sets))

    def __getitem__(self, r: int) -> KSubset:
        """I_r for r in [n]"""
        return self.sets[r - 1]

    def to_list(self) -> List[List[int]]:
        return [list(s) for s in self.sets]


@dataclass(frozen=True)
class NoncrossingPartition:
    n: int
    blocks: Tuple[KSubset, ...] = field(default=())

    def __post_init__(self):
        blocks = tuple(sorted(ksubset(b, self.n) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        covered = sorted(e for b in blocks for e in b)
        if covered != list(range(1, self.n + 1)):
            raise ValueError(f"Blocks {[list(b) for b in blocks]} do not partition [1, {self.n}]")
        for first, second in itertools.combinations(blocks, 2):
            if blocks_cross(first, second):
                raise ValueError(f"Blocks {list(first)} and {list(second)} cross")

    def to_list(self) -> List[List[int]]:
        return [list(b) for b in self.blocks]


def blocks_cross(first: Sequence[int], second: Sequence[int]) -> bool:
    """Two disjoint sets cross when the second meets more than one gap of the first"""
    ordered = sorted(first)
    gaps = set()
    for x in second:
        position = sum(1 for e in ordered if e < x) % len(ordered)
        gaps.add(position)
    return len(gaps) > 1


def anti_exceedance_set(dp: DecoratedPermutation, r: int) -> KSubset:
    """I_r = {i : i <_r w^-1(i)} together with the clockwise fixed points"""
    n = dp.n
    if not 1 <= r <= n:
        raise ValueError(f"r={r} outside [1, {n}]")
    inverse = dp.perm.inverse()
    return tuple(
        i
        for i in range(1, n + 1)
        if i in dp.cw_points or cyclic_less(i, inverse(i), r, n)
    )


def grassmann_necklace(dp: DecoratedPermutation) -> GrassmannNecklace:
    sets = tuple(anti_exceedance_set(dp, r) for r in range(1, dp.n + 1))
    return GrassmannNecklace(dp.n, len(sets[0]), sets)


def from_necklace(necklace: GrassmannNecklace) -> DecoratedPermutation:
    """Recover the decorated permutation from I_1, ..., I_n"""
    n = necklace.n
    values = [0] * n
    cw = set()
    for r in range(1, n + 1):
        current = set(necklace[r])
        following = set(necklace[r % n + 1])
        if current == following:
            values[r - 1] = r
            if r in current:
                cw.add(r)
            continue
        if r not in current or current - following != {r} or len(following - current) != 1:
            raise ValueError(f"Sets I_{r} and I_{r % n + 1} do not differ by one step at {r}")
        values[r - 1] = (following - current).pop()
    try:
        dp = DecoratedPermutation(Permutation(tuple(values)), frozenset(cw))
    except ValueError as e:
        raise ValueError(f"Not a Grassmann necklace: {e}") from e
    if grassmann_necklace(dp) != necklace:
        raise ValueError("Not a Grassmann necklace: the recovered permutation does not reproduce it")
    return dp


def to_grassmann_interval(dp: DecoratedPermutation) -> GrassmannInterval:
    """Shuffle the columns of w so the preimages of I_1 come first"""
    first = anti_exceedance_set(dp, 1)
    inverse = dp.perm.inverse()
    head = sorted(inverse(i) for i in first)
    tail = sorted(set(range(1, dp.n + 1)) - set(head))
    v = Permutation(tuple(head + tail))
    u = dp.perm * v
    return GrassmannInterval(u, v, len(first))


def from_grassmann_interval(interval: GrassmannInterval) -> DecoratedPermutation:
    w = interval.u * interval.v.inverse()
    head = set(interval.u.values[: interval.k])
    return DecoratedPermutation(w, frozenset(j for j in w.fixed_points() if j in head))


def _crosses_from(i: int, wi: int, j: int, wj: int, n: int) -> bool:
    def d(x):
        return (x - i) % n

    far = n if wj == i else d(wj)
    return 0 < d(j) <= d(wi) < far


def crossings(first: Arc, second: Arc, n: int) -> bool:
    """Whether two arcs of the same diagram cross; loops never cross"""
    if first.is_loop or second.is_loop or first.tail == second.tail:
        return False
    return _crosses_from(first.tail, first.head, second.tail, second.head, n) or _crosses_from(
        second.tail, second.head, first.tail, first.head, n
    )


def _is_aligned(dp: DecoratedPermutation, port: Arc, starboard: Arc) -> bool:
    n = dp.n
    p, wp, s, ws = port.tail, port.head, starboard.tail, starboard.head
    if wp not in cyclic_interval(p, ws - 1, n) or ws not in cyclic_interval(wp + 1, s, n):
        return False
    if starboard.is_loop and starboard.loop_orientation != CW:
        return False
    if port.is_loop and port.loop_orientation != CCW:
        return False
    if not port.is_loop and not starboard.is_loop and {p, wp} & {s, ws}:
        return False
    return True


def classify_pair(dp: DecoratedPermutation, first: Arc, second: Arc):
    """Classify two distinct arcs; returns (kind, alignment or None)"""
    if crossings(first, second, dp.n):
        return CROSSING, None
    forward = _is_aligned(dp, first, second)
    backward = _is_aligned(dp, second, first)
    if forward and backward:
        raise InvariantError(f"Arcs {first} and {second} align in both directions")
    if forward:
        return ALIGNMENT, Alignment(first, second)
    if backward:
        return ALIGNMENT, Alignment(second, first)
    return MISALIGNMENT, None


def alignments(dp: DecoratedPermutation) -> List[Alignment]:
    """All alignments, sorted by (port tail, starboard tail)"""
    found = []
    for first, second in itertools.combinations(dp.arcs(), 2):
        kind, alignment = classify_pair(dp, first, second)
        if kind == ALIGNMENT:
            found.append(alignment)
    return sorted(found, key=lambda a: a.key)


def crossed_alignments(dp: DecoratedPermutation) -> List[CrossedAlignment]:
    n = dp.n
    found = []
    arcs = dp.arcs()
    for alignment in alignments(dp):
        port, starboard = alignment.port, alignment.starboard
        if port.is_loop or starboard.is_loop:
            continue
        for crosser in arcs:
            if crosser.tail in (port.tail, starboard.tail):
                continue
            if not (crossings(crosser, port, n) and crossings(crosser, starboard, n)):
                continue
            x, wx = crosser.tail, crosser.head
            starboard_side = cyclic_interval(starboard.head, starboard.tail, n)
            port_side = cyclic_interval(port.tail, port.head, n)
            if x in starboard_side and wx in port_side:
                tacking = STARBOARD
            elif x in port_side and wx in starboard_side:
                tacking = PORT
            else:
                raise InvariantError(f"Crossing arc {crosser} of {alignment} has no tacking side")
            found.append(CrossedAlignment(alignment, crosser, tacking))
    return sorted(found, key=lambda c: c.key)


def spirograph(n: int, k: int) -> DecoratedPermutation:
    """pi_{n,k}: i -> i + k mod n"""
    if n < 1:
        raise ValueError("Spirographs need n >= 1")
    if n == 1:
        if k not in (0, 1):
            raise ValueError("The spirographs on [1] have k in {0, 1}")
        return DecoratedPermutation(Permutation((1,)), frozenset({1}) if k == 1 else frozenset())
    if not 0 < k < n:
        raise ValueError(f"Spirographs on [{n}] have 0 < k < {n}, got {k}")
    return DecoratedPermutation(Permutation(tuple((i + k - 1) % n + 1 for i in range(1, n + 1))))


def is_spirograph(dp: DecoratedPermutation) -> Optional[int]:
    """The shift m with w(i) = i + m mod n, or None"""
    n = dp.n
    if n == 1:
        return 0
    m = (dp(1) - 1) % n
    if m == 0:
        return None
    if all(dp(i) == (i + m - 1) % n + 1 for i in range(1, n + 1)):
        return m
    return None


def is_sif(dp: DecoratedPermutation) -> bool:
    """No proper nonempty interval [a, b] with w[a, b] = [a, b]"""
    n = dp.n
    for a in range(1, n + 1):
        low, high = n + 1, 0
        for b in range(a, n + 1):
            low = min(low, dp(b))
            high = max(high, dp(b))
            if (a, b) != (1, n) and low == a and high == b:
                return False
    return True


def cycle_supports(perm: Permutation) -> List[KSubset]:
    seen = set()
    supports = []
    for start in range(1, perm.n + 1):
        if start in seen:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = perm(i)
        supports.append(tuple(sorted(cycle)))
    return supports


def _merge_crossing(parts: List[KSubset]) -> List[KSubset]:
    parts = [tuple(p) for p in parts]
    merged = True
    while merged:
        merged = False
        for a, b in itertools.combinations(range(len(parts)), 2):
            if blocks_cross(parts[a], parts[b]):
                joined = tuple(sorted(parts[a] + parts[b]))
                parts = [p for idx, p in enumerate(parts) if idx not in (a, b)] + [joined]
                merged = True
                break
    return sorted(parts)


def restrict(dp: DecoratedPermutation, block: Sequence[int]) -> DecoratedPermutation:
    """Restriction of dp to a union of its cycles, relabeled to [|block|]"""
    block = sorted(block)
    rank = {e: idx for idx, e in enumerate(block, 1)}
    try:
        values = tuple(rank[dp(e)] for e in block)
    except KeyError as e:
        raise ValueError(f"Block {block} is not a union of cycles") from e
    return DecoratedPermutation(
        Permutation(values), frozenset(rank[e] for e in block if e in dp.cw_points)
    )


def assemble(partition: NoncrossingPartition, components: Sequence[DecoratedPermutation]) -> DecoratedPermutation:
    """Place each component on its block; inverse of the SIF decomposition"""
    if len(partition.blocks) != len(components):
        raise ValueError("One component per block is required")
    values = [0] * partition.n
    cw = set()
    for block, component in zip(partition.blocks, components):
        if component.n != len(block):
            raise ValueError(f"Component of size {component.n} placed on block of size {len(block)}")
        for idx, element in enumerate(block, 1):
            values[element - 1] = block[component(idx) - 1]
            if idx in component.cw_points:
                cw.add(element)
    return DecoratedPermutation(Permutation(tuple(values)), frozenset(cw))


def sif_decomposition(dp: DecoratedPermutation, check_components: bool = True):
    """Split dp into decorated SIF components on a noncrossing partition

    Cycle supports are merged while any two of them cross. The result is
    checked against the SIF test and, when check_components is set, against
    the connected components of the positroid, which win on disagreement.
    """
    blocks = _merge_crossing(cycle_supports(dp.perm))
    components = [restrict(dp, block) for block in blocks]
    consistent = all(is_sif(c) for c in components)
    if consistent and not check_components:
        return NoncrossingPartition(dp.n, tuple(blocks)), components

    # positroid_lib imports this module
    from libs.positroid_lib import connected_components, positroid_from_decorated

    matroid_blocks = connected_components(positroid_from_decorated(dp))
    if consistent and matroid_blocks == blocks:
        return NoncrossingPartition(dp.n, tuple(blocks)), components
    logger.warning(f"Crossing closure disagrees with matroid connectivity for {dp}, using matroid components")
    components = [restrict(dp, block) for block in matroid_blocks]
    return NoncrossingPartition(dp.n, tuple(matroid_blocks)), components


def direct_sum(first: DecoratedPermutation, second: DecoratedPermutation) -> DecoratedPermutation:
    """Concatenate, shifting the second ground set by first.n"""
    offset = first.n
    values = first.perm.values + tuple(v + offset for v in second.perm.values)
    cw = set(first.cw_points) | {i + offset for i in second.cw_points}
    return DecoratedPermutation(Permutation(values), frozenset(cw))


TRANSFORMS = ("reverse_arcs", "reflect", "rotate")


def transform(dp: DecoratedPermutation, name: str, shift: int = 0) -> DecoratedPermutation:
    if name == "reverse_arcs":
        return dp.reverse_arcs()
    if name == "reflect":
        return dp.reflect()
    if name == "rotate":
        return dp.rotate(shift)
    raise ValueError(f"Unknown transformation {name!r}, expected one of {', '.join(TRANSFORMS)}")


def normalize_crossed_alignment(dp: DecoratedPermutation, crossed: CrossedAlignment):
    """Reflect to starboard tacking, then rotate the crosser's tail to 1"""
    n = dp.n
    target = dp
    x = crossed.crosser.tail
    p, s = crossed.alignment.port.tail, crossed.alignment.starboard.tail
    if crossed.tacking == PORT:
        # Reflection swaps the port and starboard sides
        target = dp.reflect()
        x, p, s = n + 1 - x, n + 1 - s, n + 1 - p
    shift = 1 - x
    target = target.rotate(shift)

    def moved(i):
        return (i + shift - 1) % n + 1

    key = (moved(p), moved(s), 1)
    for candidate in crossed_alignments(target):
        if candidate.key == key:
            if candidate.tacking != STARBOARD:
                raise InvariantError(f"Normalized crossed alignment {key} is not starboard tacking")
            return target, candidate
    raise InvariantError(f"Crossed alignment {crossed.key} lost under normalization")


def all_decorated_permutations(n: int) -> Iterator[DecoratedPermutation]:
    """Lexicographic in one-line notation, then by orientation bitmask"""
    for perm in all_permutations(n):
        yield from decorations(perm)


def decorations(perm: Permutation) -> Iterator[DecoratedPermutation]:
    fixed = perm.fixed_points()
    for mask in range(1 << len(fixed)):
        yield DecoratedPermutation(
            perm, frozenset(f for bit, f in enumerate(fixed) if mask >> bit & 1)
        )


def random_decorated(n: int, rng: random.Random) -> DecoratedPermutation:
    values = list(range(1, n + 1))
    rng.shuffle(values)
    perm = Permutation(tuple(values))
    return DecoratedPermutation(perm, frozenset(f for f in perm.fixed_points() if rng.random() < 0.5))
