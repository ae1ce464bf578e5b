"""
Pointed set partitions and the posets built from them.

Pi*_n has the pointed set partitions of [n] as elements, ordered by merging two
blocks or merging a block into the zero set Z. Pi*_c and the filter Pi*_{lambda,m}
are induced subposets selected by the type {block sizes, |Z| underlined}.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.utilities.iterables import multiset_partitions

from ..config import ensure_within_cap
from .combinatorics import PointedComposition
from .errors import InvalidInputError
from .knapsack import require_knapsack, type_in_filter
from .ordered import OrderedSetPartition
from .posets import FinitePoset

logger = logging.getLogger(__name__)

Block = FrozenSet[int]


def _render_block(block: Iterable[int], n: int) -> str:
    return ("" if n <= 9 else ",").join(str(x) for x in sorted(block))


def _canonical(blocks: Iterable[Iterable[int]]) -> Tuple[Block, ...]:
    return tuple(sorted((frozenset(b) for b in blocks), key=min))


@dataclass(frozen=True)
class PointedSetPartition:
    blocks: Tuple[Block, ...]
    zero: Block
    n: int

    def __post_init__(self) -> None:
        if any(not b for b in self.blocks):
            raise InvalidInputError("blocks of a pointed set partition are non-empty")
        seen = set(self.zero)
        for b in self.blocks:
            if seen & b:
                raise InvalidInputError("blocks and zero set must be disjoint")
            seen |= b
        if seen != set(range(1, self.n + 1)):
            raise InvalidInputError(f"blocks and zero set must cover 1..{self.n}")
        object.__setattr__(self, "blocks", _canonical(self.blocks))

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]], zero: Iterable[int] = ()) -> "PointedSetPartition":
        bs = [frozenset(int(x) for x in b) for b in blocks]
        z = frozenset(int(x) for x in zero)
        return cls(tuple(bs), z, sum(len(b) for b in bs) + len(z))

    @classmethod
    def parse(cls, text: str) -> "PointedSetPartition":
        """'1358|4|_267': the segment starting with '_' is the zero set."""
        blocks, zero = [], []
        for chunk in text.strip().split("|"):
            chunk = chunk.strip()
            target = blocks
            if chunk.startswith("_"):
                chunk = chunk[1:]
                target = None
            values = [int(t) for t in chunk.split(",")] if "," in chunk else [int(ch) for ch in chunk]
            if target is None:
                zero.extend(values)
            elif values:
                blocks.append(values)
        return cls.of(blocks, zero)

    def type(self) -> Tuple[Tuple[int, ...], int]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True)), len(self.zero)

    def covers(self) -> List["PointedSetPartition"]:
        """Elements covering this one: merge two blocks, or a block into Z."""
        out = []
        bs = self.blocks
        for i, j in itertools.combinations(range(len(bs)), 2):
            rest = [b for t, b in enumerate(bs) if t not in (i, j)]
            out.append(PointedSetPartition(tuple(rest) + (bs[i] | bs[j],), self.zero, self.n))
        for i in range(len(bs)):
            out.append(PointedSetPartition(bs[:i] + bs[i + 1 :], self.zero | bs[i], self.n))
        return out

    def __str__(self) -> str:
        parts = [_render_block(b, self.n) for b in self.blocks]
        parts.append("_" + _render_block(self.zero, self.n))
        return "|".join(parts)


@dataclass(frozen=True)
class SetPartition:
    blocks: Tuple[Block, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", _canonical(self.blocks))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def covers(self) -> List["SetPartition"]:
        bs = self.blocks
        return [
            SetPartition(tuple(b for t, b in enumerate(bs) if t not in (i, j)) + (bs[i] | bs[j],))
            for i, j in itertools.combinations(range(len(bs)), 2)
        ]

    def __str__(self) -> str:
        return "|".join(_render_block(b, self.n) for b in self.blocks)


def all_pointed_partitions(n: int) -> List[PointedSetPartition]:
    """Set partitions of [n+1]; the block holding n+1 becomes Z."""
    out = []
    for partition in multiset_partitions(list(range(1, n + 2))):
        blocks, zero = [], frozenset()
        for block in partition:
            if n + 1 in block:
                zero = frozenset(block) - {n + 1}
            else:
                blocks.append(frozenset(block))
        out.append(PointedSetPartition(tuple(blocks), zero, n))
    return out


def _by_refinement(elements: Sequence) -> List:
    # finer partitions first keeps the bottom at index 0
    return sorted(elements, key=lambda x: (-len(x.blocks), str(x)))


def _poset_from_covers(elements: Sequence, keep: Callable[[object], bool] = lambda x: True) -> FinitePoset:
    ordered = _by_refinement(elements)
    covers = [(x, y) for x in ordered for y in x.covers() if keep(y)]
    return FinitePoset(ordered, covers)


@lru_cache(maxsize=None)
def build_pointed_partition_lattice(n: int, *, cap: Optional[int] = None) -> FinitePoset:
    if n < 1:
        raise InvalidInputError("Pi*_n needs n >= 1")
    ensure_within_cap(n, "pointed_lattice", cap)
    poset = _poset_from_covers(all_pointed_partitions(n))
    logger.debug("built Pi*_%d: %d elements, %d covers", n, len(poset), len(poset.covers()))
    return poset


def _types_above(c: PointedComposition) -> set:
    cuts = sorted(c.cuts())
    return {
        PointedComposition.from_cuts(c.n, subset).type()
        for r in range(len(cuts) + 1)
        for subset in itertools.combinations(cuts, r)
    }


def build_subposet_Pi_c(c: PointedComposition, *, cap: Optional[int] = None) -> FinitePoset:
    """Pointed partitions whose type is type(d) for some d >= c."""
    lattice = build_pointed_partition_lattice(c.n, cap=cap)
    types = _types_above(c)
    poset = lattice.induced(x for x in lattice.elements if x.type() in types)
    logger.debug("built Pi*_%s: %d elements", c, len(poset))
    return poset


def in_filter(pi: PointedSetPartition, lam: Sequence[int], m: int) -> bool:
    sizes, zero = pi.type()
    return type_in_filter(tuple(sorted(lam, reverse=True)), int(m), sizes, zero)


def build_filter_Pi_lambda_m(
    lam: Sequence[int],
    m: int,
    *,
    cap: Optional[int] = None,
    allow_non_knapsack: bool = False,
) -> FinitePoset:
    """Filter of Pi*_n generated by the pointed partitions of type {lambda, m underlined}."""
    if not allow_non_knapsack:
        require_knapsack(lam)
    if m < 0:
        raise InvalidInputError("the pointed part must be non-negative")
    lattice = build_pointed_partition_lattice(sum(lam) + m, cap=cap)
    poset = lattice.induced(x for x in lattice.elements if in_filter(x, lam, m))
    logger.debug("built filter {%s, _%d}: %d elements", list(lam), m, len(poset))
    return poset


def generators_of_filter(lam: Sequence[int], m: int, *, cap: Optional[int] = None) -> List[PointedSetPartition]:
    target = (tuple(sorted(lam, reverse=True)), int(m))
    lattice = build_pointed_partition_lattice(sum(lam) + m, cap=cap)
    return [x for x in lattice.elements if x.type() == target]


# -- related lattices -----------------------------------------------------------


def set_partition_lattice(size: int) -> FinitePoset:
    """Pi_N under refinement."""
    elems = [SetPartition(_canonical(p)) for p in multiset_partitions(list(range(1, size + 1)))]
    return _poset_from_covers(elems)


def d_divisible_partition_lattice(size: int, d: int) -> FinitePoset:
    """Set partitions of [N] with every block size divisible by d (no bottom adjoined)."""
    if d < 1 or size % d:
        raise InvalidInputError(f"{size} is not a multiple of {d}")
    elems = [
        SetPartition(_canonical(p))
        for p in multiset_partitions(list(range(1, size + 1)))
        if all(len(b) % d == 0 for b in p)
    ]
    return _poset_from_covers(elems, keep=lambda y: all(len(b) % d == 0 for b in y.blocks))


def pointed_to_partition(pi: PointedSetPartition) -> SetPartition:
    """Z plus the extra element n+1 becomes an ordinary block."""
    return SetPartition(pi.blocks + (pi.zero | {pi.n + 1},))


def forgetful_map(tau: OrderedSetPartition) -> PointedSetPartition:
    """(C1, ..., Cr) -> {C1, ..., C_{r-1}, Cr underlined}."""
    return PointedSetPartition(tau.blocks[:-1], tau.blocks[-1], tau.n)


def check_isomorphism(p: FinitePoset, q: FinitePoset, f: Callable) -> Optional[Dict[str, object]]:
    """None when f is a bijection p -> q carrying covers exactly onto covers, else a witness."""
    image = {x: f(x) for x in p.elements}
    if len(set(image.values())) != len(p) or len(p) != len(q):
        return {"reason": "not a bijection", "sizes": [len(p), len(q)]}
    missing = [str(y) for y in image.values() if y not in q]
    if missing:
        return {"reason": "image outside target", "elements": missing[:5]}
    mapped = {(image[x], image[y]) for x, y in p.covers()}
    target = set(q.covers())
    if mapped != target:
        extra = sorted(f"{a} < {b}" for a, b in mapped ^ target)
        return {"reason": "covers differ", "covers": extra[:5]}
    return None


# -- hyperplane arrangement -------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Intersection of hyperplanes, stored as the reduced row echelon form of its normals."""

    normals: Tuple[Tuple, ...]

    @classmethod
    def from_normals(cls, rows: Sequence[Sequence[int]]) -> "Subspace":
        if not rows:
            return cls(())
        reduced, pivots = Matrix(rows).rref()
        return cls(tuple(tuple(reduced.row(i)) for i in range(len(pivots))))

    @property
    def codimension(self) -> int:
        return len(self.normals)

    def contains(self, other: "Subspace") -> bool:
        """other is a subspace of self, i.e. normals(self) lie in the span of normals(other)."""
        if not self.normals:
            return True
        if not other.normals:
            return False
        stacked = Matrix([*other.normals, *self.normals])
        return stacked.rank() == other.codimension

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(v) for v in row) for row in self.normals) + "]"


def _hyperplanes(n: int) -> List[List[int]]:
    planes = []
    for i, j in itertools.combinations(range(n), 2):
        row = [0] * n
        row[i], row[j] = 1, -1
        planes.append(row)
    for i in range(n):
        row = [0] * n
        row[i] = 1
        planes.append(row)
    return planes


def hyperplane_intersection_lattice(n: int) -> FinitePoset:
    """Intersections of x_i = x_j and x_i = 0 in R^n, ordered by reverse inclusion."""
    planes = _hyperplanes(n)
    found = {
        Subspace.from_normals([planes[i] for i in subset])
        for r in range(len(planes) + 1)
        for subset in itertools.combinations(range(len(planes)), r)
    }
    elems = sorted(found, key=lambda s: (s.codimension, str(s)))
    return FinitePoset.from_order(elems, lambda x, y: x.contains(y))


def subspace_of(pi: PointedSetPartition) -> Subspace:
    """x_i = x_j inside each block and x_i = 0 on Z."""
    rows = []
    for block in pi.blocks:
        first, *rest = sorted(block)
        for x in rest:
            row = [0] * pi.n
            row[first - 1], row[x - 1] = 1, -1
            rows.append(row)
    for x in sorted(pi.zero):
        row = [0] * pi.n
        row[x - 1] = 1
        rows.append(row)
    return Subspace.from_normals(rows)
