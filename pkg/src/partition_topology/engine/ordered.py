"""
Ordered set partitions and the complexes Delta_n, Delta_c and Lambda_{lambda,m}.

An ordered set partition (C1, ..., Cm) of [n] (only Cm may be empty) is an
(m-2)-dimensional face. It is stored in its complex as the chain of prefix unions
U1 < U2 < ... < U_{m-1}; the vertices are the non-empty subsets of [n] (two-block
partitions (C1, C2), C2 possibly empty). Removing U_i from the chain merges C_i with
C_{i+1}, so the simplicial boundary is the alternating merge sum.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..config import ensure_within_cap
from .combinatorics import Permutation, PointedComposition
from .complexes import Face, SimplicialComplex
from .errors import InvalidInputError
from .knapsack import generating_compositions, require_knapsack, type_in_filter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderedSetPartition:
    blocks: Tuple[FrozenSet[int], ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise InvalidInputError("an ordered set partition has at least one block")
        if any(not b for b in self.blocks[:-1]):
            raise InvalidInputError("only the last block may be empty")
        seen: set = set()
        for b in self.blocks:
            if seen & b:
                raise InvalidInputError("blocks must be disjoint")
            seen |= b
        if seen != set(range(1, len(seen) + 1)):
            raise InvalidInputError(f"blocks must cover 1..n, got {sorted(seen)}")

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "OrderedSetPartition":
        return cls(tuple(frozenset(int(x) for x in b) for b in blocks))

    @classmethod
    def parse(cls, text: str) -> "OrderedSetPartition":
        """'36-127-8-45'; blocks with spaces or commas ('5 9-1 4 6-10') for n >= 10."""
        out = []
        for chunk in text.strip().split("-"):
            chunk = chunk.strip()
            if " " in chunk or "," in chunk:
                out.append([int(tok) for tok in chunk.replace(",", " ").split()])
            else:
                out.append([int(ch) for ch in chunk])
        return cls.of(out)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def dimension(self) -> int:
        return len(self.blocks) - 2

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        sep = "" if self.n <= 9 else " "
        return "-".join(sep.join(str(x) for x in sorted(b)) for b in self.blocks)

    def sizes(self) -> PointedComposition:
        return PointedComposition(tuple(len(b) for b in self.blocks))

    def merge(self, i: int) -> "OrderedSetPartition":
        """Merge blocks i and i+1 (1-based)."""
        if not 1 <= i < len(self.blocks):
            raise InvalidInputError(f"cannot merge block {i} of a {len(self.blocks)}-block partition")
        b = self.blocks
        return OrderedSetPartition(b[: i - 1] + (b[i - 1] | b[i],) + b[i + 1 :])

    def split(self, i: int, first: Iterable[int]) -> "OrderedSetPartition":
        """Replace block i (1-based) by (first, rest)."""
        head = frozenset(first)
        block = self.blocks[i - 1]
        proper = head < block or (head == block and i == len(self.blocks))
        if not head or not proper:
            raise InvalidInputError(f"{sorted(head)} does not split block {i} of {self}")
        b = self.blocks
        return OrderedSetPartition(b[: i - 1] + (head, block - head) + b[i:])

    def relabel(self, omega: Permutation) -> "OrderedSetPartition":
        return OrderedSetPartition(tuple(frozenset(omega(x) for x in b) for b in self.blocks))

    def prefix_masks(self) -> Tuple[int, ...]:
        masks, acc = [], 0
        for b in self.blocks[:-1]:
            for x in b:
                acc |= 1 << (x - 1)
            masks.append(acc)
        return tuple(masks)

    def to_json(self) -> str:
        return str(self)


def type_of(tau: OrderedSetPartition) -> PointedComposition:
    return tau.sizes()


def sigma(alpha: Permutation, c: PointedComposition) -> OrderedSetPartition:
    """Cut the word of alpha into consecutive segments of sizes c1, ..., ck."""
    if alpha.n != c.n:
        raise InvalidInputError(f"permutation of {alpha.n} does not match composition of {c.n}")
    blocks, start = [], 0
    for p in c.parts:
        blocks.append(frozenset(alpha.word[start : start + p]))
        start += p
    return OrderedSetPartition(tuple(blocks))


def sigma_inverse(facet: OrderedSetPartition) -> Permutation:
    """Smallest permutation in weak order mapping to the facet: each block written increasingly."""
    return Permutation(tuple(x for b in facet.blocks for x in sorted(b)))


# -- vertex encoding ------------------------------------------------------------


@lru_cache(maxsize=None)
def _vertex_order(n: int) -> Tuple[Tuple[int, ...], Dict[int, int]]:
    masks = tuple(sorted(range(1, 1 << n), key=lambda m: (bin(m).count("1"), m)))
    return masks, {m: i for i, m in enumerate(masks)}


def face_of(tau: OrderedSetPartition) -> Face:
    _, index = _vertex_order(tau.n)
    return tuple(index[m] for m in tau.prefix_masks())


def partition_of(face: Sequence[int], n: int) -> OrderedSetPartition:
    masks, _ = _vertex_order(n)
    full = (1 << n) - 1
    blocks, prev = [], 0
    # a chain ending in [n] yields an empty last block
    for m in (*(masks[v] for v in face), full):
        diff = m & ~prev
        blocks.append(frozenset(i + 1 for i in range(n) if diff >> i & 1))
        prev = m
    return OrderedSetPartition(tuple(blocks))


class OrderedPartitionComplex(SimplicialComplex):
    """A subcomplex of Delta_n whose faces print as ordered set partitions."""

    def __init__(self, n: int, faces: Iterable[Sequence[int]], *, closed: bool = False, name: str = ""):
        super().__init__(faces, closed=closed, face_label=lambda f: str(partition_of(f, n)))
        self.n = n
        self.name = name

    @classmethod
    def from_partitions(
        cls, n: int, taus: Iterable[OrderedSetPartition], *, name: str = ""
    ) -> "OrderedPartitionComplex":
        return cls(n, (face_of(t) for t in taus), closed=False, name=name)

    def partition(self, face: Sequence[int]) -> OrderedSetPartition:
        return partition_of(face, self.n)

    def partitions(self, d: Optional[int] = None) -> List[OrderedSetPartition]:
        faces = self.faces_of_dim(d) if d is not None else sorted(self.faces, key=lambda f: (len(f), f))
        return [partition_of(f, self.n) for f in faces]

    def contains(self, tau: OrderedSetPartition) -> bool:
        return tau.n == self.n and face_of(tau) in self.faces

    def apex(self) -> int:
        """Vertex ([n], empty)."""
        _, index = _vertex_order(self.n)
        return index[(1 << self.n) - 1]

    def __str__(self) -> str:
        return self.name or f"complex on [{self.n}]"


def ordered_partitions_of_type(n: int, sizes: Sequence[int]) -> Iterator[OrderedSetPartition]:
    """All ordered set partitions of [n] with the given block sizes."""

    def rec(rest: Tuple[int, ...], idx: int) -> Iterator[Tuple[FrozenSet[int], ...]]:
        if idx == len(sizes):
            yield ()
            return
        for block in itertools.combinations(rest, sizes[idx]):
            chosen = frozenset(block)
            for tail in rec(tuple(x for x in rest if x not in chosen), idx + 1):
                yield (chosen, *tail)

    if sum(sizes) != n:
        raise InvalidInputError(f"block sizes {list(sizes)} do not add up to {n}")
    for blocks in rec(tuple(range(1, n + 1)), 0):
        yield OrderedSetPartition(blocks)


def _facets_of(c: PointedComposition) -> Iterator[OrderedSetPartition]:
    return ordered_partitions_of_type(c.n, c.parts)


def build_Delta_c(c: PointedComposition, *, cap: Optional[int] = None) -> OrderedPartitionComplex:
    """Delta_c: ordered set partitions whose type is at least c; facets have type c."""
    ensure_within_cap(c.n, "delta", cap)
    k = OrderedPartitionComplex.from_partitions(c.n, _facets_of(c), name=f"Delta_{c}")
    logger.debug("built %s: f=%s", k, k.f_vector())
    return k


def build_Delta_n(n: int, *, cap: Optional[int] = None) -> OrderedPartitionComplex:
    return build_Delta_c(PointedComposition((1,) * n + (0,)), cap=cap)


def in_lambda(tau: OrderedSetPartition, lam: Sequence[int], m: int) -> bool:
    """phi(tau) lies in the filter generated by type {lambda, m underlined}."""
    sizes = tuple(sorted((len(b) for b in tau.blocks[:-1]), reverse=True))
    return type_in_filter(tuple(sorted(lam, reverse=True)), int(m), sizes, len(tau.blocks[-1]))


def build_Lambda(
    lam: Sequence[int],
    m: int,
    *,
    cap: Optional[int] = None,
    allow_non_knapsack: bool = False,
) -> OrderedPartitionComplex:
    """Union of Delta_c over the compositions c of type {lambda, m underlined}."""
    if not allow_non_knapsack:
        require_knapsack(lam)
    n = sum(lam) + m
    ensure_within_cap(n, "lambda", cap)
    taus = itertools.chain.from_iterable(_facets_of(c) for c in generating_compositions(lam, m))
    label = ",".join(str(p) for p in sorted(lam, reverse=True))
    k = OrderedPartitionComplex.from_partitions(n, taus, name=f"Lambda_{{{label},_{m}}}")
    logger.debug("built %s: f=%s", k, k.f_vector())
    return k


# -- chains ---------------------------------------------------------------------


class ChainElement:
    """Finite integer combination of ordered set partitions of one dimension."""

    def __init__(self, coefficients: Mapping[OrderedSetPartition, int], dimension: Optional[int] = None):
        coeffs = {t: int(v) for t, v in coefficients.items() if v}
        dims = {t.dimension for t in coeffs}
        if len(dims) > 1:
            raise InvalidInputError(f"chain mixes dimensions {sorted(dims)}")
        if dims and dimension is not None and dims != {dimension}:
            raise InvalidInputError(f"chain of dimension {dimension} holds faces of dimension {dims.pop()}")
        self.coefficients: Dict[OrderedSetPartition, int] = coeffs
        self.dimension = dims.pop() if dims else dimension

    @classmethod
    def of(cls, tau: OrderedSetPartition, coefficient: int = 1) -> "ChainElement":
        return cls({tau: coefficient})

    def __getitem__(self, tau: OrderedSetPartition) -> int:
        return self.coefficients.get(tau, 0)

    def __iter__(self):
        return iter(sorted(self.coefficients.items(), key=lambda item: str(item[0])))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainElement):
            return NotImplemented
        return self.coefficients == other.coefficients

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "ChainElement") -> "ChainElement":
        out = dict(self.coefficients)
        for t, v in other.coefficients.items():
            out[t] = out.get(t, 0) + v
        return ChainElement(out, self.dimension if self.dimension is not None else other.dimension)

    def __neg__(self) -> "ChainElement":
        return self.scale(-1)

    def __sub__(self, other: "ChainElement") -> "ChainElement":
        return self + (-other)

    def scale(self, factor: int) -> "ChainElement":
        return ChainElement({t: factor * v for t, v in self.coefficients.items()}, self.dimension)

    def relabel(self, omega: Permutation) -> "ChainElement":
        return ChainElement({t.relabel(omega): v for t, v in self.coefficients.items()}, self.dimension)

    def to_row(self, index: Mapping[OrderedSetPartition, int]) -> Dict[int, int]:
        return {index[t]: v for t, v in self.coefficients.items()}

    def to_json(self) -> Dict[str, int]:
        return {str(t): v for t, v in self}

    def __repr__(self) -> str:
        terms = " ".join(f"{'+' if v > 0 else '-'}{abs(v) if abs(v) != 1 else ''}[{t}]" for t, v in self)
        return f"ChainElement({terms or '0'})"


def boundary(x: ChainElement) -> ChainElement:
    """Alternating merge sum; a vertex (C1, C2) goes to the empty face ([n])."""
    out: Dict[OrderedSetPartition, int] = {}
    for tau, v in x.coefficients.items():
        for i in range(1, len(tau.blocks)):
            face = tau.merge(i)
            out[face] = out.get(face, 0) + (v if i % 2 else -v)
    dim = x.dimension - 1 if x.dimension is not None else None
    return ChainElement(out, dim)
