"""
Finite posets stored as a Hasse diagram.

Elements are kept in a linear extension (x < y implies index(x) < index(y)), so
up/down sets are Python-int bitsets over indices and every chain is an increasing
index tuple. The bitset formulation of joins follows the classic "an element whose
up-set equals the common up-set" test.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Generic, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple, TypeVar

import networkx as nx

from .complexes import SimplicialComplex
from .errors import InvalidInputError

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)

BOTTOM = "0^"
TOP = "1^"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class LatticeCheck:
    is_lattice: bool
    operation: Optional[str] = None  # "join" or "meet" that failed
    witness: Optional[Tuple[Any, Any]] = None


class FinitePoset(Generic[T]):
    def __init__(
        self,
        elements: Iterable[T],
        covers: Iterable[Tuple[T, T]],
        *,
        label: Callable[[T], str] = str,
    ):
        elems = list(elements)
        graph = nx.DiGraph()
        graph.add_nodes_from(elems)
        graph.add_edges_from(covers)
        if graph.number_of_nodes() != len(elems):
            raise InvalidInputError("covers mention elements outside the poset")
        if not nx.is_directed_acyclic_graph(graph):
            raise InvalidInputError("cover relation has a cycle")

        # lexicographical_topological_sort keeps construction deterministic
        position = {x: i for i, x in enumerate(elems)}
        self.elements: List[T] = list(nx.lexicographical_topological_sort(graph, key=position.__getitem__))
        self.index: Dict[T, int] = {x: i for i, x in enumerate(self.elements)}
        self.upper_covers: List[List[int]] = [[] for _ in self.elements]
        self.lower_covers: List[List[int]] = [[] for _ in self.elements]
        for x, y in graph.edges():
            i, j = self.index[x], self.index[y]
            self.upper_covers[i].append(j)
            self.lower_covers[j].append(i)
        for lst in (*self.upper_covers, *self.lower_covers):
            lst.sort()
        self.label = label
        self._up: Optional[List[int]] = None
        self._down: Optional[List[int]] = None

    @classmethod
    def from_order(cls, elements: Sequence[T], leq: Callable[[T, T], bool], **kw: Any) -> "FinitePoset[T]":
        """Build from an order relation; covers are the minimal strict relations."""
        elems = list(elements)
        above = {
            x: [y for y in elems if y != x and leq(x, y)]
            for x in elems
        }
        covers = [
            (x, y)
            for x in elems
            for y in above[x]
            if not any(z != y and leq(z, y) for z in above[x])
        ]
        return cls(elems, covers, **kw)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.index

    def covers(self) -> List[Tuple[T, T]]:
        return [
            (self.elements[i], self.elements[j])
            for i, ups in enumerate(self.upper_covers)
            for j in ups
        ]

    def hasse_diagram(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self)))
        graph.add_edges_from((i, j) for i, ups in enumerate(self.upper_covers) for j in ups)
        return graph

    # -- order relation ---------------------------------------------------------

    @property
    def strict_up(self) -> List[int]:
        if self._up is None:
            up = [0] * len(self)
            for i in range(len(self) - 1, -1, -1):
                acc = 0
                for j in self.upper_covers[i]:
                    acc |= up[j] | (1 << j)
                up[i] = acc
            self._up = up
        return self._up

    @property
    def strict_down(self) -> List[int]:
        if self._down is None:
            down = [0] * len(self)
            for j in range(len(self)):
                acc = 0
                for i in self.lower_covers[j]:
                    acc |= down[i] | (1 << i)
                down[j] = acc
            self._down = down
        return self._down

    def leq(self, x: T, y: T) -> bool:
        i, j = self.index[x], self.index[y]
        return i == j or bool(self.strict_up[i] >> j & 1)

    def is_transitively_reduced(self) -> bool:
        for i, ups in enumerate(self.upper_covers):
            via = 0
            for j in ups:
                via |= self.strict_up[j]
            if any(via >> j & 1 for j in ups):
                return False
        return True

    def minimal_elements(self) -> List[T]:
        return [x for x, low in zip(self.elements, self.lower_covers) if not low]

    def maximal_elements(self) -> List[T]:
        return [x for x, up in zip(self.elements, self.upper_covers) if not up]

    def bottom(self) -> Optional[T]:
        mins = self.minimal_elements()
        return mins[0] if len(mins) == 1 else None

    def top(self) -> Optional[T]:
        maxs = self.maximal_elements()
        return maxs[0] if len(maxs) == 1 else None

    # -- derived posets ---------------------------------------------------------

    def induced(self, keep: Iterable[T]) -> "FinitePoset[T]":
        """Induced subposet; covers are recomputed, not restricted."""
        keep_idx = sorted(self.index[x] for x in set(keep))
        mask = 0
        for i in keep_idx:
            mask |= 1 << i
        covers: List[Tuple[T, T]] = []
        for i in keep_idx:
            above = self.strict_up[i] & mask
            shadow = 0
            for j in _bits(above):
                shadow |= self.strict_up[j]
            for j in _bits(above & ~shadow):
                covers.append((self.elements[i], self.elements[j]))
        return FinitePoset([self.elements[i] for i in keep_idx], covers, label=self.label)

    def without(self, drop: Iterable[Any]) -> "FinitePoset[T]":
        dropped = set(drop)
        return self.induced(x for x in self.elements if x not in dropped)

    def interval(self, x: T, y: T) -> "FinitePoset[T]":
        i, j = self.index[x], self.index[y]
        if not self.leq(x, y):
            raise InvalidInputError(f"{self.label(x)} is not below {self.label(y)}")
        between = (self.strict_up[i] | 1 << i) & (self.strict_down[j] | 1 << j)
        return self.induced(self.elements[t] for t in _bits(between))

    def rank_function(self) -> Optional[Dict[T, int]]:
        """Length of the chains from the bottom; None when the poset is not graded."""
        rank: Dict[int, int] = {}
        for j in range(len(self)):
            below = {rank[i] + 1 for i in self.lower_covers[j]}
            if len(below) > 1:
                return None
            rank[j] = below.pop() if below else 0
        return {self.elements[j]: r for j, r in rank.items()}

    def with_bottom(self, bottom: Any = BOTTOM) -> "FinitePoset":
        covers = [(bottom, x) for x in self.minimal_elements()]
        return FinitePoset([bottom, *self.elements], [*self.covers(), *covers], label=self._wrap_label())

    def with_top(self, top: Any = TOP) -> "FinitePoset":
        covers = [(x, top) for x in self.maximal_elements()]
        return FinitePoset([*self.elements, top], [*self.covers(), *covers], label=self._wrap_label())

    def _wrap_label(self) -> Callable[[Any], str]:
        inner = self.label

        def label(x: Any) -> str:
            return x if x in (BOTTOM, TOP) else inner(x)

        return label

    # -- invariants -------------------------------------------------------------

    def mobius(self) -> int:
        """mu(0^, 1^) by the recursion mu(x, z) = -sum_{x <= y < z} mu(x, y)."""
        if self.bottom() is None or self.top() is None:
            raise InvalidInputError("mobius needs a unique minimum and maximum")
        return self.mobius_from_bottom()[-1]

    def mobius_from_bottom(self) -> List[int]:
        """mu(0^, x) for every x, in index order (index 0 is the bottom)."""
        if self.bottom() is None:
            raise InvalidInputError("mobius needs a unique minimum")
        mu = [0] * len(self)
        mu[0] = 1
        for j in range(1, len(self)):
            mu[j] = -sum(mu[i] for i in _bits(self.strict_down[j]))
        return mu

    def chains(self) -> Iterator[Tuple[int, ...]]:
        """All non-empty chains as increasing index tuples."""

        def extend(chain: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
            yield chain
            for j in _bits(self.strict_up[chain[-1]]):
                yield from extend(chain + (j,))

        for i in range(len(self)):
            yield from extend((i,))

    def order_complex(self) -> SimplicialComplex:
        faces = [(), *self.chains()]
        logger.debug("order complex of a %d-element poset: %d faces", len(self), len(faces))
        return SimplicialComplex(
            faces,
            vertex_labels=[self.label(x) for x in self.elements],
            closed=True,
        )

    def join(self, x: T, y: T) -> Optional[T]:
        i, j = self.index[x], self.index[y]
        common = (self.strict_up[i] | 1 << i) & (self.strict_up[j] | 1 << j)
        if not common:
            return None
        z = (common & -common).bit_length() - 1
        return self.elements[z] if (self.strict_up[z] | 1 << z) == common else None

    def meet(self, x: T, y: T) -> Optional[T]:
        i, j = self.index[x], self.index[y]
        common = (self.strict_down[i] | 1 << i) & (self.strict_down[j] | 1 << j)
        if not common:
            return None
        z = common.bit_length() - 1
        return self.elements[z] if (self.strict_down[z] | 1 << z) == common else None

    def is_lattice(self) -> LatticeCheck:
        n = len(self)
        for i in range(n):
            for j in range(i + 1, n):
                x, y = self.elements[i], self.elements[j]
                if self.join(x, y) is None:
                    return LatticeCheck(False, "join", (x, y))
                if self.meet(x, y) is None:
                    return LatticeCheck(False, "meet", (x, y))
        return LatticeCheck(True)

    def to_json(self) -> Dict[str, Any]:
        return {
            "elements": [self.label(x) for x in self.elements],
            "covers": [[i, j] for i, ups in enumerate(self.upper_covers) for j in ups],
        }


def hall_check(p: FinitePoset) -> Tuple[int, int]:
    """(reduced Euler characteristic of the proper part, mu(0^, 1^)); equal by Hall's theorem."""
    bottom, top = p.bottom(), p.top()
    if bottom is None or top is None:
        raise InvalidInputError("Hall's theorem needs a bounded poset")
    if bottom == top:
        raise InvalidInputError("Hall's theorem needs 0^ != 1^")
    proper = p.without([bottom, top])
    return proper.order_complex().reduced_euler_characteristic(), p.mobius()
