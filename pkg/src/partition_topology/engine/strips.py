"""
Border strips, tableaux and tabloids.

The strip B(c) has rows of c1, c2, ..., ck boxes from the bottom up, each row starting
directly above the last box of the row below. Boxes are labelled 1..n from southwest
to northeast, so row i holds the labels R_i and the columns hold the labels K_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

import networkx as nx

from .combinatorics import Permutation, PointedComposition
from .errors import InvalidInputError
from .ordered import OrderedSetPartition

Box = Tuple[int, int]  # (row, column), row 0 at the bottom


@dataclass(frozen=True)
class BorderStrip:
    composition: PointedComposition
    boxes: Tuple[Box, ...]  # boxes[j - 1] carries label j

    @property
    def n(self) -> int:
        return len(self.boxes)

    def rows(self) -> List[Tuple[int, ...]]:
        return self._group(0)

    def columns(self) -> List[Tuple[int, ...]]:
        return self._group(1)

    def _group(self, axis: int) -> List[Tuple[int, ...]]:
        groups: dict = {}
        for label, box in enumerate(self.boxes, start=1):
            groups.setdefault(box[axis], []).append(label)
        return [tuple(groups[key]) for key in sorted(groups)]

    def is_border_strip(self) -> bool:
        """Connected, and without a 2x2 square."""
        cells = set(self.boxes)
        connected = all(
            abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(self.boxes, self.boxes[1:])
        )
        square = any(
            {(r, c), (r + 1, c), (r, c + 1), (r + 1, c + 1)} <= cells for r, c in cells
        )
        return connected and not square

    def render(self, entries: Iterable[object] = ()) -> str:
        """Rows top first; `entries` fills the boxes in label order."""
        values = [str(v) for v in entries] or [str(j) for j in range(1, self.n + 1)]
        width = max(len(v) for v in values)
        grid: dict = {box: values[j].rjust(width) for j, box in enumerate(self.boxes)}
        top = max(r for r, _ in self.boxes)
        lines = []
        for r in range(top, -1, -1):
            cols = [c for rr, c in self.boxes if rr == r]
            line = " " * ((width + 1) * min(cols))
            line += " ".join(grid[(r, c)] for c in sorted(cols))
            lines.append(line)
        return "\n".join(lines)


def border_strip(c: PointedComposition) -> BorderStrip:
    if c.last == 0:
        raise InvalidInputError(f"border strips need a positive last part, got {c}")
    boxes: List[Box] = []
    col = 0
    for row, part in enumerate(c.parts):
        boxes.extend((row, col + j) for j in range(part))
        col += part - 1
    return BorderStrip(c, tuple(boxes))


@dataclass(frozen=True)
class Tableau:
    strip: BorderStrip
    entries: Tuple[int, ...]  # entries[j - 1] sits in the box labelled j

    def __post_init__(self) -> None:
        if sorted(self.entries) != list(range(1, self.strip.n + 1)):
            raise InvalidInputError("tableau entries must be a bijection onto 1..n")

    def __str__(self) -> str:
        return self.strip.render(self.entries)


@dataclass(frozen=True)
class Tabloid:
    strip: BorderStrip
    row_sets: Tuple[FrozenSet[int], ...]

    def __post_init__(self) -> None:
        sizes = tuple(len(r) for r in self.row_sets)
        if sizes != self.strip.composition.parts:
            raise InvalidInputError(f"row sizes {sizes} do not match {self.strip.composition}")
        union = frozenset().union(*self.row_sets)
        if len(union) != self.strip.n or union != frozenset(range(1, self.strip.n + 1)):
            raise InvalidInputError("tabloid rows must partition 1..n")

    @classmethod
    def of(cls, strip: BorderStrip, rows: Iterable[Iterable[int]]) -> "Tabloid":
        return cls(strip, tuple(frozenset(r) for r in rows))

    def relabel(self, omega: Permutation) -> "Tabloid":
        return Tabloid(self.strip, tuple(frozenset(omega(x) for x in r) for r in self.row_sets))

    def reading(self) -> Permutation:
        """Each row in increasing order, bottom row first."""
        return Permutation(tuple(x for r in self.row_sets for x in sorted(r)))


def tableau_of_permutation(alpha: Permutation, c: PointedComposition) -> Tableau:
    if alpha.n != c.n:
        raise InvalidInputError(f"permutation of {alpha.n} does not fit the strip of {c}")
    return Tableau(border_strip(c), alpha.word)


def permutation_of_tableau(t: Tableau) -> Permutation:
    return Permutation(t.entries)


def tabloid_of_tableau(t: Tableau) -> Tabloid:
    return Tabloid.of(t.strip, ([t.entries[j - 1] for j in row] for row in t.strip.rows()))


def facet_of_tabloid(s: Tabloid) -> OrderedSetPartition:
    """Row sets become the blocks, lowest row first."""
    return OrderedSetPartition(s.row_sets)


def tabloid_of_facet(facet: OrderedSetPartition, c: PointedComposition) -> Tabloid:
    if facet.sizes() != c:
        raise InvalidInputError(f"facet {facet} has type {facet.sizes()}, not {c}")
    return Tabloid(border_strip(c), facet.blocks)


def box_order(strip: BorderStrip) -> nx.DiGraph:
    """x -> y when the entry in x must be smaller: along rows, and down columns."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, strip.n + 1))
    for row in strip.rows():
        graph.add_edges_from(zip(row, row[1:]))
    for col in strip.columns():
        graph.add_edges_from((b, a) for a, b in zip(col, col[1:]))
    return graph


def count_standard_tableaux(strip: BorderStrip) -> int:
    """Fillings increasing along rows and decreasing up columns, as linear extensions."""
    return sum(1 for _ in nx.all_topological_sorts(box_order(strip)))
