"""
Exact Smith normal form of sparse integer matrices.

Two phases. First every +-1 pivot is eliminated in place (row operations clear its
column, after which its row only touches the pivot column and both can be dropped;
each such pivot is an invariant factor 1). Boundary matrices of the complexes built
here are almost entirely consumed by this phase. The remaining block is diagonalized
densely by moving the smallest non-zero entry to the corner, and the diagonal is
finally normalized into a divisibility chain.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from typing import Dict, Iterable, List, Mapping, Set

logger = logging.getLogger(__name__)

SparseRow = Mapping[int, int]


class _SparseEliminator:
    def __init__(self, rows: Iterable[SparseRow]):
        self.rows: Dict[int, Dict[int, int]] = {}
        self.cols: Dict[int, Set[int]] = defaultdict(set)
        for r, row in enumerate(rows):
            clean = {c: int(v) for c, v in row.items() if v}
            if clean:
                self.rows[r] = clean
                for c in clean:
                    self.cols[c].add(r)

    def _pick_unit(self, row: Dict[int, int]) -> int | None:
        best_col, best_cost = None, None
        for c, v in row.items():
            if v == 1 or v == -1:
                cost = len(self.cols[c])
                if best_cost is None or cost < best_cost:
                    best_col, best_cost = c, cost
        return best_col

    def _pivot(self, r: int, c: int) -> None:
        prow = self.rows.pop(r)
        p = prow[c]
        for c2 in prow:
            self.cols[c2].discard(r)
        for r2 in list(self.cols[c]):
            row2 = self.rows[r2]
            f = row2[c] * p  # p is a unit, so p^-1 == p
            for c2, v in prow.items():
                nv = row2.get(c2, 0) - f * v
                if nv:
                    if c2 not in row2:
                        self.cols[c2].add(r2)
                    row2[c2] = nv
                elif c2 in row2:
                    del row2[c2]
                    self.cols[c2].discard(r2)
            if not row2:
                del self.rows[r2]
        self.cols.pop(c, None)

    def eliminate_units(self) -> int:
        units = 0
        changed = True
        while changed:
            changed = False
            for r in sorted(self.rows, key=lambda key: len(self.rows[key])):
                row = self.rows.get(r)
                if row is None:
                    continue
                c = self._pick_unit(row)
                if c is None:
                    continue
                self._pivot(r, c)
                units += 1
                changed = True
        return units

    def residual(self) -> List[List[int]]:
        used = sorted({c for row in self.rows.values() for c in row})
        pos = {c: i for i, c in enumerate(used)}
        dense = []
        for row in self.rows.values():
            line = [0] * len(used)
            for c, v in row.items():
                line[pos[c]] = v
            dense.append(line)
        return dense


def _smallest_nonzero(a: List[List[int]], t: int):
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            v = a[i][j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return best


def _move_to_corner(a: List[List[int]], t: int, i: int, j: int) -> None:
    a[t], a[i] = a[i], a[t]
    for row in a:
        row[t], row[j] = row[j], row[t]


def _diagonalize(a: List[List[int]]) -> List[int]:
    """Diagonal of a dense integer matrix after unimodular reduction (not yet a chain)."""
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    diag: List[int] = []
    for t in range(min(rows, cols)):
        found = _smallest_nonzero(a, t)
        if found is None:
            break
        _move_to_corner(a, t, found[1], found[2])
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
            edge = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
            edge += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            if not edge:
                break
            _, i, j = min(edge)
            _move_to_corner(a, t, i, j)
        diag.append(abs(a[t][t]))
    return diag


def _divisibility_chain(diag: List[int]) -> List[int]:
    d = [x for x in diag if x]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = math.gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def smith_invariants(rows: Iterable[SparseRow]) -> List[int]:
    """Non-zero invariant factors d1 | d2 | ... of the matrix given by sparse rows."""
    elim = _SparseEliminator(rows)
    units = elim.eliminate_units()
    residual = elim.residual()
    logger.debug(
        "smith form: %d unit pivots, residual %dx%d",
        units,
        len(residual),
        len(residual[0]) if residual else 0,
    )
    return [1] * units + _divisibility_chain(_diagonalize(residual))


def integer_rank(rows: Iterable[SparseRow]) -> int:
    return len(smith_invariants(rows))


def torsion_of(invariants: Iterable[int]) -> List[int]:
    return [d for d in invariants if d > 1]
