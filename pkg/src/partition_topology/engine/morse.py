"""
Discrete Morse matching on the face poset of Lambda_{lambda,m}.

For tau = (C1, ..., Cr) the conditions are
  A_i (i <= r-2): max(C_i) < min(C_{i+1}) and |C_i| <= kappa(|C_{i+1}|)
  A_{r-1}:        max(C_{r-1}) < min(C_r)          (min of an empty block is +inf)
                  and |C_{r-1}| <= kappa(|C_r| - m) when |C_r| > m
  B_i (i <= r-1): kappa(|C_i|) < |C_i|
  B_r:            |C_r| > m
Scanning j = 1, 2, ..., r-1 the first j where A_j or B_j holds decides: B_j splits
C_j (up, edge type j), otherwise A_j merges C_j with C_{j+1} (down, type j). If no
such j exists, B_r splits the last block (up, type r); otherwise tau is critical.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from ..config import ensure_within_cap
from .combinatorics import PointedComposition, beta, permutations_with_descent_composition
from .complexes import Face, SimplicialComplex
from .errors import InvalidInputError, MatchingInconsistency, TheoremViolation
from .knapsack import epsilon, kappa_table, require_knapsack, v_set, w_set
from .ordered import (
    OrderedPartitionComplex,
    OrderedSetPartition,
    build_Lambda,
    face_of,
    in_lambda,
    partition_of,
    sigma,
)

logger = logging.getLogger(__name__)


class MatchStatus(str, Enum):
    UP = "matched_up"
    DOWN = "matched_down"
    CRITICAL = "critical"


@dataclass(frozen=True)
class MatchDecision:
    status: MatchStatus
    partner: Optional[Hashable] = None
    edge_type: Optional[int] = None

    @classmethod
    def critical(cls) -> "MatchDecision":
        return cls(MatchStatus.CRITICAL)

    @property
    def is_critical(self) -> bool:
        return self.status is MatchStatus.CRITICAL


def _smallest(block: frozenset, count: int) -> List[int]:
    return sorted(block)[:count]


def _decide(tau: OrderedSetPartition, kap: Dict[int, int], m: int) -> MatchDecision:
    blocks = tau.blocks
    r = len(blocks)
    for i in range(1, r):
        ci, nxt = blocks[i - 1], blocks[i]
        size = len(ci)
        if kap[size] < size:
            return MatchDecision(MatchStatus.UP, tau.split(i, _smallest(ci, kap[size])), i)
        ordered = not nxt or max(ci) < min(nxt)
        if i < r - 1:
            ordered = ordered and size <= kap[len(nxt)]
        elif len(nxt) > m:
            ordered = ordered and size <= kap[len(nxt) - m]
        if ordered:
            return MatchDecision(MatchStatus.DOWN, tau.merge(i), i)
    last = len(blocks[-1])
    if last > m:
        return MatchDecision(MatchStatus.UP, tau.split(r, _smallest(blocks[-1], kap[last - m])), r)
    return MatchDecision.critical()


def match_face(tau: OrderedSetPartition, lam: Sequence[int], m: int) -> MatchDecision:
    """Matching decision for one face; partners are ordered set partitions."""
    key = require_knapsack(lam)
    if not in_lambda(tau, key, m):
        raise InvalidInputError(f"{tau} is not a face of Lambda_{{{list(key)}, _{m}}}")
    return _decide(tau, kappa_table(key), m)


@dataclass
class MorseMatching:
    """Partial matching on the face poset of a complex; faces are vertex tuples."""

    complex: SimplicialComplex
    decisions: Dict[Face, MatchDecision]
    lam: Optional[Tuple[int, ...]] = None
    m: Optional[int] = None
    conflicts: List[Dict[str, Any]] = field(default_factory=list)

    @classmethod
    def from_pairs(cls, k: SimplicialComplex, pairs: Sequence[Tuple[Sequence[int], Sequence[int]]]) -> "MorseMatching":
        """Hand-built matching from (lower, upper) pairs; no edge types."""
        decisions = {f: MatchDecision.critical() for f in k.faces}
        for lower, upper in pairs:
            lo, up = tuple(sorted(lower)), tuple(sorted(upper))
            if lo not in k.faces or up not in k.faces:
                raise InvalidInputError(f"pair {lo}, {up} is not in the complex")
            if len(up) != len(lo) + 1 or not set(lo) < set(up):
                raise InvalidInputError(f"{lo} is not a facet of {up}")
            if not decisions[lo].is_critical or not decisions[up].is_critical:
                raise InvalidInputError(f"face of pair {lo}, {up} is already matched")
            decisions[lo] = MatchDecision(MatchStatus.UP, up)
            decisions[up] = MatchDecision(MatchStatus.DOWN, lo)
        return cls(k, decisions)

    def pairs(self) -> List[Tuple[Face, Face]]:
        return sorted((f, d.partner) for f, d in self.decisions.items() if d.status is MatchStatus.UP)

    def critical_faces(self) -> List[Face]:
        return sorted((f for f, d in self.decisions.items() if d.is_critical), key=lambda f: (len(f), f))

    def is_involution(self) -> bool:
        for f, d in self.decisions.items():
            if d.is_critical:
                continue
            back = self.decisions.get(d.partner)
            if back is None or back.partner != f or back.status is d.status:
                return False
        return True

    def label(self, face: Face) -> str:
        return self.complex.label(face)


def build_matching(
    lam: Sequence[int],
    m: int,
    *,
    strict: bool = True,
    cap: Optional[int] = None,
) -> MorseMatching:
    """
    Decide every face of Lambda (the empty face included). With strict=True a decision
    that is not returned by its partner raises MatchingInconsistency; otherwise both
    faces are left unmatched and the conflict is recorded.
    """
    key = require_knapsack(lam)
    k = build_Lambda(key, m, cap=cap)
    kap = kappa_table(key)
    n = k.n
    raw: Dict[Face, MatchDecision] = {}
    for face in k.faces:
        d = _decide(partition_of(face, n), kap, m)
        if not d.is_critical:
            d = MatchDecision(d.status, face_of(d.partner), d.edge_type)
        raw[face] = d

    decisions: Dict[Face, MatchDecision] = {}
    conflicts: List[Dict[str, Any]] = []
    for face, d in raw.items():
        if d.is_critical:
            decisions[face] = d
            continue
        back = raw.get(d.partner)
        agrees = back is not None and back.partner == face and back.status is not d.status
        if agrees:
            decisions[face] = d
            continue
        conflict = {
            "face": k.label(face),
            "status": d.status.value,
            "partner": str(partition_of(d.partner, n)),
            "partner_in_complex": back is not None,
            "partner_status": back.status.value if back is not None else None,
        }
        if strict:
            raise MatchingInconsistency("matching is an involution", "decision is not returned by its partner", conflict)
        conflicts.append(conflict)
        decisions[face] = MatchDecision.critical()
    matching = MorseMatching(k, decisions, lam=key, m=int(m), conflicts=conflicts)
    logger.debug(
        "matching on %s: %d pairs, %d critical, %d conflicts",
        k,
        len(matching.pairs()),
        len(matching.critical_faces()),
        len(conflicts),
    )
    return matching


# -- acyclicity -------------------------------------------------------------------


@dataclass
class AcyclicityCheck:
    is_acyclic: bool
    certificate: Optional[bool] = None  # edge-type monotonicity; None when types are absent
    cycle: List[str] = field(default_factory=list)
    certificate_witness: Optional[Dict[str, Any]] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "is_acyclic": self.is_acyclic,
            "certificate": self.certificate,
            "cycle": self.cycle,
            "certificate_witness": self.certificate_witness,
        }


def modified_hasse_diagram(matching: MorseMatching) -> nx.DiGraph:
    """Covers point down, except matched pairs which point up."""
    graph = nx.DiGraph()
    graph.add_nodes_from(matching.complex.faces)
    for upper in matching.complex.faces:
        for i in range(len(upper)):
            lower = upper[:i] + upper[i + 1 :]
            d = matching.decisions.get(lower)
            if d is not None and d.status is MatchStatus.UP and d.partner == upper:
                graph.add_edge(lower, upper)
            else:
                graph.add_edge(upper, lower)
    return graph


def _type_certificate(matching: MorseMatching) -> Tuple[bool, Optional[Dict[str, Any]]]:
    """tau < u(tau) > tau' < u(tau') with tau' != tau forces type(tau) > type(tau')."""
    for tau, d in matching.decisions.items():
        if d.status is not MatchStatus.UP:
            continue
        upper = d.partner
        for i in range(len(upper)):
            other = upper[:i] + upper[i + 1 :]
            if other == tau:
                continue
            od = matching.decisions.get(other)
            if od is None or od.status is not MatchStatus.UP:
                continue
            if not d.edge_type > od.edge_type:
                return False, {
                    "face": matching.label(tau),
                    "type": d.edge_type,
                    "other": matching.label(other),
                    "other_type": od.edge_type,
                }
    return True, None


def verify_acyclic(matching: MorseMatching) -> AcyclicityCheck:
    """
    Acyclicity is decided by a cycle search on the modified Hasse diagram. The edge-type
    certificate is only sufficient (it fails on acyclic matchings when lambda has repeated
    parts); a certificate that holds next to a found cycle raises.
    """
    graph = modified_hasse_diagram(matching)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    typed = all(d.edge_type is not None for d in matching.decisions.values() if not d.is_critical)
    certificate, witness = _type_certificate(matching) if typed else (None, None)
    result = AcyclicityCheck(
        is_acyclic=cycle is None,
        certificate=certificate,
        cycle=[matching.label(u) for u, _ in cycle] if cycle else [],
        certificate_witness=witness,
    )
    if certificate and cycle is not None:
        raise TheoremViolation(
            "acyclicity certificate agrees with cycle search",
            "type certificate holds but a cycle was found",
            result.to_json(),
        )
    return result


# -- critical cells ---------------------------------------------------------------


def expected_critical_cells(lam: Sequence[int], m: int) -> List[OrderedSetPartition]:
    """sigma(alpha, epsilon(d)) over d in V(lambda, m) and alpha with descent composition d."""
    out = []
    for d in v_set(lam, m):
        eps = epsilon(d, lam, m)
        out.extend(sigma(alpha, eps) for alpha in permutations_with_descent_composition(d))
    return out


def critical_cells(matching: MorseMatching, *, verify: bool = True) -> List[OrderedSetPartition]:
    """
    Unmatched faces as ordered set partitions. For m > 0 they are compared with the
    reconstruction from V(lambda, m) and must all have dimension len(lambda) - 1.
    """
    if not isinstance(matching.complex, OrderedPartitionComplex):
        raise InvalidInputError("critical cells are read as ordered set partitions only on Lambda")
    n = matching.complex.n
    found = [partition_of(f, n) for f in matching.critical_faces()]
    if verify and matching.lam is not None and matching.m:
        expected = set(expected_critical_cells(matching.lam, matching.m))
        if set(found) != expected:
            raise TheoremViolation(
                "critical cells are sigma(alpha, epsilon(d))",
                "critical cells differ from the reconstruction",
                {
                    "unexpected": sorted(str(t) for t in set(found) - expected),
                    "missing": sorted(str(t) for t in expected - set(found)),
                },
            )
        dims = {t.dimension for t in found}
        if dims and dims != {len(matching.lam) - 1}:
            raise TheoremViolation(
                "critical cells share one dimension",
                f"critical cells in dimensions {sorted(dims)}",
                {"cells": [str(t) for t in found]},
            )
    return found


@dataclass
class CriticalCellRow:
    d: PointedComposition
    beta: int
    epsilon: PointedComposition
    w: List[Tuple[PointedComposition, int]]
    cells: List[OrderedSetPartition]

    def to_json(self) -> Dict[str, Any]:
        return {
            "d": self.d.to_json(),
            "beta": self.beta,
            "epsilon": self.epsilon.to_json(),
            "W": [{"c": c.to_json(), "sign": s} for c, s in self.w],
            "cells": [str(t) for t in self.cells],
        }


def critical_cell_table(lam: Sequence[int], m: int, *, cap: Optional[int] = None) -> List[CriticalCellRow]:
    """One row per d in V(lambda, m): beta(d), epsilon(d), W(d) and the cells sigma(alpha, epsilon(d))."""
    key = require_knapsack(lam)
    ensure_within_cap(sum(key) + m, "lambda", cap)
    rows = []
    for d in v_set(key, m):
        eps = epsilon(d, key, m)
        cells = [sigma(alpha, eps) for alpha in permutations_with_descent_composition(d)]
        rows.append(CriticalCellRow(d, beta(d), eps, w_set(d, key, m), cells))
    return rows


def matching_to_json(matching: MorseMatching) -> List[Dict[str, Any]]:
    out = []
    for face in sorted(matching.decisions, key=lambda f: (len(f), f)):
        d = matching.decisions[face]
        out.append(
            {
                "face": matching.label(face),
                "status": d.status.value,
                "partner": matching.label(d.partner) if d.partner is not None else None,
                "edge_type": d.edge_type,
            }
        )
    return out
