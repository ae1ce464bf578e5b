"""
The cycles g_alpha in Delta_c and g_{alpha,d} in Lambda_{lambda,m}, the spheres
Sigma_alpha and Sigma_{alpha,d} they live on, polytabloids and the map Psi.

  g_alpha     = sum_{gamma in S^col(c)} sign(gamma) sigma(alpha o gamma, c)
  g_{alpha,d} = sum_{gamma in S^col(d)} sum_{c in W(d)} sign(gamma) sign(c) sigma(alpha o gamma, c)

S^col(c) permutes positions inside every column interval K_j of the strip B(c).
"""

from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .combinatorics import Permutation, PointedComposition, interval_decomposition, weak_bruhat_leq
from .errors import InvalidInputError
from .knapsack import require_knapsack, w_set
from .ordered import ChainElement, OrderedPartitionComplex, OrderedSetPartition, sigma
from .strips import Tableau, Tabloid, facet_of_tabloid, tabloid_of_tableau

logger = logging.getLogger(__name__)

SignedPermutation = Tuple[Permutation, int]


@lru_cache(maxsize=None)
def _interval_group(intervals: Tuple[Tuple[int, int], ...]) -> Tuple[SignedPermutation, ...]:
    """Position permutations preserving every interval, with their signs."""
    factors = [list(itertools.permutations(range(a, b + 1))) for a, b in intervals]
    out = []
    for choice in itertools.product(*factors):
        word = tuple(itertools.chain.from_iterable(choice))
        gamma = Permutation(word)
        out.append((gamma, gamma.sign()))
    return tuple(out)


def column_stabilizer(c: PointedComposition) -> List[SignedPermutation]:
    return list(_interval_group(interval_decomposition(c).columns))


def row_stabilizer(c: PointedComposition) -> List[SignedPermutation]:
    return list(_interval_group(interval_decomposition(c).rows))


def act_on_chain(omega: Permutation, x: ChainElement) -> ChainElement:
    """omega . x: every element of every block is replaced by its image."""
    return x.relabel(omega)


def cycle_g_alpha(alpha: Permutation, c: PointedComposition) -> ChainElement:
    coeffs: Dict[OrderedSetPartition, int] = {}
    for gamma, sign in column_stabilizer(c):
        face = sigma(alpha.compose(gamma), c)
        coeffs[face] = coeffs.get(face, 0) + sign
    return ChainElement(coeffs, c.k - 2)


def _require_positive_m(m: int) -> None:
    if m <= 0:
        raise InvalidInputError("cycles g_{alpha,d} are defined for a positive pointed part only")


def cycle_g_alpha_d(alpha: Permutation, d: PointedComposition, lam: Sequence[int], m: int) -> ChainElement:
    _require_positive_m(m)
    key = require_knapsack(lam)
    signed = w_set(d, key, m)
    coeffs: Dict[OrderedSetPartition, int] = {}
    for gamma, sign in column_stabilizer(d):
        moved = alpha.compose(gamma)
        for comp, comp_sign in signed:
            face = sigma(moved, comp)
            coeffs[face] = coeffs.get(face, 0) + sign * comp_sign
    return ChainElement(coeffs, len(key) - 1)


def build_Sigma_alpha(alpha: Permutation, c: PointedComposition) -> OrderedPartitionComplex:
    """Facets sigma(alpha o gamma, c) for gamma in the column stabilizer; a (k-2)-sphere."""
    facets = {sigma(alpha.compose(gamma), c) for gamma, _ in column_stabilizer(c)}
    return OrderedPartitionComplex.from_partitions(c.n, facets, name=f"Sigma_{alpha},{c}")


def build_Sigma_alpha_d(
    alpha: Permutation, d: PointedComposition, lam: Sequence[int], m: int
) -> OrderedPartitionComplex:
    """Facets sigma(alpha o gamma, c) for c in W(d); a (len(lambda) - 1)-sphere."""
    _require_positive_m(m)
    key = require_knapsack(lam)
    facets = {
        sigma(alpha.compose(gamma), comp)
        for gamma, _ in column_stabilizer(d)
        for comp, _ in w_set(d, key, m)
    }
    return OrderedPartitionComplex.from_partitions(d.n, facets, name=f"Sigma_{alpha},{d}")


# -- Bruhat inequalities ----------------------------------------------------------


def column_stabilizer_leq(alpha: Permutation, c: PointedComposition) -> Optional[Dict[str, str]]:
    """alpha o gamma <= alpha for gamma in the column stabilizer; None or a counterexample."""
    for gamma, _ in column_stabilizer(c):
        moved = alpha.compose(gamma)
        if not weak_bruhat_leq(moved, alpha):
            return {"alpha": str(alpha), "gamma": str(gamma), "composition": str(c)}
    return None


def row_stabilizer_geq(alpha: Permutation, c: PointedComposition) -> Optional[Dict[str, str]]:
    """alpha o gamma >= alpha for gamma in the row stabilizer; None or a counterexample."""
    for gamma, _ in row_stabilizer(c):
        moved = alpha.compose(gamma)
        if not weak_bruhat_leq(alpha, moved):
            return {"alpha": str(alpha), "gamma": str(gamma), "composition": str(c)}
    return None


# -- polytabloids and Psi ---------------------------------------------------------


def _moved_tableau(t: Tableau, gamma: Permutation) -> Tableau:
    return Tableau(t.strip, tuple(t.entries[g - 1] for g in gamma.word))


def polytabloid_terms(t: Tableau) -> List[Tuple[Tabloid, int]]:
    """e_t as signed tabloids {gamma t}, gamma running over the column group."""
    c = t.strip.composition
    return [(tabloid_of_tableau(_moved_tableau(t, gamma)), sign) for gamma, sign in column_stabilizer(c)]


def polytabloid(t: Tableau) -> ChainElement:
    """e_t written in the facet basis of Delta_c."""
    coeffs: Dict[OrderedSetPartition, int] = {}
    for s, sign in polytabloid_terms(t):
        face = facet_of_tabloid(s)
        coeffs[face] = coeffs.get(face, 0) + sign
    return ChainElement(coeffs, t.strip.composition.k - 2)


def psi(s: Tabloid, lam: Sequence[int], m: int) -> ChainElement:
    """sum_{c in W(d)} sign(c) sigma(alpha, c), alpha the row-sorted reading of s of shape d."""
    _require_positive_m(m)
    key = require_knapsack(lam)
    d = s.strip.composition
    alpha = s.reading()
    coeffs: Dict[OrderedSetPartition, int] = {}
    for comp, sign in w_set(d, key, m):
        face = sigma(alpha, comp)
        coeffs[face] = coeffs.get(face, 0) + sign
    return ChainElement(coeffs, len(key) - 1)


def psi_of_polytabloid(t: Tableau, lam: Sequence[int], m: int) -> ChainElement:
    out = ChainElement({}, len(lam) - 1)
    for s, sign in polytabloid_terms(t):
        out = out + psi(s, lam, m).scale(sign)
    return out
