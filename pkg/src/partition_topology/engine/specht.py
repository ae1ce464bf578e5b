"""
Checks that the cycles g_alpha and g_{alpha,d} form bases of the top homology and
that the symmetric group acts on their span like on a Specht module.

Every verify_* function returns a report on success and raises TheoremViolation
(with a JSON-serializable witness) on the first failed statement.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .combinatorics import (
    Permutation,
    PointedComposition,
    beta,
    permutations_with_descent_composition,
    weak_bruhat_leq,
)
from .complexes import reduced_homology
from .cycles import act_on_chain, cycle_g_alpha, cycle_g_alpha_d, polytabloid, psi, psi_of_polytabloid
from .errors import InvalidInputError, TheoremViolation
from .knapsack import epsilon, require_knapsack, v_set, w_set
from .ordered import (
    ChainElement,
    OrderedPartitionComplex,
    OrderedSetPartition,
    boundary,
    build_Delta_c,
    build_Lambda,
    ordered_partitions_of_type,
    sigma,
)
from .smith import integer_rank
from .strips import border_strip, count_standard_tableaux, tableau_of_permutation, tabloid_of_facet

logger = logging.getLogger(__name__)

Label = Tuple[Permutation, PointedComposition]


@dataclass
class BasisReport:
    labels: int
    rank: int
    betti: int
    triangular: bool = True

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class ClosureReport:
    rank: int
    generators: int
    standard_tableaux: int

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class PsiReport:
    holds: bool
    checked: int
    mismatches: List[Dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)


def adjacent_transpositions(n: int) -> List[Permutation]:
    out = []
    for i in range(1, n):
        word = list(range(1, n + 1))
        word[i - 1], word[i] = word[i], word[i - 1]
        out.append(Permutation(tuple(word)))
    return out


def _rows(chains: Sequence[ChainElement], index: Dict[OrderedSetPartition, int]) -> List[Dict[int, int]]:
    return [g.to_row(index) for g in chains]


def _check_cycles(claim: str, k: OrderedPartitionComplex, labels: Sequence[str], chains: Sequence[ChainElement]) -> None:
    for label, g in zip(labels, chains):
        outside = [str(t) for t, _ in g if not k.contains(t)]
        if outside:
            raise TheoremViolation(claim, f"cycle {label} leaves {k}", {"label": label, "faces": outside[:5]})
        rest = boundary(g)
        if rest:
            raise TheoremViolation(claim, f"cycle {label} has non-zero boundary", {"label": label, "boundary": rest.to_json()})


def _check_triangular(
    claim: str,
    labels: Sequence[Label],
    chains: Sequence[ChainElement],
    cells: Sequence[OrderedSetPartition],
) -> None:
    """Coefficient of the critical facet of (alpha', d') in the cycle of (alpha, d): 1 on the diagonal, else 0 unless alpha' <= alpha."""
    for (alpha, d), g in zip(labels, chains):
        for (beta_, d2), cell in zip(labels, cells):
            coeff = g[cell]
            same = alpha == beta_ and d == d2
            if same and coeff != 1:
                raise TheoremViolation(claim, "diagonal coefficient is not 1", {"alpha": str(alpha), "d": str(d), "coefficient": coeff})
            if not same and coeff and not weak_bruhat_leq(beta_, alpha):
                raise TheoremViolation(
                    claim,
                    "cycle meets a critical facet above it in weak order",
                    {"alpha": str(alpha), "d": str(d), "cell": str(cell), "coefficient": coeff},
                )


def _check_rank(claim: str, k: OrderedPartitionComplex, dim: int, chains: Sequence[ChainElement], expected: int) -> Tuple[int, int]:
    index = {t: i for i, t in enumerate(k.partitions(dim))}
    rank = integer_rank(_rows(chains, index))
    betti = reduced_homology(k).betti.get(dim, 0)
    if not rank == expected == betti:
        raise TheoremViolation(claim, "rank of the cycles differs from the expected Betti number", {"rank": rank, "expected": expected, "betti": betti})
    return rank, betti


def verify_cycle_basis(c: PointedComposition, *, cap: Optional[int] = None) -> BasisReport:
    """{g_alpha : Des(alpha) = c} is a basis of the top reduced homology of Delta_c."""
    if c.last == 0:
        raise InvalidInputError(f"cycle bases need a positive last part, got {c}")
    claim = f"g_alpha basis for Delta_{c}"
    k = build_Delta_c(c, cap=cap)
    alphas = permutations_with_descent_composition(c)
    chains = [cycle_g_alpha(alpha, c) for alpha in alphas]
    _check_cycles(claim, k, [str(a) for a in alphas], chains)
    rank, betti = _check_rank(claim, k, c.k - 2, chains, beta(c))
    labels = [(alpha, c) for alpha in alphas]
    _check_triangular(claim, labels, chains, [sigma(alpha, c) for alpha in alphas])
    return BasisReport(labels=len(alphas), rank=rank, betti=betti)


def knapsack_labels(lam: Sequence[int], m: int) -> List[Label]:
    return [(alpha, d) for d in v_set(lam, m) for alpha in permutations_with_descent_composition(d)]


def verify_knapsack_cycle_basis(lam: Sequence[int], m: int, *, cap: Optional[int] = None) -> BasisReport:
    """{g_{alpha,d}} is a basis of the top reduced homology of Lambda_{lambda,m}."""
    key = require_knapsack(lam)
    if m <= 0:
        raise InvalidInputError("the knapsack cycle basis needs a positive pointed part")
    claim = f"g_alpha,d basis for Lambda_{{{list(key)}, _{m}}}"
    k = build_Lambda(key, m, cap=cap)
    labels = knapsack_labels(key, m)
    chains = [cycle_g_alpha_d(alpha, d, key, m) for alpha, d in labels]
    _check_cycles(claim, k, [f"{a},{d}" for a, d in labels], chains)
    rank, betti = _check_rank(claim, k, len(key) - 1, chains, len(labels))
    cells = [sigma(alpha, epsilon(d, key, m)) for alpha, d in labels]
    _check_triangular(claim, labels, chains, cells)
    return BasisReport(labels=len(labels), rank=rank, betti=betti)


def _closure(claim: str, k: OrderedPartitionComplex, dim: int, chains: Sequence[ChainElement]) -> int:
    """
    Rank of the cycles, after checking every s_i . g stays in their span. The cycles are
    unitriangular against critical facets, so rational span and integer span agree.
    """
    index = {t: i for i, t in enumerate(k.partitions(dim))}
    base = _rows(chains, index)
    rank = integer_rank(base)
    for omega in adjacent_transpositions(k.n):
        moved = [act_on_chain(omega, g) for g in chains]
        if any(t not in index for g in moved for t, _ in g):
            raise TheoremViolation(claim, f"{omega} moves a cycle out of {k}", {"generator": str(omega)})
        stacked = integer_rank(base + _rows(moved, index))
        if stacked != rank:
            raise TheoremViolation(claim, f"{omega} leaves the span of the cycles", {"generator": str(omega), "rank": rank, "stacked": stacked})
    return rank


def group_action_closure(c: PointedComposition, *, cap: Optional[int] = None) -> ClosureReport:
    """S_n preserves span{g_alpha}, whose dimension is the number of standard tableaux of B(c)."""
    if c.last == 0:
        raise InvalidInputError(f"the group action check needs a positive last part, got {c}")
    claim = f"S_n closure of g_alpha for {c}"
    k = build_Delta_c(c, cap=cap)
    chains = [cycle_g_alpha(alpha, c) for alpha in permutations_with_descent_composition(c)]
    rank = _closure(claim, k, c.k - 2, chains)
    syt = count_standard_tableaux(border_strip(c))
    if syt != rank:
        raise TheoremViolation(claim, "dimension differs from the number of standard tableaux", {"rank": rank, "standard_tableaux": syt})
    return ClosureReport(rank=rank, generators=max(c.n - 1, 0), standard_tableaux=syt)


def knapsack_action_closure(lam: Sequence[int], m: int, *, cap: Optional[int] = None) -> ClosureReport:
    key = require_knapsack(lam)
    claim = f"S_n closure of g_alpha,d for {{{list(key)}, _{m}}}"
    k = build_Lambda(key, m, cap=cap)
    chains = [cycle_g_alpha_d(alpha, d, key, m) for alpha, d in knapsack_labels(key, m)]
    rank = _closure(claim, k, len(key) - 1, chains)
    syt = sum(count_standard_tableaux(border_strip(d)) for d in v_set(key, m))
    if syt != rank:
        raise TheoremViolation(claim, "dimension differs from the number of standard tableaux", {"rank": rank, "standard_tableaux": syt})
    return ClosureReport(rank=rank, generators=max(k.n - 1, 0), standard_tableaux=syt)


# -- Psi ----------------------------------------------------------------------------


def is_split(d: PointedComposition, lam: Sequence[int], m: int) -> bool:
    """Some part of d is a sum of two or more parts of lambda, so W(d) has several orders."""
    return len(w_set(d, lam, m)) > 1


def psi_equivariance(lam: Sequence[int], m: int, d: PointedComposition) -> PsiReport:
    """Psi(omega . s) against omega . Psi(s) over all tabloids of shape d and adjacent transpositions."""
    key = require_knapsack(lam)
    mismatches: List[Dict[str, Any]] = []
    checked = 0
    for facet in ordered_partitions_of_type(d.n, d.parts):
        s = tabloid_of_facet(facet, d)
        image = psi(s, key, m)
        for omega in adjacent_transpositions(d.n):
            checked += 1
            if psi(s.relabel(omega), key, m) != act_on_chain(omega, image):
                mismatches.append({"tabloid": str(facet), "generator": str(omega)})
    return PsiReport(holds=not mismatches, checked=checked, mismatches=mismatches[:10])


def psi_image_check(lam: Sequence[int], m: int, d: PointedComposition) -> PsiReport:
    """Psi(e_t) against g_{alpha,d}, term by term, for every alpha with descent composition d."""
    key = require_knapsack(lam)
    mismatches: List[Dict[str, Any]] = []
    alphas = permutations_with_descent_composition(d)
    for alpha in alphas:
        t = tableau_of_permutation(alpha, d)
        image = psi_of_polytabloid(t, key, m)
        g = cycle_g_alpha_d(alpha, d, key, m)
        if image != g:
            mismatches.append({"alpha": str(alpha), "psi": image.to_json(), "g": g.to_json()})
    return PsiReport(holds=not mismatches, checked=len(alphas), mismatches=mismatches)


def polytabloid_matches_cycle(alpha: Permutation, c: PointedComposition) -> bool:
    """e_t read through the tabloid/facet bijection is g_alpha."""
    return polytabloid(tableau_of_permutation(alpha, c)) == cycle_g_alpha(alpha, c)
