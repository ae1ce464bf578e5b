"""
Knapsack machinery for pointed integer partitions {lambda, m underlined}.

lambda is a knapsack partition when all sub-multiset sums are distinct, so every
value in D (non-zero sums of parts) has exactly one representation.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions as integer_partitions

from .combinatorics import Permutation, PointedComposition, PointedIntegerPartition, beta
from .errors import InvalidInputError, NotKnapsackError, NotRepresentableError

Multiset = Tuple[int, ...]  # sorted descending


def _normalize(lam: Sequence[int]) -> Multiset:
    return tuple(sorted((int(p) for p in lam), reverse=True))


def _sub_multisets(lam: Multiset) -> Iterator[Multiset]:
    values = sorted(Counter(lam).items(), reverse=True)
    for mult in itertools.product(*(range(e + 1) for _, e in values)):
        yield tuple(v for (v, _), f in zip(values, mult) for _ in range(f))


@lru_cache(maxsize=None)
def _representations(lam: Multiset) -> Dict[int, List[Multiset]]:
    reps: Dict[int, List[Multiset]] = {}
    for sub in _sub_multisets(lam):
        reps.setdefault(sum(sub), []).append(sub)
    return reps


def is_knapsack(lam: Sequence[int]) -> bool:
    return all(len(subs) == 1 for subs in _representations(_normalize(lam)).values())


def require_knapsack(lam: Sequence[int]) -> Multiset:
    key = _normalize(lam)
    if not is_knapsack(key):
        raise NotKnapsackError(f"{list(key)} is not a knapsack partition")
    return key


def sum_domain(lam: Sequence[int]) -> Dict[int, Multiset]:
    """D as a map from each non-zero sum to its unique sub-multiset."""
    key = require_knapsack(lam)
    return {s: subs[0] for s, subs in _representations(key).items() if s > 0}


def representation(lam: Sequence[int], s: int) -> Multiset:
    try:
        return sum_domain(lam)[s]
    except KeyError:
        raise NotRepresentableError(f"{s} is not representable as a sum of parts of {list(lam)}") from None


def kappa(lam: Sequence[int], s: int) -> int:
    return min(representation(lam, s))


@lru_cache(maxsize=None)
def _kappa_table(lam: Multiset) -> Dict[int, int]:
    return {s: min(sub) for s, sub in sum_domain(lam).items()}


def kappa_table(lam: Sequence[int]) -> Dict[int, int]:
    """kappa on all of D at once."""
    return dict(_kappa_table(require_knapsack(lam)))


def _distinct_sequences(remaining: Counter) -> Iterator[List[Multiset]]:
    """Ordered lists of non-empty distinct-value blocks using up `remaining`."""
    if not +remaining:
        yield []
        return
    values = sorted((v for v, e in remaining.items() if e > 0), reverse=True)
    for r in range(1, len(values) + 1):
        for block in itertools.combinations(values, r):
            rest = remaining.copy()
            rest.subtract(block)
            for tail in _distinct_sequences(rest):
                yield [tuple(block), *tail]


@lru_cache(maxsize=None)
def _v_set(lam: Multiset, m: int) -> Tuple[PointedComposition, ...]:
    out = {
        PointedComposition((*(sum(b) for b in blocks), m))
        for blocks in _distinct_sequences(Counter(lam))
    }
    return tuple(sorted(out, key=lambda c: c.parts))


def v_set(lam: Sequence[int], m: int) -> List[PointedComposition]:
    """V(lambda, m): compositions (c1, ..., c_{r-1}, m), each c_i a sum of distinct parts."""
    key = require_knapsack(lam)
    if m < 0:
        raise InvalidInputError("the pointed part must be non-negative")
    return list(_v_set(key, int(m)))


def _blocks_of(d: PointedComposition, lam: Sequence[int], m: int) -> List[Multiset]:
    key = require_knapsack(lam)
    if d not in _v_set(key, int(m)):
        raise InvalidInputError(f"{d} is not in V({list(key)}, {m})")
    domain = sum_domain(key)
    return [domain[s] for s in d.parts[:-1]]


def epsilon(d: PointedComposition, lam: Sequence[int], m: int) -> PointedComposition:
    """Refine every block of d into its parts, largest first."""
    blocks = _blocks_of(d, lam, m)
    return PointedComposition((*itertools.chain.from_iterable(blocks), d.last))


def _block_sign(order: Sequence[int], block: Multiset) -> int:
    return Permutation(tuple(block.index(v) + 1 for v in order)).sign()


def w_set(d: PointedComposition, lam: Sequence[int], m: int) -> List[Tuple[PointedComposition, int]]:
    """
    W(d) with signs: every composition of type {lambda, m} below d, signed by the
    block-wise permutation that turns epsilon(d) into it. epsilon(d) comes first.
    """
    blocks = _blocks_of(d, lam, m)
    out: List[Tuple[PointedComposition, int]] = []
    for orders in itertools.product(*(itertools.permutations(b) for b in blocks)):
        sign = 1
        for order, block in zip(orders, blocks):
            sign *= _block_sign(order, block)
        c = PointedComposition((*itertools.chain.from_iterable(orders), d.last))
        out.append((c, sign))
    out.sort(key=lambda item: item[0].parts, reverse=True)
    return out


def generating_compositions(lam: Sequence[int], m: int) -> List[PointedComposition]:
    """All compositions of type {lambda, m}: the parts of lambda in any order, then m."""
    key = _normalize(lam)
    return sorted(
        {PointedComposition((*order, m)) for order in itertools.permutations(key)},
        key=lambda c: c.parts,
    )


def _sub_multisets_with_sum(remaining: Counter, target: int) -> Iterator[Counter]:
    values = sorted((v for v, e in remaining.items() if e > 0), reverse=True)

    def rec(idx: int, left: int) -> Iterator[Counter]:
        if left == 0:
            yield Counter()
            return
        if idx == len(values):
            return
        v = values[idx]
        for f in range(min(remaining[v], left // v), -1, -1):
            for tail in rec(idx + 1, left - f * v):
                if f:
                    tail = tail + Counter({v: f})
                yield tail

    yield from rec(0, target)


@lru_cache(maxsize=None)
def type_in_filter(lam: Multiset, m: int, block_sizes: Multiset, zero_size: int) -> bool:
    """
    Is the pointed type {block_sizes, zero_size underlined} above some element of type
    {lambda, m underlined}? Blocks must be unions of groups of parts; the zero block
    takes m plus the leftover parts.
    """
    if zero_size < m or sum(block_sizes) + zero_size != sum(lam) + m:
        return False

    def rec(i: int, remaining: Counter) -> bool:
        if i == len(block_sizes):
            return sum(v * e for v, e in remaining.items()) == zero_size - m
        for group in _sub_multisets_with_sum(remaining, block_sizes[i]):
            if not group:
                continue
            if rec(i + 1, remaining - group):
                return True
        return False

    return rec(0, Counter(lam))


def knapsack_partitions(n: int, *, min_m: int = 0) -> List[PointedIntegerPartition]:
    """All pointed knapsack partitions of n with m >= min_m, largest m first."""
    out: List[PointedIntegerPartition] = []
    for m in range(n, min_m - 1, -1):
        rest = n - m
        if rest == 0:
            out.append(PointedIntegerPartition((), m))
            continue
        for part in integer_partitions(rest):
            lam = _normalize([v for v, e in part.items() for _ in range(e)])
            if is_knapsack(lam):
                out.append(PointedIntegerPartition(lam, m))
    return out


def sign_exponent(lam: Sequence[int]) -> int:
    """Number of parts of a generating composition of {lambda, m}."""
    return len(lam) + 1


def expected_mobius(
    lam: Sequence[int], m: int, beta_of: Optional[Callable[[PointedComposition], int]] = None
) -> int:
    """(-1)^(parts of lambda + 1) times the sum of beta over V(lambda, m)."""
    beta_of = beta_of or beta
    return (-1) ** sign_exponent(lam) * sum(beta_of(d) for d in v_set(lam, m))
