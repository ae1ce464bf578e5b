"""
Permutations, pointed compositions and pointed integer partitions.

Conventions:
- permutations are one-line words over 1..n;
- (alpha o gamma)(i) = alpha(gamma(i)), so gamma permutes *positions* of the word;
- a composition is identified with its cut set {c1, c1+c2, ..., c1+...+c_{k-1}};
  merging adjacent parts deletes a cut, hence c <= d iff cuts(d) is a subset of cuts(c).
"""

from __future__ import annotations

import itertools
import logging
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from sympy.combinatorics import Permutation as SympyPermutation

from ..config import ensure_within_cap
from .errors import InvalidInputError

logger = logging.getLogger(__name__)

_SPLIT_RE = re.compile(r"[\s,]+")


def _parse_ints(text: str) -> List[int]:
    text = text.strip().strip("()[]")
    if not text:
        return []
    try:
        return [int(tok) for tok in _SPLIT_RE.split(text) if tok]
    except ValueError:
        raise InvalidInputError(f"expected comma separated integers, got {text!r}") from None


@dataclass(frozen=True)
class Permutation:
    word: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.word) != list(range(1, len(self.word) + 1)):
            raise InvalidInputError(f"not a permutation of 1..{len(self.word)}: {self.word}")

    @classmethod
    def of(cls, values: Iterable[int]) -> "Permutation":
        return cls(tuple(int(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Accepts '2143', '2 1 4 3' or '2,1,4,3' (digit strings only when n <= 9)."""
        text = text.strip()
        if text.isdigit() and len(text) <= 9:
            return cls.of(int(ch) for ch in text)
        return cls.of(_parse_ints(text))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __str__(self) -> str:
        sep = "" if self.n <= 9 else " "
        return sep.join(str(v) for v in self.word)

    def compose(self, gamma: "Permutation") -> "Permutation":
        """alpha o gamma: position i of the result holds alpha(gamma(i))."""
        if gamma.n != self.n:
            raise InvalidInputError("cannot compose permutations of different size")
        return Permutation(tuple(self.word[g - 1] for g in gamma.word))

    def relabel(self, omega: "Permutation") -> "Permutation":
        """omega o alpha: every value v is replaced by omega(v)."""
        return omega.compose(self)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for pos, val in enumerate(self.word, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def sign(self) -> int:
        return SympyPermutation([v - 1 for v in self.word]).signature()

    def inversions(self) -> FrozenSet[Tuple[int, int]]:
        """Value pairs (a, b), a < b, with b written before a."""
        return frozenset(
            (b, a) for i, a in enumerate(self.word) for b in self.word[i + 1 :] if a > b
        )

    def descent_set(self) -> FrozenSet[int]:
        return frozenset(i for i in range(1, self.n) if self.word[i - 1] > self.word[i])

    def to_json(self) -> List[int]:
        return list(self.word)


@dataclass(frozen=True)
class PointedComposition:
    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise InvalidInputError("a composition needs at least one part")
        if any(p < 1 for p in self.parts[:-1]) or self.parts[-1] < 0:
            raise InvalidInputError(
                f"only the last part may be zero and no part may be negative: {self.parts}"
            )

    @classmethod
    def of(cls, parts: Iterable[int]) -> "PointedComposition":
        return cls(tuple(int(p) for p in parts))

    @classmethod
    def parse(cls, text: str) -> "PointedComposition":
        return cls.of(_parse_ints(text))

    @classmethod
    def from_cuts(cls, n: int, cuts: Iterable[int]) -> "PointedComposition":
        points = [0, *sorted(cuts)]
        if points[-1] != n:
            points.append(n)
            return cls(tuple(b - a for a, b in zip(points, points[1:])))
        # a cut at n leaves an empty last part
        return cls(tuple(b - a for a, b in zip(points, points[1:])) + (0,))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def last(self) -> int:
        return self.parts[-1]

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def cuts(self) -> FrozenSet[int]:
        return frozenset(itertools.accumulate(self.parts[:-1]))

    def type(self) -> Tuple[Tuple[int, ...], int]:
        """{c1, ..., c_{k-1}, c_k underlined} as (sorted non-last parts, last part)."""
        return tuple(sorted(self.parts[:-1], reverse=True)), self.parts[-1]

    def to_json(self) -> List[int]:
        return list(self.parts)


@dataclass(frozen=True)
class PointedIntegerPartition:
    lam: Tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        if any(p < 1 for p in self.lam) or self.m < 0:
            raise InvalidInputError(f"invalid pointed partition {{{self.lam}, {self.m}}}")
        if list(self.lam) != sorted(self.lam, reverse=True):
            object.__setattr__(self, "lam", tuple(sorted(self.lam, reverse=True)))

    @classmethod
    def of(cls, lam: Iterable[int], m: int) -> "PointedIntegerPartition":
        return cls(tuple(int(p) for p in lam), int(m))

    @property
    def n(self) -> int:
        return sum(self.lam) + self.m

    def type(self) -> Tuple[Tuple[int, ...], int]:
        return self.lam, self.m

    def __str__(self) -> str:
        inner = ",".join(str(p) for p in self.lam)
        return "{" + (inner + "," if inner else "") + f"_{self.m}" + "}"

    def to_json(self) -> Dict[str, object]:
        return {"lambda": list(self.lam), "m": self.m}


@dataclass(frozen=True)
class IntervalDecomposition:
    rows: Tuple[Tuple[int, int], ...]
    columns: Tuple[Tuple[int, int], ...]


def _require_positive_last(c: PointedComposition, what: str) -> None:
    if c.last == 0:
        raise InvalidInputError(f"{what} needs a positive last part, got {c}")


def descent_composition(alpha: Permutation) -> PointedComposition:
    return PointedComposition.from_cuts(alpha.n, alpha.descent_set())


@lru_cache(maxsize=None)
def _descent_table(n: int) -> Dict[Tuple[int, ...], int]:
    counts: Counter = Counter()
    for word in itertools.permutations(range(1, n + 1)):
        cuts = [i for i in range(1, n) if word[i - 1] > word[i]]
        counts[tuple(b - a for a, b in zip([0, *cuts], [*cuts, n]))] += 1
    logger.debug("descent table for n=%d: %d compositions", n, len(counts))
    return dict(counts)


def beta(c: PointedComposition, *, cap: int | None = None) -> int:
    """Number of permutations with descent composition c (brute force over S_n)."""
    if c.last == 0:
        return 1 if c.k == 1 else 0
    ensure_within_cap(c.n, "beta", cap)
    return _descent_table(c.n).get(c.parts, 0)


def permutations_with_descent_composition(c: PointedComposition) -> List[Permutation]:
    if c.last == 0:
        return [] if c.k > 1 else [Permutation(())]
    cuts = c.cuts()
    return [
        Permutation(word)
        for word in itertools.permutations(range(1, c.n + 1))
        if {i for i in range(1, c.n) if word[i - 1] > word[i]} == cuts
    ]


def multinomial(parts: Sequence[int]) -> int:
    total, out = 0, 1
    for p in parts:
        total += p
        out *= math.comb(total, p)
    return out


def beta_inclusion_exclusion(c: PointedComposition) -> int:
    """Second oracle: sum over d >= c of (-1)^(k - len d) * multinomial(n; d)."""
    if c.last == 0:
        return 1 if c.k == 1 else 0
    cuts = sorted(c.cuts())
    total = 0
    for r in range(len(cuts) + 1):
        for subset in itertools.combinations(cuts, r):
            d = PointedComposition.from_cuts(c.n, subset)
            total += (-1) ** (c.k - d.k) * multinomial(d.parts)
    return total


def composition_leq(c: PointedComposition, d: PointedComposition) -> bool:
    if c.n != d.n:
        raise InvalidInputError(f"compositions of different n: {c} and {d}")
    return d.cuts() <= c.cuts()


def complement_composition(c: PointedComposition) -> PointedComposition:
    _require_positive_last(c, "complement_composition")
    return PointedComposition.from_cuts(c.n, set(range(1, c.n)) - c.cuts())


def _intervals(c: PointedComposition) -> Tuple[Tuple[int, int], ...]:
    out, start = [], 1
    for p in c.parts:
        out.append((start, start + p - 1))
        start += p
    return tuple(out)


def interval_decomposition(c: PointedComposition) -> IntervalDecomposition:
    _require_positive_last(c, "interval_decomposition")
    return IntervalDecomposition(rows=_intervals(c), columns=_intervals(complement_composition(c)))


def compositions(n: int, *, pointed: bool = False) -> List[PointedComposition]:
    """All compositions of n, ordered by number of parts then lexicographically."""
    top = n if pointed else n - 1
    out = [
        PointedComposition.from_cuts(n, cuts)
        for r in range(top + 1)
        for cuts in itertools.combinations(range(1, top + 1), r)
    ]
    return sorted(out, key=lambda c: (c.k, c.parts))


def weak_bruhat_leq(alpha: Permutation, beta_: Permutation) -> bool:
    if alpha.n != beta_.n:
        raise InvalidInputError("weak Bruhat order compares permutations of the same n")
    return alpha.inversions() <= beta_.inversions()


@lru_cache(maxsize=None)
def euler_number(n: int) -> int:
    """Alternating permutations a1 < a2 > a3 < ... of [n], counted by brute force."""
    if n <= 1:
        return 1
    return sum(
        1
        for word in itertools.permutations(range(1, n + 1))
        if all((word[i] < word[i + 1]) == (i % 2 == 0) for i in range(n - 1))
    )
