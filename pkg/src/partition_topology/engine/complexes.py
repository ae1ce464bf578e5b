"""
Abstract simplicial complexes with the empty face, reduced homology over Z,
barycentric subdivision, shelling checks and cone detection.

A face is a strictly increasing tuple of integer vertex ids; the orientation of a face
is the order of that tuple, so the boundary of (v0, ..., vd) is
sum_i (-1)^i (v0, ..., v_i omitted, ..., vd) and the boundary of a vertex is the empty
face (augmentation).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import InvalidInputError
from .smith import smith_invariants, torsion_of

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]


def _subfaces(face: Face) -> Iterable[Face]:
    for r in range(len(face) + 1):
        yield from itertools.combinations(face, r)


class SimplicialComplex:
    def __init__(
        self,
        faces: Iterable[Sequence[int]],
        *,
        vertex_labels: Optional[Sequence[str]] = None,
        face_label: Optional[Callable[[Face], str]] = None,
        closed: bool = False,
    ):
        found: Set[Face] = {tuple(sorted(f)) for f in faces}
        if not closed:
            found = {sub for f in found for sub in _subfaces(f)}
        found.add(())
        self._faces = found
        self.vertex_labels = list(vertex_labels) if vertex_labels is not None else None
        self._face_label = face_label
        self._by_dim: Optional[Dict[int, List[Face]]] = None

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]], **kw) -> "SimplicialComplex":
        return cls(facets, closed=False, **kw)

    def __contains__(self, face: object) -> bool:
        return tuple(sorted(face)) in self._faces  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self._faces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._faces == other._faces

    __hash__ = None  # type: ignore[assignment]

    @property
    def faces(self) -> Set[Face]:
        return self._faces

    @property
    def by_dim(self) -> Dict[int, List[Face]]:
        if self._by_dim is None:
            groups: Dict[int, List[Face]] = {}
            for f in self._faces:
                groups.setdefault(len(f) - 1, []).append(f)
            self._by_dim = {d: sorted(fs) for d, fs in sorted(groups.items())}
        return self._by_dim

    def faces_of_dim(self, d: int) -> List[Face]:
        return self.by_dim.get(d, [])

    @property
    def dimension(self) -> int:
        return max(self.by_dim)

    def vertices(self) -> List[int]:
        return [f[0] for f in self.faces_of_dim(0)]

    def f_vector(self) -> List[int]:
        """Face counts for dimensions -1, 0, ..., dim."""
        return [len(self.faces_of_dim(d)) for d in range(-1, self.dimension + 1)]

    def facets(self) -> List[Face]:
        covered = {f[:i] + f[i + 1 :] for f in self._faces for i in range(len(f))}
        return sorted(self._faces - covered, key=lambda f: (len(f), f))

    def cofaces(self) -> Dict[Face, List[Face]]:
        """Codimension-one cofaces of every face."""
        up: Dict[Face, List[Face]] = {f: [] for f in self._faces}
        for g in self._faces:
            for i in range(len(g)):
                up[g[:i] + g[i + 1 :]].append(g)
        return up

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets()}) == 1

    def label(self, face: Face) -> str:
        if self._face_label is not None:
            return self._face_label(face)
        if self.vertex_labels is not None:
            return "{" + ", ".join(self.vertex_labels[v] for v in face) + "}"
        return "{" + ", ".join(str(v) for v in face) + "}"

    def boundary_rows(self, d: int) -> List[Dict[int, int]]:
        """Sparse rows of the boundary map C_d -> C_{d-1}, one row per d-face."""
        lower = {f: i for i, f in enumerate(self.faces_of_dim(d - 1))}
        rows = []
        for f in self.faces_of_dim(d):
            row: Dict[int, int] = {}
            for i in range(len(f)):
                row[lower[f[:i] + f[i + 1 :]]] = -1 if i % 2 else 1
            rows.append(row)
        return rows

    def reduced_euler_characteristic(self) -> int:
        return sum((-1 if d % 2 else 1) * len(fs) for d, fs in self.by_dim.items())

    def to_json(self) -> Dict[str, object]:
        return {
            "dimension": self.dimension,
            "f_vector": self.f_vector(),
            "faces": {str(d): [self.label(f) for f in fs] for d, fs in self.by_dim.items()},
        }


@dataclass
class HomologyProfile:
    """Reduced integral homology: free rank and torsion per dimension (from -1)."""

    betti: Dict[int, int] = field(default_factory=dict)
    torsion: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def top_dimension(self) -> int:
        return max(self.betti) if self.betti else -1

    def betti_list(self) -> List[int]:
        return [self.betti.get(d, 0) for d in range(0, self.top_dimension + 1)]

    def nonzero_dimensions(self) -> List[int]:
        return sorted(d for d in self.betti if self.betti[d] or self.torsion.get(d))

    def is_torsion_free(self) -> bool:
        return not any(self.torsion.values())

    def is_acyclic(self) -> bool:
        return not self.nonzero_dimensions()

    def concentrated_in(self, d: int, rank: int) -> bool:
        """Free of rank `rank` in dimension d, zero elsewhere (rank 0 means acyclic)."""
        if rank == 0:
            return self.is_acyclic()
        return self.nonzero_dimensions() == [d] and self.betti[d] == rank and not self.torsion.get(d)

    def is_sphere(self, d: int) -> bool:
        return self.concentrated_in(d, 1)

    def to_json(self) -> Dict[str, object]:
        dims = range(0, self.top_dimension + 1)
        return {
            "betti": self.betti_list(),
            "torsion": [list(self.torsion.get(d, ())) for d in dims],
            "reduced_minus_one": self.betti.get(-1, 0),
        }

    def __str__(self) -> str:
        parts = [f"betti={self.betti_list()}"]
        if self.betti.get(-1):
            parts.append(f"H~_-1={self.betti[-1]}")
        tors = {d: t for d, t in self.torsion.items() if t}
        if tors:
            parts.append(f"torsion={tors}")
        return " ".join(parts)


def reduced_homology(k: SimplicialComplex) -> HomologyProfile:
    top = k.dimension
    ranks: Dict[int, int] = {-1: 0, top + 1: 0}
    torsion: Dict[int, Tuple[int, ...]] = {}
    for d in range(0, top + 1):
        inv = smith_invariants(k.boundary_rows(d))
        ranks[d] = len(inv)
        torsion[d - 1] = tuple(torsion_of(inv))
    torsion.setdefault(top, ())
    betti = {
        d: len(k.faces_of_dim(d)) - ranks[d] - ranks[d + 1]
        for d in range(-1, top + 1)
    }
    profile = HomologyProfile(betti=betti, torsion=torsion)
    logger.debug("reduced homology (f=%s): %s", k.f_vector(), profile)
    return profile


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the non-empty faces under inclusion."""
    nodes = [f for f in sorted(k.faces, key=lambda f: (len(f), f)) if f]
    index = {f: i for i, f in enumerate(nodes)}
    above: List[int] = [0] * len(nodes)
    # strict up-sets as bitsets, filled from the top dimension down
    cofaces = k.cofaces()
    for i in range(len(nodes) - 1, -1, -1):
        acc = 0
        for g in cofaces[nodes[i]]:
            j = index[g]
            acc |= above[j] | (1 << j)
        above[i] = acc

    chains: List[Face] = []

    def extend(chain: Face) -> None:
        chains.append(chain)
        mask = above[chain[-1]]
        while mask:
            low = mask & -mask
            extend(chain + (low.bit_length() - 1,))
            mask ^= low

    for i in range(len(nodes)):
        extend((i,))
    return SimplicialComplex(chains, vertex_labels=[k.label(f) for f in nodes], closed=True)


def is_cone(k: SimplicialComplex, apex: int) -> bool:
    if (apex,) not in k.faces:
        raise InvalidInputError(f"apex {apex} is not a vertex of the complex")
    return all(tuple(sorted(set(f) | {apex})) in k.faces for f in k.faces)


@dataclass
class ShellingResult:
    is_shelling: bool
    order: List[Face]
    spanning: List[Face] = field(default_factory=list)
    failure_index: Optional[int] = None  # 1-based position of the first bad facet

    def to_json(self) -> Dict[str, object]:
        return {
            "is_shelling": self.is_shelling,
            "spanning": [list(f) for f in self.spanning],
            "failure_index": self.failure_index,
        }


def _restriction(face: Face, seen: Set[Face]) -> Optional[Face]:
    """Minimal new face of `face` if the new faces form an interval [R, face], else None."""
    new = [s for s in _subfaces(face) if s not in seen]
    common = set(face)
    for s in new:
        common &= set(s)
    r = tuple(sorted(common))
    if r not in new:
        return None
    expected = 2 ** (len(face) - len(r))
    return r if len(new) == expected else None


def verify_shelling(k: SimplicialComplex, order: Sequence[Face]) -> ShellingResult:
    if not k.is_pure():
        raise InvalidInputError("shelling is checked on pure complexes only")
    order = [tuple(f) for f in order]
    if sorted(order) != sorted(k.facets()):
        raise InvalidInputError("the order must list every facet exactly once")
    seen: Set[Face] = set()
    spanning: List[Face] = []
    for pos, facet in enumerate(order, start=1):
        r = _restriction(facet, seen)
        if r is None:
            return ShellingResult(False, order, spanning, failure_index=pos)
        if r == facet:
            spanning.append(facet)
        seen.update(_subfaces(facet))
    return ShellingResult(True, order, spanning)


def greedy_shelling_search(k: SimplicialComplex, *, max_steps: int = 200_000) -> Optional[List[Face]]:
    """Depth-first search for some shelling order; None when none is found within max_steps."""
    facets = k.facets()
    steps = 0

    def search(order: List[Face], seen: Set[Face], left: List[Face]) -> Optional[List[Face]]:
        nonlocal steps
        if not left:
            return order
        for i, facet in enumerate(left):
            steps += 1
            if steps > max_steps:
                return None
            if order and _restriction(facet, seen) is None:
                continue
            found = search(order + [facet], seen | set(_subfaces(facet)), left[:i] + left[i + 1 :])
            if found is not None:
                return found
        return None

    return search([], set(), facets)
