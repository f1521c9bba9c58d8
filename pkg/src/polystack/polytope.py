"""Polytope representation: exact vertices plus facets as (hyperplane, vertex set)."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvariantViolation
from .linalg import (Hyperplane, Side, affine_rank, barycenter, cofactor_normal,
                     hyperplane_through, scaled_to_integers, vector)


@dataclass(frozen=True)
class Facet:
    hyperplane: Hyperplane
    vertices: frozenset

    def key(self) -> tuple:
        return tuple(sorted(self.vertices))

    def __repr__(self) -> str:
        return f"Facet({sorted(self.vertices)})"


@dataclass(frozen=True, eq=False)
class Polytope:
    """A full-dimensional polytope with exact coordinates.

    Facets are kept in canonical order (sorted by their sorted vertex
    tuples), so equal polytopes compare equal field by field.
    """

    dim: int
    vertices: tuple
    facets: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(vector(v) for v in self.vertices)
        facets = tuple(sorted(self.facets, key=Facet.key))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "facets", facets)

    @classmethod
    def from_incidences(cls, dim: int, vertices: Sequence, facet_sets: Iterable[Iterable[int]],
                        check: bool = True) -> "Polytope":
        """Build from coordinates and facet vertex sets; hyperplanes are computed."""
        verts = tuple(vector(v) for v in vertices)
        if any(len(v) != dim for v in verts):
            raise InvariantViolation(f"vertex coordinates must have length {dim}")
        center = barycenter(verts)
        facets = []
        for fs in facet_sets:
            fs = frozenset(fs)
            if not fs or min(fs) < 0 or max(fs) >= len(verts):
                raise InvariantViolation(f"facet {sorted(fs)} references unknown vertices")
            try:
                h = hyperplane_through([verts[i] for i in sorted(fs)], center)
            except (ArithmeticError, ValueError) as exc:
                raise InvariantViolation(f"facet {sorted(fs)} does not span a hyperplane: {exc}")
            facets.append(Facet(h, fs))
        p = cls(dim, verts, tuple(facets))
        if check:
            p.validate()
        return p

    @classmethod
    def from_points(cls, points: Sequence, dim: int | None = None, limit: int | None = None) -> "Polytope":
        """Convex hull of points that are all vertices (brute-force facet enumeration)."""
        from .hull import MAX_BRUTE_FORCE_VERTICES, enumerate_facets

        verts = tuple(vector(v) for v in points)
        if not verts:
            raise InvariantViolation("no vertices")
        d = dim if dim is not None else len(verts[0])
        if any(len(v) != d for v in verts):
            raise InvariantViolation(f"vertex coordinates must have length {d}")
        facets = enumerate_facets(verts, MAX_BRUTE_FORCE_VERTICES if limit is None else limit)
        p = cls(d, verts, tuple(facets))
        p.validate()
        return p

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return (self.dim, self.vertices, self.facets) == (other.dim, other.vertices, other.facets)

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices, self.facets))

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, n_vertices={self.n_vertices}, n_facets={len(self.facets)})"

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def facet_sets(self) -> list:
        return [f.vertices for f in self.facets]

    def facet_index(self, vertex_set: Iterable[int]) -> int:
        vs = frozenset(vertex_set)
        for i, f in enumerate(self.facets):
            if f.vertices == vs:
                return i
        raise KeyError(f"no facet with vertex set {sorted(vs)}")

    def is_simplex_facet(self, i: int) -> bool:
        return len(self.facets[i].vertices) == self.dim

    def rank_of(self, vertex_set: Iterable[int]) -> int:
        vs = frozenset(vertex_set)
        if not vs:
            return -1
        cache = self._cache.setdefault("rank", {})
        r = cache.get(vs)
        if r is None:
            r = affine_rank([self.vertices[i] for i in sorted(vs)])
            cache[vs] = r
        return r

    def adjacency(self) -> list:
        """For each facet, the set of facet indices sharing a ridge with it."""
        adj = self._cache.get("adj")
        if adj is None:
            m = len(self.facets)
            adj = [set() for _ in range(m)]
            for i in range(m):
                fi = self.facets[i].vertices
                for j in range(i + 1, m):
                    common = fi & self.facets[j].vertices
                    if len(common) >= self.dim - 1 and self.rank_of(common) == self.dim - 2:
                        adj[i].add(j)
                        adj[j].add(i)
            adj = [frozenset(a) for a in adj]
            self._cache["adj"] = adj
        return adj

    def facets_containing(self, vertex_set: Iterable[int]) -> list:
        vs = frozenset(vertex_set)
        return [i for i, f in enumerate(self.facets) if vs <= f.vertices]

    def validate(self) -> None:
        """Raise :class:`InvariantViolation` unless every invariant holds."""
        d = self.dim
        if d < 2:
            raise InvariantViolation("dimension must be at least 2")
        if not self.vertices or any(len(v) != d for v in self.vertices):
            raise InvariantViolation(f"vertices must be nonempty points of dimension {d}")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvariantViolation("duplicate vertex coordinates")
        if affine_rank(self.vertices) != d:
            raise InvariantViolation("vertex set is not full-dimensional")
        seen = set()
        for f in self.facets:
            if f.vertices in seen:
                raise InvariantViolation(f"duplicate facet {sorted(f.vertices)}")
            seen.add(f.vertices)
            on = set()
            for i, v in enumerate(self.vertices):
                s = f.hyperplane.side(v)
                if s is Side.BEYOND:
                    raise InvariantViolation(
                        f"vertex {i} lies beyond the hyperplane of facet {sorted(f.vertices)}")
                if s is Side.ON:
                    on.add(i)
            if on != f.vertices:
                raise InvariantViolation(
                    f"facet {sorted(f.vertices)} vertex set disagrees with its hyperplane "
                    f"(vertices on hyperplane: {sorted(on)})")
            if self.rank_of(f.vertices) != d - 1:
                raise InvariantViolation(f"facet {sorted(f.vertices)} is not (d-1)-dimensional")
        sets = [f.vertices for f in self.facets]
        for a in sets:
            for b in sets:
                if a is not b and a < b:
                    raise InvariantViolation(f"facet {sorted(a)} is contained in {sorted(b)}")
        for i in range(len(self.vertices)):
            if sum(1 for s in sets if i in s) < d:
                raise InvariantViolation(f"vertex {i} lies in fewer than {d} facets")
        # the listed facets cover the whole boundary iff no ridge of a listed
        # facet is left without a second listed facet
        for f in self.facets:
            for r in self._ridges_within(f):
                if sum(1 for s in sets if r <= s) != 2:
                    raise InvariantViolation(
                        f"ridge {sorted(r)} of facet {sorted(f.vertices)} is not shared by exactly "
                        f"one other facet; the facet list is incomplete")

    def _ridges_within(self, f: Facet) -> set:
        """Facets of ``f`` viewed as a (d-1)-polytope, found from coordinates alone."""
        d = self.dim
        fv = sorted(f.vertices)
        ipts = dict(zip(fv, scaled_to_integers([self.vertices[i] for i in fv])))
        normal = list(f.hyperplane.normal)
        ridges = set()
        for cand in combinations(fv, d - 1):
            if any(set(cand) <= r for r in ridges):
                continue
            base = ipts[cand[0]]
            # hyperplane through the candidate, parallel to the facet normal
            rows = [[a - b for a, b in zip(ipts[i], base)] for i in cand[1:]] + [normal]
            n = cofactor_normal(rows, d)
            if not any(n):
                continue
            vals = {i: sum(a * (b - c) for a, b, c in zip(n, ipts[i], base)) for i in fv}
            if any(v > 0 for v in vals.values()) and any(v < 0 for v in vals.values()):
                continue
            ridges.add(frozenset(i for i, v in vals.items() if v == 0))
        return ridges
