"""Face lattices and the combinatorial invariants computed from them."""
from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import InvariantViolation
from .polytope import Polytope


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for i in vs:
        m |= 1 << i
    return m


def _unmask(m: int) -> frozenset:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


def _closure(facet_masks: Sequence[int], full: int) -> set:
    """All intersections of facet vertex sets, plus the full set and the empty set."""
    faces = set(facet_masks)
    stack = list(faces)
    while stack:
        f = stack.pop()
        for g in facet_masks:
            h = f & g
            if h not in faces:
                faces.add(h)
                stack.append(h)
    faces.add(full)
    faces.add(0)
    return faces


@dataclass(frozen=True, eq=False)
class FaceLattice:
    """Faces by dimension, each face a frozenset of vertex indices.

    ``layers[k + 1]`` holds the k-faces for k = -1, ..., dim.
    """

    dim: int
    n_vertices: int
    layers: tuple
    _masks: dict = field(default_factory=dict, repr=False)

    def faces(self, k: int) -> tuple:
        return self.layers[k + 1]

    @property
    def facets(self) -> tuple:
        return self.faces(self.dim - 1)

    def masks(self, k: int) -> list:
        ms = self._masks.get(k)
        if ms is None:
            ms = [_mask(f) for f in self.faces(k)]
            self._masks[k] = ms
        return ms

    @cached_property
    def dimension_of(self) -> dict:
        return {f: k - 1 for k, layer in enumerate(self.layers) for f in layer}

    @cached_property
    def covers(self) -> list:
        """``covers[k + 1]`` lists pairs (i, j): k-face i is contained in (k+1)-face j."""
        out = []
        for k in range(-1, self.dim):
            lo, hi = self.masks(k), self.masks(k + 1)
            out.append([(i, j) for i, a in enumerate(lo) for j, b in enumerate(hi) if a & b == a])
        return out

    def __repr__(self) -> str:
        return f"FaceLattice(dim={self.dim}, sizes={tuple(len(l) for l in self.layers)})"

    @classmethod
    def from_facets(cls, facet_sets: Iterable[Iterable[int]], n_vertices: int, dim: int) -> "FaceLattice":
        """Lattice from vertex-facet incidences alone; ranks are chain lengths."""
        fm = sorted({_mask(f) for f in facet_sets})
        full = (1 << n_vertices) - 1
        faces = sorted(_closure(fm, full), key=lambda m: bin(m).count("1"))
        rank: dict[int, int] = {}
        for f in faces:
            below = [rank[g] for g in rank if g & f == g and g != f]
            rank[f] = max(below) + 1 if below else -1
        return cls._from_ranked(rank, n_vertices, dim)

    @classmethod
    def _from_ranked(cls, rank: dict, n_vertices: int, dim: int) -> "FaceLattice":
        layers: list[list] = [[] for _ in range(dim + 2)]
        for m, r in rank.items():
            if not -1 <= r <= dim:
                raise InvariantViolation(f"face {sorted(_unmask(m))} has rank {r} outside [-1, {dim}]")
            layers[r + 1].append(_unmask(m))
        lat = cls(dim, n_vertices, tuple(tuple(sorted(l, key=lambda f: sorted(f))) for l in layers))
        lat.check()
        return lat

    def check(self) -> None:
        d = self.dim
        if self.faces(-1) != (frozenset(),):
            raise InvariantViolation("layer -1 must be the empty face alone")
        if self.faces(d) != (frozenset(range(self.n_vertices)),):
            raise InvariantViolation("layer d must be the full vertex set alone")
        singletons = {frozenset([i]) for i in range(self.n_vertices)}
        if set(self.faces(0)) != singletons:
            raise InvariantViolation("0-faces are not exactly the singleton vertex sets")


def build_face_lattice(p: Polytope) -> FaceLattice:
    """Combinatorial closure of the incidences, layered by affine rank of coordinates."""
    cached = p._cache.get("lattice")
    if cached is not None:
        return cached
    fm = [_mask(f.vertices) for f in p.facets]
    full = (1 << p.n_vertices) - 1
    rank = {}
    for m in _closure(fm, full):
        rank[m] = p.rank_of(_unmask(m)) if m else -1
    lat = FaceLattice._from_ranked(rank, p.n_vertices, p.dim)
    if len(lat.facets) != len(p.facets):
        raise InvariantViolation("facet layer disagrees with the polytope's facet list")
    p._cache["lattice"] = lat
    return lat


def f_vector(lat: FaceLattice) -> tuple:
    return tuple(len(lat.faces(k)) for k in range(lat.dim))


class FlagVector(Mapping):
    """Chain counts f_S indexed by subsets S of {0, ..., d-1}.

    Keys may be given as iterables of ints or as digit strings: ``fv["03"]``.
    """

    def __init__(self, dim: int, entries: dict):
        self.dim = dim
        self._entries = dict(entries)

    @staticmethod
    def key(s) -> tuple:
        if isinstance(s, str):
            return tuple(sorted(int(c) for c in s))
        return tuple(sorted(s))

    def __getitem__(self, s) -> int:
        return self._entries[self.key(s)]

    def __iter__(self):
        return iter(sorted(self._entries, key=lambda t: (len(t), t)))

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, FlagVector):
            return self.dim == other.dim and self._entries == other._entries
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"f{''.join(map(str, s))}={self._entries[s]}" for s in self)
        return f"FlagVector({body})"

    def replace(self, s, value: int) -> "FlagVector":
        entries = dict(self._entries)
        entries[self.key(s)] = value
        return FlagVector(self.dim, entries)


def flag_vector(lat: FaceLattice) -> FlagVector:
    d = lat.dim
    entries = {}
    for r in range(d + 1):
        for s in combinations(range(d), r):
            if not s:
                entries[s] = 1
                continue
            counts = [1] * len(lat.faces(s[0]))
            prev = lat.masks(s[0])
            for k in s[1:]:
                cur = lat.masks(k)
                counts = [sum(c for g, c in zip(prev, counts) if g & f == g) for f in cur]
                prev = cur
            entries[s] = sum(counts)
    return FlagVector(d, entries)


def g2(flag: FlagVector, d: int) -> int:
    return flag["02"] - 3 * flag["2"] + flag["1"] - d * flag["0"] + comb(d + 1, 2)


def k_simplicial(lat: FaceLattice, k: int) -> bool:
    if not 0 <= k <= lat.dim - 1:
        raise ValueError(f"k must lie in [0, {lat.dim - 1}]")
    return all(len(f) == k + 1 for f in lat.faces(k))


def h_simple(lat: FaceLattice, h: int) -> bool:
    if not 0 <= h <= lat.dim - 1:
        raise ValueError(f"h must lie in [0, {lat.dim - 1}]")
    fm = lat.masks(lat.dim - 1)
    for g in lat.masks(lat.dim - h - 1):
        if sum(1 for f in fm if g & f == g) != h + 1:
            return False
    return True


def face_degree(lat: FaceLattice, face: Iterable[int]) -> int:
    """Number of facets containing ``face``."""
    face = frozenset(face)
    if face not in lat.dimension_of:
        raise KeyError(f"{sorted(face)} is not a face of the lattice")
    return sum(1 for f in lat.facets if face <= f)


def dual(lat: FaceLattice) -> FaceLattice:
    """Order-reversed lattice; dual vertices are the indices of ``lat.facets``."""
    facets = [ _mask(f) for f in lat.facets]
    d = lat.dim
    layers = []
    for k in range(-1, d + 1):
        layer = []
        for g in lat.masks(d - 1 - k):
            layer.append(frozenset(i for i, f in enumerate(facets) if g & f == g))
        layers.append(tuple(sorted(layer, key=sorted)))
    out = FaceLattice(d, len(facets), tuple(layers))
    out.check()
    return out


def _vertex_profile(facets: list, n: int):
    """Per-vertex signature and per-pair common-facet signatures."""
    containing = [[f for f in facets if i in f] for i in range(n)]
    sig = [tuple(sorted(len(f) for f in c)) for c in containing]
    pair = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            t = tuple(sorted(len(f) for f in containing[i] if j in f))
            pair[i][j] = pair[j][i] = t
    return sig, pair


def find_isomorphism(a: FaceLattice, b: FaceLattice) -> dict | None:
    """A vertex bijection carrying the facets of ``a`` onto those of ``b``, or None."""
    if a.dim != b.dim or a.n_vertices != b.n_vertices:
        return None
    if tuple(len(l) for l in a.layers) != tuple(len(l) for l in b.layers):
        return None
    fa, fb = list(a.facets), list(b.facets)
    if sorted(map(len, fa)) != sorted(map(len, fb)):
        return None
    n = a.n_vertices
    sig_a, pair_a = _vertex_profile(fa, n)
    sig_b, pair_b = _vertex_profile(fb, n)
    if Counter(sig_a) != Counter(sig_b):
        return None
    by_sig: dict = {}
    for j in range(n):
        by_sig.setdefault(sig_b[j], []).append(j)

    # static order: rarest signature first, then most connected to what is placed
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        def score(u):
            links = sum(1 for w in order if pair_a[u][w])
            return (-links, len(by_sig[sig_a[u]]), u)
        u = min(remaining, key=score)
        order.append(u)
        remaining.discard(u)

    target_sets = {frozenset(f) for f in fb}
    image: dict[int, int] = {}
    used: set = set()

    def extend(pos: int) -> bool:
        if pos == n:
            return all(frozenset(image[i] for i in f) in target_sets for f in fa)
        u = order[pos]
        for cand in by_sig[sig_a[u]]:
            if cand in used:
                continue
            if any(pair_a[u][w] != pair_b[cand][image[w]] for w in order[:pos]):
                continue
            image[u] = cand
            used.add(cand)
            if extend(pos + 1):
                return True
            used.discard(cand)
            del image[u]
        return False

    return dict(image) if extend(0) else None


def lattices_isomorphic(a: FaceLattice, b: FaceLattice) -> bool:
    return find_isomorphism(a, b) is not None


def self_dual(lat: FaceLattice) -> bool:
    return lattices_isomorphic(lat, dual(lat))


def dehn_sommerville_equations(d: int):
    """Yield (S, i, k) for every generalized Dehn-Sommerville relation in dimension d."""
    for r in range(d + 1):
        for s in combinations(range(d), r):
            ss = set(s)
            for i in range(d + 1):
                if i - 1 not in ss | {-1}:
                    continue
                for k in range(i + 1, d + 1):
                    if k not in ss | {d}:
                        continue
                    if ss & set(range(i, k)):
                        continue
                    yield s, i, k


def dehn_sommerville_check(flag: FlagVector, d: int) -> bool:
    for s, i, k in dehn_sommerville_equations(d):
        lhs = sum((-1) ** (j - i) * flag[set(s) | {j}] for j in range(i, k))
        if lhs != flag[s] * (1 - (-1) ** (k - i)):
            return False
    return True


def euler_check(fvec: Sequence[int], d: int) -> bool:
    return sum((-1) ** i * f for i, f in enumerate(fvec)) == 1 - (-1) ** d


def check_combinatorics(lat: FaceLattice) -> None:
    """Cheap necessary conditions for a facet list to be complete.

    Every ridge lies in exactly two facets and the Euler relation holds.
    A file that drops a facet almost always fails one of them.
    """
    d = lat.dim
    fm = lat.masks(d - 1)
    for r, rm in zip(lat.faces(d - 2), lat.masks(d - 2)):
        k = sum(1 for f in fm if rm & f == rm)
        if k != 2:
            raise InvariantViolation(f"ridge {sorted(r)} lies in {k} facets, expected 2")
    if not euler_check(f_vector(lat), d):
        raise InvariantViolation(f"Euler relation fails for f-vector {f_vector(lat)}")
