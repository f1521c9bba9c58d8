"""Pseudo-stacking: conv(P + v) for a point v beyond a simplex facet S and a
set N of its neighbours, on the hyperplanes of a set F of neighbours, and
beneath every other facet hyperplane.

The hull update is an exact beneath-beyond step. Facets of the result are

(a) facets of P the new point lies beneath (unchanged),
(b) pyramids over ridges between S and an unaffected neighbour,
(c) pyramids over ridges between a facet of N and an unaffected facet,
(d) facets of F, each pseudo-stacked inside its own hyperplane.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (InputIsSimplex, InvariantViolation, NormalizationFailed,
                     RegionEmptyOrUnsupported, SelectorError, UnsupportedSpec)
from .lattice import build_face_lattice, f_vector, face_degree, lattices_isomorphic
from .linalg import (Hyperplane, NoUniqueSolution, Side, add, barycenter, dot,
                     hyperplane_through, scale, solve_square, sub)
from .polytope import Facet, Polytope

MAX_HALVINGS = 256


class SelectorMode(enum.Enum):
    CONTAINS_ALL = "contains"
    ADJACENT_TO_BASE_VIA = "adjacent"


@dataclass(frozen=True)
class FacetSelector:
    """Names one facet of the current polytope by vertex indices.

    ``CONTAINS_ALL`` picks the unique facet containing every listed vertex;
    ``ADJACENT_TO_BASE_VIA`` picks the unique facet other than the base that
    meets the base in a ridge containing the listed vertices.
    """

    vertices: frozenset
    mode: SelectorMode = SelectorMode.CONTAINS_ALL

    @classmethod
    def containing(cls, *vs: int) -> "FacetSelector":
        return cls(frozenset(vs), SelectorMode.CONTAINS_ALL)

    @classmethod
    def adjacent_via(cls, *vs: int) -> "FacetSelector":
        return cls(frozenset(vs), SelectorMode.ADJACENT_TO_BASE_VIA)

    def resolve(self, p: Polytope, base: int | None = None) -> int:
        if self.mode is SelectorMode.CONTAINS_ALL:
            hits = p.facets_containing(self.vertices)
        else:
            if base is None:
                raise SelectorError("adjacent-to-base selector used without a base facet")
            hits = [j for j in p.adjacency()[base]
                    if self.vertices <= p.facets[j].vertices & p.facets[base].vertices]
        if len(hits) != 1:
            raise SelectorError(
                f"{self.mode.value} selector {sorted(self.vertices)} matches {len(hits)} facets")
        return hits[0]

    def __str__(self) -> str:
        vs = ",".join(map(str, sorted(self.vertices)))
        return f"F({vs})" if self.mode is SelectorMode.CONTAINS_ALL else f"F_S({vs})"


@dataclass(frozen=True)
class StepSpec:
    base: FacetSelector
    f_set: tuple = ()
    n_set: tuple = ()

    def resolve(self, p: Polytope) -> "ResolvedStep":
        if self.base.mode is not SelectorMode.CONTAINS_ALL:
            raise SelectorError("the base facet must be given by a contains-all selector")
        s = self.base.resolve(p)
        fs = [sel.resolve(p, s) for sel in self.f_set]
        ns = [sel.resolve(p, s) for sel in self.n_set]
        if len(set(fs)) != len(fs) or len(set(ns)) != len(ns):
            raise SelectorError("two selectors resolve to the same facet")
        return ResolvedStep(s, frozenset(fs), frozenset(ns))


@dataclass(frozen=True)
class ResolvedStep:
    """A step with every selector replaced by a facet index."""

    base: int
    f_set: frozenset = frozenset()
    n_set: frozenset = frozenset()

    def resolve(self, p: Polytope) -> "ResolvedStep":
        return self

    @property
    def affected(self) -> frozenset:
        return self.f_set | self.n_set | {self.base}


@dataclass(frozen=True)
class WitnessPoint:
    point: tuple
    epsilon: Fraction
    apex: tuple | None  # None: the neighbour hyperplanes were not used (fallback)


@dataclass(frozen=True)
class SubridgeForecast:
    phi: int
    epsilon_indicator: int
    survives: bool
    predicted_degree: int


@dataclass
class StackResult:
    """Outcome of one beneath-beyond step with bookkeeping for census checks."""

    polytope: Polytope
    new_vertex: int
    index_map: dict  # old vertex index -> new index, survivors only
    beyond: frozenset
    on: frozenset
    census: dict = field(default_factory=dict)  # type letter -> list of new vertex sets


# ---------------------------------------------------------------- predicates

def adjacent_facets(p: Polytope, facet: int) -> frozenset:
    return p.adjacency()[facet]


def is_nonsimple(p: Polytope, s: int, f_set: Iterable[int]) -> bool:
    """No two facets of ``f_set`` are adjacent while sharing a (d-3)-face with S."""
    f_set = sorted(f_set)
    adj = p.adjacency()
    sv = p.facets[s].vertices
    for i, g in enumerate(f_set):
        for h in f_set[i + 1:]:
            if h not in adj[g]:
                continue
            common = p.facets[g].vertices & p.facets[h].vertices & sv
            if len(common) >= p.dim - 2 and p.rank_of(common) == p.dim - 3:
                return False
    return True


def _neighbour_apex(p: Polytope, s: int):
    """Common point of the neighbour hyperplanes of a simplex facet, or None."""
    nbrs = sorted(p.adjacency()[s])
    if len(nbrs) != p.dim:
        return None
    try:
        return solve_square([p.facets[j].hyperplane for j in nbrs])
    except NoUniqueSolution:
        return None


def bounded_position(p: Polytope, s: int) -> bool:
    """Simplex facets only: the neighbour hyperplanes meet in one point beyond S."""
    if not p.is_simplex_facet(s):
        raise UnsupportedSpec("bounded_position is implemented for simplex facets only")
    apex = _neighbour_apex(p, s)
    return apex is not None and p.facets[s].hyperplane.side(apex) is Side.BEYOND


def check_step(p: Polytope, r: ResolvedStep) -> None:
    """Raise :class:`UnsupportedSpec` unless ``r`` is a valid pseudo-stacking step."""
    if not p.is_simplex_facet(r.base):
        raise UnsupportedSpec(f"base facet {sorted(p.facets[r.base].vertices)} is not a simplex")
    adj = p.adjacency()[r.base]
    if not (r.f_set | r.n_set) <= adj:
        raise UnsupportedSpec("F and N must consist of neighbours of the base facet")
    if r.f_set & r.n_set:
        raise UnsupportedSpec("F and N must be disjoint")
    if not is_nonsimple(p, r.base, r.f_set):
        raise UnsupportedSpec("F is not nonsimple")


def in_region(p: Polytope, r: ResolvedStep, x: Sequence) -> bool:
    """Exact membership test for the admissible region of step ``r``."""
    beyond = r.n_set | {r.base}
    for i, f in enumerate(p.facets):
        side = f.hyperplane.side(x)
        if i in r.f_set:
            if side is not Side.ON:
                return False
        elif i in beyond:
            if side is not Side.BEYOND:
                return False
        elif side is not Side.BENEATH:
            return False
    return True


# ---------------------------------------------------------------- witness

def witness_point(p: Polytope, spec: StepSpec | ResolvedStep) -> WitnessPoint:
    return _search_witness(p, spec.resolve(p), None)


def sample_region_point(p: Polytope, spec: StepSpec | ResolvedStep, rng: random.Random) -> WitnessPoint:
    """A region point drawn with random positive weights and a random starting step.

    Each v_j moves off the hyperplane of F_j only, so any positive weighting
    works for small enough epsilon.
    """
    return _search_witness(p, spec.resolve(p), rng)


def _search_witness(p: Polytope, r: ResolvedStep, rng: random.Random | None) -> WitnessPoint:
    def draw() -> Fraction:
        return Fraction(1) if rng is None else Fraction(rng.randint(1, 9), rng.randint(1, 9))

    check_step(p, r)
    s = r.base
    apex = _neighbour_apex(p, s)
    if apex is not None and p.facets[s].hyperplane.side(apex) is Side.BEYOND:
        sv = p.facets[s].vertices
        direction = tuple(Fraction(0) for _ in range(p.dim))
        for j in sorted(p.adjacency()[s]):
            (opposite,) = sv - p.facets[j].vertices
            vj = scale(draw(), sub(p.vertices[opposite], apex))
            if j in r.n_set:
                direction = sub(direction, vj)
            elif j not in r.f_set:
                direction = add(direction, vj)
        eps = draw()
        for _ in range(MAX_HALVINGS):
            x = add(apex, scale(eps, direction))
            if in_region(p, r, x):
                return WitnessPoint(x, eps, apex)
            eps /= 2
        raise RegionEmptyOrUnsupported(f"no admissible point after {MAX_HALVINGS} halvings")

    if r.n_set or len(r.f_set) > 1:
        raise RegionEmptyOrUnsupported(
            "base facet is not in bounded position; the fallback covers only N empty and |F| <= 1")
    sv = p.facets[s].vertices
    if r.f_set:
        (f,) = r.f_set
        inner = barycenter([p.vertices[i] for i in sorted(sv & p.facets[f].vertices)])
        outer = barycenter([p.vertices[i] for i in sorted(p.facets[f].vertices)])
    else:
        inner = barycenter([p.vertices[i] for i in sorted(sv)])
        outer = barycenter(p.vertices)
    step = sub(inner, outer)
    t = draw()
    for _ in range(MAX_HALVINGS):
        x = add(inner, scale(t, step))
        if in_region(p, r, x):
            return WitnessPoint(x, t, None)
        t /= 2
    raise RegionEmptyOrUnsupported(f"fallback found no admissible point after {MAX_HALVINGS} halvings")


# ---------------------------------------------------------------- hull update

def _type_d_vertices(p: Polytope, f: int, sides: list) -> frozenset:
    """Vertices of conv(F + v) inside H_F for a facet F whose hyperplane contains v.

    Seen inside H_F, the facets of F are its ridges with the neighbouring
    facets, and v lies beyond/on/beneath such a ridge exactly as it does for the
    neighbour's hyperplane. The survivors are the vertices of the ridges v is
    beneath.
    """
    fv = p.facets[f].vertices
    keep = set()
    for g in p.adjacency()[f]:
        if sides[g] is Side.BENEATH:
            keep |= fv & p.facets[g].vertices
    return frozenset(keep)


def stack_point(p: Polytope, x: Sequence, base: int | None = None) -> StackResult:
    """Exact conv(P + x) for a point x outside P.

    ``base`` only labels the census; the geometry ignores it.
    """
    x = tuple(Fraction(c) for c in x)
    sides = [f.hyperplane.side(x) for f in p.facets]
    beyond = frozenset(i for i, s in enumerate(sides) if s is Side.BEYOND)
    on = frozenset(i for i, s in enumerate(sides) if s is Side.ON)
    if not beyond:
        raise RegionEmptyOrUnsupported("point is not outside the polytope")
    adj = p.adjacency()
    n = p.n_vertices
    new = n  # provisional index of the new vertex
    pending: list[tuple[Hyperplane, frozenset, str]] = []
    for i, f in enumerate(p.facets):
        if sides[i] is Side.BENEATH:
            pending.append((f.hyperplane, f.vertices, "a"))
    for i in sorted(beyond):
        kind = "b" if i == base else "c"
        for j in sorted(adj[i]):
            if sides[j] is not Side.BENEATH:
                continue
            ridge = p.facets[i].vertices & p.facets[j].vertices
            inside = next(k for k in sorted(p.facets[j].vertices) if k not in ridge)
            h = hyperplane_through([p.vertices[k] for k in sorted(ridge)] + [x], p.vertices[inside])
            pending.append((h, ridge | {new}, kind))
    for i in sorted(on):
        pending.append((p.facets[i].hyperplane, _type_d_vertices(p, i, sides) | {new}, "d"))

    survivors = sorted(set().union(*(vs for _, vs, _ in pending)) - {new})
    index_map = {old: k for k, old in enumerate(survivors)}
    index_map_with_new = dict(index_map)
    index_map_with_new[new] = len(survivors)
    verts = [p.vertices[i] for i in survivors] + [x]
    facets = []
    census: dict[str, list] = {"a": [], "b": [], "c": [], "d": []}
    for h, vs, kind in pending:
        mapped = frozenset(index_map_with_new[i] for i in vs)
        facets.append(Facet(h, mapped))
        census[kind].append(mapped)
    q = Polytope(p.dim, tuple(verts), tuple(facets))
    try:
        q.validate()
    except InvariantViolation as exc:
        raise InvariantViolation(f"hull update produced an invalid polytope: {exc}") from exc
    return StackResult(q, len(survivors), index_map, beyond, on, census)


def pseudo_stack_step(p: Polytope, spec: StepSpec | ResolvedStep, point: Sequence | None = None) -> StackResult:
    r = spec.resolve(p)
    check_step(p, r)
    if point is None:
        x = witness_point(p, r).point
    else:
        x = tuple(Fraction(c) for c in point)
        if not in_region(p, r, x):
            raise RegionEmptyOrUnsupported("given point is not in the admissible region")
    return stack_point(p, x, base=r.base)


def pseudo_stack(p: Polytope, spec: StepSpec | ResolvedStep, point: Sequence | None = None) -> Polytope:
    return pseudo_stack_step(p, spec, point).polytope


# ---------------------------------------------------------------- forecasts

def _edge_forecast_parts(p: Polytope, spec) -> tuple[ResolvedStep, int]:
    r = spec.resolve(p)
    check_step(p, r)
    if len(r.n_set) > 1:
        raise UnsupportedSpec("edge-count forecast needs |N| <= 1")
    sv = p.facets[r.base].vertices
    seen = sv | (p.facets[next(iter(r.n_set))].vertices if r.n_set else frozenset())
    if r.n_set:
        free = [p.facets[i].vertices for i in range(len(p.facets)) if i not in r.affected]
        if not all(any(u in g for g in free) for u in seen):
            raise UnsupportedSpec("every vertex of S and N must lie in an unaffected facet")
    return r, len(seen)


def edges_added(p: Polytope, spec: StepSpec | ResolvedStep) -> int:
    """Number of new edges [v, u]: one per vertex u of S or N, i.e. d + f0(N) - f0(S & N)."""
    return _edge_forecast_parts(p, spec)[1]


def edges_destroyed(p: Polytope, spec: StepSpec | ResolvedStep) -> int:
    """Edges of P lying in no unaffected facet; these are not edges of the result."""
    r = spec.resolve(p)
    check_step(p, r)
    lat = build_face_lattice(p)
    free = [p.facets[i].vertices for i in range(len(p.facets)) if i not in r.affected]
    return sum(1 for e in lat.faces(1) if not any(e <= g for g in free))


def forecast_edge_count(p: Polytope, spec: StepSpec | ResolvedStep) -> int:
    """Predicted f1 of the pseudo-stacked polytope.

    For N empty this is f1 + d - f with f = |F| in dimension 3 and 0 above.
    With one facet in N the destroyed edges are counted by the surviving-face
    criterion instead of by that correction term: an edge of S & N whose other
    facets all lie in F also disappears (in dimension 3, S & N itself does).
    """
    r, added = _edge_forecast_parts(p, spec)
    f1 = f_vector(build_face_lattice(p))[1]
    if not r.n_set:
        f = len(r.f_set) if p.dim == 3 else 0
        return f1 + p.dim - f
    return f1 + added - edges_destroyed(p, r)


def forecast_subridge_degree(p: Polytope, spec: StepSpec | ResolvedStep,
                             subridge: Iterable[int]) -> SubridgeForecast:
    r = spec.resolve(p)
    check_step(p, r)
    if len(r.n_set) > 1:
        raise UnsupportedSpec("subridge forecast needs |N| <= 1")
    g = frozenset(subridge)
    lat = build_face_lattice(p)
    if g not in lat.dimension_of or lat.dimension_of[g] != p.dim - 3:
        raise ValueError(f"{sorted(g)} is not a subridge")
    sv = p.facets[r.base].vertices
    nv = p.facets[next(iter(r.n_set))].vertices if r.n_set else frozenset()
    in_s, in_n = g <= sv, bool(r.n_set) and g <= nv
    if not (in_s or in_n):
        raise ValueError(f"{sorted(g)} lies neither in S nor in N")
    phi = sum(1 for i in r.f_set if g <= p.facets[i].vertices)
    eps = int(in_s)
    deg = face_degree(lat, g)
    if in_n:
        containing = p.facets_containing(g)
        if all(i in r.affected for i in containing):
            return SubridgeForecast(phi, eps, False, 0)
        return SubridgeForecast(phi, eps, True, deg + 1 - eps - phi)
    return SubridgeForecast(phi, eps, True, deg + 1 - phi)


def surviving_faces(p: Polytope, spec: StepSpec | ResolvedStep) -> set:
    """Faces of P of dimension <= d-2 contained in some unaffected facet."""
    r = spec.resolve(p)
    check_step(p, r)
    lat = build_face_lattice(p)
    free = [p.facets[i].vertices for i in range(len(p.facets)) if i not in r.affected]
    out = set()
    for k in range(0, p.dim - 1):
        for face in lat.faces(k):
            if any(face <= g for g in free):
                out.add(face)
    return out


# ---------------------------------------------------------------- normalization

def _projective_image(p: Polytope, a: tuple, beta: Fraction) -> Polytope | None:
    """Image of P under x -> x / (beta - <a, x>), or None if the map is inadmissible."""
    verts = []
    for v in p.vertices:
        den = beta - dot(a, v)
        if den <= 0:
            return None
        verts.append(tuple(c / den for c in v))
    try:
        return Polytope.from_incidences(p.dim, verts, p.facet_sets)
    except InvariantViolation:
        return None


def normalize_bounded_position(p: Polytope, s: int) -> Polytope:
    """A projectively equivalent copy of P in which simplex facet ``s`` is in bounded position.

    Facet indices are preserved: the vertex sets are unchanged.
    """
    if p.n_vertices == p.dim + 1:
        raise InputIsSimplex("a simplex has no facet that can be put into bounded position")
    if not p.is_simplex_facet(s):
        raise UnsupportedSpec("normalization is implemented for simplex facets only")
    if bounded_position(p, s):
        return p
    h = p.facets[s].hyperplane
    normal = tuple(Fraction(c) for c in h.normal)
    top = max(dot(normal, v) for v in p.vertices)
    apex = _neighbour_apex(p, s)
    betas = []
    if apex is not None and dot(normal, apex) > top:
        far = dot(normal, apex)
        betas += [top + (far - top) * Fraction(1, k) for k in (2, 3, 4, 8)]
    betas += [top + Fraction(1, k) for k in (1, 2, 4, 8, 16)] + [top + k for k in (2, 4, 8)]
    target = build_face_lattice(p)
    # move the origin onto S so the map fixes a point of S
    origin = barycenter([p.vertices[i] for i in sorted(p.facets[s].vertices)])
    moved = _translate(p, origin)
    for beta in betas:
        q = _projective_image(moved, normal, beta - dot(normal, origin))
        if q is None:
            continue
        if bounded_position(q, q.facet_index(p.facets[s].vertices)) and \
                lattices_isomorphic(build_face_lattice(q), target):
            return q
    raise NormalizationFailed("no candidate projective map put the facet into bounded position")


def _translate(p: Polytope, origin: tuple) -> Polytope:
    verts = tuple(sub(v, origin) for v in p.vertices)
    return Polytope.from_incidences(p.dim, verts, p.facet_sets, check=False)
