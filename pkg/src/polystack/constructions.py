"""The two g2-preserving pseudo-stacking pipelines and what is built from them.

Step parameters are written with local labels: 0..3 are the labelled
vertices of the starting simplex facet, 4, 5, ... the vertices created by
the successive steps. A selector is resolved against the current polytope
after translating labels to actual vertex indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import catalog
from .analysis import analyze
from .errors import (ConstructionError, PolystackError, UnsupportedSpec,
                     UnsupportedVertexCount, VerificationFailure)
from .lattice import build_face_lattice, lattices_isomorphic
from .linalg import barycenter
from .polytope import Polytope
from .pseudostack import (FacetSelector, StackResult, StepSpec, bounded_position,
                          pseudo_stack_step, witness_point)

C = FacetSelector.containing
A = FacetSelector.adjacent_via

# (base, F, N) per step, in local labels
I1_STEPS = (
    (C(0, 1, 2, 3), (A(0, 1, 2),), ()),
    (C(0, 1, 3, 4), (C(1, 2, 3, 4), A(0, 1, 3)), ()),
    (C(0, 2, 3, 4), (C(0, 3, 4, 5), A(0, 2, 3)), ()),
    (C(2, 3, 4, 6), (C(1, 2, 3, 4), A(2, 3, 6)), ()),
    (C(0, 2, 4, 6), (C(0, 3, 4, 5, 6), C(2, 4, 6, 7), A(0, 2, 4)), ()),
)
I1_FINAL = (0, 2, 6, 8)

I2_STEPS = (
    (C(0, 1, 2, 3), (A(0, 1, 3),), ()),
    (C(1, 2, 3, 4), (C(0, 1, 2, 4), A(1, 2, 3)), ()),
    (C(0, 2, 3, 4), (C(0, 1, 2, 4, 5), A(0, 2, 3)), (C(2, 3, 4, 5),)),
    (C(3, 4, 5, 6), (C(0, 3, 4, 6), C(1, 3, 4, 5), C(2, 3, 5, 6)), ()),
)
I2_FINAL = (4, 5, 6, 7)


@dataclass(frozen=True)
class LabeledSimplexFacet:
    facet_index: int
    ordered_vertices: tuple

    @classmethod
    def ascending(cls, p: Polytope, facet_index: int) -> "LabeledSimplexFacet":
        return cls(facet_index, tuple(sorted(p.facets[facet_index].vertices)))

    @classmethod
    def of(cls, p: Polytope, ordered_vertices: Sequence[int]) -> "LabeledSimplexFacet":
        """Label the facet whose vertex set is ``ordered_vertices``, in that order."""
        try:
            index = p.facet_index(ordered_vertices)
        except KeyError:
            raise UnsupportedSpec(f"no facet with vertices {sorted(set(ordered_vertices))}") from None
        lab = cls(index, tuple(ordered_vertices))
        lab.check(p)
        return lab

    def check(self, p: Polytope) -> None:
        if not 0 <= self.facet_index < len(p.facets):
            raise UnsupportedSpec(f"facet index {self.facet_index} out of range")
        if not p.is_simplex_facet(self.facet_index):
            raise UnsupportedSpec(f"facet {self.facet_index} is not a simplex")
        if frozenset(self.ordered_vertices) != p.facets[self.facet_index].vertices \
                or len(self.ordered_vertices) != p.dim:
            raise UnsupportedSpec("labelling is not a permutation of the facet's vertices")


@dataclass
class StepRecord:
    spec: StepSpec          # in actual vertex indices of ``before``
    before: Polytope
    labels_before: list     # local label -> vertex index of ``before``
    after: Polytope
    labels_after: list
    new_vertex: int
    index_map: dict         # vertex of ``before`` -> vertex of ``after``, for survivors
    census: dict            # type letter -> facet vertex sets, as indices of ``after``
    census_labels: dict     # the same facets in local labels


@dataclass
class ConstructionTrace:
    steps: list = field(default_factory=list)
    final_labeled_facet: LabeledSimplexFacet | None = None


def _translate(sel: FacetSelector, labels: list) -> FacetSelector:
    return FacetSelector(frozenset(labels[i] for i in sel.vertices), sel.mode)


def _is_simplex4(p: Polytope) -> bool:
    return p.dim == 4 and p.n_vertices == 5


def _run(p: Polytope, s: LabeledSimplexFacet, steps, final) -> tuple[Polytope, ConstructionTrace]:
    if p.dim != 4:
        raise UnsupportedSpec("the pipelines are defined for 4-polytopes")
    s.check(p)
    if not _is_simplex4(p) and not bounded_position(p, s.facet_index):
        raise UnsupportedSpec("the labelled facet is not in bounded position")
    labels = list(s.ordered_vertices)
    trace = ConstructionTrace()
    for k, (base, fs, ns) in enumerate(steps, start=1):
        spec = StepSpec(_translate(base, labels),
                        tuple(_translate(x, labels) for x in fs),
                        tuple(_translate(x, labels) for x in ns))
        try:
            res: StackResult = pseudo_stack_step(p, spec, witness_point(p, spec).point)
        except PolystackError as exc:
            raise ConstructionError(k, exc) from exc
        new_labels = [res.index_map[i] for i in labels] + [res.new_vertex]
        back = {idx: lab for lab, idx in enumerate(new_labels)}
        census_labels = {t: [frozenset(back.get(i, -1) for i in vs) for vs in sets]
                         for t, sets in res.census.items()}
        trace.steps.append(StepRecord(spec, p, labels, res.polytope, new_labels,
                                      res.new_vertex, res.index_map, res.census, census_labels))
        p, labels = res.polytope, new_labels
    final_vertices = tuple(sorted(labels[i] for i in final))
    trace.final_labeled_facet = LabeledSimplexFacet.of(p, final_vertices)
    return p, trace


def construct_i1(p: Polytope, s: LabeledSimplexFacet) -> tuple[Polytope, ConstructionTrace]:
    """Five pseudo-stacking steps; adds (5, 20, 20, 5) to the f-vector."""
    return _run(p, s, I1_STEPS, I1_FINAL)


def construct_i2(p: Polytope, s: LabeledSimplexFacet) -> tuple[Polytope, ConstructionTrace]:
    """Four pseudo-stacking steps; adds (4, 16, 16, 4) to the f-vector."""
    return _run(p, s, I2_STEPS, I2_FINAL)


def first_bounded_simplex_facet(p: Polytope) -> LabeledSimplexFacet:
    """The first simplex facet (in facet order) that is in bounded position, labelled ascending."""
    for i in range(len(p.facets)):
        if p.is_simplex_facet(i) and bounded_position(p, i):
            return LabeledSimplexFacet.ascending(p, i)
    raise UnsupportedSpec("no simplex facet in bounded position")


def _verify_elementary(p: Polytope, k: int) -> Polytope:
    rep = analyze(p)
    if rep.fvec[0] != k or not rep.on_ell1:
        raise VerificationFailure(f"generated polytope with f = {rep.fvec} is not an elementary 2s2s "
                                  f"4-polytope with {k} vertices")
    return p


@lru_cache(maxsize=None)
def _generated(k: int) -> tuple[Polytope, LabeledSimplexFacet | None]:
    """Polytope with k vertices plus the labelled facet to continue from."""
    if k == 5:
        p = catalog.simplex(4)
        return p, LabeledSimplexFacet.ascending(p, 0)
    if k in (9, 10, 11):
        p = catalog.get(f"P{k}").polytope
        return p, first_bounded_simplex_facet(p)
    prev, name = generation_route(k)
    op = construct_i1 if name == "i1" else construct_i2
    p, s = _generated(prev)
    if not bounded_position(p, s.facet_index):
        raise VerificationFailure(f"continuation facet of the {prev}-vertex polytope is not in bounded position")
    q, trace = op(p, s)
    return _verify_elementary(q, k), trace.final_labeled_facet


def generate_with_continuation(k: int) -> tuple[Polytope, LabeledSimplexFacet]:
    """The generated polytope together with the labelled facet the next step starts from."""
    p, s = _generated(k)
    return _verify_elementary(p, k), s


def generation_route(k: int) -> tuple[int, str] | None:
    """(previous vertex count, pipeline) used to reach ``k``, or None for a base case."""
    if k in (5, 9, 10, 11):
        return None
    if k in (6, 7, 8, 12) or k < 5:
        raise UnsupportedVertexCount(f"no elementary 2s2s 4-polytope with {k} vertices is constructed")
    # k = 0 mod 4 has no base among 9, 10, 11; one five-vertex step from 11 reaches 16
    return (k - 5, "i1") if k == 16 else (k - 4, "i2")


def generate_elementary_2s2s(k: int) -> Polytope:
    """An elementary 2-simple 2-simplicial 4-polytope with ``k`` vertices.

    Supported: k = 5, 9, 10, 11 and every k >= 13.
    """
    p, _ = _generated(k)
    return _verify_elementary(p, k)


def pyramid(p: Polytope) -> Polytope:
    """Pyramid over ``p``; the apex sits at height 1 over the barycenter."""
    d = p.dim
    verts = [tuple(v) + (Fraction(0),) for v in p.vertices]
    verts.append(tuple(barycenter(p.vertices)) + (Fraction(1),))
    apex = len(verts) - 1
    facets = [set(range(p.n_vertices))] + [set(f) | {apex} for f in p.facet_sets]
    return Polytope.from_incidences(d + 1, verts, facets)


def stack(p: Polytope, facet: int) -> Polytope:
    """Place a new vertex just beyond simplex facet ``facet`` and beneath all others."""
    spec = StepSpec(C(*p.facets[facet].vertices))
    return pseudo_stack_step(p, spec).polytope


def build_p11_via_octahedron() -> Polytope:
    """Three pseudo-stacking steps on a pyramid over a stacked octahedron."""
    return octahedron_route()[0]


def octahedron_route() -> tuple[Polytope, ConstructionTrace]:
    """The eleven-vertex example built from a pyramid over a stacked octahedron, with its steps."""
    oct3 = catalog.octahedron()
    r = next(i for i, f in enumerate(oct3.facets)
             if all(oct3.vertices[j] in ((1, 0, 0), (0, 1, 0), (0, 0, 1)) for j in f.vertices))
    nbrs = [oct3.facets[j].vertices for j in sorted(oct3.adjacency()[r])]
    b3 = stack(oct3, r)
    # stacking keeps the vertex order of the octahedron and appends the new vertex
    p = pyramid(b3)
    apex = p.n_vertices - 1
    bases = [frozenset(ridge) | {apex} for ridge in nbrs]
    trace = ConstructionTrace()
    for k in range(1, 4):
        base = bases[k - 1]
        s = p.facet_index(base)
        f_set = tuple(C(*p.facets[j].vertices) for j in sorted(p.adjacency()[s])
                      if apex in p.facets[j].vertices)
        spec = StepSpec(C(*base), f_set)
        try:
            res = pseudo_stack_step(p, spec)
        except PolystackError as exc:
            raise ConstructionError(k, exc) from exc
        trace.steps.append(StepRecord(spec, p, [], res.polytope, [], res.new_vertex,
                                      res.index_map, res.census, {}))
        p = res.polytope
        bases = [frozenset(res.index_map[i] for i in b) for b in bases]
        apex = res.index_map[apex]
    if not lattices_isomorphic(build_face_lattice(p), build_face_lattice(catalog.get("P11").polytope)):
        raise VerificationFailure("octahedron route did not reproduce P11")
    return p, trace
