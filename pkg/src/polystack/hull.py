"""Brute-force facet enumeration.

Used as an independent oracle against the incremental hull update and
to recover facets of files that only list vertices. Exponential in the
dimension, which is harmless at the sizes handled here.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import lcm
from typing import Sequence

from .errors import SizeLimitExceeded
from .linalg import Hyperplane, cofactor_normal, scaled_to_integers
from .polytope import Facet

MAX_BRUTE_FORCE_VERTICES = 48


def enumerate_facets(points: Sequence[Sequence[Fraction]], limit: int = MAX_BRUTE_FORCE_VERTICES) -> list:
    """All facets of conv(points), each with its full vertex set.

    Every point is expected to be a vertex; the caller validates that.
    """
    n = len(points)
    if n > limit:
        raise SizeLimitExceeded(f"{n} points exceed the brute-force limit of {limit}")
    d = len(points[0])
    den = reduce(lcm, (c.denominator for p in points for c in p), 1)
    ipts = scaled_to_integers(points)
    found: dict[int, Facet] = {}
    masks: list[int] = []
    for comb in combinations(range(n), d):
        cmask = 0
        for i in comb:
            cmask |= 1 << i
        if any(cmask & m == cmask for m in masks):
            continue
        base = ipts[comb[0]]
        diffs = [[a - b for a, b in zip(ipts[i], base)] for i in comb[1:]]
        normal = cofactor_normal(diffs, d)
        if not any(normal):
            continue
        c = sum(a * b for a, b in zip(normal, base))
        above = below = False
        vals = []
        for p in ipts:
            v = sum(a * b for a, b in zip(normal, p))
            if v > c:
                above = True
            elif v < c:
                below = True
            if above and below:
                break
            vals.append(v)
        if above == below:
            continue
        fmask = 0
        for i, v in enumerate(vals):
            if v == c:
                fmask |= 1 << i
        if not above:
            normal = tuple(-x for x in normal)
            c = -c
        if fmask in found:
            continue
        verts = frozenset(i for i in range(n) if fmask >> i & 1)
        found[fmask] = Facet(Hyperplane.make(normal, Fraction(c, den)), verts)
        masks.append(fmask)
    return list(found.values())


def _facets_of_facet(ipts: list, fv: list, normal: list, d: int) -> list:
    """Vertex sets of the ridges of one facet, from coordinates inside its hyperplane."""
    ridges: list = []
    for cand in combinations(fv, d - 1):
        if any(set(cand) <= r for r in ridges):
            continue
        base = ipts[cand[0]]
        rows = [[a - b for a, b in zip(ipts[i], base)] for i in cand[1:]] + [normal]
        n = cofactor_normal(rows, d)
        if not any(n):
            continue
        vals = {i: sum(a * (b - c) for a, b, c in zip(n, ipts[i], base)) for i in fv}
        if any(v > 0 for v in vals.values()) and any(v < 0 for v in vals.values()):
            continue
        ridges.append(frozenset(i for i, v in vals.items() if v == 0))
    return ridges


def wrap_facets(points: Sequence[Sequence[Fraction]]) -> list:
    """All facets of conv(points) by gift wrapping; same output as :func:`enumerate_facets`.

    One facet is found by exhaustive search, every other one by rotating a
    known facet's hyperplane about each of its ridges until no point lies
    outside. Every point is expected to be a vertex.
    """
    n = len(points)
    d = len(points[0])
    den = reduce(lcm, (c.denominator for p in points for c in p), 1)
    ipts = scaled_to_integers(points)

    def value(normal, i):
        return sum(a * b for a, b in zip(normal, ipts[i]))

    def facet_from(normal, c) -> Facet:
        # orientation: every point satisfies <normal, x> >= c
        verts = frozenset(i for i in range(n) if value(normal, i) == c)
        return Facet(Hyperplane.make(normal, Fraction(c, den)), verts)

    start = None
    for comb in combinations(range(n), d):
        base = ipts[comb[0]]
        normal = cofactor_normal([[a - b for a, b in zip(ipts[i], base)] for i in comb[1:]], d)
        if not any(normal):
            continue
        c = value(normal, comb[0])
        vals = [value(normal, i) for i in range(n)]
        if all(v >= c for v in vals):
            start = facet_from(normal, c)
        elif all(v <= c for v in vals):
            start = facet_from([-x for x in normal], -c)
        if start is not None:
            break
    if start is None:
        return []

    found = {start.vertices: start}
    queue = [start]
    done_ridges = set()
    while queue:
        f = queue.pop()
        fnormal = list(f.hyperplane.normal)
        fv = sorted(f.vertices)
        for ridge in _facets_of_facet(ipts, fv, fnormal, d):
            if ridge in done_ridges:
                continue
            done_ridges.add(ridge)
            r = sorted(ridge)
            # d-1 affinely independent ridge points span the pencil axis
            axis = next(list(c) for c in combinations(r, d - 1)
                        if any(cofactor_normal([[a - b for a, b in zip(ipts[i], ipts[c[0]])]
                                                for i in c[1:]] + [fnormal], d)))
            inner = next(i for i in fv if i not in ridge)
            best = None
            normal = c = None
            for q in range(n):
                if q in f.vertices:
                    continue
                if best is not None and value(normal, q) >= c:
                    continue
                best = q
                base = ipts[axis[0]]
                rows = [[a - b for a, b in zip(ipts[i], base)] for i in axis[1:]]
                rows.append([a - b for a, b in zip(ipts[q], base)])
                normal = cofactor_normal(rows, d)
                c = value(normal, axis[0])
                if value(normal, inner) < c:
                    normal, c = [-x for x in normal], -c
            g = facet_from(normal, c)
            if g.vertices not in found:
                found[g.vertices] = g
                queue.append(g)
    return list(found.values())
