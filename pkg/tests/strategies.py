"""Random valid pseudo-stacking steps over the catalog."""
import random

from polystack.catalog import NAMES, get
from polystack.pseudostack import ResolvedStep, bounded_position, is_nonsimple


def stackable_catalog():
    """Catalog polytopes that have at least one simplex facet."""
    out = []
    for name in NAMES:
        p = get(name).polytope
        if any(p.is_simplex_facet(i) for i in range(len(p.facets))):
            out.append(p)
    return out


def random_step(p, rng: random.Random, max_n=2):
    """A spec the witness search supports: any nonsimple F and disjoint N when
    S is in bounded position, else N empty and at most one F-facet."""
    s = rng.choice([i for i in range(len(p.facets)) if p.is_simplex_facet(i)])
    adj = sorted(p.adjacency()[s])
    if not bounded_position(p, s):
        return ResolvedStep(s, frozenset(rng.sample(adj, rng.choice([0, 1]))))
    while True:
        fs = frozenset(j for j in adj if rng.random() < 0.4)
        if is_nonsimple(p, s, fs):
            break
    rest = [j for j in adj if j not in fs]
    k = min(len(rest), rng.choice([0, 0, 1, 1, max_n]))
    return ResolvedStep(s, fs, frozenset(rng.sample(rest, k)))
