"""Built-in exact models and their verification."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .polytope import Polytope

NAMES = ("simplex4", "P9", "P10", "P11", "hypersimplex", "octahedron3", "cube3", "frustum3", "prism3")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    polytope: Polytope
    expected_incidences: tuple | None = None
    expected_f: tuple | None = None


_P9_VERTICES = [
    (3, 0, 0, 0), (1, 1, 1, 1), (0, 3, 0, 0), (0, 0, 3, 0), (0, 0, 0, "3/2"),
    (-3, 0, 0, 0), (0, 0, -3, 0), (0, -3, 0, 0), (-1, -1, -1, 1),
]
_P9_FACETS = [
    {1, 2, 3, 4, 5}, {3, 4, 5, 7, 8}, {5, 6, 7, 8}, {2, 4, 5, 6, 8}, {0, 1, 2, 3},
    {0, 2, 3, 5, 6, 7}, {0, 4, 6, 7, 8}, {0, 1, 3, 4, 7}, {0, 1, 2, 4, 6},
]

_P10_VERTICES = [
    (9, -3, -3, -3), (-3, 9, -3, -3), (-3, -3, -3, -3), (-3, -3, 9, -3), (-3, -3, -3, 9),
    (1, -3, -7, 1), (-3, 1, 1, -7), (3, 3, 3, 3), (5, -3, 5, 1), (-3, 5, 1, 5),
]
_P10_FACETS = [
    {3, 4, 7, 8, 9}, {1, 2, 3, 4, 6, 9}, {1, 2, 4, 5}, {1, 3, 7, 9}, {0, 2, 3, 6},
    {0, 4, 7, 8}, {0, 1, 4, 5, 7, 9}, {0, 1, 2, 5, 6}, {0, 2, 3, 4, 5, 8}, {0, 1, 3, 6, 7, 8},
]

_P11_VERTICES = [
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (-1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0),
    ("-11/21", "11/21", "-11/21", 0),
    ("-11/147", "11/147", "-11/147", 1),
    ("-428/1617", "428/1617", "68/147", "1/2"),
    ("68/147", "428/1617", "-428/1617", "1/2"),
    ("-428/1617", "-68/147", "-428/1617", "1/2"),
]
_P11_FACETS = [
    {1, 5, 6, 7, 9}, {2, 3, 4, 7, 8, 10}, {3, 4, 5, 10}, {3, 5, 6, 7, 10}, {1, 2, 3, 8},
    {1, 3, 6, 7, 8}, {0, 2, 4, 7}, {0, 1, 5, 9}, {0, 1, 2, 3, 4, 5, 6}, {0, 4, 5, 7, 9, 10},
    {0, 1, 2, 7, 8, 9},
]


def simplex(d: int = 4) -> Polytope:
    pts = [tuple(0 for _ in range(d))] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
    facets = [set(range(d + 1)) - {i} for i in range(d + 1)]
    return Polytope.from_incidences(d, pts, facets)


def hypersimplex() -> Polytope:
    """0/1 points of R^5 with coordinate sum 2, with the last coordinate dropped."""
    pts = []
    for a, b in combinations(range(5), 2):
        x = [0] * 5
        x[a] = x[b] = 1
        pts.append(tuple(x[:4]))
    return Polytope.from_points(pts)


def octahedron() -> Polytope:
    pts = []
    for i in range(3):
        for s in (1, -1):
            x = [0, 0, 0]
            x[i] = s
            pts.append(tuple(x))
    return Polytope.from_points(pts)


def cube() -> Polytope:
    return Polytope.from_points([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])


def frustum() -> Polytope:
    # triangle cap {3,4,5} is in bounded position: its side planes meet at (0,0,4)
    pts = [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 2), (2, 0, 2), (0, 2, 2)]
    return Polytope.from_points(pts)


def prism() -> Polytope:
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)]
    return Polytope.from_points(pts)


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    if name == "simplex4":
        return CatalogEntry(name, simplex(4), expected_f=(5, 10, 10, 5))
    if name in ("P9", "P10", "P11"):
        verts, facets, n = {
            "P9": (_P9_VERTICES, _P9_FACETS, 9),
            "P10": (_P10_VERTICES, _P10_FACETS, 10),
            "P11": (_P11_VERTICES, _P11_FACETS, 11),
        }[name]
        expected = tuple(sorted(tuple(sorted(f)) for f in facets))
        p = Polytope.from_points(verts)
        return CatalogEntry(name, p, expected, (n, 4 * n - 10, 4 * n - 10, n))
    if name == "hypersimplex":
        return CatalogEntry(name, hypersimplex(), expected_f=(10, 30, 30, 10))
    if name == "octahedron3":
        return CatalogEntry(name, octahedron(), expected_f=(6, 12, 8))
    if name == "cube3":
        return CatalogEntry(name, cube(), expected_f=(8, 12, 6))
    if name == "frustum3":
        return CatalogEntry(name, frustum(), expected_f=(6, 9, 5))
    if name == "prism3":
        return CatalogEntry(name, prism(), expected_f=(6, 9, 5))
    raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}")


@dataclass(frozen=True)
class CatalogCheck:
    name: str
    incidences_ok: bool | None
    f_ok: bool | None
    report: object
    self_dual: bool
    problems: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.problems


def verify_catalog(names=NAMES) -> list:
    """Recompute every entry's facets by brute force and analyze it.

    Failures are collected in the returned records, never raised.
    """
    from .analysis import analyze
    from .hull import enumerate_facets
    from .lattice import build_face_lattice, self_dual

    out = []
    for name in names:
        problems = []
        try:
            entry = get(name)
            p = entry.polytope
            computed = {f.vertices for f in enumerate_facets(p.vertices)}
            if computed != set(p.facet_sets):
                problems.append("stored facets differ from brute-force facets")
            inc_ok = None
            if entry.expected_incidences is not None:
                inc_ok = computed == {frozenset(f) for f in entry.expected_incidences}
                if not inc_ok:
                    problems.append("facets differ from the expected incidence list")
            rep = analyze(p)
            f_ok = None if entry.expected_f is None else rep.fvec == entry.expected_f
            if f_ok is False:
                problems.append(f"f-vector {rep.fvec} != expected {entry.expected_f}")
            if not (rep.euler_ok and rep.dehn_sommerville_ok):
                problems.append("Euler or Dehn-Sommerville relation fails")
            sd = self_dual(build_face_lattice(p))
        except Exception as exc:  # a broken entry is reported, not raised
            out.append(CatalogCheck(name, None, None, None, False, (f"{type(exc).__name__}: {exc}",)))
            continue
        out.append(CatalogCheck(name, inc_ok, f_ok, rep, sd, tuple(problems)))
    return out
