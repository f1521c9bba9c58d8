from fractions import Fraction

import pytest

from polystack.analysis import analyze
from polystack.catalog import NAMES, get, verify_catalog
from polystack.hull import enumerate_facets
from polystack.lattice import build_face_lattice, self_dual

# vertex-facet incidences of the three small examples, 0-based
INCIDENCES = {
    "P9": [
        {1, 2, 3, 4, 5}, {3, 4, 5, 7, 8}, {5, 6, 7, 8}, {2, 4, 5, 6, 8}, {0, 1, 2, 3},
        {0, 2, 3, 5, 6, 7}, {0, 4, 6, 7, 8}, {0, 1, 3, 4, 7}, {0, 1, 2, 4, 6},
    ],
    "P10": [
        {3, 4, 7, 8, 9}, {1, 2, 3, 4, 6, 9}, {1, 2, 4, 5}, {1, 3, 7, 9}, {0, 2, 3, 6},
        {0, 4, 7, 8}, {0, 1, 4, 5, 7, 9}, {0, 1, 2, 5, 6}, {0, 2, 3, 4, 5, 8}, {0, 1, 3, 6, 7, 8},
    ],
    "P11": [
        {1, 5, 6, 7, 9}, {2, 3, 4, 7, 8, 10}, {3, 4, 5, 10}, {3, 5, 6, 7, 10}, {1, 2, 3, 8},
        {1, 3, 6, 7, 8}, {0, 2, 4, 7}, {0, 1, 5, 9}, {0, 1, 2, 3, 4, 5, 6}, {0, 4, 5, 7, 9, 10},
        {0, 1, 2, 7, 8, 9},
    ],
}


@pytest.mark.parametrize("name", ["P9", "P10", "P11"])
def test_coordinates_reproduce_the_incidences(name):
    p = get(name).polytope
    computed = {f.vertices for f in enumerate_facets(p.vertices)}
    assert computed == {frozenset(f) for f in INCIDENCES[name]}


def test_exact_coordinates_are_kept():
    p = get("P11").polytope
    assert p.vertices[8] == (Fraction(-428, 1617), Fraction(428, 1617), Fraction(68, 147), Fraction(1, 2))
    assert get("P9").polytope.vertices[4][3] == Fraction(3, 2)


def test_verify_catalog_reports_every_entry_ok():
    checks = verify_catalog()
    assert [c.name for c in checks] == list(NAMES)
    assert all(c.ok for c in checks), [c.problems for c in checks if not c.ok]
    by_name = {c.name: c for c in checks}
    assert {n for n, c in by_name.items() if c.self_dual} == {"simplex4", "P9", "P10", "P11"}
    assert all(by_name[n].incidences_ok for n in ("P9", "P10", "P11"))


def test_unknown_names():
    with pytest.raises(KeyError):
        get("P12")
    [check] = verify_catalog(["P12"])
    assert not check.ok and "KeyError" in check.problems[0]


@pytest.mark.parametrize("name", ["P9", "P10", "P11"])
def test_small_examples_lie_on_the_ray(name):
    rep = analyze(get(name).polytope)
    n = rep.fvec[0]
    assert rep.fvec == (n, 4 * n - 10, 4 * n - 10, n)
    assert rep.on_ell1 and rep.g2 == 0
    assert rep.flag["02"] == 3 * rep.fvec[2]


def test_fatness_sides():
    rep = analyze(get("simplex4").polytope)
    assert (rep.fatness_lhs, rep.fatness_rhs) == (-120, -120)
    rep = analyze(get("P9").polytope)
    assert (rep.fatness_lhs, rep.fatness_rhs) == (-96, -152)


def test_three_dimensional_report_leaves_four_dimensional_fields_empty():
    rep = analyze(get("cube3").polytope)
    assert rep.on_ell1 is None and rep.fatness_lhs is None
    assert rep.two_simple is True and rep.two_simplicial is False
    assert "on_ell1 null" in rep.lines()


def test_report_lines_are_stable():
    lines = analyze(get("P9").polytope).lines()
    assert lines[:2] == ["dim 4", "f 9 26 26 9"]
    assert "flag f03 " + str(analyze(get("P9").polytope).flag["03"]) in lines
    assert "g2 0" in lines and "on_ell1 true" in lines
    assert self_dual(build_face_lattice(get("P9").polytope))
