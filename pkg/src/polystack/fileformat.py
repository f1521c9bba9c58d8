"""Line-oriented text format for exact polytopes.

    POLYTOPE 1
    DIM 4
    VERTICES 5
    0 0 0 0
    1/2 0 0 0
    ...
    FACETS 5          (optional; recomputed by brute force when absent)
    1 2 3 4
    ...

``#`` starts a comment. Facet rows are sorted 0-based vertex indices.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import InvariantViolation, ParseError
from .hull import MAX_BRUTE_FORCE_VERTICES
from .lattice import build_face_lattice, check_combinatorics
from .polytope import Polytope

FORMAT_VERSION = 1


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_rational(tok: str, line: int) -> Fraction:
    num, sep, den = tok.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"not an exact rational: {tok!r}", line) from None
    if d <= 0:
        raise ParseError(f"denominator must be positive: {tok!r}", line)
    return Fraction(n, d)


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def _header(it, keyword: str, last_line: int) -> tuple[int, int]:
    try:
        no, toks = next(it)
    except StopIteration:
        raise ParseError(f"missing {keyword} header", last_line) from None
    if len(toks) != 2 or toks[0] != keyword:
        raise ParseError(f"expected '{keyword} <n>', got {' '.join(toks)!r}", no)
    try:
        value = int(toks[1])
    except ValueError:
        raise ParseError(f"{keyword} needs an integer, got {toks[1]!r}", no) from None
    if value < 0:
        raise ParseError(f"{keyword} must be nonnegative", no)
    return no, value


def parse(text: str, limit: int = MAX_BRUTE_FORCE_VERTICES) -> Polytope:
    """Read a polytope; invariants are checked before it is returned."""
    last = max(1, len(text.splitlines()))
    it = iter(_lines(text))
    no, version = _header(it, "POLYTOPE", last)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version}", no)
    _, dim = _header(it, "DIM", last)
    _, nv = _header(it, "VERTICES", last)
    verts = []
    for _ in range(nv):
        try:
            no, toks = next(it)
        except StopIteration:
            raise ParseError(f"expected {nv} vertex rows, got {len(verts)}", last) from None
        if len(toks) != dim:
            raise ParseError(f"vertex row has {len(toks)} entries, expected {dim}", no)
        verts.append(tuple(_parse_rational(t, no) for t in toks))
    facets = None
    rest = next(it, None)
    if rest is not None:
        no, toks = rest
        if len(toks) != 2 or toks[0] != "FACETS":
            raise ParseError(f"unexpected content {' '.join(toks)!r}", no)
        try:
            nf = int(toks[1])
        except ValueError:
            raise ParseError(f"FACETS needs an integer, got {toks[1]!r}", no) from None
        facets = []
        for _ in range(nf):
            try:
                no, toks = next(it)
            except StopIteration:
                raise ParseError(f"expected {nf} facet rows, got {len(facets)}", last) from None
            try:
                row = [int(t) for t in toks]
            except ValueError:
                raise ParseError("facet rows must be vertex indices", no) from None
            if any(not 0 <= i < nv for i in row):
                raise ParseError(f"vertex index out of range 0..{nv - 1}", no)
            if len(set(row)) != len(row):
                raise ParseError("repeated vertex index in facet row", no)
            facets.append(frozenset(row))
        extra = next(it, None)
        if extra is not None:
            raise ParseError(f"trailing content {' '.join(extra[1])!r}", extra[0])
    if dim < 1:
        raise InvariantViolation("dimension must be positive")
    if facets is None:
        if len(set(verts)) != len(verts):
            raise InvariantViolation("duplicate vertex rows")
        return Polytope.from_points(verts, dim=dim, limit=limit)
    p = Polytope.from_incidences(dim, verts, facets)
    check_combinatorics(build_face_lattice(p))
    return p


def emit(p: Polytope, comment: str | None = None) -> str:
    """Canonical text: facet rows sorted within and across rows."""
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out += [f"POLYTOPE {FORMAT_VERSION}", f"DIM {p.dim}", f"VERTICES {p.n_vertices}"]
    out += [" ".join(format_rational(c) for c in v) for v in p.vertices]
    rows = sorted(tuple(sorted(f)) for f in p.facet_sets)
    out.append(f"FACETS {len(rows)}")
    out += [" ".join(map(str, r)) for r in rows]
    return "\n".join(out) + "\n"


def load(path: str | Path, limit: int = MAX_BRUTE_FORCE_VERTICES) -> Polytope:
    return parse(Path(path).read_text(), limit=limit)


def save(p: Polytope, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(emit(p, comment))
