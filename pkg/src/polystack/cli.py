"""Command-line front end: ``polystack <command> ...``.

Exit codes: 0 ok, 1 ``iso`` found no isomorphism, 2 parse error,
3 invariant violation, 4 unsupported input, 5 verification failure.
"""
from __future__ import annotations

import argparse
import sys

from . import catalog
from .analysis import analyze
from .constructions import (LabeledSimplexFacet, construct_i1, construct_i2,
                            generate_elementary_2s2s)
from .errors import InvariantViolation, ParseError, PolystackError, UnsupportedSpec
from .fileformat import emit, load
from .hull import enumerate_facets, wrap_facets
from .lattice import build_face_lattice, dual, f_vector, find_isomorphism, self_dual
from .pseudostack import bounded_position, normalize_bounded_position


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _index_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex indices, got {text!r}")


def cmd_example(args) -> int:
    entry = catalog.get(args.name)
    _write(emit(entry.polytope, comment=f"catalog entry {entry.name}"), args.output)
    return 0


def _pretty(rep) -> list[str]:
    rows = [("dimension", rep.dim), ("f-vector", " ".join(map(str, rep.fvec)))]
    if rep.g2 is not None:
        rows += [("g2", rep.g2), ("2-simplicial", rep.two_simplicial), ("2-simple", rep.two_simple)]
    if rep.on_ell1 is not None:
        rows += [("on ray l1", rep.on_ell1),
                 ("fatness inequality", f"{rep.fatness_lhs} >= {rep.fatness_rhs}")]
    rows += [("Euler relation", rep.euler_ok), ("Dehn-Sommerville", rep.dehn_sommerville_ok)]
    width = max(len(k) for k, _ in rows)
    return [f"{k.ljust(width)}  {v}" for k, v in rows]


def cmd_info(args) -> int:
    rep = analyze(load(args.file))
    out = [] if args.machine else _pretty(rep) + [""]
    out += rep.lines()
    print("\n".join(out))
    return 0


def cmd_construct(args) -> int:
    p = load(args.file)
    facet = frozenset(args.facet)
    order = args.order if args.order is not None else sorted(facet)
    if frozenset(order) != facet or len(order) != len(facet):
        raise UnsupportedSpec("--order must be a permutation of the --facet indices")
    s = LabeledSimplexFacet.of(p, order)
    if args.normalize and p.n_vertices > p.dim + 1 and not bounded_position(p, s.facet_index):
        p = normalize_bounded_position(p, s.facet_index)
        s = LabeledSimplexFacet.of(p, order)
    op = construct_i1 if args.pipeline == "i1" else construct_i2
    q, trace = op(p, s)
    final = ",".join(map(str, trace.final_labeled_facet.ordered_vertices))
    _write(emit(q, comment=f"{args.pipeline} applied; continue with --facet {final}"), args.output)
    print(f"final facet {final}", file=sys.stderr)
    return 0


def cmd_generate(args) -> int:
    p = generate_elementary_2s2s(args.k)
    _write(emit(p, comment=f"elementary 2-simple 2-simplicial 4-polytope, {args.k} vertices"), args.output)
    return 0


def verify_polytope(p) -> list[tuple[str, bool, str]]:
    """Named checks; each is (name, passed, detail)."""
    checks = []

    def record(name, fn):
        try:
            ok, detail = fn()
        except PolystackError as exc:
            ok, detail = False, str(exc)
        checks.append((name, ok, detail))

    def from_scratch():
        # exhaustive search while it is cheap, gift wrapping beyond
        hull = enumerate_facets if p.n_vertices <= 20 else wrap_facets
        got = {f.vertices for f in hull(p.vertices)}
        return got == set(p.facet_sets), f"{len(got)} facets recomputed"

    lat = build_face_lattice(p)
    rep = analyze(lat)
    record("polytope invariants", lambda: (p.validate() is None, ""))
    record("facets match a from-scratch hull", from_scratch)
    record("Euler relation", lambda: (rep.euler_ok, " ".join(map(str, rep.fvec))))
    record("Dehn-Sommerville relations", lambda: (rep.dehn_sommerville_ok, ""))
    if rep.g2 is not None:
        record("g2 >= 0", lambda: (rep.g2 >= 0, f"g2 = {rep.g2}"))
    return checks


def cmd_verify(args) -> int:
    p = load(args.file)
    failed = 0
    for name, ok, detail in verify_polytope(p):
        failed += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))
    if failed:
        raise InvariantViolation(f"{failed} check(s) failed")
    return 0


def cmd_dual(args) -> int:
    lat = build_face_lattice(load(args.file))
    d = dual(lat)
    print("f " + " ".join(map(str, f_vector(d))))
    print(f"self_dual {'true' if self_dual(lat) else 'false'}")
    print(f"FACETS {len(d.facets)}")
    for f in sorted(tuple(sorted(f)) for f in d.facets):
        print(" ".join(map(str, f)))
    return 0


def cmd_iso(args) -> int:
    a = build_face_lattice(load(args.file1))
    b = build_face_lattice(load(args.file2))
    m = find_isomorphism(a, b)
    if m is None:
        print("not isomorphic")
        return 1
    print("isomorphic")
    print("map " + " ".join(f"{i}:{m[i]}" for i in sorted(m)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polystack", description="Exact pseudo-stacking of polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("example", help="write a catalog polytope")
    sp.add_argument("name", choices=catalog.NAMES)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("info", help="f-vector, flag vector and derived quantities")
    sp.add_argument("file")
    sp.add_argument("--machine", action="store_true", help="key-value lines only")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("construct", help="apply one of the two pipelines")
    sp.add_argument("pipeline", choices=("i1", "i2"))
    sp.add_argument("file")
    sp.add_argument("--facet", type=_index_list, required=True, help="vertex indices of a simplex facet")
    sp.add_argument("--order", type=_index_list, help="labelling v0,v1,v2,v3 (default ascending)")
    sp.add_argument("--normalize", action="store_true",
                    help="apply a projective map first if the facet is not in bounded position")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("generate", help="elementary 2s2s 4-polytope with K vertices")
    sp.add_argument("k", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("verify", help="run the invariant suite on a file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("dual", help="combinatorial dual")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("iso", help="face lattice isomorphism test")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.set_defaults(func=cmd_iso)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PolystackError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ParseError.exit_code


if __name__ == "__main__":
    sys.exit(main())
