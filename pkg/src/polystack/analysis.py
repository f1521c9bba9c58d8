"""Aggregate combinatorial report for a polytope."""
from __future__ import annotations

from dataclasses import dataclass

from .lattice import (FaceLattice, FlagVector, build_face_lattice, dehn_sommerville_check,
                      euler_check, f_vector, flag_vector, g2, h_simple, k_simplicial)
from .polytope import Polytope


@dataclass(frozen=True)
class AnalysisReport:
    dim: int
    fvec: tuple
    flag: FlagVector
    g2: int | None
    two_simplicial: bool | None
    two_simple: bool | None
    on_ell1: bool | None
    euler_ok: bool
    dehn_sommerville_ok: bool
    fatness_lhs: int | None
    fatness_rhs: int | None

    def lines(self) -> list[str]:
        """Stable ``key value`` lines for machine consumption."""
        def fmt(x):
            if isinstance(x, bool):
                return "true" if x else "false"
            return "null" if x is None else str(x)

        out = [f"dim {self.dim}", "f " + " ".join(map(str, self.fvec))]
        for s in self.flag:
            out.append(f"flag f{''.join(map(str, s))} {self.flag[s]}")
        for key in ("g2", "two_simplicial", "two_simple", "on_ell1", "euler_ok",
                    "dehn_sommerville_ok", "fatness_lhs", "fatness_rhs"):
            out.append(f"{key} {fmt(getattr(self, key))}")
        return out


def analyze(p: Polytope | FaceLattice) -> AnalysisReport:
    lat = p if isinstance(p, FaceLattice) else build_face_lattice(p)
    d = lat.dim
    fvec = f_vector(lat)
    flag = flag_vector(lat)
    g = g2(flag, d) if d >= 3 else None
    simplicial = k_simplicial(lat, 2) if d >= 3 else None
    simple = h_simple(lat, 2) if d >= 3 else None
    on_ell1 = lhs = rhs = None
    if d == 4:
        on_ell1 = simplicial and simple and g == 0
        f0, f1, f2, f3 = fvec
        lhs = flag["03"] - 140
        rhs = 4 * (f1 + f2) - 20 * (f0 + f3)
    return AnalysisReport(
        dim=d,
        fvec=fvec,
        flag=flag,
        g2=g,
        two_simplicial=simplicial,
        two_simple=simple,
        on_ell1=on_ell1,
        euler_ok=euler_check(fvec, d),
        dehn_sommerville_ok=dehn_sommerville_check(flag, d),
        fatness_lhs=lhs,
        fatness_rhs=rhs,
    )
