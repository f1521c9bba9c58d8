"""Exact pseudo-stacking of convex polytopes and elementary 2-simple
2-simplicial 4-polytopes."""

from .analysis import AnalysisReport, analyze
from .catalog import get as catalog_entry, verify_catalog
from .constructions import (ConstructionTrace, LabeledSimplexFacet, build_p11_via_octahedron,
                            construct_i1, construct_i2, generate_elementary_2s2s,
                            generate_with_continuation, generation_route, pyramid, stack)
from .errors import *  # noqa: F401,F403
from .fileformat import emit, load, parse, save
from .lattice import (FaceLattice, FlagVector, build_face_lattice, dual, f_vector, face_degree,
                      flag_vector, g2, h_simple, k_simplicial, lattices_isomorphic, self_dual)
from .linalg import Hyperplane, Side
from .polytope import Facet, Polytope
from .pseudostack import (FacetSelector, StepSpec, bounded_position, forecast_edge_count,
                          forecast_subridge_degree, normalize_bounded_position, pseudo_stack,
                          surviving_faces, witness_point)

__version__ = "0.1.0"
