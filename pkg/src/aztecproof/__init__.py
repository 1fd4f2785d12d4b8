"""Exact perfect-matching counts for planar grid graphs, closed-form product
formulas, and a replay of the Aztec triangle enumeration proof."""

from .dyadic import DyadicWeight
from .formulas import formula_C, formula_D, formula_T, formula_trimmed_AR, ratio_identity
from .graph import (
    AxisSpec,
    EmbeddedPlanarGraph,
    build_graph,
    coloring,
    graph_congruent,
    graph_equal,
    is_balanced,
    reduce_forced_edges,
)
from .matching import count_matchings, count_matchings_bruteforce
from .regions import (
    RegionSpec,
    aztec_diamond,
    aztec_triangle,
    cruciform,
    cruciform_dot,
    doubly_intruded_aztec_rectangle,
    half_aztec_diamond,
    half_square,
    nearly_cruciform,
    trimmed_aztec_rectangle,
)
from .replay import IdentityReport, verify_chain, verify_complementation
from .svg import render_svg
from .symmetry import SplitResult, factorization_split, symmetrize_with_pendant

__version__ = "0.1.0"
