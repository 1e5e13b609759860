"""Graphs on Farey fractions with edges at fixed or bounded determinant."""

from .core import (FareyVertex, INFINITY, InvalidInputError, Mobius,
                   ResourceLimitError, canonicalize, det_pair,
                   find_seed_neighbor, level, neighbors_exact, parse_vertex,
                   predecessors)
from .projline import (ProjLine, enumerate_lines, is_prime, line, line_count,
                       min_line_count_above, next_prime, phi)
from .levelgraph import (AT_MOST, ComponentReport, DENOM_CAP, EXACT,
                         LEVEL_CAP, LevelGraph, SweepResult, WindowSpec,
                         build, clique_number_exact_k, component_sweep,
                         count_components, cut_vertex_check, denom_window,
                         find_isolated_witnesses, is_forest, level_window,
                         planarity_linking_check, prime_power_component_count,
                         verify_monotone)
from .dualtree import (DualSubgraph, IncidenceResult, LRSequence,
                       TriangleNode, construct_R, construct_S, construct_T,
                       continuant_numerator, det_via_lr, dual_subgraph,
                       horoball_geodesic, incident_vertices, lr_sequence,
                       root_triangle, triangle_neighbors)
from .cliques import (BoundsRow, CliqueResult, ColoringResult, bounds_table,
                      color_by_lines, greedy_color,
                      lower_bound_from_construction, max_clique,
                      search_with_growing_window, verify_clique)
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "AT_MOST", "BoundsRow", "CliqueResult", "ColoringResult",
    "ComponentReport", "DENOM_CAP", "DualSubgraph", "EXACT", "FareyVertex",
    "INFINITY", "IncidenceResult", "InvalidInputError", "LEVEL_CAP",
    "LRSequence", "LevelGraph", "Mobius", "ProjLine", "ResourceLimitError",
    "SUITES", "SweepResult", "TriangleNode", "WindowSpec", "bounds_table",
    "build", "canonicalize", "clique_number_exact_k", "color_by_lines",
    "component_sweep", "construct_R", "construct_S", "construct_T",
    "continuant_numerator", "count_components", "cut_vertex_check",
    "denom_window", "det_pair", "det_via_lr", "dual_subgraph",
    "enumerate_lines", "find_isolated_witnesses", "find_seed_neighbor",
    "greedy_color", "horoball_geodesic", "incident_vertices", "is_forest",
    "is_prime", "level", "level_window", "line", "line_count", "lr_sequence",
    "lower_bound_from_construction", "max_clique", "min_line_count_above",
    "neighbors_exact", "next_prime", "parse_vertex",
    "planarity_linking_check", "predecessors", "prime_power_component_count",
    "root_triangle", "run_suite", "search_with_growing_window",
    "triangle_neighbors", "verify_clique", "verify_monotone",
]
