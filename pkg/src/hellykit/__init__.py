"""Helly graphs: recognition, injective hulls, automorphism dynamics and clique-paths."""

from .errors import (Budget, BudgetExceeded, DEFAULT_BUDGET, DisconnectedGraph, EmptyIntersection,
                     HellyError, InvalidInput, NotHelly, NotTransverse, SearchExhausted,
                     SubdivisionInsufficient)
from .graph import (AffineMap, Automorphism, FiniteGraph, GraphView, KingGrid, Permutation,
                    all_pairs_distances, ball, check_automorphism, complete_graph, cycle_graph,
                    intersect_balls, maximal_clique_extend, path_graph, wheel_graph)
from .hull import (EqualityGraph, ExtremalFunction, cell_rank, clique_of_point, combinatorial_dimension,
                   distance_function, enumerate_extremal, equality_graph, helly_hull, helly_subdivision,
                   is_helly, local_dimension)
from .isometry import (ClassificationResult, WeightedDigraph, classify, displacement_sequence,
                       fixed_clique_of_elliptic, min_mean_cycle, translation_length)
from .cliquepath import (CliquePath, HyperbolicCertificate, build_clique_path, invariant_clique_path,
                         is_clique_path, is_local_clique_path, transverse_distance, verify_local_to_global)
from .action import (ActionVerdict, EllipticGroup, decide_action, elliptic_group, find_hyperbolic_element,
                     fixed_set_distance, geodesic_orbit_search)
from .systolic import LargenessReport, is_k_large

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "DisconnectedGraph",
    "EmptyIntersection",
    "HellyError",
    "InvalidInput",
    "NotHelly",
    "NotTransverse",
    "SearchExhausted",
    "SubdivisionInsufficient",
    "AffineMap",
    "Automorphism",
    "FiniteGraph",
    "GraphView",
    "KingGrid",
    "Permutation",
    "all_pairs_distances",
    "ball",
    "check_automorphism",
    "complete_graph",
    "cycle_graph",
    "intersect_balls",
    "maximal_clique_extend",
    "path_graph",
    "wheel_graph",
    "EqualityGraph",
    "ExtremalFunction",
    "cell_rank",
    "clique_of_point",
    "combinatorial_dimension",
    "distance_function",
    "enumerate_extremal",
    "equality_graph",
    "helly_hull",
    "helly_subdivision",
    "is_helly",
    "local_dimension",
    "ClassificationResult",
    "WeightedDigraph",
    "classify",
    "displacement_sequence",
    "fixed_clique_of_elliptic",
    "min_mean_cycle",
    "translation_length",
    "CliquePath",
    "HyperbolicCertificate",
    "build_clique_path",
    "invariant_clique_path",
    "is_clique_path",
    "is_local_clique_path",
    "transverse_distance",
    "verify_local_to_global",
    "ActionVerdict",
    "EllipticGroup",
    "decide_action",
    "elliptic_group",
    "find_hyperbolic_element",
    "fixed_set_distance",
    "geodesic_orbit_search",
    "LargenessReport",
    "is_k_large",
]
