"""Prime factorization of directed graphs with loops under the Cartesian product.

The pipeline: factor the undirected shadow, repair the coloring against arc
directions with one BFS-ordered scan, then repair it against loops with a
second scan. `factor_full` runs all of it; the pieces are exposed for tests
and for callers that already hold intermediate results.
"""

from .core import (
    BfsOrder,
    DiGraph,
    DirTag,
    ShadowGraph,
    bfs,
    digraph_from_shadow,
    dist,
    is_connected,
    min_degree,
    parse_coords,
    parse_graph,
    shadow,
    strip_loops,
    to_text,
)
from .directed_factor import (
    ColorPartition,
    DirectedFactorization,
    count_inconsistencies,
    factor_directed,
    merge_classes,
)
from .errors import (
    DisconnectedGraphError,
    FactorizationError,
    GraphFormatError,
    NoUnloopedVertexError,
    OracleBoundError,
)
from .loop_factor import factor_full, factor_with_loops, pick_root
from .oracle import (
    brute_force_prime,
    canonical_small_graphs,
    gen_product_instance,
    iso_check,
    reconstruct_check,
    reconstruct_check_parts,
)
from .product import (
    Coordinatization,
    CoordVector,
    cartesian_product,
    consistent_direction,
    group_coordinates,
    product_square,
    project_vertex,
    unit_layer,
)
from .shadow_factor import (
    ShadowFactorization,
    coordinates_from_colors,
    factor_shadow,
    shadow_factorization_of_product,
)

__version__ = "0.1.0"

__all__ = [
    "BfsOrder",
    "ColorPartition",
    "CoordVector",
    "Coordinatization",
    "DiGraph",
    "DirTag",
    "DirectedFactorization",
    "DisconnectedGraphError",
    "FactorizationError",
    "GraphFormatError",
    "NoUnloopedVertexError",
    "OracleBoundError",
    "ShadowFactorization",
    "ShadowGraph",
    "bfs",
    "brute_force_prime",
    "canonical_small_graphs",
    "cartesian_product",
    "consistent_direction",
    "coordinates_from_colors",
    "count_inconsistencies",
    "digraph_from_shadow",
    "dist",
    "factor_directed",
    "factor_full",
    "factor_shadow",
    "factor_with_loops",
    "gen_product_instance",
    "group_coordinates",
    "is_connected",
    "iso_check",
    "merge_classes",
    "min_degree",
    "parse_coords",
    "parse_graph",
    "pick_root",
    "product_square",
    "project_vertex",
    "reconstruct_check",
    "reconstruct_check_parts",
    "shadow",
    "shadow_factorization_of_product",
    "strip_loops",
    "to_text",
    "unit_layer",
]
