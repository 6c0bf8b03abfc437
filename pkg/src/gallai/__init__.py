"""Exact toolkit for longest-path and longest-cycle transversals.

Core surface: the :class:`~gallai.graphs.Graph` type with classical
invariants, a bit-exact graph6 codec, exact longest-path/cycle search with
optimum-set enumeration, Gallai vertices and exact transversal numbers,
Menger separators/connectors, the constructive sublinear transversal, stock
graph families, and a verification campaign runner with a CLI.
"""

from ._kernel import backend as kernel_backend
from .errors import (
    CapExceededError,
    GallaiError,
    Graph6Error,
    PreconditionError,
    UnsupportedFormatError,
)
from .graph6 import parse_graph6, to_graph6
from .graphs import (
    BlockDecomposition,
    Graph,
    alpha,
    blocks,
    components,
    girth,
    induced_contains,
    is_biconnected,
    is_connected,
    is_linear_forest,
    kappa,
    max_independent_set,
    replace_cubic_with_triangles,
    subdivide_edges,
)
from .paths import (
    AttachmentAnalysis,
    attachment_analysis,
    canonical_cycle,
    constrained_longest_cycle,
    enumerate_longest_cycles,
    enumerate_longest_paths,
    fiber_between,
    fiber_from,
    improve_path,
    longest_cycle_length,
    longest_path_length,
)
from .subdivisions import (
    CYCLE_PATTERN,
    PATH_PATTERN,
    MultigraphPattern,
    SubdivisionEmbedding,
    enumerate_maximum_subdivision_sets,
    maximum_subdivision,
    maximum_subdivision_size,
)
from .transversal import (
    HypergraphOfOptima,
    PartialTransversal,
    SeparatorConnectorResult,
    TransversalRun,
    find_special_block,
    gallai_vertices,
    lct_exact,
    lpt_exact,
    menger,
    minimum_hitting_set,
    pairwise_intersecting,
    run_sublinear_transversal,
    sublinear_transversal,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
