"""Exact planar arrangements of polygonal regions, k-fold packings and their
intersection graphs and hypergraphs."""

from .arrangement import (
    Arrangement,
    DepthProfile,
    LemmaReport,
    OracleResult,
    build,
    common_point_exists,
    depth2_components,
    flood_fill_oracle,
    holes,
    is_kfold,
    lemma_euler_check,
    max_depth,
    required_resolution,
    union_components,
    validate_general_position,
)
from .errors import (
    BudgetExceeded,
    DegenerateContact,
    EmptyGraph,
    EmptyHypergraph,
    FormatError,
    GeneralPositionViolation,
    GenerationFailed,
    InvalidGeometry,
    KpackError,
    ResolutionTooCoarse,
    TripleIntersection,
)
from .familyio import dump, dumps, load, loads
from .generators import (
    GeneratorSpec,
    gen_discs,
    gen_fat_triangles,
    gen_grid_bars,
    gen_k_layer_packing,
    gen_rectangles,
    gen_stars,
    gen_triple_witness_family,
    gen_venn_triple,
    generate,
)
from .geometry import (
    Family,
    Point,
    Region,
    SimplePolygon,
    boolean_intersection,
    contains_point,
    crossing_count,
    is_pseudodisc_pair,
    project_onto,
    segment_intersect,
)
from .graphs import (
    Decomposition,
    IntersectionGraph,
    certify_packings,
    decompose_by_degeneracy,
    independence_number,
    intersection_graph,
    ktt_find,
    max_independent_set,
    min_degree,
    planarity_necessary_check,
    smallest_last_order,
)
from .hypergraph import (
    IntersectionHypergraph,
    build_hypergraph,
    kns_independent_set,
    kns_threshold,
    pivot_degree,
    tuple_density,
)
from .kernels import BACKEND

__version__ = "0.1.0"
