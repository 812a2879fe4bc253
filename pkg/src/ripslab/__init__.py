"""Exact computations with Rips complexes of finite subsets of Euclidean space."""

from .gallery import CertificateError, crosspolytope_cloud, lifted_hexagon_cloud, product_metric_configuration
from .geometry import (
    EUCLIDEAN,
    PRODUCT_L1_L2,
    GeometryError,
    Metric,
    common_point,
    dist_lt,
    find_apex,
    hull_contains,
    reduce_hull_intersection,
    segment_triangle_intersect,
    visible_edge,
)
from .homology import HomologyProfile, flag_homology, homology, smith_normal_form
from .local_checks import (
    TheoremViolation,
    betti_consequences,
    check_pi0_surjectivity,
    classify_planar_pseudomanifold,
    surface_edge_bound_check,
)
from .lp import lp_feasible, lp_solve
from .shadow import nerve, shadow_betti, shadow_pieces
from .simplicial import (
    PointCloud,
    SimplicialComplex,
    crosspolytope,
    decompose,
    flag_complex,
    is_isomorphic_to_crosspolytope,
    is_normal_pseudomanifold,
    rips_complex,
)
from .universality import (
    EmbeddedComplex,
    EmbeddingError,
    compute_epsilon0,
    crush_collapse,
    enumerate_minimal_empty_families,
    realize,
    sampling_plan,
    validate_embedding,
    verify_cover_condition,
)

__version__ = "0.1.0"
