"""Exact-arithmetic toolkit for service rate regions of coded storage systems.

Given a full-rank generator matrix over a finite field, the package
enumerates recovery systems, answers membership queries with rational
certificates, computes the region's geometry (exact H/V representations,
shape parameters, volumes), and evaluates the full family of outer bounds.
"""

from .bounds import (
    BoundEvaluation,
    BoundReport,
    bhatia_davis_cap,
    bound_polytope,
    build_dual_distance_bound,
    build_hybrid_bound,
    build_mds_closed_form,
    build_systematic_node_bound,
    build_uniform_size_bound,
    clip_srr_bound,
    clipped_sum_bound,
    dual_distance_bound,
    hcube_cap,
    hybrid_bound,
    hyperplane_bound,
    mds_maxsum_cap,
    systematic_node_bound,
    total_capacity_check,
    uniform_size_bound,
)
from .codes import (
    CodeProfile,
    availability,
    dual_matrix,
    dual_min_distance,
    is_mds,
    min_distance,
    pg_hyperplane_stats,
    profile,
    rs_matrix,
    systematic_mds_matrix,
    systematic_profile,
)
from .fields import FFMatrix, FieldContext, in_span, make_field, rank, rref
from .knapsack import dantzig_max, knapsack_volume
from .lp import LPOutcome, lp_solve
from .matrixfile import format_matrix_file, parse_matrix_file
from .polytope import (
    HPolytope,
    PolytopeVolume,
    VPolytope,
    enumerate_vertices,
    prune_redundant,
    volume,
)
from .project import fm_project, project_by_cuts
from .recovery import (
    RecoverySystem,
    all_recovery_supersets_count,
    is_minimal,
    is_recovery_set,
    minimal_recovery_system,
    subsystem,
    validate_user_system,
)
from .region import (
    AllocationIndex,
    FractionalAllocation,
    IntegerAllocation,
    MembershipResult,
    RegionGeometry,
    RegionParams,
    allocation_polytope,
    closed_form_volumes,
    mds_region_membership,
    one_shot_region,
    one_shot_witness,
    region_params,
    region_polytope,
    rs_uniform_allocation,
    srr_membership,
    to_integer_allocation,
)

__version__ = "0.1.0"
