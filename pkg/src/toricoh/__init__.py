"""Exact cohomology computations: local cohomology of a polynomial ring
with supports in a square-free monomial ideal, sheaf cohomology of line
bundle twists on toric varieties through the homogeneous coordinate ring,
and sharp truncation levels at which finite Ext computations already carry
the full answer.
"""

__version__ = "0.1.0"

from .exact_linalg import (
    IntMatrix,
    MinorStats,
    SnfResult,
    det,
    is_prime,
    kernel_basis,
    minor_stats,
    rank_over_field,
    smith_normal_form,
    solve,
)
from .simplicial import (
    LabeledComplex,
    SimplicialComplex,
    cohomology_dims,
    euler_characteristic,
    labeled_complex,
    reduced_cohomology_dims,
    simplicial_complex,
)
from .monomials import (
    MonomialIdeal,
    alexander_dual,
    alexander_dual_by_colon,
    betti_support,
    contains_monomial,
    frobenius_power,
    ideal_from_supports,
    minimalize,
    tor_dims,
)
from .grading import (
    CoarseDegree,
    Grading,
    build_grading,
    coarse_degree,
    fiber_representative,
    grading_from_phi,
)
from .cones import (
    FinitenessError,
    UnboundedRegionError,
    crude_bound,
    enumerate_fiber_orthant,
    f_bound,
    fiber_min_coords,
    fiber_points,
    finiteness_check,
    finiteness_witness,
    orthant_indicator,
    separating_hyperplane,
)
from .cech import (
    FineCohomology,
    cech_dims_at_fine_degree,
    clear_cech_cache,
    restricted_cech_dims,
    restricted_cech_dims_raw,
    sheaf_fine_dims,
    sigma_direct,
)
from .toric import (
    Fan,
    ToricData,
    cox_data,
    is_complete_surface,
    nerve_cohomology_dims,
    nerve_complex,
    surface_sigma,
)
from .tables import BettiTable, SigmaTable, betti_table, sigma_table
from .api import (
    FreeModule,
    MonomialQuotient,
    UserBetti,
    bound_S,
    bound_free,
    bound_module,
    ext_truncated_dim,
    hB_dim,
    module_betti_levels,
    sheaf_dim,
    sigma_dual,
    sigma_sheaf,
)
