"""hullprob: tail probabilities of the convex hull's area or perimeter over
planar points that appear independently with given rational probabilities.

Entry points:

* exact engine        -- :class:`ExactEngine`, :func:`pr_area_ge_exact`,
                         :func:`pr_perimeter_ge_exact` (integer-weighted)
* sandwich bounds     -- :func:`approx_pr_area_ge`,
                         :func:`approx_pr_perimeter_ge`,
                         :func:`pr_area_ge_bounded`
* Monte Carlo         -- :class:`MCPlan`, :func:`mc_pr_measure_ge`
* ground truth        -- :func:`exact_distribution`, :func:`oracle_pr_ge`
* hardness gadgets    -- :func:`build_area_gadget`,
                         :func:`build_perimeter_gadget` and count recovery

Hot kernels (the weighted chain recursion and the Monte Carlo trial loop)
run on a compiled extension when it was built, with automatic fallback to
pure Python; ``hullprob.kernel_backend()`` reports which one is active.
"""

from ._kernels import backend_name as kernel_backend
from .approx import (
    GridRounding,
    RoundingScheme,
    approx_pr_area_ge,
    approx_pr_perimeter_ge,
    grid_round,
    pr_area_ge_bounded,
)
from .dp import (
    DPTable,
    ExactEngine,
    WeightAssignment,
    pr_area_ge_exact,
    pr_perimeter_ge_exact,
    pr_weighted_area_ge_given_top,
    pr_weighted_ge,
    pr_weighted_perimeter_ge_given_top,
)
from .errors import (
    AmbiguousComparison,
    BudgetOverflow,
    CollinearCandidates,
    DegenerateInstance,
    DegenerateSupport,
    EmptyOthers,
    HullProbError,
    InvalidEpsilon,
    InvalidParams,
    NonIntegerAreas,
    NonIntegralCount,
    PropertyViolation,
    RoundedDegeneracy,
    TooLarge,
)
from .geometry import (
    AREA,
    MEASURES,
    PERIMETER,
    Hull,
    Point,
    convex_hull,
    distance,
    hull_measure,
    max_extremal_triangle,
    orient,
    radial_order,
    squared_distance,
    triangle_area,
)
from .instance_io import (
    dumps_instance,
    load_instance,
    loads_instance,
    save_instance,
)
from .model import (
    EventContext,
    Sample,
    StochasticInstance,
    ValidationReport,
    draw_sample,
    expected_measure,
    pr_chain_next,
    pr_chain_next_all,
    pr_following_vertex,
    pr_hull_edge,
    pr_lambda_ge,
    pr_lambda_in,
    pr_top_bottom,
    pr_topmost,
    validate,
)
from .montecarlo import MCPlan, MCResult, mc_pr_measure_ge, sample_count
from .oracle import (
    DistributionTable,
    check_lambda_bounds,
    exact_distribution,
    oracle_expected,
    oracle_pr_ge,
    weighted_oracle_pr_ge,
    weighted_oracle_pr_ge_given_top,
)
from .radicals import SqrtSum
from .reductions import (
    AreaGadget,
    PerimeterGadget,
    SubsetSumInstance,
    build_area_gadget,
    build_perimeter_gadget,
    count_k_subsets,
    pad_to_fixed_cardinality,
    recover_area_count,
    recover_perimeter_count,
)

__version__ = "0.1.0"
