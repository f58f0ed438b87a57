"""Favard length of shrinking neighborhoods of non-self-similar Cantor graphs.

Library layout:

- dyadic, intervals, polygon: exact geometry kernel
- growth, schedule, construction, baselines, serialize: set construction
- projection, implicit: per-angle measures and the Favard average
- duality: dual wedges, pair combinatorics, Cauchy-Schwarz lower bounds
- diagnostics: closeness, graph length, oscillation, secant probes
- figures, report, cli: figures, CSV bundles, command line
"""

from .baselines import (
    IfsParams,
    build_four_corner,
    build_ifs,
    build_random_four_corner,
    four_corner_ifs_params,
)
from .construction import (
    Box,
    BoxFamily,
    Segment,
    SegmentFamily,
    box_family_nested,
    build_box_family,
    build_segment_family,
    eval_base_step,
    eval_fn,
    singleton_family,
)
from .diagnostics import (
    ClosenessReport,
    OscillationTail,
    SecantRecord,
    SecantReport,
    closeness_fraction,
    graph_length_over_interval,
    nestedness_check,
    oscillation_tail,
    secant_probe,
    secant_scan,
)
from .duality import (
    DualWedge,
    PairClass,
    PairSumResult,
    PairTables,
    analytic_pair_count,
    classify_pair,
    dual_area,
    dual_wedge,
    enumerate_k_pairs,
    favard_dual_estimate,
    pair_sum_lower_bound,
    pair_tables,
    slice_measure,
    wedge_area,
    wedge_pair_area,
    wedge_pair_polygon,
)
from .dyadic import Dyadic
from .errors import BudgetError, ConfigError, DyadicPrecisionError
from .growth import (
    GROWTH_PRESETS,
    GrowthSequence,
    derive_increments,
    linear_growth,
    log_growth,
    sqrt_growth,
)
from .implicit import ImplicitGraphFamily
from .intervals import (
    Interval,
    IntervalUnion,
    union_inflate,
    union_insert,
    union_measure,
)
from .polygon import ConvexPolygon, HalfPlane, polygon_area, polygon_clip_halfplane
from .projection import (
    Direction,
    FavardEstimate,
    favard_estimate,
    neighborhood_projection_length,
    project_family,
    project_segment,
    restricted_angle_integral,
)
from .schedule import ScheduleParams, derive_schedule

__version__ = "0.1.0"
