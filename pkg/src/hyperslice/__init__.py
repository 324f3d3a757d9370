"""Finite-field experimentation toolkit for random hyperplane slicing:
exact slicing statistics, brute-force point counts over extension
fields, component-count estimation from count growth, and very-bad
hyperplane censuses with growth-exponent fits.
"""

__version__ = "0.1.0"

from .fields import Field, extend, field_of_order, make_field
from .polyexpr import Poly, base_change, parse_poly
from .projgeom import (
    enum_hyperplanes,
    enum_points,
    incident,
    normalize,
    p1,
    p2,
    sample_hyperplane,
    span_dim,
    span_locus_dim,
)
from .scenario import Scenario, load_bundled, load_scenario
from .slicestats import (
    SetMap,
    SliceStats,
    chebyshev_tail,
    exact_stats,
    mc_stats,
    predicted_stats,
    variance_bound,
)
from .irreddetect import (
    CensusReport,
    ComponentEstimate,
    SliceVerdict,
    census,
    classify,
    fit_exponent,
    lw_estimate,
)
from .variety import (
    Ambient,
    ConstructibleSet,
    MorphismToPn,
    check_base_point_free,
    count_points,
    fiber_profile,
    hyperplane_slice,
)

__all__ = [
    "__version__",
    "Field", "make_field", "extend", "field_of_order",
    "Poly", "parse_poly", "base_change",
    "enum_points", "enum_hyperplanes", "incident", "normalize",
    "p1", "p2", "sample_hyperplane", "span_dim", "span_locus_dim",
    "Ambient", "ConstructibleSet", "MorphismToPn", "count_points",
    "hyperplane_slice", "fiber_profile", "check_base_point_free",
    "SetMap", "SliceStats", "exact_stats", "predicted_stats",
    "variance_bound", "mc_stats", "chebyshev_tail",
    "ComponentEstimate", "SliceVerdict", "CensusReport",
    "lw_estimate", "classify", "census", "fit_exponent",
    "Scenario", "load_scenario", "load_bundled",
]
