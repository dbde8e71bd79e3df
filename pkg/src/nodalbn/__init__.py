"""Exact-rational Brill-Noether toolkit for polarized nodal reducible curves.

Everything that decides a statement works over ``fractions.Fraction``;
no verdict depends on floating point.
"""

from .brill_noether import (
    BNCertificate,
    CertificationFailure,
    ScanRow,
    alpha_range,
    bgn_bounds,
    bn_number,
    certify_bn_component,
    coherent_slope,
    conjecture_scan,
    expected_codim,
    max_section_count,
    necessary_conditions,
    per_component_bgn,
)
from .components import (
    DEFAULT_WITNESS_MULTIPLIER,
    BuilderResult,
    ComponentTuple,
    HypothesisError,
    InvarianceReport,
    StabilityReport,
    Witness,
    binding_witness,
    build_chain_tuple,
    build_comb_tuple,
    build_small_slope_tuple,
    catalog_invariance_check,
    enumerate_components,
    robustness_radius,
    small_slope_filter,
    stability_conditions,
)
from .curve import (
    CurveClass,
    CurveError,
    NodalCurve,
    Node,
    NotCompactTypeError,
    chain_curve,
    comb_curve,
)
from .ordering import (
    DecompositionCheck,
    OrderedDecomposition,
    order_components,
    verify_decomposition,
)
from .parsing import (
    ParseError,
    parse_curve,
    parse_curve_with_sheaf,
    parse_ints,
    parse_rationals,
    render_curve,
)
from .polarization import (
    GoodnessReport,
    Polarization,
    PolarizationError,
    canonical,
    delta_structure_sheaf,
    goodness_proxy,
    perturb,
)
from .sheaf import (
    DescriptorError,
    LocalType,
    SheafDescriptor,
    degree_defect,
    global_ext_defect,
    local_ext_dim,
    locally_free_descriptor,
    wdeg,
    wrank,
    wslope,
)

__version__ = "0.1.0"

__all__ = [
    "BNCertificate",
    "DEFAULT_WITNESS_MULTIPLIER",
    "BuilderResult",
    "CertificationFailure",
    "ComponentTuple",
    "CurveClass",
    "CurveError",
    "DecompositionCheck",
    "DescriptorError",
    "GoodnessReport",
    "HypothesisError",
    "InvarianceReport",
    "LocalType",
    "NodalCurve",
    "Node",
    "NotCompactTypeError",
    "OrderedDecomposition",
    "ParseError",
    "Polarization",
    "PolarizationError",
    "ScanRow",
    "SheafDescriptor",
    "StabilityReport",
    "Witness",
    "alpha_range",
    "bgn_bounds",
    "binding_witness",
    "bn_number",
    "build_chain_tuple",
    "build_comb_tuple",
    "build_small_slope_tuple",
    "canonical",
    "catalog_invariance_check",
    "certify_bn_component",
    "chain_curve",
    "coherent_slope",
    "comb_curve",
    "conjecture_scan",
    "degree_defect",
    "delta_structure_sheaf",
    "enumerate_components",
    "expected_codim",
    "global_ext_defect",
    "goodness_proxy",
    "local_ext_dim",
    "locally_free_descriptor",
    "max_section_count",
    "necessary_conditions",
    "order_components",
    "parse_curve",
    "parse_curve_with_sheaf",
    "parse_ints",
    "parse_rationals",
    "per_component_bgn",
    "perturb",
    "render_curve",
    "robustness_radius",
    "small_slope_filter",
    "stability_conditions",
    "verify_decomposition",
    "wdeg",
    "wrank",
    "wslope",
]
