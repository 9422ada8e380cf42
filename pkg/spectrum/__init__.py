"""Numerical spectra of complex matrices under l^p and renormed norms."""
from spectrum.lognorm import (
    LogNormMethod,
    LogNormResult,
    lognorm,
    lognorm_closed,
    lognorm_duality,
    lognorm_quotient,
    pairing_value,
    sample_numrange,
)
from spectrum.matcore import (
    NormSpec,
    OpNormEstimate,
    dual_witness,
    eigenvalues,
    mat_exp,
    op_norm,
    op_norm_estimate,
    pairing,
    resolvent,
    resolvent_norm,
    resolvent_norm_estimate,
    spectral_abscissa,
    vec_norm,
)
from spectrum.numspec import (
    Certificate,
    GridSpec,
    Region,
    ShapeClass,
    SupportSample,
    build_region,
    certify_halfplane,
    check_spectrum_inclusion,
    classify_region,
    numerical_bounds,
    numerical_radius,
    numerical_region,
    spectrum_hull,
    support_at,
    support_sweep,
    support_value,
)
from spectrum.renorm import (
    HullConvergenceReport,
    RenormSpec,
    build_hildebrandt_norm,
    hull_convergence_report,
    renormed_region,
)
from spectrum.semigroup import (
    NormCurve,
    asymptotic_growth,
    default_t_grid,
    growth_envelope_check,
    norm_curve,
    stability_equivalence_check,
    subadditive_limit_check,
)
from spectrum.zoo import ExampleDescriptor, list_examples, make_example, oracle

__all__ = [
    "Certificate",
    "ExampleDescriptor",
    "GridSpec",
    "HullConvergenceReport",
    "LogNormMethod",
    "LogNormResult",
    "NormCurve",
    "NormSpec",
    "OpNormEstimate",
    "Region",
    "RenormSpec",
    "ShapeClass",
    "SupportSample",
    "asymptotic_growth",
    "build_hildebrandt_norm",
    "build_region",
    "certify_halfplane",
    "check_spectrum_inclusion",
    "classify_region",
    "default_t_grid",
    "dual_witness",
    "eigenvalues",
    "growth_envelope_check",
    "hull_convergence_report",
    "list_examples",
    "lognorm",
    "lognorm_closed",
    "lognorm_duality",
    "lognorm_quotient",
    "make_example",
    "mat_exp",
    "norm_curve",
    "numerical_bounds",
    "numerical_radius",
    "numerical_region",
    "op_norm",
    "op_norm_estimate",
    "oracle",
    "pairing",
    "pairing_value",
    "renormed_region",
    "resolvent",
    "resolvent_norm",
    "resolvent_norm_estimate",
    "sample_numrange",
    "spectral_abscissa",
    "spectrum_hull",
    "stability_equivalence_check",
    "subadditive_limit_check",
    "support_at",
    "support_sweep",
    "support_value",
    "vec_norm",
]
