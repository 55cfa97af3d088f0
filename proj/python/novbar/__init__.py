"""Exact bar-length spectra for filtered complexes over Novikov valuation rings.

All rationals cross the boundary as exact strings ("1/2", "3", ...); parse
them with fractions.Fraction when numeric work is needed.
"""

from ._core import (
    FilteredComplex,
    bottleneck,
    build_tate,
    check_cone_bound,
    check_majorization,
    direct_sum,
    extend_field,
    gen,
    intervals,
    orthonormalize,
    perturb,
    run_suite,
    scale_differential,
    scaling_pipeline,
    shift_action,
    spectrum,
    spectrum_via_minors,
    suite_names,
    tensor_power,
    validate,
    verify_quasi_frobenius,
    verify_scaling_certificate,
)

__all__ = [
    "FilteredComplex",
    "bottleneck",
    "build_tate",
    "check_cone_bound",
    "check_majorization",
    "direct_sum",
    "extend_field",
    "gen",
    "intervals",
    "orthonormalize",
    "perturb",
    "run_suite",
    "scale_differential",
    "scaling_pipeline",
    "shift_action",
    "spectrum",
    "spectrum_via_minors",
    "suite_names",
    "tensor_power",
    "validate",
    "verify_quasi_frobenius",
    "verify_scaling_certificate",
]
