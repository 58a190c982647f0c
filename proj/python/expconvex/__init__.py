"""Python bindings for the expconvex C++ library."""

import json

from ._core import (
    ExpconvexError,
    check_exponential_convexity,
    check_trace_convexity,
    commuting_measure,
    eigh,
    entrywise_ec_check,
    exp_entrywise_nonneg,
    expm_hermitian,
    fit_measure,
    growth_exponents,
    laplace_transform,
    lie_product,
    perron_shift,
    psd_check,
    reduce,
    trace_f,
    validate_hermitian,
    verify_report_json,
)


def verify(cases, max_n=7, seed=0):
    """Run the seeded ensemble checks and return the report as a dict."""
    return json.loads(verify_report_json(cases, max_n, seed))


__all__ = [
    "ExpconvexError",
    "check_exponential_convexity",
    "check_trace_convexity",
    "commuting_measure",
    "eigh",
    "entrywise_ec_check",
    "exp_entrywise_nonneg",
    "expm_hermitian",
    "fit_measure",
    "growth_exponents",
    "laplace_transform",
    "lie_product",
    "perron_shift",
    "psd_check",
    "reduce",
    "trace_f",
    "validate_hermitian",
    "verify",
]
