"""Blaschke factorization and unwinding series for signals on the unit circle.

Coefficient arrays hold c_0, c_1, ... of sum c_n z^n; sample arrays hold
values at the grid points exp(2 pi i k / M). Domain failures raise
UnwindrError, whose ``name`` attribute matches the command-line error names.
"""

from ._unwindr import (
    UnwindrError,
    analytic_signal,
    blaschke_eval,
    default_grid_size,
    denoise,
    factor_polynomial,
    hilbert_transform,
    law_suite_names,
    norm_x,
    norm_y,
    phase_derivative,
    run_law_suite,
    stabilized_factorize,
    to_samples,
    to_spectrum,
    unwind,
    weiss_factorize,
)

__all__ = [
    "UnwindrError",
    "analytic_signal",
    "blaschke_eval",
    "default_grid_size",
    "denoise",
    "factor_polynomial",
    "hilbert_transform",
    "law_suite_names",
    "norm_x",
    "norm_y",
    "phase_derivative",
    "run_law_suite",
    "stabilized_factorize",
    "to_samples",
    "to_spectrum",
    "unwind",
    "weiss_factorize",
]
