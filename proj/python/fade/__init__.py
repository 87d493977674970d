"""Solvers for the 1-D space-fractional advection-dispersion equation.

The compiled core provides three layers:

* a finite-difference forward solver (implicit Euler + shifted Grunwald),
* a spectral evaluator of the fundamental solution on the whole line,
* Tikhonov inverse-source estimation with L-curve parameter selection.
"""

from ._fade import (
    ForwardMap,
    Grid,
    InversionResult,
    LCurvePoint,
    LCurveResult,
    ModelParams,
    NoiseSpec,
    RegularizationConfig,
    SpectralConfig,
    SystemMatrices,
    add_noise,
    analytic_solution,
    analytic_solution_grid,
    assemble_forward_map,
    assemble_operators,
    difference_matrix,
    green_eval,
    green_hat,
    green_normalization,
    grunwald_weights,
    l_curve_select,
    observation_vector,
    perturbation_decay_test,
    relative_error,
    riesz_feller_symbol,
    run_inversion,
    skew_coefficients,
    solve_forward,
    step_implicit,
    svd_spectrum,
    tikhonov_solve,
    time_integral_kernel,
    validate_params,
)

__all__ = [
    "ForwardMap",
    "Grid",
    "InversionResult",
    "LCurvePoint",
    "LCurveResult",
    "ModelParams",
    "NoiseSpec",
    "RegularizationConfig",
    "SpectralConfig",
    "SystemMatrices",
    "add_noise",
    "analytic_solution",
    "analytic_solution_grid",
    "assemble_forward_map",
    "assemble_operators",
    "difference_matrix",
    "green_eval",
    "green_hat",
    "green_normalization",
    "grunwald_weights",
    "l_curve_select",
    "observation_vector",
    "perturbation_decay_test",
    "relative_error",
    "riesz_feller_symbol",
    "run_inversion",
    "skew_coefficients",
    "solve_forward",
    "step_implicit",
    "svd_spectrum",
    "tikhonov_solve",
    "time_integral_kernel",
    "validate_params",
]
