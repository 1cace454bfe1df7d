"""Regularized frame approximation with bounded coefficients.

Truncated frames, Gram and collocation systems, Jacobi-based spectral
factorizations, TSVD and the two adaptive selection rules, plus executable
checks of the accompanying error and coefficient bounds.
"""

from .diagnostics import (
    BoundReport,
    CandidateCoefficients,
    L2Measure,
    StableApproxWitness,
    cap_report,
    check_coef_convergence,
    check_coeff_bound,
    check_error_bound,
    check_projection_bounds,
    check_limit_behavior,
    check_stable_approx,
    check_y_norm_bound,
    frame_coefficients_parseval,
    l2_norm,
)
from .experiments import (
    SweepConfig,
    SweepError,
    SweepRecord,
    builtin_function,
    load_config,
    parse_config,
    run_checks,
    run_sweep,
    write_csv,
)
from .frames import (
    AugmentedLogLegendre,
    CollocationGrid,
    CollocationSystem,
    GramSystem,
    RestrictedLegendre,
    TargetFunction,
    TruncatedFrame,
    analysis_vector,
    chebyshev_grid,
    collocation_system,
    element_eval,
    gram_matrix,
    gram_system,
    synthesis_eval,
)
from .jacobi import ConvergenceError, jacobi_eigh, one_sided_jacobi_svd
from .polyquad import (
    GradedRule,
    QuadratureRule,
    composite_rule,
    gauss_legendre_rule,
    graded_log_rule,
    legendre_orthonormal,
    legendre_table,
    map_rule,
)
from .spectrum import (
    ASVD1,
    ASVD2,
    TSVD,
    Approximant,
    SelectedSpectrum,
    SpectralFactorization,
    Tikhonov,
    approximate,
    factor,
    factor_matrix,
    gram_factorization,
    select,
    selection_from_indices,
    solve_selected,
    solve_tikhonov,
    xi_element_values,
)

__version__ = "0.1.0"
