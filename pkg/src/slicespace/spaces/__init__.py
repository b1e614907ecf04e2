"""Norms, seminorms and checks for the Bloch, Bergman, Besov and Dirichlet spaces."""

from ._common import CheckReport, NormReport, ball_modulus, ball_sup
from .bergman import (
    BergmanParams,
    bergman_disk_indicator,
    bergman_integral,
    bergman_metric,
    bergman_norm,
    bergman_norm_sup,
    bergman_slice_sandwich_check,
    mean_value_check,
    point_bound_check,
    submean_probe,
)
from .besov import (
    BesovParams,
    b1_consistency_check,
    b1_decomposition_cost,
    b1_integral,
    b1_lower_bound,
    b1_recentred_cost,
    b1_synthesis,
    besov_double_integral,
    besov_integral,
    besov_n_independence_check,
    besov_norm,
    besov_seminorm,
    besov_seminorm_small_p,
    besov_small_p_invariance_check,
    composed_integral,
    default_a_grid,
    moebius_on_slice,
)
from .bloch import (
    LittleBlochResult,
    bloch_equivalence_check,
    bloch_lipschitz_check,
    bloch_norm,
    bloch_norm_slice,
    bloch_seminorm_slice,
    coeff_bound_check,
    derivative_growth_check,
    hinf_check,
    hinf_norm,
    hinf_slice,
    lacunary_certificate,
    little_bloch_test,
    pseudo_hyperbolic,
    radial_profile,
    slice_distance,
)
from .dirichlet import (
    dirichlet_coeff,
    dirichlet_energy,
    dirichlet_inner,
    dirichlet_inner_exact,
    dirichlet_integral,
    dirichlet_norm,
    dirichlet_norm_exact,
)
