"""Edgeworth-series approximations for smooth functions of sample means,
specialized to the Pearson correlation coefficient under bivariate-normal
sampling, with exact and Monte Carlo oracles for validation."""

from ._backend import backend_name, has_compiled
from .delta import (
    OuterTransform,
    SummaryStats,
    apply_outer_transform,
    arctanh_transform,
    gamma3_functional,
    identity_transform,
    make_transform,
    pearson_power_moments,
    pearson_r_expansion,
    pearson_summary,
    raw_power_moments,
    summarize,
)
from .edgeworth import (
    EdgeworthModel,
    approx_pdf_r,
    basic_fisher_pdf_r,
    build_model,
    edgeworth_pdf_z,
)
from .errors import (
    DegenerateStatisticError,
    DomainError,
    IncompleteTableError,
    NumericError,
    UsageError,
)
from .exact import (
    McConfig,
    gauss_2f1,
    gauss_2f1_with_terms,
    hotelling_pdf_r,
    log_gamma,
    mc_sample_r,
)
from .metrics import CdfGrid, cdf_on_grid, ks_distance, max_interval_error
from .moments import (
    CumulantTable,
    MeanMomentTable,
    MomentTable,
    cumulants_from_moments,
    gaussian_xy_moment,
    mean_moment_table,
    moments_from_cumulants,
    multi_indices,
    pearson_central_moments,
    pearson_cumulants,
    sample_mean_moment,
    set_partitions,
    zero_cumulants_above,
)
from .series import (
    InvNPoly,
    MultiIndex,
    TruncatedTaylor,
    compose_inverse_sqrt,
    index_order,
    invn_div,
    invn_eval,
    invn_mul,
    invn_sqrt,
    invn_truncate,
    poly_add,
    poly_mul,
    poly_pow,
)

__version__ = "0.1.0"
