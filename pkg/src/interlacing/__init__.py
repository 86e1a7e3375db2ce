"""Column subset selection with certified least singular value, via interlacing families."""

from .bounds import (
    BoundsReport,
    alpha_star,
    bounds_report,
    improved_jacobi_bound,
    jacobi_bound,
    krasikov_bound,
    muroot_bound,
    schatten_bound,
    ss_bound,
    u_alpha,
)
from .charpoly import (
    BivariatePolynomial,
    as_real_matrix,
    bivariate_det,
    cauchy_binet_check,
    char_poly,
    elementary_symmetric,
    kappa,
    stable_rank,
    stable_rank4,
    symmetric_matrix,
)
from .expected import (
    associated_laguerre,
    conditional_expected,
    jacobi_family_poly,
    jacobi_poly,
    jacobi_root_poly,
    laguerre_operator_poly,
    nonisotropic_expected,
)
from .instances import gaussian_instance, isotropic_instance, rational_instance, rational_isotropic_instance
from .matrix_io import read_matrix, write_matrix
from .poly import (
    Polynomial,
    RootInterval,
    alpha_min,
    barrier_phi,
    derivative,
    is_real_rooted,
    kth_largest_root,
    one_minus_lambda_deriv,
    smallest_root,
    sturm_root_count,
)
from .select import SelectionResult, certify, select_with_replacement, select_without_replacement

__version__ = "0.1.0"

__all__ = [
    "BivariatePolynomial",
    "BoundsReport",
    "Polynomial",
    "RootInterval",
    "SelectionResult",
    "alpha_min",
    "alpha_star",
    "as_real_matrix",
    "associated_laguerre",
    "barrier_phi",
    "bivariate_det",
    "bounds_report",
    "cauchy_binet_check",
    "certify",
    "char_poly",
    "conditional_expected",
    "derivative",
    "elementary_symmetric",
    "gaussian_instance",
    "improved_jacobi_bound",
    "is_real_rooted",
    "isotropic_instance",
    "jacobi_bound",
    "jacobi_family_poly",
    "jacobi_poly",
    "jacobi_root_poly",
    "kappa",
    "krasikov_bound",
    "kth_largest_root",
    "laguerre_operator_poly",
    "muroot_bound",
    "nonisotropic_expected",
    "one_minus_lambda_deriv",
    "rational_instance",
    "rational_isotropic_instance",
    "read_matrix",
    "schatten_bound",
    "select_with_replacement",
    "select_without_replacement",
    "smallest_root",
    "ss_bound",
    "stable_rank",
    "stable_rank4",
    "sturm_root_count",
    "symmetric_matrix",
    "u_alpha",
    "write_matrix",
]
