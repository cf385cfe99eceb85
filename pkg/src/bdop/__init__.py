"""Bernstein-type approximation operators and numerical checks of their limits."""

from .errors import (
    ConfigError,
    DegenerateWeightError,
    DomainError,
    HypothesisViolation,
    QuadratureError,
)
from .funcmodel import ExprPiece, JumpData, PiecewiseFunction, PolyPiece, parse_piecewise
from .kernel_dist import KernelDistribution
from .limits import (
    NuResult,
    StandardizedBetaParams,
    appendix_convergence_check,
    lupas_limit_function,
    nu_closed_form,
    nu_from_gaussian,
    nu_from_integral,
    predicted_limit,
    standardized_beta_pdf,
)
from .operators import (
    bernstein_op,
    durrmeyer_kernel,
    durrmeyer_op,
    lupas_moment,
    lupas_op,
    weighted_durrmeyer_op,
)
from .quadrature import QuadratureRule, integrate
from .specfun import (
    bernstein_basis,
    ln_gamma,
    normal_cdf,
    normal_pdf,
    reg_inc_beta,
)
from .stats import ConvergenceTable, assert_decreasing_trend, ecdf, ks_distance

__version__ = "0.1.0"
