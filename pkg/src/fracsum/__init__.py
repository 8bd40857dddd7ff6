"""fracsum: fractional sums and products with complex bounds.

Assigns a value to sum_{v=a}^{b} f(v) for arbitrary complex a, b via a limit
over approximating polynomials, and verifies the closed-form identities this
definition satisfies (Gamma, digamma, Riemann/Hurwitz zeta) at double
precision.
"""

from .core import (
    NEG_INF,
    BernoulliTable,
    DomainError,
    PoleError,
    Polynomial,
    bernoulli_numbers,
    cpow,
    faulhaber_polynomial,
    poly_derivative,
    poly_frac_sum,
    principal_log,
)
from .engine import (
    EngineConfig,
    FracSumResult,
    Summand,
    delta_of_sum,
    extrapolate_with_exponents,
    frac_product,
    frac_sum_left,
    frac_sum_right,
    interpolating_polynomial,
    negative_length_sum,
    partial_left,
    partial_right,
    richardson_extrapolate,
)
from .special import (
    Constants,
    EmConfig,
    approx_degree,
    constants,
    digamma,
    hurwitz_x_derivative_check,
    hurwitz_zeta,
    hurwitz_zeta_sderiv,
    ln_gamma,
    riemann_zeta,
)

__version__ = "0.1.0"

__all__ = [
    "NEG_INF",
    "BernoulliTable",
    "Constants",
    "DomainError",
    "EmConfig",
    "EngineConfig",
    "FracSumResult",
    "PoleError",
    "Polynomial",
    "Summand",
    "approx_degree",
    "bernoulli_numbers",
    "constants",
    "cpow",
    "delta_of_sum",
    "digamma",
    "extrapolate_with_exponents",
    "faulhaber_polynomial",
    "frac_product",
    "frac_sum_left",
    "frac_sum_right",
    "hurwitz_x_derivative_check",
    "hurwitz_zeta",
    "hurwitz_zeta_sderiv",
    "interpolating_polynomial",
    "ln_gamma",
    "negative_length_sum",
    "partial_left",
    "partial_right",
    "poly_derivative",
    "poly_frac_sum",
    "principal_log",
    "richardson_extrapolate",
    "riemann_zeta",
    "__version__",
]
