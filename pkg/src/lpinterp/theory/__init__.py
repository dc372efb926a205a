from .rates import (
    RateQuery,
    rate_exponent_regression,
    rate_exponent_classification,
    koehler_exponent,
    rates_table,
)
from .gaussians import normal_sf, t_s_solve, lambda_q, mu_tilde
from .landscape import (
    PopulationRiskProfile,
    EmpiricalLandscape,
    population_profile,
    empirical_landscape,
    quadratic_lower_bound_check,
    localization_predictors,
)
from .l1path import L1Path, build_l1_path, gamma_path, gamma_qp_oracle, path_concentration_report

__all__ = [
    "RateQuery",
    "rate_exponent_regression",
    "rate_exponent_classification",
    "koehler_exponent",
    "rates_table",
    "normal_sf",
    "t_s_solve",
    "lambda_q",
    "mu_tilde",
    "PopulationRiskProfile",
    "EmpiricalLandscape",
    "population_profile",
    "empirical_landscape",
    "quadratic_lower_bound_check",
    "localization_predictors",
    "L1Path",
    "build_l1_path",
    "gamma_path",
    "gamma_qp_oracle",
    "path_concentration_report",
]
