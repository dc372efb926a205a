"""Minimum-lp-norm interpolation and maximum-lp-margin classification.

The package covers four layers: synthetic Gaussian sparse-signal data
(`datagen`), certified convex solvers for the two interpolators (`solvers`,
with independent slow references in `oracles`), error functionals and the
bias-variance split (`metrics`), closed-form rate exponents plus the
auxiliary-problem numerics (`theory`), and a reproducible experiment
harness with CLI, sweeps and SVG plots (`harness`).
"""

from .datagen import (Dataset, GroundTruth, NoiseModel, ProblemSpec,
                      gen_classification, gen_regression, sample_label_sign)
from .errors import (AssumptionViolationError, ConfigurationError,
                     DegenerateDesignError, LpInterpError, SchemaError,
                     SeparabilityError, UnboundedDirectionError)
from .metrics import (TrialMetrics, bias_variance, directional_error,
                      estimation_error, zero_one_from_directional)
from .oracles import dual_qp_margin_p2, oracle_max_lp_margin, oracle_min_lp_norm
from .solvers import (Solution, SolverOptions, effective_p_for_classification,
                      kkt_residual_interpolation, kkt_residual_margin,
                      least_norm_l2, solve_max_lp_margin, solve_min_lp_norm)
from .streams import hash64, stream

__version__ = "0.1.0"

__all__ = [
    "Dataset", "GroundTruth", "NoiseModel", "ProblemSpec",
    "gen_classification", "gen_regression", "sample_label_sign",
    "LpInterpError", "ConfigurationError", "DegenerateDesignError",
    "SeparabilityError", "UnboundedDirectionError", "AssumptionViolationError",
    "SchemaError",
    "TrialMetrics", "estimation_error", "directional_error",
    "zero_one_from_directional", "bias_variance",
    "Solution", "SolverOptions", "solve_min_lp_norm", "solve_max_lp_margin",
    "kkt_residual_interpolation", "kkt_residual_margin", "least_norm_l2",
    "effective_p_for_classification",
    "oracle_min_lp_norm", "oracle_max_lp_margin", "dual_qp_margin_p2",
    "hash64", "stream",
]
