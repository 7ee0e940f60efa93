"""smoothbound: exact smooth-integer counts, simplex lattice counts, and
bound-formula evaluators, all validated against brute-force oracles."""

from .auxsums import (AuxInstance, AuxSumResult, KIND_CORRECTED, KIND_PLAIN,
                      corrected_sum, corrected_sum_by_reduction,
                      corrected_vs_plain_report, make_aux_instance, plain_sum,
                      plain_sum_by_reduction, seed_coefficient)
from .binning import (BinningSpec, LowerBoundResult, aggregate_exponents,
                      assignment_count, bin_index, build_binning,
                      count_lower_bound, count_upper_bound)
from .bounds import (BoundReport, IterationTrace, TraceStep, fform_log,
                     gamma_schedule, iterated_log_ladder, iteration_objective,
                     iteration_objective_max, lower_bound_rhs,
                     lower_iteration_trace, objective_grid_max,
                     polylog_regime_rhs, sharp_offset, upper_bound_rhs,
                     upper_domain_gap, upper_step_flags)
from .errors import (DegenerateWeightError, InvalidArgumentError,
                     ResourceLimitError, SmoothboundError, TableTooSmallError)
from .lattice import (SimplexSpec, compositions_count, count_lattice_points,
                      cumulative_compositions, factorial_volume_bound,
                      stirling_value)
from .primes import (PrimeTable, build_prime_table, prime_reciprocal_sum,
                     smoothness_index, sqrt_reciprocal_stats)
from .smooth import (SmoothCountResult, preliminary_lower_bound,
                     smooth_count_direct, smooth_count_recursive)

__version__ = "0.1.0"

__all__ = [
    "AuxInstance", "AuxSumResult", "BinningSpec", "BoundReport",
    "DegenerateWeightError", "InvalidArgumentError", "IterationTrace",
    "KIND_CORRECTED", "KIND_PLAIN", "LowerBoundResult", "PrimeTable",
    "ResourceLimitError", "SimplexSpec", "SmoothCountResult",
    "SmoothboundError", "TableTooSmallError", "TraceStep",
    "aggregate_exponents", "assignment_count", "bin_index",
    "build_binning", "build_prime_table", "compositions_count",
    "corrected_sum", "corrected_sum_by_reduction",
    "corrected_vs_plain_report", "count_lattice_points",
    "count_lower_bound", "count_upper_bound", "cumulative_compositions",
    "factorial_volume_bound", "fform_log", "gamma_schedule",
    "iterated_log_ladder", "iteration_objective", "iteration_objective_max",
    "lower_bound_rhs", "lower_iteration_trace", "make_aux_instance",
    "objective_grid_max", "plain_sum", "plain_sum_by_reduction",
    "polylog_regime_rhs", "preliminary_lower_bound", "prime_reciprocal_sum",
    "seed_coefficient", "sharp_offset", "smooth_count_direct",
    "smooth_count_recursive", "smoothness_index", "sqrt_reciprocal_stats",
    "stirling_value", "upper_bound_rhs", "upper_domain_gap",
    "upper_step_flags",
]
