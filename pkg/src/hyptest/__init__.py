"""Optimal error probabilities and error exponents for quantum hypothesis testing."""
from .composite import (CompositeError, ExponentSeries, FamilyParams, ReducedEigenReport,
                        SpecialFamily, TheoremReport, asymptotic_norm, block_sizes,
                        canonical_realization, composite_error, composite_sum_error,
                        conjectured_exponent, exponent_series, extract_params, pair_log_errors,
                        random_params, reduced_eigen, reduced_matrix, remainder_ratio,
                        remainder_scale, series_at, validate_assumptions, verify_theorem)
from .discrimination import (ChernoffResult, audenaert_check, binary_optimal_error,
                             born_probabilities, chernoff_divergence, classical_optimal,
                             error_probability, hybrid_sup_binary, is_valid_povm,
                             success_probability, verify_optimality, worst_case_composite_error)
from .errors import (DomainError, HyptestError, InfeasibleParams, InvalidOperand, InvalidState,
                     InvariantViolation, NonDiagonal, OptimalityWarning, ParseError,
                     PrecisionLossWarning, ResourceError, ShapeError, ZeroOperand)
from .linalg import (EigenReport, absolute_value, eig_hermitian, fractional_power,
                     is_orthogonal, positive_part_projectors, psd_order_leq, support_projector,
                     tensor_power, trace_norm)
from .oracle import (OracleBudget, chernoff_bruteforce, rotated_realization,
                     tensor_error_bruteforce, worst_case_grid)

__version__ = "0.1.0"
