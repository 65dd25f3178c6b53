"""Exact counts and effective asymptotics for parts of k-regular partitions
lying in residue classes.

``D_k(r,t;n)`` counts, over all partitions of ``n`` in which no part repeats
``k`` or more times, the parts congruent to ``r`` modulo ``t``.
"""

__version__ = "0.1.0"

from .errors import (AccuracyError, CapabilityError, DependencyError, DomainError,
                     InconclusiveError, IntegrityError, KRegularError, PreconditionError)
from .logscaled import LogScaled, logscaled_arith
from .series import (CoefficientTable, PartCountTable, d_table, ell_coeffs, enumerate_oracle,
                     indivisible_count, k_regular_table, load_table, partition_table, save_table)
from .asymptotics import RegularityParams, corollary_diff, hat_d, q_ratio
from .arcs import BoundId, verify_bound, run_bound_suite
from .finite_check import (EffectiveParams, census, delta_min, effective_constants, find_N,
                           inequality_check, minimize_N, run_long_census, sandwich_check,
                           stable_patterns)

__all__ = [
    "AccuracyError", "CapabilityError", "DependencyError", "DomainError", "InconclusiveError",
    "IntegrityError", "KRegularError", "PreconditionError", "LogScaled", "logscaled_arith",
    "CoefficientTable", "PartCountTable", "d_table", "ell_coeffs", "enumerate_oracle",
    "indivisible_count", "k_regular_table", "load_table", "partition_table", "save_table",
    "RegularityParams", "corollary_diff", "hat_d", "q_ratio", "BoundId", "verify_bound",
    "run_bound_suite", "EffectiveParams", "census", "delta_min", "effective_constants", "find_N",
    "inequality_check", "minimize_N", "run_long_census", "sandwich_check", "stable_patterns",
]
