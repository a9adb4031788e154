"""Exact and saddle-point asymptotic counts of k-th power-free elements
in additive arithmetic semigroups with exponentially growing prime counts."""

from .errors import (
    BracketFailure,
    CapacityError,
    ConfigError,
    ConvergenceFailure,
    IncompleteModelError,
    OracleTooLargeError,
    PowerFreeError,
    TruncationBudgetExceeded,
)
from .exact import (
    INF,
    CountResult,
    as_occupancy,
    count_power_free,
    count_power_free_oracle,
    dirichlet_partial_sum,
    enumerate_degrees,
)
from .saddle import (
    AsymptoticCount,
    EntropyEstimate,
    KappaBound,
    SaddlePoint,
    asymptotic_count,
    beta_leading,
    gamma_function,
    kappa_bound,
    log_asymptotic,
    solve_beta,
)
from .semigroup import (
    SemigroupModel,
    SemigroupParams,
    log_model_degree,
    prime_count,
    primes_up_to,
)
from .zeta import ZetaEval, log_zeta, log_zeta_terms

__version__ = "0.1.0"

__all__ = [
    "AsymptoticCount",
    "BracketFailure",
    "CapacityError",
    "ConfigError",
    "ConvergenceFailure",
    "CountResult",
    "EntropyEstimate",
    "INF",
    "IncompleteModelError",
    "KappaBound",
    "OracleTooLargeError",
    "PowerFreeError",
    "SaddlePoint",
    "SemigroupModel",
    "SemigroupParams",
    "TruncationBudgetExceeded",
    "ZetaEval",
    "as_occupancy",
    "asymptotic_count",
    "beta_leading",
    "count_power_free",
    "count_power_free_oracle",
    "dirichlet_partial_sum",
    "enumerate_degrees",
    "gamma_function",
    "kappa_bound",
    "log_asymptotic",
    "log_model_degree",
    "log_zeta",
    "log_zeta_terms",
    "prime_count",
    "primes_up_to",
    "solve_beta",
]
