"""Growth statistics of the uniform edge process on the complete graph.

Exact rational enumeration, high-precision asymptotics, saddle-point
integral machinery, and a reproducible Monte Carlo simulator for the
l -> l+1 component transitions and the vertex counts V_l attached to
them.
"""

from .asymptotics import (
    AsymptoticEstimate,
    WrightConstants,
    alpha_approx,
    alpha_total_asymptotic,
    c_bcm,
    dominance_ratio,
    lemma2_rhs,
    rho,
    v_expected,
    wright_w,
)
from .errors import NumericalError, ResourceLimitError, UsageError
from .exact_enum import (
    ConnectedCountTable,
    alpha_exact,
    alpha_exact_via_beta,
    alpha_total_exact,
    brute_force_alpha,
    connected_count,
    total_graph_count,
)
from .laplace import (
    SaddleProblem,
    SaddleSolution,
    h_eval,
    integral_quadrature,
    laplace_estimate,
    power_sum,
    solve_saddle,
)
from .logreal import DEFAULT_PRECISION_BITS, LogReal
from .simulator import (
    AggregateStats,
    ComponentForest,
    EdgeStream,
    RunStats,
    aggregate,
    new_run,
    run_stats,
    run_to_completion,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateStats",
    "AsymptoticEstimate",
    "ComponentForest",
    "ConnectedCountTable",
    "DEFAULT_PRECISION_BITS",
    "EdgeStream",
    "LogReal",
    "NumericalError",
    "ResourceLimitError",
    "RunStats",
    "SaddleProblem",
    "SaddleSolution",
    "UsageError",
    "WrightConstants",
    "aggregate",
    "alpha_approx",
    "alpha_exact",
    "alpha_exact_via_beta",
    "alpha_total_asymptotic",
    "alpha_total_exact",
    "brute_force_alpha",
    "c_bcm",
    "connected_count",
    "dominance_ratio",
    "h_eval",
    "integral_quadrature",
    "laplace_estimate",
    "lemma2_rhs",
    "new_run",
    "power_sum",
    "rho",
    "run_stats",
    "run_to_completion",
    "solve_saddle",
    "step",
    "total_graph_count",
    "v_expected",
    "wright_w",
    "__version__",
]
