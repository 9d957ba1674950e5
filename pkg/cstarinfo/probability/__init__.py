"""States, independence, distributions and the weak law of large numbers"""

from ._states import State, ProductState, evaluate, pure_check, is_multiplicative, dual_functional, trace
from ._subalgebra import Subalgebra, generated_subalgebra
from ._independence import uncorrelated, independence_test, mutual_independence_test
from ._distribution import Distribution, annihilator_projection, distribution_of, cdf, prob_interval, group_values
from ._lln import coordinate_observable, sample_mean_distribution, lln_moment
from ._lln import chebyshev_tail, chebyshev_bound, chebyshev_threshold

__all__ = [
    "State",
    "ProductState",
    "evaluate",
    "pure_check",
    "is_multiplicative",
    "dual_functional",
    "trace",
    "Subalgebra",
    "generated_subalgebra",
    "uncorrelated",
    "independence_test",
    "mutual_independence_test",
    "Distribution",
    "annihilator_projection",
    "distribution_of",
    "cdf",
    "prob_interval",
    "group_values",
    "coordinate_observable",
    "sample_mean_distribution",
    "lln_moment",
    "chebyshev_tail",
    "chebyshev_bound",
    "chebyshev_threshold",
    ]
