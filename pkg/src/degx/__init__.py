"""Extreme order statistics of Beta-distributed normalized network degrees.

Normalized degrees ``pi_i = d_i / n`` are modelled as a Beta(a, b) sample.
The package provides the exact finite-n laws of their order statistics,
the limiting (reversed Weibull / generalized Gamma) laws of the extremes
with the resulting mean and variance formulas, a Chung-Lu graph simulator
with Beta expected degrees, and a Monte Carlo harness that compares them.
"""

from .errors import ConvergenceError, DomainError, RegimeError
from .experiments import (
    ComparisonRow,
    MCSummary,
    compare_theory,
    default_ranks,
    degree_histogram,
    expected_clamp_fraction,
    run_monte_carlo,
    simulate_ranked,
)
from .graphsim import (
    GraphConfig,
    LoopsPolicy,
    NormalizedDegreeSequence,
    OutputMode,
    Source,
    WeightVector,
    clamp_fraction,
    edge_prob,
    generate_weights,
    normalize_and_sort,
    sample_graph_degrees,
    weights_only_sequence,
)
from .oracle import oracle_order_stat_moment
from .powerlaw import PowerLawFit, beta_decay_curve, fit_shifted_power_law, power_law_curve
from .sampling import BetaParams, SeedSpec, derive_stream, sample_beta
from .special import ln_beta, ln_gamma, reg_inc_beta
from .theory import (
    GenGammaLaw,
    RankSpec,
    Side,
    TheoryPrediction,
    exact_order_stat_cdf,
    exact_order_stat_pdf,
    expected_uniform_order_stat,
    finite_n_cdf_Gn,
    gen_gamma_law,
    gen_gamma_moment,
    gn_bracketed,
    limiting_cdf_G,
    limiting_kth_extreme_cdf,
    predict_extreme,
)

__version__ = "0.1.0"
