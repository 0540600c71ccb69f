"""Pricing for non-recourse invoice factoring under clawback risk.

The package prices the factor's expected payoff in two regimes: the
debtor-only model, and a clawback-aware model where the seller's bankruptcy
inside a suspect period unwinds the receivable sale. Default times follow
exponential marginals coupled by a Gumbel survival copula; every closed form
is cross-validated by an event-enumeration fixed point and an independent
Monte Carlo engine.
"""

from .dependence import (
    DefaultTimePair,
    GumbelDependence,
    MarginalIntensity,
    THETA_MAX,
    joint_cdf,
    joint_density,
    joint_survival,
    kendall_tau_from_theta,
    sample_default_time_arrays,
    sample_pair,
    theta_from_kendall_tau,
    theta_power_mean,
)
from .errors import (
    DegenerateDealError,
    DensityBoundaryError,
    FactorPricingError,
    ParameterError,
    ScenarioValidationError,
    TieError,
)
from .events import (
    EventLabel,
    Ordering,
    PayoffKind,
    PayoffSpec,
    PLAIN_EVENTS,
    REVOCATORY_EVENTS,
    Regime,
    aggregate_to_triple,
    classify,
    events_for,
    solve_expected_payoff_fixed_point,
)
from .montecarlo import (
    McConfig,
    McEstimate,
    McPriceResult,
    TripleEstimate,
    beyond_horizon_sentinels,
    estimate_triple,
    mc_price,
    mc_standard_price,
    stream_for_block,
)
from .pricing import (
    DealTerms,
    ModelTag,
    PriceResult,
    ProbabilityTriple,
    probability_triple_closed,
    profitability_bound,
    revocatory_price_closed,
    revocatory_price_from_probs,
    standard_price,
    standard_price_from_intensity,
)
from .tolerances import TOLERANCES, Tolerances

__version__ = "1.0.0"

__all__ = [
    "DefaultTimePair",
    "GumbelDependence",
    "MarginalIntensity",
    "THETA_MAX",
    "joint_cdf",
    "joint_density",
    "joint_survival",
    "kendall_tau_from_theta",
    "sample_default_time_arrays",
    "sample_pair",
    "theta_from_kendall_tau",
    "theta_power_mean",
    "DegenerateDealError",
    "DensityBoundaryError",
    "FactorPricingError",
    "ParameterError",
    "ScenarioValidationError",
    "TieError",
    "EventLabel",
    "Ordering",
    "PayoffKind",
    "PayoffSpec",
    "PLAIN_EVENTS",
    "REVOCATORY_EVENTS",
    "Regime",
    "aggregate_to_triple",
    "classify",
    "events_for",
    "solve_expected_payoff_fixed_point",
    "McConfig",
    "McEstimate",
    "McPriceResult",
    "TripleEstimate",
    "beyond_horizon_sentinels",
    "estimate_triple",
    "mc_price",
    "mc_standard_price",
    "stream_for_block",
    "DealTerms",
    "ModelTag",
    "PriceResult",
    "ProbabilityTriple",
    "probability_triple_closed",
    "profitability_bound",
    "revocatory_price_closed",
    "revocatory_price_from_probs",
    "standard_price",
    "standard_price_from_intensity",
    "TOLERANCES",
    "Tolerances",
]
