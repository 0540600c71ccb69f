"""Simulation oracle for the factoring payoff model.

Estimates the event-class probabilities and the deal price by sampling
correlated default-time pairs and classifying each path into the twelve
clawback-regime events. Every closed form in the package is validated against
this simulator.

Determinism contract: every estimate is a pure function of
(n_paths, seed, worker_count). The path range is split into worker_count
contiguous blocks; block i draws from an independent PCG64 generator seeded
with numpy's SeedSequence(seed, spawn_key=(i,)). Per-event counts reduce by
integer addition, so results do not depend on scheduling order. Pairs that
tie a classification boundary (tau_a == tau_b, either time == T, or
tau_a == delta) are re-drawn from the same block stream, deterministically.

Zero intensities are simulated with a finite beyond-horizon sentinel time
strictly greater than T and delta, keeping classification total without
infinities in the arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .errors import ParameterError
from .dependence import GumbelDependence, _rate, _theta, sample_default_time_arrays
from .events import (
    Ordering,
    REVOCATORY_EVENTS,
    EventLabel,
    PayoffKind,
    solve_expected_payoff_fixed_point,
)
from .pricing import (
    DealTerms,
    ModelTag,
    PriceResult,
    ProbabilityTriple,
    _result,
)

_SEED_MAX = 2**64 - 1

# Ordering of the six (tau_a, tau_b, T) arrangements shared by the non-clawback
# block (indices 0..5) and the clawback block (indices 6..11) of
# REVOCATORY_EVENTS; the vectorized classifier relies on this layout.
_ORDER_SEQ = (
    Ordering.B_A_T,
    Ordering.A_B_T,
    Ordering.B_T_A,
    Ordering.A_T_B,
    Ordering.T_B_A,
    Ordering.T_A_B,
)
for _i, _label in enumerate(REVOCATORY_EVENTS):
    assert _label.ordering is _ORDER_SEQ[_i % 6] and _label.clawback == (_i >= 6)


@dataclass(frozen=True)
class McConfig:
    """Simulation size, seed and decomposition.

    confidence_sigmas is the default acceptance band (in standard errors)
    used by closed-form-vs-MC checks.
    """

    n_paths: int = 1_000_000
    seed: int = 42
    worker_count: int = 1
    confidence_sigmas: float = 4.0

    def __post_init__(self):
        if not (isinstance(self.n_paths, (int, np.integer)) and self.n_paths >= 1):
            raise ParameterError(f"n_paths must be a positive integer, got {self.n_paths!r}")
        if not (isinstance(self.seed, (int, np.integer)) and 0 <= self.seed <= _SEED_MAX):
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not (isinstance(self.worker_count, (int, np.integer)) and self.worker_count >= 1):
            raise ParameterError(f"worker_count must be >= 1, got {self.worker_count!r}")
        if not (
            isinstance(self.confidence_sigmas, (int, float))
            and math.isfinite(self.confidence_sigmas)
            and self.confidence_sigmas > 0
        ):
            raise ParameterError(f"confidence_sigmas must be > 0, got {self.confidence_sigmas!r}")


@dataclass(frozen=True)
class McEstimate:
    """One simulated estimate with its standard error.

    per_event_counts maps every clawback-regime label to its path count and
    sums to n_paths; it is None for single-marginal simulations that never
    classify pairs.
    """

    value: float
    std_error: float
    n_paths: int
    per_event_counts: Optional[Mapping[EventLabel, int]]


@dataclass(frozen=True)
class TripleEstimate:
    """The probability triple with one McEstimate per component."""

    p_debtor_default_no_clawback: McEstimate
    p_joint_survival: McEstimate
    p_clawback: McEstimate

    def point_triple(self) -> ProbabilityTriple:
        return ProbabilityTriple(
            self.p_debtor_default_no_clawback.value,
            self.p_joint_survival.value,
            self.p_clawback.value,
        )


@dataclass(frozen=True)
class McPriceResult:
    """A PriceResult plus the simulation estimate that produced it."""

    result: PriceResult
    estimate: McEstimate


# ---------------------------------------------------------------------------
# streams and blocks
# ---------------------------------------------------------------------------


def stream_for_block(seed: int, block_index: int) -> np.random.Generator:
    """The fixed RNG-stream derivation rule: PCG64(SeedSequence(seed, spawn_key=(i,)))."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block_index,)))
    )


def _block_sizes(n_paths: int, worker_count: int) -> list[int]:
    base, rem = divmod(n_paths, worker_count)
    return [base + 1 if i < rem else base for i in range(worker_count)]


def beyond_horizon_sentinels(terms: DealTerms) -> tuple[float, float]:
    """Finite stand-in default times for zero-intensity obligors.

    Both lie strictly beyond T and delta; they differ from each other so a
    doubly riskless deal still classifies without a tie.
    """
    horizon = max(terms.maturity_t, terms.suspect_period_delta)
    return 2.0 * horizon + 1.0, 2.0 * horizon + 2.0


# ---------------------------------------------------------------------------
# path generation and classification
# ---------------------------------------------------------------------------


def _draw_clean_block(
    rng: np.random.Generator,
    n: int,
    rate_a: float,
    rate_b: float,
    theta: float,
    terms: DealTerms,
) -> tuple[np.ndarray, np.ndarray]:
    """Sample a block of pairs, replacing zero-rate legs with sentinels and
    re-drawing any pair that ties a classification boundary."""
    sent_a, sent_b = beyond_horizon_sentinels(terms)
    t = terms.maturity_t
    d = terms.suspect_period_delta

    def draw(k: int) -> tuple[np.ndarray, np.ndarray]:
        ta, tb = sample_default_time_arrays(rate_a, rate_b, theta, k, rng)
        if rate_a == 0.0:
            ta = np.full(k, sent_a)
        if rate_b == 0.0:
            tb = np.full(k, sent_b)
        return ta, tb

    ta, tb = draw(n)
    while True:
        bad = (ta == tb) | (ta == t) | (tb == t) | (ta == d)
        idx = np.flatnonzero(bad)
        if idx.size == 0:
            return ta, tb
        na, nb = draw(idx.size)
        ta[idx] = na
        tb[idx] = nb


def _classify_block(ta: np.ndarray, tb: np.ndarray, terms: DealTerms) -> np.ndarray:
    """Vectorized twin of events.classify for the clawback regime.

    Returns indices into REVOCATORY_EVENTS; relies on the _ORDER_SEQ layout
    asserted at import time.
    """
    t = terms.maturity_t
    a_first = ta < tb
    order_idx = np.where(
        a_first,
        np.where(tb < t, 1, np.where(ta < t, 3, 5)),
        np.where(ta < t, 0, np.where(tb < t, 2, 4)),
    )
    return order_idx + 6 * (ta < terms.suspect_period_delta)


def _event_counts(rate_a, rate_b, theta, terms: DealTerms, cfg: McConfig) -> np.ndarray:
    counts = np.zeros(len(REVOCATORY_EVENTS), dtype=np.int64)
    for block_index, size in enumerate(_block_sizes(cfg.n_paths, cfg.worker_count)):
        if size == 0:
            continue
        rng = stream_for_block(cfg.seed, block_index)
        ta, tb = _draw_clean_block(rng, size, rate_a, rate_b, theta, terms)
        counts += np.bincount(
            _classify_block(ta, tb, terms), minlength=len(REVOCATORY_EVENTS)
        )
    return counts


def _class_frequencies(counts: np.ndarray, n: int) -> tuple[float, float, float]:
    k = {kind: 0 for kind in PayoffKind}
    for label, count in zip(REVOCATORY_EVENTS, counts):
        k[label.payoff.kind] += int(count)
    return (
        k[PayoffKind.RECOVERY_B] / n,
        k[PayoffKind.FULL] / n,
        k[PayoffKind.CLAWBACK] / n,
    )


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------


def estimate_triple(lam_a, lam_b, dep, terms: DealTerms, cfg: McConfig) -> TripleEstimate:
    """Estimate the probability triple from event-class frequencies.

    Component standard errors are binomial, sqrt(p * (1 - p) / n); the three
    point estimates are count ratios over one common sample, so they sum to
    one up to float division roundoff.
    """
    rate_a = _rate(lam_a, "lam_a")
    rate_b = _rate(lam_b, "lam_b")
    counts = _event_counts(rate_a, rate_b, _theta(dep), terms, cfg)
    n = cfg.n_paths
    counts_map = dict(zip(REVOCATORY_EVENTS, (int(c) for c in counts)))
    p_a, p_b, p_c = _class_frequencies(counts, n)

    def component(p: float) -> McEstimate:
        return McEstimate(
            value=p,
            std_error=math.sqrt(p * (1.0 - p) / n),
            n_paths=n,
            per_event_counts=counts_map,
        )

    return TripleEstimate(component(p_a), component(p_b), component(p_c))


def mc_price(lam_a, lam_b, dep, terms: DealTerms, cfg: McConfig) -> McPriceResult:
    """Simulated clawback-aware price with a delta-method standard error.

    Event-class frequencies feed the expected-payoff fixed point; the price
    is a smooth rational map g(p_a, p_b, p_c), so its standard error is
    propagated to first order through the multinomial covariance of the
    class frequencies:

        var(g) = (sum_i p_i * g_i**2 - (sum_i p_i * g_i)**2) / n

    with g_i the partial derivatives of g at the estimated frequencies.
    """
    rate_a = _rate(lam_a, "lam_a")
    rate_b = _rate(lam_b, "lam_b")
    counts = _event_counts(rate_a, rate_b, _theta(dep), terms, cfg)
    n = cfg.n_paths
    counts_map = dict(zip(REVOCATORY_EVENTS, (int(c) for c in counts)))
    event_probs = {label: int(c) / n for label, c in zip(REVOCATORY_EVENTS, counts)}
    result = solve_expected_payoff_fixed_point(
        event_probs, terms, model_tag=ModelTag.REVOCATORY_MC
    )

    p_a, p_b, p_c = _class_frequencies(counts, n)
    c = terms.face_value_c
    denominator = 1.0 - (1.0 + terms.recovery_a) * p_c
    grads = (
        terms.recovery_b * c / denominator,
        c / denominator,
        ((1.0 + terms.recovery_a) * result.price - c) / denominator,
    )
    probs = (p_a, p_b, p_c)
    mean_g = sum(p * g for p, g in zip(probs, grads))
    var = max(0.0, sum(p * g * g for p, g in zip(probs, grads)) - mean_g**2) / n
    estimate = McEstimate(
        value=result.price,
        std_error=math.sqrt(var),
        n_paths=n,
        per_event_counts=counts_map,
    )
    return McPriceResult(result=result, estimate=estimate)


def mc_standard_price(lam_b, terms: DealTerms, cfg: McConfig) -> McPriceResult:
    """Simulated debtor-only price from a single-marginal simulation.

    Each path pays recovery_b * C if tau_b < T and C otherwise; the estimate
    is the sample mean with std_error = sample stdev / sqrt(n).
    """
    rate_b = _rate(lam_b, "lam_b")
    t = terms.maturity_t
    _, sent_b = beyond_horizon_sentinels(terms)
    defaults = 0
    for block_index, size in enumerate(_block_sizes(cfg.n_paths, cfg.worker_count)):
        if size == 0:
            continue
        rng = stream_for_block(cfg.seed, block_index)
        if rate_b == 0.0:
            rng.standard_exponential(size)  # keep the stream layout uniform
            continue
        tb = rng.standard_exponential(size) / rate_b
        while True:
            idx = np.flatnonzero(tb == t)
            if idx.size == 0:
                break
            tb[idx] = rng.standard_exponential(idx.size) / rate_b
        defaults += int(np.count_nonzero(tb < t))

    n = cfg.n_paths
    c = terms.face_value_c
    r = terms.recovery_b
    pd_hat = defaults / n
    low, high = r * c, c
    mean = (low * defaults + high * (n - defaults)) / n
    if n > 1:
        var_sample = ((low - mean) ** 2 * defaults + (high - mean) ** 2 * (n - defaults)) / (n - 1)
    else:
        var_sample = 0.0
    result = _result(
        mean, c, ProbabilityTriple(pd_hat, 1.0 - pd_hat, 0.0), ModelTag.STANDARD
    )
    estimate = McEstimate(
        value=mean,
        std_error=math.sqrt(var_sample / n),
        n_paths=n,
        per_event_counts=None,
    )
    return McPriceResult(result=result, estimate=estimate)
