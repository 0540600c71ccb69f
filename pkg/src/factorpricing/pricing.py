"""Closed-form factoring prices, with and without clawback exposure.

The debtor-only price of a face value C with recovery r and default
probability PD over the deal horizon is

    Price = C * (1 - (1 - r) * PD).

When the seller's bankruptcy inside the suspect period delta can unwind the
receivable sale, the factor's payoff has three branches, two of which depend
on the purchase price itself (the unwinding returns the retained discount and
recovers r_a on the exposure). Solving the resulting affine fixed point
Price = E[payoff(Price)] gives

    Price = (r_b*C*p_a + C*p_b - C*p_c) / (1 - (1 + r_a) * p_c)

with p_a = P(tau_b < T, tau_a > delta), p_b = P(tau_b > T, tau_a > delta)
and p_c = P(tau_a < delta). Under the exponential-Gumbel model the triple is
closed-form:

    p_a = exp(-lam_a*delta) - exp(-M)
    p_b = exp(-M)
    p_c = 1 - exp(-lam_a*delta)

where M = theta_power_mean(lam_a*delta, lam_b*T, theta), which collapses the
price to a single expression with denominator exp(-lam_a*delta)*(1+r_a) - r_a.
A non-positive denominator means no finite positive price exists
(DegenerateDealError).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateDealError, ParameterError
from .dependence import _rate, theta_power_mean

# Sanity gate for probability triples built from estimated or aggregated
# event probabilities (the closed forms telescope to ~1e-16).
TRIPLE_SUM_TOL = 1e-9


class ModelTag(str, Enum):
    STANDARD = "standard"
    REVOCATORY_CLOSED = "revocatory_closed"
    REVOCATORY_FROM_PROBS = "revocatory_from_probs"
    REVOCATORY_MC = "revocatory_mc"


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


def _check_finite(name: str, value) -> float:
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise ParameterError(f"{name} must be a finite number, got {value!r}")
    return float(value)


def _check_probability(name: str, value) -> float:
    value = _check_finite(name, value)
    if not 0.0 <= value <= 1.0:
        raise ParameterError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class DealTerms:
    """Economic terms of one factoring deal.

    face_value_c: invoice face value C (any currency unit, > 0).
    maturity_t: expected repayment time T in years (> 0).
    suspect_period_delta: clawback look-back window delta in years (>= 0);
        delta may exceed T, the two are not ordered.
    recovery_a: recovery rate on the exposure to the defaulted seller, [0, 1).
    recovery_b: recovery rate on the receivable if the debtor defaults, [0, 1].
    """

    face_value_c: float
    maturity_t: float
    suspect_period_delta: float
    recovery_a: float
    recovery_b: float

    def __post_init__(self):
        c = _check_finite("face_value_c", self.face_value_c)
        if c <= 0.0:
            raise ParameterError(f"face_value_c must be > 0, got {c!r}")
        t = _check_finite("maturity_t", self.maturity_t)
        if t <= 0.0:
            raise ParameterError(f"maturity_t must be > 0, got {t!r}")
        d = _check_finite("suspect_period_delta", self.suspect_period_delta)
        if d < 0.0:
            raise ParameterError(f"suspect_period_delta must be >= 0, got {d!r}")
        ra = _check_finite("recovery_a", self.recovery_a)
        if not 0.0 <= ra < 1.0:
            raise ParameterError(f"recovery_a must lie in [0, 1), got {ra!r}")
        _check_probability("recovery_b", self.recovery_b)


@dataclass(frozen=True)
class ProbabilityTriple:
    """The three event-class probabilities that determine the price.

    p_debtor_default_no_clawback: P(tau_b < T, tau_a > delta)
    p_joint_survival:             P(tau_b > T, tau_a > delta)
    p_clawback:                   P(tau_a < delta)

    The three events partition the sample space, so the components must sum
    to one (within a small slack for count-based estimates).
    """

    p_debtor_default_no_clawback: float
    p_joint_survival: float
    p_clawback: float

    def __post_init__(self):
        _check_probability("p_debtor_default_no_clawback", self.p_debtor_default_no_clawback)
        _check_probability("p_joint_survival", self.p_joint_survival)
        _check_probability("p_clawback", self.p_clawback)
        total = (
            self.p_debtor_default_no_clawback
            + self.p_joint_survival
            + self.p_clawback
        )
        if abs(total - 1.0) > TRIPLE_SUM_TOL:
            raise ParameterError(
                f"probability triple must sum to 1, got {total!r}"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (
            self.p_debtor_default_no_clawback,
            self.p_joint_survival,
            self.p_clawback,
        )


@dataclass(frozen=True)
class PriceResult:
    """A computed price with its implied discount and probability breakdown.

    implied_discount_alpha is 1 - price / C, the haircut on the face value
    consistent with the price; it can be negative only if recovery made the
    deal worth more than par, which the models here never produce.
    """

    price: float
    implied_discount_alpha: float
    triple: ProbabilityTriple
    model_tag: ModelTag


def _result(price: float, face_value_c: float, triple: ProbabilityTriple,
            tag: ModelTag) -> PriceResult:
    return PriceResult(
        price=price,
        implied_discount_alpha=1.0 - price / face_value_c,
        triple=triple,
        model_tag=tag,
    )


# ---------------------------------------------------------------------------
# debtor-only model
# ---------------------------------------------------------------------------


def standard_price(face_value_c: float, recovery: float, pd_t: float) -> PriceResult:
    """Debtor-only price C * (1 - (1 - r) * pd_t).

    pd_t is the debtor's default probability over the deal horizon; for an
    exponential marginal it is 1 - exp(-lam_b * T), but any externally
    computed probability is accepted.
    """
    c = _check_finite("face_value_c", face_value_c)
    if c <= 0.0:
        raise ParameterError(f"face_value_c must be > 0, got {c!r}")
    r = _check_probability("recovery", recovery)
    pd = _check_probability("pd_t", pd_t)
    price = c * (1.0 - (1.0 - r) * pd)
    triple = ProbabilityTriple(pd, 1.0 - pd, 0.0)
    return _result(price, c, triple, ModelTag.STANDARD)


def standard_price_from_intensity(face_value_c: float, recovery: float,
                                  lam_b, maturity_t: float) -> PriceResult:
    """Debtor-only price with pd_t = 1 - exp(-lam_b * maturity_t)."""
    rb = _rate(lam_b, "lam_b")
    t = _check_finite("maturity_t", maturity_t)
    if t <= 0.0:
        raise ParameterError(f"maturity_t must be > 0, got {t!r}")
    return standard_price(face_value_c, recovery, -math.expm1(-rb * t))


def profitability_bound(recovery: float, pd_t: float) -> float:
    """Minimum discount alpha at which the factor breaks even: (1 - r) * pd_t."""
    r = _check_probability("recovery", recovery)
    pd = _check_probability("pd_t", pd_t)
    return (1.0 - r) * pd


# ---------------------------------------------------------------------------
# clawback-aware model
# ---------------------------------------------------------------------------


def probability_triple_closed(lam_a, lam_b, dep, terms: DealTerms) -> ProbabilityTriple:
    """Closed-form probability triple of the exponential-Gumbel model.

    The three expressions telescope, so the partition constraint holds to
    floating-point roundoff by construction.
    """
    ra = _rate(lam_a, "lam_a")
    rb = _rate(lam_b, "lam_b")
    pm = theta_power_mean(ra * terms.suspect_period_delta,
                          rb * terms.maturity_t, dep)
    e_joint = math.exp(-pm)
    e_a = math.exp(-ra * terms.suspect_period_delta)
    return ProbabilityTriple(
        p_debtor_default_no_clawback=e_a - e_joint,
        p_joint_survival=e_joint,
        p_clawback=1.0 - e_a,
    )


def revocatory_price_from_probs(triple: ProbabilityTriple, terms: DealTerms,
                                model_tag: ModelTag = ModelTag.REVOCATORY_FROM_PROBS,
                                ) -> PriceResult:
    """Price from an explicit probability triple.

    Price = (r_b*C*p_a + C*p_b - C*p_c) / (1 - (1 + r_a) * p_c); raises
    DegenerateDealError when the denominator is not positive.
    """
    p_a, p_b, p_c = triple.as_tuple()
    c = terms.face_value_c
    denominator = 1.0 - (1.0 + terms.recovery_a) * p_c
    if denominator <= 0.0:
        raise DegenerateDealError(denominator)
    price = (terms.recovery_b * c * p_a + c * p_b - c * p_c) / denominator
    return _result(price, c, triple, model_tag)


def revocatory_price_closed(lam_a, lam_b, dep, terms: DealTerms) -> PriceResult:
    """Fully closed-form clawback-aware price.

    Price = C * ((1-r_b)*exp(-M) - 1 + exp(-lam_a*delta)*(1+r_b))
              / (exp(-lam_a*delta)*(1+r_a) - r_a)

    with M = theta_power_mean(lam_a*delta, lam_b*T, theta). Agrees with
    revocatory_price_from_probs(probability_triple_closed(...)) to roundoff;
    at lam_a = 0 or delta = 0 it reduces to the debtor-only price.
    """
    ra = _rate(lam_a, "lam_a")
    rb = _rate(lam_b, "lam_b")
    pm = theta_power_mean(ra * terms.suspect_period_delta,
                          rb * terms.maturity_t, dep)
    e_joint = math.exp(-pm)
    e_a = math.exp(-ra * terms.suspect_period_delta)
    denominator = e_a * (1.0 + terms.recovery_a) - terms.recovery_a
    if denominator <= 0.0:
        raise DegenerateDealError(denominator)
    c = terms.face_value_c
    numerator = (1.0 - terms.recovery_b) * e_joint - 1.0 + e_a * (1.0 + terms.recovery_b)
    price = c * numerator / denominator
    triple = ProbabilityTriple(
        p_debtor_default_no_clawback=e_a - e_joint,
        p_joint_survival=e_joint,
        p_clawback=1.0 - e_a,
    )
    return _result(price, c, triple, ModelTag.REVOCATORY_CLOSED)
