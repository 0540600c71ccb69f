"""Payoff event taxonomy and the expected-payoff fixed point.

Two regimes describe one deal:

* plain: the seller's default timing never touches the payoff. The six
  orderings of (tau_a, tau_b, T) split into debtor-default events (payoff
  r_b * C) and debtor-survival events (payoff C).
* revocatory: each ordering additionally splits on whether the seller
  defaults inside the suspect period (tau_a < delta). The six orderings with
  tau_a > delta keep the plain payoffs; the six with tau_a < delta share the
  clawback payoff, which is affine in the purchase price:
  (1 + r_a) * price - C (the sale is unwound, the discount is returned and
  r_a of the exposure is recovered).

Event codes follow the romance-alphabet convention a..f and g..n (no j, k).
Expected-payoff pricing solves Price = sum_e P(e) * payoff_e(Price), an
affine equation in Price, by direct enumeration over the labels; this is the
semantic ground truth the closed forms must reproduce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import DegenerateDealError, ParameterError, TieError
from .dependence import _time
from .pricing import DealTerms, ModelTag, PriceResult, ProbabilityTriple, _result

# Event probabilities fed to the fixed point must sum to 1 within this slack.
EVENT_SUM_TOL = 1e-9


class Regime(str, Enum):
    PLAIN = "plain"
    REVOCATORY = "revocatory"


class Ordering(str, Enum):
    """The six strict orderings of tau_a, tau_b and the maturity T."""

    A_B_T = "tau_a<tau_b<T"
    B_A_T = "tau_b<tau_a<T"
    B_T_A = "tau_b<T<tau_a"
    A_T_B = "tau_a<T<tau_b"
    T_A_B = "T<tau_a<tau_b"
    T_B_A = "T<tau_b<tau_a"

    @property
    def debtor_defaults_by_maturity(self) -> bool:
        return self in (Ordering.A_B_T, Ordering.B_A_T, Ordering.B_T_A)


class PayoffKind(str, Enum):
    RECOVERY_B = "recovery_b"
    FULL = "full"
    CLAWBACK = "clawback"


@dataclass(frozen=True)
class PayoffSpec:
    """Payoff of one event class, as an affine function of the price."""

    kind: PayoffKind

    def intercept_slope(self, terms: DealTerms) -> tuple[float, float]:
        """(payoff at price 0, d payoff / d price)."""
        c = terms.face_value_c
        if self.kind is PayoffKind.RECOVERY_B:
            return terms.recovery_b * c, 0.0
        if self.kind is PayoffKind.FULL:
            return c, 0.0
        return -c, 1.0 + terms.recovery_a

    def amount(self, price: float, terms: DealTerms) -> float:
        intercept, slope = self.intercept_slope(terms)
        return intercept + slope * price


@dataclass(frozen=True)
class EventLabel:
    """One mutually exclusive payoff event of a regime."""

    regime: Regime
    code: str
    ordering: Ordering
    clawback: bool

    @property
    def payoff(self) -> PayoffSpec:
        if self.clawback:
            return PayoffSpec(PayoffKind.CLAWBACK)
        if self.ordering.debtor_defaults_by_maturity:
            return PayoffSpec(PayoffKind.RECOVERY_B)
        return PayoffSpec(PayoffKind.FULL)


PLAIN_EVENTS: tuple[EventLabel, ...] = (
    EventLabel(Regime.PLAIN, "a", Ordering.A_B_T, False),
    EventLabel(Regime.PLAIN, "b", Ordering.B_A_T, False),
    EventLabel(Regime.PLAIN, "c", Ordering.B_T_A, False),
    EventLabel(Regime.PLAIN, "d", Ordering.T_A_B, False),
    EventLabel(Regime.PLAIN, "e", Ordering.T_B_A, False),
    EventLabel(Regime.PLAIN, "f", Ordering.A_T_B, False),
)

REVOCATORY_EVENTS: tuple[EventLabel, ...] = (
    EventLabel(Regime.REVOCATORY, "a", Ordering.B_A_T, False),
    EventLabel(Regime.REVOCATORY, "b", Ordering.A_B_T, False),
    EventLabel(Regime.REVOCATORY, "c", Ordering.B_T_A, False),
    EventLabel(Regime.REVOCATORY, "d", Ordering.A_T_B, False),
    EventLabel(Regime.REVOCATORY, "e", Ordering.T_B_A, False),
    EventLabel(Regime.REVOCATORY, "f", Ordering.T_A_B, False),
    EventLabel(Regime.REVOCATORY, "g", Ordering.B_A_T, True),
    EventLabel(Regime.REVOCATORY, "h", Ordering.A_B_T, True),
    EventLabel(Regime.REVOCATORY, "i", Ordering.B_T_A, True),
    EventLabel(Regime.REVOCATORY, "l", Ordering.A_T_B, True),
    EventLabel(Regime.REVOCATORY, "m", Ordering.T_B_A, True),
    EventLabel(Regime.REVOCATORY, "n", Ordering.T_A_B, True),
)

_PLAIN_BY_ORDERING = {label.ordering: label for label in PLAIN_EVENTS}
_REVOCATORY_BY_KEY = {
    (label.ordering, label.clawback): label for label in REVOCATORY_EVENTS
}


def events_for(regime: Regime) -> tuple[EventLabel, ...]:
    return PLAIN_EVENTS if regime is Regime.PLAIN else REVOCATORY_EVENTS


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _ordering(tau_a: float, tau_b: float, t: float) -> Ordering:
    if tau_a < tau_b:
        if tau_b < t:
            return Ordering.A_B_T
        return Ordering.A_T_B if tau_a < t else Ordering.T_A_B
    if tau_a < t:
        return Ordering.B_A_T
    return Ordering.B_T_A if tau_b < t else Ordering.T_B_A


def classify(tau_a: float, tau_b: float, terms: DealTerms, regime: Regime) -> EventLabel:
    """Map one default-time pair to its unique event label.

    Exact equality of tau_a with tau_b, of either time with T, or (under the
    revocatory regime) of tau_a with delta is a probability-zero boundary and
    raises TieError; simulation callers re-draw, analytic callers never hit
    it.
    """
    ta = _time(tau_a, "tau_a")
    tb = _time(tau_b, "tau_b")
    t = terms.maturity_t
    delta = terms.suspect_period_delta
    if ta == tb:
        raise TieError(f"tau_a == tau_b == {ta!r}")
    if ta == t or tb == t:
        raise TieError(f"default time equals maturity {t!r}")
    if regime is Regime.REVOCATORY and ta == delta:
        raise TieError(f"tau_a equals suspect period {delta!r}")
    ordering = _ordering(ta, tb, t)
    if regime is Regime.PLAIN:
        return _PLAIN_BY_ORDERING[ordering]
    return _REVOCATORY_BY_KEY[(ordering, ta < delta)]


# ---------------------------------------------------------------------------
# aggregation and pricing by enumeration
# ---------------------------------------------------------------------------


def _validated_probs(event_probs: Mapping[EventLabel, float]) -> dict[EventLabel, float]:
    if not event_probs:
        raise ParameterError("event_probs must not be empty")
    regimes = {label.regime for label in event_probs}
    if len(regimes) != 1:
        raise ParameterError("event_probs mixes labels from different regimes")
    total = 0.0
    for label, p in event_probs.items():
        if not (isinstance(p, (int, float)) and math.isfinite(p) and 0.0 <= p <= 1.0):
            raise ParameterError(f"probability of event ({label.code}) out of range: {p!r}")
        total += p
    if abs(total - 1.0) > EVENT_SUM_TOL:
        raise ParameterError(f"event probabilities must sum to 1, got {total!r}")
    return dict(event_probs)


def aggregate_to_triple(event_probs: Mapping[EventLabel, float]) -> ProbabilityTriple:
    """Collapse per-event probabilities into the three payoff classes.

    Revocatory labels aggregate as (a)+(b)+(c), (d)+(e)+(f), (g)+...+(n);
    plain labels are the special case with zero clawback mass.
    """
    probs = _validated_probs(event_probs)
    by_kind = {kind: 0.0 for kind in PayoffKind}
    for label, p in probs.items():
        by_kind[label.payoff.kind] += p
    return ProbabilityTriple(
        p_debtor_default_no_clawback=by_kind[PayoffKind.RECOVERY_B],
        p_joint_survival=by_kind[PayoffKind.FULL],
        p_clawback=by_kind[PayoffKind.CLAWBACK],
    )


def solve_expected_payoff_fixed_point(
    event_probs: Mapping[EventLabel, float],
    terms: DealTerms,
    model_tag: ModelTag = ModelTag.REVOCATORY_FROM_PROBS,
) -> PriceResult:
    """Solve Price = sum_e P(e) * payoff_e(Price) by direct enumeration.

    Every payoff is affine in the price, so the expectation is too:
    E[payoff] = intercept + slope * Price with slope = (1 + r_a) * P(clawback),
    and the fixed point is intercept / (1 - slope). A slope >= 1 has no
    meaningful solution and raises DegenerateDealError. The price depends on
    the labels only through their payoff class, never on how probability
    mass is split among same-payoff labels.
    """
    probs = _validated_probs(event_probs)
    intercept = 0.0
    slope = 0.0
    for label, p in probs.items():
        b, a = label.payoff.intercept_slope(terms)
        intercept += p * b
        slope += p * a
    denominator = 1.0 - slope
    if denominator <= 0.0:
        raise DegenerateDealError(denominator)
    price = intercept / denominator
    return _result(price, terms.face_value_c, aggregate_to_triple(probs), model_tag)
