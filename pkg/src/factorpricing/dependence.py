"""Bivariate exponential default times with Gumbel survival dependence.

Each obligor defaults at an exponential time: P(tau > t) = exp(-lambda * t)
with a constant hazard rate lambda. The two times are coupled on the survival
side so that

    P(tau_a > t_a, tau_b > t_b)
        = exp(-((lambda_a * t_a)**theta + (lambda_b * t_b)**theta)**(1/theta))

with dependence parameter theta >= 1. theta = 1 factorizes into independent
exponentials, theta -> inf approaches the comonotonic pair, and Kendall's tau
of the pair is 1 - 1/theta. The copula is continuous, so simultaneous
defaults have probability zero.

Sampling uses the Archimedean frailty construction: draw a positive
(1/theta)-stable variable S (Kanter's exact method), two independent unit
exponentials E1, E2, and set tau_i = (E_i / S)**(1/theta) / lambda_i. This is
exact, rejection-free and O(1) per pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DensityBoundaryError, ParameterError

# Dependence parameters above this are numerically indistinguishable from the
# comonotonic limit and break Kendall-tau round-tripping.
THETA_MAX = 1e6


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MarginalIntensity:
    """Constant default intensity (hazard rate) of one obligor, in 1/year.

    Survival is exponential: P(tau > t) = exp(-lam * t). A calibrated
    marginal must have lam > 0; evaluation functions separately accept a raw
    rate of 0.0 as an exact no-default limit.
    """

    lam: float

    def __post_init__(self):
        if not (isinstance(self.lam, (int, float)) and math.isfinite(self.lam)):
            raise ParameterError(f"intensity must be a finite number, got {self.lam!r}")
        if self.lam <= 0.0:
            raise ParameterError(f"intensity must be > 0, got {self.lam!r}")

    def survival(self, t: float) -> float:
        """P(tau > t)."""
        return math.exp(-self.lam * _time(t, "t"))

    def default_probability(self, t: float) -> float:
        """P(tau < t) = 1 - exp(-lam * t)."""
        return -math.expm1(-self.lam * _time(t, "t"))


@dataclass(frozen=True)
class GumbelDependence:
    """Survival-copula dependence parameter theta in [1, THETA_MAX]."""

    theta: float

    def __post_init__(self):
        if not (isinstance(self.theta, (int, float)) and math.isfinite(self.theta)):
            raise ParameterError(f"theta must be a finite number, got {self.theta!r}")
        if not 1.0 <= self.theta <= THETA_MAX:
            raise ParameterError(
                f"theta must lie in [1, {THETA_MAX:g}], got {self.theta!r}"
            )

    @property
    def kendall_tau(self) -> float:
        return kendall_tau_from_theta(self.theta)

    @classmethod
    def from_kendall_tau(cls, tau: float) -> "GumbelDependence":
        return cls(theta_from_kendall_tau(tau))


@dataclass(frozen=True)
class DefaultTimePair:
    """One sampled pair of default times, in years."""

    tau_a: float
    tau_b: float

    def __post_init__(self):
        for name, value in (("tau_a", self.tau_a), ("tau_b", self.tau_b)):
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ParameterError(f"{name} must be finite, got {value!r}")
            if value < 0.0:
                raise ParameterError(f"{name} must be >= 0, got {value!r}")


# ---------------------------------------------------------------------------
# argument coercion
# ---------------------------------------------------------------------------


def _rate(value, name: str) -> float:
    """Accept a MarginalIntensity or a raw rate >= 0 (0 = no-default limit)."""
    if isinstance(value, MarginalIntensity):
        return value.lam
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise ParameterError(f"{name} must be finite, got {value!r}")
    if value < 0.0:
        raise ParameterError(f"{name} must be >= 0, got {value!r}")
    return float(value)


def _theta(value) -> float:
    if isinstance(value, GumbelDependence):
        return value.theta
    return GumbelDependence(value).theta


def _time(value, name: str) -> float:
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise ParameterError(f"{name} must be finite, got {value!r}")
    if value < 0.0:
        raise ParameterError(f"{name} must be >= 0, got {value!r}")
    return float(value)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def theta_power_mean(a: float, b: float, theta) -> float:
    """(a**theta + b**theta)**(1/theta) for a, b >= 0 and theta >= 1.

    Computed as m * (1 + (min/max)**theta)**(1/theta) with the inner term in
    log space, so it neither overflows nor loses the dominant argument for
    large theta. The value decreases monotonically in theta from a + b down
    to max(a, b), which it approaches from above.
    """
    th = _theta(theta)
    a = _time(a, "a")
    b = _time(b, "b")
    if a == 0.0:
        return b
    if b == 0.0:
        return a
    if th == 1.0:
        return a + b
    m, lo = (a, b) if a >= b else (b, a)
    t = th * math.log(lo / m)  # <= 0
    return m * math.exp(math.log1p(math.exp(t)) / th)


def joint_survival(t_a: float, t_b: float, lam_a, lam_b, dep) -> float:
    """P(tau_a > t_a, tau_b > t_b) = exp(-theta_power_mean(la*ta, lb*tb, theta))."""
    ra = _rate(lam_a, "lam_a")
    rb = _rate(lam_b, "lam_b")
    return math.exp(
        -theta_power_mean(ra * _time(t_a, "t_a"), rb * _time(t_b, "t_b"), dep)
    )


def joint_cdf(t_a: float, t_b: float, lam_a, lam_b, dep) -> float:
    """P(tau_a < t_a, tau_b < t_b).

    By inclusion-exclusion on the joint survival function:
    S(t_a, t_b) - S_a(t_a) + 1 - S_b(t_b). The term grouping below cancels
    exactly on the axes, where the CDF is identically zero.
    """
    ra = _rate(lam_a, "lam_a")
    rb = _rate(lam_b, "lam_b")
    ta = _time(t_a, "t_a")
    tb = _time(t_b, "t_b")
    s_joint = math.exp(-theta_power_mean(ra * ta, rb * tb, dep))
    s_a = math.exp(-ra * ta)
    s_b = math.exp(-rb * tb)
    value = (s_joint - s_a) + (1.0 - s_b)
    return min(1.0, max(0.0, value))


def joint_density(t_a: float, t_b: float, lam_a, lam_b, dep) -> float:
    """Joint density of (tau_a, tau_b) on the open positive quadrant.

    With u = lam_a*t_a, v = lam_b*t_b and M = theta_power_mean(u, v, theta):

        f = lam_a * lam_b * (theta - 1 + M) * exp(-M)
            * (u/M)**(theta-1) * (v/M)**(theta-1) / M

    The ratio form keeps every power in (0, 1], so the evaluation cannot
    overflow for large theta. For theta > 1 the density is singular or
    degenerate on the axes; evaluation at t_a = 0 or t_b = 0 raises
    DensityBoundaryError rather than returning a NaN.
    """
    ra = _rate(lam_a, "lam_a")
    rb = _rate(lam_b, "lam_b")
    th = _theta(dep)
    ta = _time(t_a, "t_a")
    tb = _time(t_b, "t_b")
    if th > 1.0 and (ta == 0.0 or tb == 0.0):
        raise DensityBoundaryError(
            f"density is not defined on the axes for theta > 1, got "
            f"(t_a, t_b) = ({ta!r}, {tb!r})"
        )
    u = ra * ta
    v = rb * tb
    if th == 1.0:
        return ra * rb * math.exp(-(u + v))
    if u == 0.0 or v == 0.0:  # a zero rate: no density mass at finite times
        return 0.0
    m = theta_power_mean(u, v, th)
    return (
        ra
        * rb
        * (th - 1.0 + m)
        * math.exp(-m)
        * (u / m) ** (th - 1.0)
        * (v / m) ** (th - 1.0)
        / m
    )


def kendall_tau_from_theta(theta) -> float:
    """Kendall's tau of the pair: 1 - 1/theta, in [0, 1)."""
    return 1.0 - 1.0 / _theta(theta)


def theta_from_kendall_tau(tau: float) -> float:
    """Inverse of kendall_tau_from_theta; rejects tau outside [0, 1)."""
    if not (isinstance(tau, (int, float)) and math.isfinite(tau)):
        raise ParameterError(f"kendall_tau must be finite, got {tau!r}")
    if not 0.0 <= tau < 1.0:
        raise ParameterError(
            f"kendall_tau must lie in [0, 1) (the comonotonic limit tau = 1 "
            f"has no finite theta), got {tau!r}"
        )
    theta = 1.0 / (1.0 - tau)
    if theta > THETA_MAX:
        raise ParameterError(
            f"kendall_tau = {tau!r} implies theta > {THETA_MAX:g}"
        )
    return theta


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def sample_default_time_arrays(lam_a, lam_b, dep, n: int, rng: np.random.Generator):
    """Draw n correlated default-time pairs as two float arrays.

    Zero rates are accepted and yield +inf in the corresponding column
    (the obligor never defaults); callers that need finite times replace the
    infinities with a beyond-horizon sentinel. Draw order per call is fixed:
    for theta > 1 it is uniform(0, pi; n), exponential(n) three times; for
    theta = 1 it is exponential(n) twice.
    """
    ra = _rate(lam_a, "lam_a")
    rb = _rate(lam_b, "lam_b")
    th = _theta(dep)
    if not (isinstance(n, (int, np.integer)) and n >= 0):
        raise ParameterError(f"n must be a nonnegative integer, got {n!r}")
    with np.errstate(divide="ignore"):
        if th == 1.0:
            e1 = rng.standard_exponential(n)
            e2 = rng.standard_exponential(n)
            return e1 / ra, e2 / rb
        alpha = 1.0 / th
        angle = rng.uniform(0.0, math.pi, n)
        w = rng.standard_exponential(n)
        e1 = rng.standard_exponential(n)
        e2 = rng.standard_exponential(n)
        # Kanter's representation of the positive stable law with Laplace
        # transform exp(-s**alpha), kept in log space.
        log_s = (
            np.log(np.sin(alpha * angle))
            - th * np.log(np.sin(angle))
            + (th - 1.0) * (np.log(np.sin((1.0 - alpha) * angle)) - np.log(w))
        )
        tau_a = np.exp((np.log(e1) - log_s) / th) / ra
        tau_b = np.exp((np.log(e2) - log_s) / th) / rb
        return tau_a, tau_b


def sample_pair(lam_a, lam_b, dep, rng: np.random.Generator) -> DefaultTimePair:
    """Draw one correlated pair of default times.

    Requires strictly positive intensities (a calibrated model); exact
    floating-point ties tau_a == tau_b are broken by re-drawing the pair,
    deterministically given the generator state.
    """
    ra = _rate(lam_a, "lam_a")
    rb = _rate(lam_b, "lam_b")
    if ra == 0.0 or rb == 0.0:
        raise ParameterError("sample_pair needs lam > 0 for both obligors")
    while True:
        ta, tb = sample_default_time_arrays(ra, rb, dep, 1, rng)
        if ta[0] != tb[0]:
            return DefaultTimePair(float(ta[0]), float(tb[0]))
