"""Exception types shared across the package."""

from __future__ import annotations


class FactorPricingError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(FactorPricingError, ValueError):
    """A model parameter or function argument is outside its domain."""


class DensityBoundaryError(ParameterError):
    """Joint density requested on a coordinate axis where it is singular.

    For theta > 1 the density degenerates on {t_a = 0} and {t_b = 0}; callers
    get an explicit error instead of a NaN that would silently poison
    quadrature.
    """


class DegenerateDealError(FactorPricingError):
    """The clawback fixed point has no meaningful solution.

    Raised when 1 - (1 + r_a) * P(clawback) <= 0: expected clawback losses
    exceed what any nonnegative purchase price could absorb, so no finite
    positive price satisfies Price = C * (1 - alpha).
    """

    def __init__(self, denominator: float):
        self.denominator = denominator
        super().__init__(
            f"clawback fixed point is degenerate: denominator "
            f"1 - (1 + r_a) * p_clawback = {denominator:.6g} <= 0"
        )


class TieError(FactorPricingError):
    """A default time exactly equals a classification boundary.

    Ties carry probability zero under the continuous model; samplers re-draw
    the offending pair, analytic callers never hit this.
    """


class ScenarioValidationError(FactorPricingError):
    """A scenario file failed validation; `errors` lists every problem."""

    def __init__(self, errors: list[str], source: str = "scenario"):
        self.errors = list(errors)
        self.source = source
        super().__init__(
            f"{source}: {len(self.errors)} validation error(s):\n  "
            + "\n  ".join(self.errors)
        )
