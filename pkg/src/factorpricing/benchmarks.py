"""Built-in benchmark deal families with frozen reference prices.

Two parameter families share C = 100, r_a = r_b = 0.2, lambda_b = 0.1 and
sweep theta over 1..5; family 1 uses delta = 0.5, T = 1 (prices quoted to 3
decimals), family 2 uses delta = 1, T = 0.5 (prices quoted to 5 decimals).
Each row carries the debtor-only price and the clawback-aware price for
lambda_a = 0.1 and lambda_a = 0.2.

The frozen values are regression anchors. Note: in family 1 the rows
(theta=2, lambda_a=0.1), (theta=2, lambda_a=0.2) and (theta=4, lambda_a=0.2)
carry last-digit noise of 5.6e-4 .. 9.1e-4 relative to the exact closed form
(they are neither a rounding nor a truncation of it), so a strict half-ulp
comparison cannot pass on those three cells.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pricing import (
    DealTerms,
    PriceResult,
    revocatory_price_closed,
    standard_price_from_intensity,
)

LAMBDA_B = 0.1
FACE_VALUE = 100.0
RECOVERY = 0.2
THETAS = (1.0, 2.0, 3.0, 4.0, 5.0)
LAMBDA_A_COLUMNS = (0.1, 0.2)


@dataclass(frozen=True)
class BenchmarkTable:
    """One benchmark family: deal terms, a theta grid and frozen prices.

    reference maps (theta, lambda_a) to the quoted price, with
    lambda_a = None marking the debtor-only column. decimals is the quote
    precision; tolerance_abs the matching half-unit-in-the-last-place band.
    """

    number: int
    maturity_t: float
    suspect_period_delta: float
    decimals: int
    tolerance_abs: float
    reference: dict[tuple[float, float | None], float]

    def terms(self) -> DealTerms:
        return DealTerms(
            face_value_c=FACE_VALUE,
            maturity_t=self.maturity_t,
            suspect_period_delta=self.suspect_period_delta,
            recovery_a=RECOVERY,
            recovery_b=RECOVERY,
        )

    def compute_cell(self, theta: float, lambda_a: float | None) -> PriceResult:
        if lambda_a is None:
            return standard_price_from_intensity(
                FACE_VALUE, RECOVERY, LAMBDA_B, self.maturity_t
            )
        return revocatory_price_closed(lambda_a, LAMBDA_B, theta, self.terms())

    def cells(self):
        """Yield (theta, lambda_a or None, reference price) row by row."""
        for theta in THETAS:
            for lambda_a in (None, *LAMBDA_A_COLUMNS):
                yield theta, lambda_a, self.reference[(theta, lambda_a)]


TABLE_1 = BenchmarkTable(
    number=1,
    maturity_t=1.0,
    suspect_period_delta=0.5,
    decimals=3,
    tolerance_abs=5e-4,
    reference={
        (1.0, None): 92.387, (1.0, 0.1): 88.164, (1.0, 0.2): 83.629,
        (2.0, None): 92.387, (2.0, 0.1): 91.011, (2.0, 0.2): 88.089,
        (3.0, None): 92.387, (3.0, 0.1): 91.606, (3.0, 0.2): 89.309,
        (4.0, None): 92.387, (4.0, 0.1): 91.796, (4.0, 0.2): 89.873,
        (5.0, None): 92.387, (5.0, 0.1): 91.866, (5.0, 0.2): 90.199,
    },
)

TABLE_2 = BenchmarkTable(
    number=2,
    maturity_t=0.5,
    suspect_period_delta=1.0,
    decimals=5,
    tolerance_abs=5e-6,
    reference={
        (1.0, None): 96.09835, (1.0, 0.1): 87.42007, (1.0, 0.2): 77.38472,
        (2.0, None): 96.09835, (2.0, 0.1): 90.44666, (2.0, 0.2): 80.95348,
        (3.0, None): 96.09835, (3.0, 0.1): 91.07899, (3.0, 0.2): 81.38043,
        (4.0, None): 96.09835, (4.0, 0.1): 91.28085, (4.0, 0.2): 81.45081,
        (5.0, None): 96.09835, (5.0, 0.1): 91.35512, (5.0, 0.2): 81.46387,
    },
)

TABLES = {1: TABLE_1, 2: TABLE_2}
