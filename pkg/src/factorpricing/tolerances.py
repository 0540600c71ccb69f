"""Single source for the numeric tolerances used by tests and the CLI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance constants shared by the property tests and the MC checks.

    rel_algebraic: relative tolerance for algebraic identities between two
        closed-form evaluation routes.
    mc_sigmas: default number of standard errors for MC vs closed-form
        agreement.
    partition_abs: absolute slack for "probabilities sum to one" checks on
        telescoping closed forms and count-based frequencies.
    marginal_abs: absolute slack for marginal-consistency identities of the
        joint survival function.
    comonotonic_abs: absolute slack for the large-theta comonotonic limit.
    density_fd_rel: relative tolerance between the joint density and the
        mixed finite difference of the joint CDF.
    quadrature_abs: absolute tolerance between 2-D quadrature of the density
        and the joint CDF.
    table1_abs / table2_abs: absolute tolerances for the two built-in
        benchmark tables (matching their 3- and 5-decimal quotes).
    kendall_abs: absolute tolerance for empirical Kendall tau at 1e6 pairs.
    """

    rel_algebraic: float = 1e-12
    mc_sigmas: float = 4.0
    partition_abs: float = 1e-15
    marginal_abs: float = 1e-14
    comonotonic_abs: float = 1e-8
    density_fd_rel: float = 1e-4
    quadrature_abs: float = 1e-6
    table1_abs: float = 5e-4
    table2_abs: float = 5e-6
    kendall_abs: float = 5e-3


TOLERANCES = Tolerances()
