"""Command-line front end.

Subcommands:

* ``price``  — price every deal of a scenario file with the closed forms,
  optionally adding Monte Carlo rows (``--mc``).
* ``tables`` — render a built-in benchmark table (``--table 1|2``), optionally
  cross-checking every cell against the simulator (``--mc-check``).
* ``sweep``  — sweep one parameter of a deal over a grid and emit one row per
  grid point, with a monotonicity summary on stderr.

Row output is RFC 4180 CSV (default) or JSON lines (``--out json``), written
to stdout or ``--output FILE``. Exit codes: 0 success, 2 validation failure,
3 at least one degenerate deal (rows for the other deals are still emitted),
4 MC disagreement in ``tables --mc-check``.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

import numpy as np

from .benchmarks import LAMBDA_A_COLUMNS, LAMBDA_B, TABLES
from .dependence import THETA_MAX, GumbelDependence
from .errors import DegenerateDealError, ScenarioValidationError
from .montecarlo import McConfig, McPriceResult, mc_price, mc_standard_price
from .pricing import (
    PriceResult,
    revocatory_price_closed,
    standard_price_from_intensity,
)
from .scenario import DealSpec, ResultRow, load_scenario, render_csv, render_jsonl

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3
EXIT_MC_CHECK = 4

_MC_DEFAULTS = dict(n_paths=1_000_000, seed=42, worker_count=1, confidence_sigmas=4.0)


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ScenarioValidationError as exc:
        print(f"{exc.source}: invalid scenario:", file=sys.stderr)
        for message in exc.errors:
            print(f"  {message}", file=sys.stderr)
        return EXIT_VALIDATION


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorpricing",
        description="Pricing for non-recourse invoice factoring with "
        "correlated seller/debtor default risk and clawback exposure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    price = sub.add_parser("price", help="price the deals of a scenario file")
    price.add_argument("scenario", help="path to a scenario JSON file")
    price.add_argument("--model", choices=["standard", "revocatory", "both"],
                       default="both")
    price.add_argument("--mc", action="store_true",
                       help="add Monte Carlo rows next to the closed forms")
    _add_output_flags(price)
    _add_mc_flags(price)
    price.set_defaults(handler=_cmd_price)

    tables = sub.add_parser("tables", help="render a built-in benchmark table")
    tables.add_argument("--table", type=int, choices=sorted(TABLES), required=True)
    tables.add_argument("--mc-check", action="store_true",
                        help="append an MC agreement column per cell")
    _add_mc_flags(tables)
    tables.set_defaults(handler=_cmd_tables)

    sweep = sub.add_parser("sweep", help="sweep one parameter of a deal")
    sweep.add_argument("scenario", help="path to the base scenario JSON file")
    sweep.add_argument("--param", required=True,
                       choices=["theta", "lambda_a", "lambda_b", "delta", "t"])
    sweep.add_argument("--from", dest="start", type=float, required=True)
    sweep.add_argument("--to", dest="stop", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--deal", help="deal id to sweep (required when the "
                       "scenario has several deals)")
    _add_output_flags(sweep)
    sweep.set_defaults(handler=_cmd_sweep)
    return parser


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", choices=["csv", "json"], default="csv",
                        help="row format (default csv)")
    parser.add_argument("--output", metavar="FILE",
                        help="write rows to FILE instead of stdout")


def _add_mc_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="simulation seed (default 42)")
    parser.add_argument("--paths", type=int, help="simulation paths (default 1000000)")
    parser.add_argument("--workers", type=int,
                        help="RNG block count (default 1); results depend on it")
    parser.add_argument("--sigmas", type=float,
                        help="acceptance band in standard errors (default 4)")


def _resolve_mc_config(overrides: dict, args) -> McConfig:
    params = dict(_MC_DEFAULTS)
    params.update(overrides)
    if getattr(args, "paths", None) is not None:
        params["n_paths"] = args.paths
    if getattr(args, "seed", None) is not None:
        params["seed"] = args.seed
    if getattr(args, "workers", None) is not None:
        params["worker_count"] = args.workers
    if getattr(args, "sigmas", None) is not None:
        params["confidence_sigmas"] = args.sigmas
    return McConfig(**params)


def _write_rows(rows: list[ResultRow], args) -> None:
    text = render_csv(rows) if args.out == "csv" else render_jsonl(rows)
    if args.output:
        with open(args.output, "w", newline="", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# price
# ---------------------------------------------------------------------------


def _row(deal: DealSpec, result: PriceResult, mc: Optional[McPriceResult] = None,
         inputs: Optional[dict] = None) -> ResultRow:
    triple = result.triple
    return ResultRow(
        deal_id=deal.deal_id,
        model_tag=result.model_tag.value,
        inputs=inputs if inputs is not None else deal.inputs_dict(),
        price=result.price,
        implied_alpha=result.implied_discount_alpha,
        p_default_no_clawback=triple.p_debtor_default_no_clawback,
        p_joint_survival=triple.p_joint_survival,
        p_clawback=triple.p_clawback,
        mc_std_error=None if mc is None else mc.estimate.std_error,
    )


def _error_row(deal: DealSpec, model_tag: str, exc: Exception,
               inputs: Optional[dict] = None) -> ResultRow:
    return ResultRow(
        deal_id=deal.deal_id,
        model_tag=model_tag,
        inputs=inputs if inputs is not None else deal.inputs_dict(),
        error=f"degenerate_deal: {exc}",
    )


def _cmd_price(args) -> int:
    scenario = load_scenario(args.scenario)
    cfg = _resolve_mc_config(scenario.mc_overrides, args)
    want_standard = args.model in ("standard", "both")
    want_revocatory = args.model in ("revocatory", "both")

    rows: list[ResultRow] = []
    degenerate = False
    for deal in scenario.deals:
        if want_standard:
            closed = standard_price_from_intensity(
                deal.terms.face_value_c, deal.terms.recovery_b,
                deal.lambda_b, deal.terms.maturity_t,
            )
            rows.append(_row(deal, closed))
        if want_revocatory:
            try:
                closed = revocatory_price_closed(
                    deal.lambda_a, deal.lambda_b, deal.dep, deal.terms
                )
                rows.append(_row(deal, closed))
            except DegenerateDealError as exc:
                rows.append(_error_row(deal, "revocatory_closed", exc))
                degenerate = True
        if args.mc:
            if want_standard:
                mc = mc_standard_price(deal.lambda_b, deal.terms, cfg)
                rows.append(_row(deal, mc.result, mc))
            if want_revocatory:
                try:
                    mc = mc_price(deal.lambda_a, deal.lambda_b, deal.dep,
                                  deal.terms, cfg)
                    rows.append(_row(deal, mc.result, mc))
                except DegenerateDealError as exc:
                    rows.append(_error_row(deal, "revocatory_mc", exc))
                    degenerate = True

    _write_rows(rows, args)
    return EXIT_DEGENERATE if degenerate else EXIT_OK


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


def _use_color(stream) -> bool:
    return (
        os.environ.get("NO_COLOR") is None
        and hasattr(stream, "isatty")
        and stream.isatty()
    )


def _paint(text: str, code: str, enabled: bool) -> str:
    return f"\x1b[{code}m{text}\x1b[0m" if enabled else text


def _cmd_tables(args) -> int:
    table = TABLES[args.table]
    cfg = _resolve_mc_config({}, args)
    color = _use_color(sys.stdout)
    decimals = table.decimals

    headers = ["theta", "tau_K", f"lambda_b={LAMBDA_B:g}"] + [
        f"lambda_b={LAMBDA_B:g} lambda_a={lam:g}" for lam in LAMBDA_A_COLUMNS
    ]
    check_failed = False
    mc_cache: dict[tuple[float, Optional[float]], McPriceResult] = {}

    def mc_cell(theta: float, lambda_a: Optional[float]) -> McPriceResult:
        # The debtor-only column does not depend on theta: one run serves
        # every row.
        key = (0.0, None) if lambda_a is None else (theta, lambda_a)
        if key not in mc_cache:
            if lambda_a is None:
                mc_cache[key] = mc_standard_price(LAMBDA_B, table.terms(), cfg)
            else:
                mc_cache[key] = mc_price(
                    lambda_a, LAMBDA_B, GumbelDependence(theta), table.terms(), cfg
                )
        return mc_cache[key]

    lines = []
    for theta in sorted({t for t, _, _ in table.cells()}):
        cells = [f"{theta:g}", f"{1.0 - 1.0 / theta:.2f}"]
        for lambda_a in (None, *LAMBDA_A_COLUMNS):
            closed = table.compute_cell(theta, lambda_a).price
            cell = f"{closed:.{decimals}f}"
            if args.mc_check:
                mc = mc_cell(theta, lambda_a)
                gap = abs(mc.estimate.value - closed)
                ratio = gap / mc.estimate.std_error if mc.estimate.std_error > 0 else 0.0
                ok = ratio <= cfg.confidence_sigmas
                check_failed = check_failed or not ok
                verdict = _paint("ok" if ok else "FAIL", "32" if ok else "31", color)
                cell += f" [{ratio:.2f}se {verdict}]"
            cells.append(cell)
        lines.append(cells)

    widths = [max(len(header), *(len(line[i]) for line in lines))
              for i, header in enumerate(headers)]
    def fmt(parts):
        return "  ".join(part.ljust(width) for part, width in zip(parts, widths)).rstrip()

    print(fmt(headers))
    print(fmt(["-" * w for w in widths]))
    for line in lines:
        print(fmt(line))
    if args.mc_check:
        print(
            f"mc-check: n_paths={cfg.n_paths} seed={cfg.seed} "
            f"workers={cfg.worker_count} band={cfg.confidence_sigmas:g} SE: "
            + ("FAIL" if check_failed else "all cells agree"),
        )
    return EXIT_MC_CHECK if args.mc_check and check_failed else EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

_SWEEP_DOMAINS = {
    "theta": (1.0, THETA_MAX, "theta must lie in [1, 1e6]"),
    "lambda_a": (0.0, float("inf"), "lambda_a must be >= 0"),
    "lambda_b": (0.0, float("inf"), "lambda_b must be >= 0"),
    "delta": (0.0, float("inf"), "delta must be >= 0"),
    "t": (None, float("inf"), "t must be > 0"),
}


def _cmd_sweep(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.deal is not None:
        matches = [d for d in scenario.deals if d.deal_id == args.deal]
        if not matches:
            print(f"sweep: no deal with id {args.deal!r}", file=sys.stderr)
            return EXIT_VALIDATION
        deal = matches[0]
    elif len(scenario.deals) == 1:
        deal = scenario.deals[0]
    else:
        print("sweep: scenario has several deals, select one with --deal",
              file=sys.stderr)
        return EXIT_VALIDATION

    if args.steps < 2:
        print("sweep: --steps must be >= 2", file=sys.stderr)
        return EXIT_VALIDATION
    low, _high, message = _SWEEP_DOMAINS[args.param]
    for value in (args.start, args.stop):
        inside = value > 0.0 if low is None else low <= value <= _high
        if not inside:
            print(f"sweep: {message}, got {value!r}", file=sys.stderr)
            return EXIT_VALIDATION

    grid = np.linspace(args.start, args.stop, args.steps)
    rows: list[ResultRow] = []
    prices: list[float] = []
    degenerate = False
    for value in grid:
        inputs = deal.inputs_dict()
        inputs[args.param] = float(value)
        lam_a = inputs["lambda_a"]
        lam_b = inputs["lambda_b"]
        theta = inputs["theta"]
        terms = deal.terms
        if args.param in ("delta", "t"):
            terms = type(terms)(
                face_value_c=terms.face_value_c,
                maturity_t=inputs["t"],
                suspect_period_delta=inputs["delta"],
                recovery_a=terms.recovery_a,
                recovery_b=terms.recovery_b,
            )
        try:
            result = revocatory_price_closed(lam_a, lam_b, theta, terms)
            rows.append(_row(deal, result, inputs=inputs))
            prices.append(result.price)
        except DegenerateDealError as exc:
            rows.append(_error_row(deal, "revocatory_closed", exc, inputs=inputs))
            degenerate = True

    _write_rows(rows, args)
    if len(prices) >= 2:
        diffs = np.diff(prices)
        slack = 1e-12 * max(1.0, max(abs(p) for p in prices))
        nondecreasing = bool(np.all(diffs >= -slack))
        nonincreasing = bool(np.all(diffs <= slack))
    else:
        nondecreasing = nonincreasing = True
    print(
        f"sweep {args.param} [{args.start:g}, {args.stop:g}] x{args.steps}: "
        f"priced={len(prices)} degenerate={args.steps - len(prices)} "
        f"nondecreasing={nondecreasing} nonincreasing={nonincreasing}",
        file=sys.stderr,
    )
    return EXIT_DEGENERATE if degenerate else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
