"""Scenario files and result-row serialization for the CLI.

A scenario is a single JSON document:

    {
      "schema_version": "1",
      "deals": [
        {"id": "acme-q3", "c": 100, "t": 1.0, "delta": 0.5,
         "r_a": 0.2, "r_b": 0.2, "lambda_a": 0.1, "lambda_b": 0.1,
         "theta": 2.0}
      ],
      "mc": {"n_paths": 1000000, "seed": 42, "worker_count": 1}
    }

Each deal carries exactly one of "theta" / "kendall_tau". Validation collects
every problem (not just the first) with a field-precise path such as
"deals[2] (id='x'): lambda_a: must be > 0". The machine-readable schema lives
in docs/scenario.schema.

Result rows serialize to RFC 4180 CSV (fixed column order, CRLF) or to JSON
lines; every numeric field is rendered with 9 significant digits. JSON rows
echo the canonical deal inputs under "inputs", so a results file can be
re-ingested as a scenario.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Any, Optional

from .errors import ParameterError, ScenarioValidationError
from .dependence import THETA_MAX, GumbelDependence
from .pricing import DealTerms

SCHEMA_VERSION = "1"

CSV_HEADER = [
    "id",
    "model_tag",
    "price",
    "implied_alpha",
    "p_default_no_clawback",
    "p_joint_survival",
    "p_clawback",
    "mc_std_error",
    "theta",
    "kendall_tau",
    "c",
    "t",
    "delta",
    "r_a",
    "r_b",
    "lambda_a",
    "lambda_b",
    "error",
]

_MC_FIELDS = {
    "n_paths": (int, lambda v: v >= 1, "must be an integer >= 1"),
    "seed": (int, lambda v: 0 <= v <= 2**64 - 1, "must be an integer in [0, 2^64)"),
    "worker_count": (int, lambda v: v >= 1, "must be an integer >= 1"),
    "confidence_sigmas": (float, lambda v: v > 0, "must be > 0"),
}


@dataclass(frozen=True)
class DealSpec:
    """One validated deal: economic terms plus the default-risk model."""

    deal_id: str
    terms: DealTerms
    lambda_a: float
    lambda_b: float
    dep: GumbelDependence

    def inputs_dict(self) -> dict[str, Any]:
        """Canonical deal-object echo (theta form), valid as scenario input."""
        return {
            "id": self.deal_id,
            "c": self.terms.face_value_c,
            "t": self.terms.maturity_t,
            "delta": self.terms.suspect_period_delta,
            "r_a": self.terms.recovery_a,
            "r_b": self.terms.recovery_b,
            "lambda_a": self.lambda_a,
            "lambda_b": self.lambda_b,
            "theta": self.dep.theta,
        }


@dataclass(frozen=True)
class Scenario:
    deals: tuple[DealSpec, ...]
    mc_overrides: dict[str, Any]


# ---------------------------------------------------------------------------
# parsing / validation
# ---------------------------------------------------------------------------


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _check_field(deal: dict, field: str, errors: list[str], where: str,
                 minimum=None, exclusive_minimum=None, maximum=None,
                 exclusive_maximum=None) -> Optional[float]:
    if field not in deal:
        errors.append(f"{where}: {field}: required field is missing")
        return None
    value = deal[field]
    if not _is_number(value):
        errors.append(f"{where}: {field}: must be a finite number, got {value!r}")
        return None
    if minimum is not None and value < minimum:
        errors.append(f"{where}: {field}: must be >= {minimum}, got {value!r}")
        return None
    if exclusive_minimum is not None and value <= exclusive_minimum:
        errors.append(f"{where}: {field}: must be > {exclusive_minimum}, got {value!r}")
        return None
    if maximum is not None and value > maximum:
        errors.append(f"{where}: {field}: must be <= {maximum}, got {value!r}")
        return None
    if exclusive_maximum is not None and value >= exclusive_maximum:
        errors.append(f"{where}: {field}: must be < {exclusive_maximum}, got {value!r}")
        return None
    return float(value)


_DEAL_FIELDS = {"id", "c", "t", "delta", "r_a", "r_b", "lambda_a", "lambda_b",
                "theta", "kendall_tau"}


def _parse_deal(deal, index: int, errors: list[str]) -> Optional[DealSpec]:
    where = f"deals[{index}]"
    if not isinstance(deal, dict):
        errors.append(f"{where}: must be an object, got {type(deal).__name__}")
        return None
    deal_id = deal.get("id")
    if not isinstance(deal_id, str) or not deal_id:
        errors.append(f"{where}: id: must be a non-empty string")
        deal_id = None
    if deal_id is not None:
        where = f"{where} (id={deal_id!r})"
    for unknown in sorted(set(deal) - _DEAL_FIELDS):
        errors.append(f"{where}: {unknown}: unknown field")

    before = len(errors)
    c = _check_field(deal, "c", errors, where, exclusive_minimum=0.0)
    t = _check_field(deal, "t", errors, where, exclusive_minimum=0.0)
    delta = _check_field(deal, "delta", errors, where, minimum=0.0)
    r_a = _check_field(deal, "r_a", errors, where, minimum=0.0, exclusive_maximum=1.0)
    r_b = _check_field(deal, "r_b", errors, where, minimum=0.0, maximum=1.0)
    lam_a = _check_field(deal, "lambda_a", errors, where, exclusive_minimum=0.0)
    lam_b = _check_field(deal, "lambda_b", errors, where, exclusive_minimum=0.0)

    has_theta = "theta" in deal
    has_tau = "kendall_tau" in deal
    dep = None
    if has_theta == has_tau:
        errors.append(
            f"{where}: exactly one of theta / kendall_tau is required, got "
            + ("both" if has_theta else "neither")
        )
    elif has_theta:
        theta = _check_field(deal, "theta", errors, where, minimum=1.0, maximum=THETA_MAX)
        if theta is not None:
            dep = GumbelDependence(theta)
    else:
        tau = _check_field(deal, "kendall_tau", errors, where,
                           minimum=0.0, exclusive_maximum=1.0)
        if tau is not None:
            try:
                dep = GumbelDependence.from_kendall_tau(tau)
            except ParameterError as exc:
                errors.append(f"{where}: kendall_tau: {exc}")

    if len(errors) > before or deal_id is None or dep is None:
        return None
    return DealSpec(
        deal_id=deal_id,
        terms=DealTerms(
            face_value_c=c,
            maturity_t=t,
            suspect_period_delta=delta,
            recovery_a=r_a,
            recovery_b=r_b,
        ),
        lambda_a=lam_a,
        lambda_b=lam_b,
        dep=dep,
    )


def parse_scenario(document, source: str = "scenario") -> Scenario:
    """Validate a decoded scenario document, collecting every error."""
    errors: list[str] = []
    if not isinstance(document, dict):
        raise ScenarioValidationError(
            [f"top level: must be an object, got {type(document).__name__}"], source
        )
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        errors.append(
            f"schema_version: expected {SCHEMA_VERSION!r}, got {version!r}"
        )
    for unknown in sorted(set(document) - {"schema_version", "deals", "mc"}):
        errors.append(f"top level: {unknown}: unknown field")

    deals: list[DealSpec] = []
    raw_deals = document.get("deals")
    if not isinstance(raw_deals, list) or not raw_deals:
        errors.append("deals: must be a non-empty array")
    else:
        seen: set[str] = set()
        for index, raw in enumerate(raw_deals):
            spec = _parse_deal(raw, index, errors)
            if spec is not None:
                if spec.deal_id in seen:
                    errors.append(f"deals[{index}]: id: duplicate id {spec.deal_id!r}")
                else:
                    seen.add(spec.deal_id)
                    deals.append(spec)

    mc_overrides: dict[str, Any] = {}
    raw_mc = document.get("mc", {})
    if not isinstance(raw_mc, dict):
        errors.append("mc: must be an object")
    else:
        for key, value in raw_mc.items():
            if key not in _MC_FIELDS:
                errors.append(f"mc: {key}: unknown field")
                continue
            kind, check, message = _MC_FIELDS[key]
            numeric = _is_number(value) and (kind is not int or isinstance(value, int))
            if not numeric or not check(value):
                errors.append(f"mc: {key}: {message}, got {value!r}")
            else:
                mc_overrides[key] = kind(value)

    if errors:
        raise ScenarioValidationError(errors, source)
    return Scenario(deals=tuple(deals), mc_overrides=mc_overrides)


def load_scenario(path: str) -> Scenario:
    """Read and validate a scenario JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as exc:
        raise ScenarioValidationError([f"cannot read file: {exc}"], path) from exc
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError(
            [f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"], path
        ) from exc
    return parse_scenario(document, source=path)


# ---------------------------------------------------------------------------
# result rows
# ---------------------------------------------------------------------------


def format_number(value: Optional[float]) -> str:
    """Locale-independent rendering with 9 significant digits."""
    if value is None:
        return ""
    return f"{value:.9g}"


@dataclass(frozen=True)
class ResultRow:
    """One output row: a (deal, model) pricing or a per-row error."""

    deal_id: str
    model_tag: str
    inputs: dict[str, Any]
    price: Optional[float] = None
    implied_alpha: Optional[float] = None
    p_default_no_clawback: Optional[float] = None
    p_joint_survival: Optional[float] = None
    p_clawback: Optional[float] = None
    mc_std_error: Optional[float] = None
    error: Optional[str] = None

    def csv_record(self) -> list[str]:
        inputs = self.inputs
        theta = inputs.get("theta")
        return [
            self.deal_id,
            self.model_tag,
            format_number(self.price),
            format_number(self.implied_alpha),
            format_number(self.p_default_no_clawback),
            format_number(self.p_joint_survival),
            format_number(self.p_clawback),
            format_number(self.mc_std_error),
            format_number(theta),
            format_number(None if theta is None else 1.0 - 1.0 / theta),
            format_number(inputs.get("c")),
            format_number(inputs.get("t")),
            format_number(inputs.get("delta")),
            format_number(inputs.get("r_a")),
            format_number(inputs.get("r_b")),
            format_number(inputs.get("lambda_a")),
            format_number(inputs.get("lambda_b")),
            self.error or "",
        ]

    def json_object(self) -> dict[str, Any]:
        def num(value):
            return None if value is None else float(format_number(value))

        theta = self.inputs.get("theta")
        inputs = {
            key: (value if key == "id" else num(value))
            for key, value in self.inputs.items()
        }
        return {
            "id": self.deal_id,
            "model_tag": self.model_tag,
            "price": num(self.price),
            "implied_alpha": num(self.implied_alpha),
            "p_default_no_clawback": num(self.p_default_no_clawback),
            "p_joint_survival": num(self.p_joint_survival),
            "p_clawback": num(self.p_clawback),
            "mc_std_error": num(self.mc_std_error),
            "theta": num(theta),
            "kendall_tau": num(None if theta is None else 1.0 - 1.0 / theta),
            "inputs": inputs,
            "error": self.error,
        }


def render_csv(rows: list[ResultRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_record())
    return buffer.getvalue()


def render_jsonl(rows: list[ResultRow]) -> str:
    return "".join(
        json.dumps(row.json_object(), ensure_ascii=True, sort_keys=False) + "\n"
        for row in rows
    )
