"""JSON report documents (schema "ns-bound/1") and their human-readable rendering."""

import json
from fractions import Fraction
from typing import Any, Optional

from jsonschema import Draft202012Validator as validator

from nsbound.bounds import BoundReport
from nsbound.directed import Interval, decimal_down, decimal_up
from nsbound.gotzmann import GotzmannDecomposition
from nsbound.groebner import SmoothnessStatus
from nsbound.hilbert import HilbertPolynomial, VarietyInvariants
from nsbound.tower import TowerNumber, fraction_text
from nsbound.verify import VerificationOutcome, VerificationRun

SCHEMA_ID = "ns-bound/1"

_DYADIC = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}

JSON_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": SCHEMA_ID,
    "type": "object",
    "required": ["schema", "kind"],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "kind": {"enum": ["invariants", "bound", "gotzmann", "verify"]},
        "bounds": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["value", "formula"],
                "properties": {
                    "value": {
                        "anyOf": [
                            {"$ref": "#/$defs/number"},
                            {"type": ["integer", "boolean", "string", "object"]},
                        ]
                    },
                    "formula": {"type": "string"},
                    "display": {"type": "string"},
                },
            },
        },
        "warnings": {"type": "array", "items": {"type": "string"}},
        "outcomes": {"type": "array", "items": {"$ref": "#/$defs/outcome"}},
        "discrepancies": {"type": "array", "items": {"$ref": "#/$defs/outcome"}},
        "phi": {"type": "integer", "minimum": 1},
        "decomposition": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
    "$defs": {
        "number": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["kind", "decimal"],
                    "properties": {
                        "kind": {"const": "exact"},
                        "decimal": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
                    },
                },
                {
                    "type": "object",
                    "required": ["kind", "value", "rounding", "dyadic", "precision"],
                    "properties": {
                        "kind": {"const": "log2"},
                        "value": {"type": "string"},
                        "rounding": {"const": "up"},
                        "dyadic": {"$ref": "#/$defs/dyadic_pair"},
                        "precision": {"type": "integer"},
                    },
                },
                {
                    "type": "object",
                    "required": ["kind", "base", "inner_base", "inner_exp", "dyadic", "precision"],
                    "properties": {
                        "kind": {"const": "tower"},
                        "base": {"const": 2},
                        "inner_base": {"type": "integer", "minimum": 2},
                        "inner_exp": {"type": "string"},
                        "rounding": {"const": "up"},
                        "dyadic": {"$ref": "#/$defs/dyadic_pair"},
                        "precision": {"type": "integer"},
                    },
                },
                {
                    "type": "object",
                    "required": ["kind", "lo", "hi"],
                    "properties": {
                        "kind": {"const": "interval"},
                        "lo": {"type": "string"},
                        "hi": {"type": "string"},
                        "rounding": {"const": "outward"},
                    },
                },
            ]
        },
        "dyadic_pair": {
            "type": "object",
            "required": ["lo", "hi"],
            "properties": {"lo": _DYADIC, "hi": _DYADIC},
        },
        "outcome": {
            "type": "object",
            "required": ["check", "params", "holds"],
            "properties": {
                "check": {"type": "string"},
                "params": {"type": "object"},
                "holds": {"type": "boolean"},
                "left": {"anyOf": [{"$ref": "#/$defs/number"}, {"type": "null"}]},
                "right": {"anyOf": [{"$ref": "#/$defs/number"}, {"type": "null"}]},
                "margin_log2": {"anyOf": [{"$ref": "#/$defs/number"}, {"type": "null"}]},
                "note": {"type": ["string", "null"]},
                "details": {"type": "array"},
            },
        },
    },
}

_NUMBER_KINDS = ("exact", "log2", "tower")

# wider ints are written as exact number objects
_INT_BITS = 4096


# --- encoding -----------------------------------------------------------------------


def interval_json(value: Interval) -> dict[str, Any]:
    return {
        "kind": "interval",
        "lo": decimal_down(value.lo),
        "hi": decimal_up(value.hi),
        "rounding": "outward",
    }


def encode_value(value: Any) -> Any:
    if isinstance(value, TowerNumber):
        return value.to_json()
    if isinstance(value, Interval):
        return interval_json(value)
    if isinstance(value, Fraction) or (
        isinstance(value, int) and not isinstance(value, bool) and value.bit_length() > _INT_BITS
    ):
        return {"kind": "exact", "decimal": fraction_text(Fraction(value))}
    if isinstance(value, dict):
        return {key: encode_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(item) for item in value]
    return value


def decode_value(data: Any) -> Any:
    if isinstance(data, dict) and data.get("kind") in _NUMBER_KINDS:
        return TowerNumber.from_json(data)
    return data


def _side(value: Any) -> Optional[dict[str, Any]]:
    if value is None:
        return None
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return {"kind": "exact", "decimal": fraction_text(Fraction(value))}
    return encode_value(value)


def _smoothness(status: Optional[SmoothnessStatus]) -> Optional[str]:
    return status.value if status is not None else None


def invariants_document(
    inv: VarietyInvariants, smoothness: Optional[SmoothnessStatus] = None
) -> dict[str, Any]:
    doc = {"schema": SCHEMA_ID, "kind": "invariants"}
    doc.update(inv.to_dict())
    if smoothness is not None:
        doc["smoothness"] = _smoothness(smoothness)
    return doc


def bound_document(report: BoundReport) -> dict[str, Any]:
    inputs = report.invariants.to_dict()
    inputs["smoothness"] = _smoothness(report.smoothness)
    doc: dict[str, Any] = {"schema": SCHEMA_ID, "kind": "bound"}
    if report.degenerate:
        doc["degenerate"] = report.degenerate
        doc["bound"] = 1
    doc["paper_faithful"] = report.paper_faithful
    doc["inputs"] = inputs
    doc["hypotheses"] = dict(report.hypotheses)
    bounds = {}
    for key, entry in report.entries.items():
        item = {"value": encode_value(entry.value), "formula": entry.formula}
        if isinstance(entry.value, TowerNumber):
            item["display"] = entry.value.human()
        bounds[key] = item
    doc["bounds"] = bounds
    doc["warnings"] = list(report.warnings)
    return doc


def gotzmann_document(
    Q: HilbertPolynomial, decomposition: GotzmannDecomposition, source: str = "hp"
) -> dict[str, Any]:
    doc = {
        "schema": SCHEMA_ID,
        "kind": "gotzmann",
        "source": source,
        "hp": Q.to_text(),
        "hp_binomial": Q.binomial_text(),
    }
    doc.update(decomposition.to_dict())
    return doc


def outcome_dict(outcome: VerificationOutcome) -> dict[str, Any]:
    return {
        "check": outcome.check,
        "params": dict(outcome.params),
        "holds": outcome.holds,
        "left": _side(outcome.left),
        "right": _side(outcome.right),
        "margin_log2": interval_json(outcome.margin_log2) if outcome.margin_log2 else None,
        "note": outcome.note,
        "details": list(outcome.details),
    }


def verify_document(run: VerificationRun) -> dict[str, Any]:
    grid = run.grid
    return {
        "schema": SCHEMA_ID,
        "kind": "verify",
        "grid": {
            "r": list(grid.r_range),
            "d": list(grid.d_range),
            "t": list(grid.t_range) if grid.t_range else "8r, 8r+1, 8r+7, 16r, 64r",
            "n": list(grid.n_range),
            "precision": grid.precision,
        },
        "checks": list(run.checks),
        "all_hold": run.all_hold,
        "count": len(run.outcomes),
        "outcomes": [outcome_dict(o) for o in run.outcomes],
        "discrepancies": [outcome_dict(o) for o in run.discrepancies],
    }


# --- (de)serialization --------------------------------------------------------------


def schema_validator() -> validator:
    return validator(schema=JSON_SCHEMA, format_checker=validator.FORMAT_CHECKER)


def validate(doc: dict[str, Any]):
    """Raise jsonschema.ValidationError when `doc` does not match ns-bound/1."""
    schema_validator().validate(doc)


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2)


def loads(text: str) -> dict[str, Any]:
    doc = json.loads(text)
    validate(doc)
    return doc


def decode_bounds(doc: dict[str, Any]) -> dict[str, Any]:
    """Map each bound key of a "bound" document to its Python value."""
    return {key: decode_value(item["value"]) for key, item in doc.get("bounds", {}).items()}


# --- human rendering ----------------------------------------------------------------


def _human(data: Any, exact: bool) -> str:
    value = decode_value(data)
    if isinstance(value, TowerNumber):
        return value.human(exact_digits=exact)
    if isinstance(value, dict):
        if value.get("kind") == "interval":
            return f"[{value['lo']}, {value['hi']}]"
        return json.dumps(value)
    return str(value)


def render_invariants(doc: dict[str, Any]) -> str:
    lines = [
        f"ambient:        P^{doc['r']} (generators of degree <= {doc['d']})",
        f"dim X:          {doc['dimX']}",
        f"codim X:        {doc['codim']}",
        f"deg X:          {doc['degX']}",
        f"Hilbert poly:   {doc['hp']}  =  {doc['hp_dense']}",
        f"binomial basis: {doc['hp_binomial']}",
        f"Hilbert series: ({doc['hilbert_series_numerator']}) / (1-z)^{doc['r'] + 1}",
    ]
    if doc.get("linear_forms"):
        lines.append(f"linear forms:   {doc['linear_forms']}")
    if doc.get("smoothness"):
        lines.append(f"smoothness:     {doc['smoothness']}")
    return "\n".join(lines)


def render_bound(doc: dict[str, Any], exact: bool = False) -> str:
    lines = [render_invariants(doc["inputs"]), ""]
    hypotheses = ", ".join(f"{k}: {v}" for k, v in doc.get("hypotheses", {}).items())
    if hypotheses:
        lines.append(f"hypotheses:     {hypotheses}")
    if doc.get("degenerate"):
        lines.append(f"degenerate ({doc['degenerate']}): #(NS X)_tors <= {doc['bound']}")
    else:
        width = max(len(key) for key in doc["bounds"])
        for key, item in doc["bounds"].items():
            lines.append(f"{key.ljust(width)}  {_human(item['value'], exact)}")
            lines.append(f"{' ' * width}    {item['formula']}")
    for warning in doc.get("warnings", []):
        lines.append(f"warning: {warning}")
    return "\n".join(lines)


def render_gotzmann(doc: dict[str, Any]) -> str:
    lines = [f"Hilbert polynomial: {doc['hp']}  ({doc['hp_binomial']})", f"phi: {doc['phi']}"]
    if "decomposition" in doc:
        lines.append(f"decomposition: {doc['decomposition']}")
    else:
        runs = ", ".join(f"{a} x{count}" for a, count in doc["runs"])
        lines.append(f"decomposition runs: {runs}")
    return "\n".join(lines)


def render_verify(doc: dict[str, Any]) -> str:
    failed = len(doc["discrepancies"])
    lines = [
        f"checks: {', '.join(doc['checks'])}",
        f"{doc['count']} outcome(s), {failed} discrepancy(ies)",
    ]
    for item in doc["discrepancies"]:
        params = ", ".join(f"{k}={v}" for k, v in item["params"].items())
        note = f"  ({item['note']})" if item.get("note") else ""
        lines.append(
            f"FAILS {item['check']} [{params}]: "
            f"{_human(item['left'], False)} vs {_human(item['right'], False)}{note}"
        )
    if not failed:
        lines.append("all inequalities hold")
    return "\n".join(lines)
