"""
Load and validate manifold descriptions from JSON

Example document:

    {
      "n": 2,
      "bundle": {"kind": "dolbeault"},
      "bulk": {"kind": "volume_ratio", "v": "5"},
      "cusps": [{"d": [1]}, {"d": [2]}],
      "h_diff": "0"
    }

Rationals are "p/q" strings (plain integers are accepted too). Cusp records may
override the bundle twist and dimV of a custom bundle.

Documents are checked against MANIFOLD_SCHEMA first; the rules that depend on
several fields at once (lattice length, spinor twists, custom-only keys) are
enforced by the cusp_index constructors.
"""

import json
from pathlib import Path

from jsonschema import Draft7Validator
from jsonschema.exceptions import best_match

from cusp_index import BulkTerm, BundleKind, BundleSpec, CuspDescription, ManifoldDescription
from hurwitz_zeta import format_rational, format_weight, parse_rational

RATIONAL = {
    "type": ["string", "integer"],
    "pattern": r"^\s*[+-]?\d+\s*(/\s*\d+)?\s*$",
    "expected": "a 'p/q' string or an integer",
}

POSITIVE_INT = {"type": "integer", "minimum": 1, "expected": "a positive integer"}

MANIFOLD_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "ManifoldConfig",
    "type": "object",
    "expected": "an object",
    "required": ["n", "bundle", "cusps"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 2, "expected": "an integer >= 2"},
        "bundle": {
            "type": "object",
            "expected": "an object",
            "required": ["kind"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": [k.value for k in BundleKind]},
                "twist": RATIONAL,
                "weights": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "array", "items": RATIONAL, "expected": "a list of 'p/q' strings"},
                    "expected": "a non-empty list of highest weights",
                },
                "dimV_override": POSITIVE_INT,
            },
        },
        "bulk": {
            "type": ["object", "null"],
            "expected": "an object",
            "required": ["kind"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["volume_ratio", "integral"]},
                "v": RATIONAL,
                "value": RATIONAL,
            },
            "allOf": [
                {"if": {"properties": {"kind": {"const": "volume_ratio"}}}, "then": {"required": ["v"]}},
                {"if": {"properties": {"kind": {"const": "integral"}}}, "then": {"required": ["value"]}},
            ],
        },
        "cusps": {
            "type": "array",
            "expected": "a list of cusp records",
            "items": {
                "type": "object",
                "expected": "an object",
                "required": ["d"],
                "additionalProperties": False,
                "properties": {
                    "d": {"type": "array", "minItems": 1, "items": POSITIVE_INT,
                          "expected": "a lattice type (list of positive integers)"},
                    "twist": RATIONAL,
                    "dimV_override": POSITIVE_INT,
                },
            },
        },
        "h_diff": dict(RATIONAL, type=["string", "integer", "null"]),
    },
}

_VALIDATOR = Draft7Validator(MANIFOLD_SCHEMA)


def _field(path):
    name = ""
    for part in path:
        name += f"[{part}]" if isinstance(part, int) else (f".{part}" if name else part)
    return name or "config"


def _describe(error):
    """One-line, field-prefixed message for a schema violation."""
    field = _field(error.absolute_path)
    if error.validator == "required":
        missing = next(k for k in error.validator_value if k not in error.instance)
        return f"{field}: missing '{missing}'"
    if error.validator == "additionalProperties":
        allowed = sorted(error.schema.get("properties", {}))
        return f"{field}: unknown keys {sorted(set(error.instance) - set(allowed))} (allowed: {allowed})"
    if error.validator == "enum":
        return f"{field}: expected one of {error.validator_value}, got {error.instance!r}"
    if "expected" in error.schema:
        return f"{field}: expected {error.schema['expected']}, got {error.instance!r}"
    return f"{field}: {error.message}"


def validate_document(document):
    """Raise ValueError naming the first schema violation."""
    error = best_match(_VALIDATOR.iter_errors(document))
    if error is not None:
        raise ValueError(_describe(error))


def _rational(value, field):
    # 2.0 satisfies the schema's integer type
    if isinstance(value, float):
        raise ValueError(f"{field}: rationals must be 'p/q' strings or integers, got {value!r}")
    try:
        return parse_rational(str(value))
    except ValueError as e:
        raise ValueError(f"{field}: {e}") from None


def parse_bundle(record):
    """Bundle record -> BundleSpec"""
    twist = _rational(record.get("twist", 0), "bundle.twist")
    weights = None
    if "weights" in record:
        weights = [[_rational(x, "bundle.weights") for x in w] for w in record["weights"]]
    dimV_override = int(record["dimV_override"]) if "dimV_override" in record else None
    try:
        return BundleSpec(record["kind"], twist, weights, dimV_override)
    except ValueError as e:
        raise ValueError(f"bundle: {e}") from None


def parse_manifold(document):
    """
    Validate a configuration document and build the ManifoldDescription.

    Raises:
        ValueError naming the violated rule
    """
    validate_document(document)
    n = document["n"]
    bundle = parse_bundle(document["bundle"])

    bulk = None
    record = document.get("bulk")
    if record is not None:
        key = "v" if record["kind"] == "volume_ratio" else "value"
        bulk = BulkTerm(record["kind"], _rational(record[key], f"bulk.{key}"))

    cusps = []
    for i, record in enumerate(document["cusps"]):
        field = f"cusps[{i}]"
        cusp_bundle = bundle
        if "twist" in record or "dimV_override" in record:
            twist = _rational(record["twist"], f"{field}.twist") if "twist" in record else bundle.twist
            dimV_override = int(record["dimV_override"]) if "dimV_override" in record else bundle.dimV_override
            cusp_bundle = None
        try:
            if cusp_bundle is None:
                cusp_bundle = BundleSpec(bundle.kind, twist, bundle.weights or None, dimV_override)
            cusps.append(CuspDescription(n, record["d"], cusp_bundle))
        except ValueError as e:
            raise ValueError(f"{field}: {e}") from None

    h_diff = None
    if document.get("h_diff") is not None:
        h_diff = _rational(document["h_diff"], "h_diff")
    return ManifoldDescription(n, bundle, bulk, cusps, h_diff)


def load_manifold(path):
    """Read a JSON config file."""
    path = Path(path)
    if not path.exists():
        raise ValueError(f"config file not found: {path}")
    try:
        document = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ValueError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
    return parse_manifold(document)


def bundle_to_dict(bundle):
    record = {"kind": bundle.kind.value}
    if bundle.twist:
        record["twist"] = format_rational(bundle.twist)
    if bundle.weights:
        record["weights"] = [format_weight(w) for w in bundle.weights]
    if bundle.dimV_override is not None:
        record["dimV_override"] = int(bundle.dimV_override)
    return record


def manifold_to_dict(M):
    """Serialized form accepted by parse_manifold."""
    document = {"n": M.n, "bundle": bundle_to_dict(M.bundle)}
    if M.bulk is not None:
        key = "v" if M.bulk.kind == "volume_ratio" else "value"
        document["bulk"] = {"kind": M.bulk.kind, key: format_rational(M.bulk.value)}
    cusps = []
    for cusp in M.cusps:
        record = {"d": list(cusp.d.d)}
        if cusp.bundle.twist != M.bundle.twist:
            record["twist"] = format_rational(cusp.bundle.twist)
        if cusp.bundle.dimV_override != M.bundle.dimV_override:
            record["dimV_override"] = int(cusp.bundle.dimV_override)
        cusps.append(record)
    document["cusps"] = cusps
    if M.h_diff is not None:
        document["h_diff"] = format_rational(M.h_diff)
    return document
