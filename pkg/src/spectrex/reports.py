"""JSON report envelope and the schemas every CLI report must satisfy."""

from __future__ import annotations

import json
import math
from typing import Any

import jsonschema

from . import __version__

NUM = {"type": ["number", "null"]}
NUMS = {"type": "array", "items": NUM}
STR_LIST = {"type": "array", "items": {"type": "string"}}
G6 = {"type": "string", "minLength": 1}

MANIFEST = {
    "type": "object",
    "required": ["family", "params", "n", "m", "lambda", "residual", "polynomial", "inferred", "valid", "failures", "graph6"],
    "properties": {
        "family": {"type": "string"},
        "params": {"type": "object"},
        "n": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "lambda": NUM,
        "residual": NUM,
        "polynomial": {"type": ["object", "null"]},
        "inferred": {"type": "boolean"},
        "valid": {"type": "boolean"},
        "failures": STR_LIST,
        "graph6": G6,
    },
}

SPECTRUM = {
    "type": "object",
    "required": ["graph6", "n", "m", "eigenvalues", "spectral_radius"],
    "properties": {
        "graph6": G6,
        "n": {"type": "integer"},
        "m": {"type": "integer"},
        "eigenvalues": NUMS,
        "spectral_radius": NUM,
        "triangles": NUM,
    },
}

INEQUALITY = {
    "type": "object",
    "required": ["lemma", "m", "holds", "margin", "flagged", "witness"],
    "properties": {
        "lemma": {"type": "string"},
        "m": {"type": "integer"},
        "holds": {"type": "boolean"},
        "margin": NUM,
        "flagged": {"type": "boolean"},
        "witness": {"type": "object"},
    },
}

VERIFY = {
    "type": "object",
    "required": ["lemma", "checked", "failed", "flagged", "results"],
    "properties": {
        "lemma": {"type": "string"},
        "checked": {"type": "integer"},
        "failed": {"type": "array", "items": {"type": "integer"}},
        "flagged": {"type": "array", "items": {"type": "integer"}},
        "results": {"type": "array", "items": INEQUALITY},
    },
}

CERTIFICATE = {
    "type": "object",
    "required": ["entry", "m", "lower_bound", "positive", "committed_max", "budget", "steps"],
    "properties": {
        "entry": {"type": "string"},
        "m": {"type": "integer"},
        "lower_bound": NUM,
        "positive": {"type": "boolean"},
        "committed_max": NUM,
        "budget": {"type": "integer"},
        "steps": {"type": "array"},
        "diagnostics": STR_LIST,
        "variants": {"type": "object"},
    },
}

THRESHOLD = {
    "type": "object",
    "required": ["entry", "m_star", "stated_threshold", "certificate"],
    "properties": {
        "entry": {"type": "string"},
        "m_star": {"type": ["integer", "null"]},
        "monotone": {"type": ["boolean", "null"]},
        "stated_threshold": {"type": "integer"},
        "certificate": CERTIFICATE,
        "error": {"type": "string"},
    },
}

SEARCH = {
    "type": "object",
    "required": ["m", "graphs_enumerated", "maximizers", "unique", "lambda_max", "certificate", "identified", "verdicts", "verified"],
    "properties": {
        "m": {"type": "integer", "minimum": 5, "maximum": 13},
        "graphs_enumerated": {"type": "integer", "minimum": 0},
        "maximizers": {"type": "array", "items": G6, "minItems": 1},
        "unique": {"type": "boolean"},
        "lambda_max": NUM,
        "certificate": {"type": "object"},
        "identified": STR_LIST,
        "verdicts": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "verified": {"type": "boolean"},
        "runtime": NUM,
    },
}

AUDIT = {
    "type": "object",
    "required": ["n", "m", "triangle_free", "bipartite", "shortest_odd_cycle", "claim_shortest_odd_cycle_5", "claim_at_most_one_distance_2"],
    "properties": {
        "shortest_odd_cycle": {"type": ["integer", "null"]},
        "claim_shortest_odd_cycle_5": {"type": "boolean"},
        "claim_at_most_one_distance_2": {"type": ["boolean", "null"]},
        "distance_2": {"type": "integer"},
        "distance_3": {"type": "integer"},
        "V1_size": {"type": "integer"},
        "V1_share_neighbor": {"type": "boolean"},
        "populated": STR_LIST,
    },
}

CATALOG = {
    "type": "object",
    "required": ["version", "tolerance", "level_sizes", "entries"],
    "properties": {
        "version": {"type": "integer"},
        "tolerance": {"type": "number"},
        "level_sizes": {"type": "object", "additionalProperties": {"type": "integer"}},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "n", "spectrum", "realizations", "stated_threshold"],
                "properties": {"realizations": {"type": "array", "items": G6, "minItems": 1}, "spectrum": NUMS},
            },
        },
    },
}

SCHEMAS = {
    "construct": MANIFEST,
    "spectrum": SPECTRUM,
    "verify-lemma": VERIFY,
    "threshold": THRESHOLD,
    "search": SEARCH,
    "audit": AUDIT,
    "catalog": CATALOG,
}


def envelope_schema(command: str) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["command", "version", "ok", "report"],
        "properties": {
            "command": {"const": command},
            "version": {"type": "string"},
            "ok": {"type": "boolean"},
            "report": {"oneOf": [SCHEMAS[command], {"type": "array", "items": SCHEMAS[command]}]},
        },
    }


def clean(obj: Any) -> Any:
    """JSON-safe copy: non-finite floats become null, tuples become lists."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return clean(obj.item())  # numpy scalar
    return obj


def make_report(command: str, ok: bool, report: Any) -> dict:
    doc = {"command": command, "version": __version__, "ok": ok, "report": clean(report)}
    validate(doc)
    return doc


def validate(doc: dict) -> None:
    """Raise jsonschema.ValidationError if ``doc`` breaks its command's schema."""
    jsonschema.validate(doc, envelope_schema(doc.get("command", "")) if doc.get("command") in SCHEMAS else {"required": ["command"], "properties": {"command": {"enum": list(SCHEMAS)}}})


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False)
