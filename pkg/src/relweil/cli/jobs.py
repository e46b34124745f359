"""Job files: JSON documents with rationals and polynomials as strings.

A job has a ``command``, an optional ``field`` and a command-specific
``inputs`` object::

    {"command": "restrict",
     "field": {"min_poly": ["-2", "0", "1"], "generator": "a"},
     "inputs": {"variables": ["x"], "equations": [],
                "morphism": [{"num": "x^3 - a*x^2"}]}}

``min_poly`` lists coefficients constant term first. Polynomials may use the
generator symbol; rationals are ``"p"`` or ``"p/q"`` strings (integers are
accepted too). Parsing produces a :class:`JobSpec` whose leaves are
``Fraction`` and ``MultiPoly`` objects.
"""

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import jsonschema

from relweil.arith.multipoly import MultiPoly
from relweil.arith.rational import format_rational, parse_rational
from relweil.arith.unipoly import UniPoly
from relweil.errors import ParseError, SchemaError

COMMANDS = ("restrict", "genus", "fiber-types", "chabauty", "table1", "enum-deg3", "paper-suite")

_RAT = {"type": ["string", "integer"]}
_POLY = {"type": "string", "minLength": 1}
_NAME = {"type": "string", "pattern": "^[A-Za-z_][A-Za-z_0-9]*$"}
_RATFN = {
    "type": "object",
    "properties": {"num": _POLY, "den": _POLY},
    "required": ["num"],
    "additionalProperties": False,
}
_NONNEG = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}

_INPUT_SCHEMAS = {
    "restrict": {
        "oneOf": [
            {
                "type": "object",
                "properties": {
                    "variables": {"type": "array", "items": _NAME, "minItems": 1},
                    "equations": {"type": "array", "items": _POLY},
                    "morphism": {"type": "array", "items": _RATFN},
                    "parameters": {"type": "array", "items": _NAME},
                },
                "required": ["variables"],
                "additionalProperties": False,
            },
            {
                "type": "object",
                "properties": {
                    "model": {"enum": ["example-D", "ecc"]},
                    "params": {"type": "object", "additionalProperties": _RAT},
                    "quotient": {"type": "boolean"},
                },
                "required": ["model", "params"],
                "additionalProperties": False,
            },
        ]
    },
    "genus": {
        "type": "object",
        "properties": {
            "g_S": _NONNEG,
            "maps": {"type": "array", "items": _RATFN, "minItems": 1},
            "degrees": {"type": "array", "items": _POS, "minItems": 1},
            "points": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "types": {"type": "array", "items": {"type": "array", "items": _POS, "minItems": 1}},
                        "residue_degree": _POS,
                        "label": {"type": "string"},
                    },
                    "required": ["types"],
                    "additionalProperties": False,
                },
            },
            "hyperelliptic": _POLY,
        },
        "additionalProperties": False,
    },
    "fiber-types": {
        "type": "object",
        "properties": {
            "map": _RATFN,
            "maps": {"type": "array", "items": _RATFN, "minItems": 1},
            "at": {"type": "array", "items": {"type": "string"}},
        },
        "additionalProperties": False,
    },
    "chabauty": {
        "type": "object",
        "properties": {
            "n": _POS,
            "g_C": _NONNEG,
            "g_B": _NONNEG,
            "mw_L_C": _NONNEG,
            "mw_L_BL": _NONNEG,
            "mw_K_B": _NONNEG,
            "genus_Ch": {"type": "integer"},
            "degrees": {"type": "array", "items": _POS},
        },
        "required": ["n", "g_C", "g_B", "mw_L_C", "mw_L_BL", "mw_K_B", "genus_Ch"],
        "additionalProperties": False,
    },
}
_EMPTY = {"type": "object", "maxProperties": 0}

JOB_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "field": {
            "type": "object",
            "properties": {
                "min_poly": {"type": "array", "items": _RAT, "minItems": 3},
                "generator": _NAME,
            },
            "required": ["min_poly"],
            "additionalProperties": False,
        },
        "inputs": {"type": "object"},
    },
    "required": ["command"],
    "additionalProperties": False,
}

_POLY_KEYS = {"equations", "num", "den", "hyperelliptic", "at"}
_RAT_KEYS = {"min_poly", "params"}


@dataclass
class JobSpec:
    command: str
    field: UniPoly = None
    generator: str = "a"
    inputs: dict = dc_field(default_factory=dict)


def _path(parts):
    return "/".join(str(p) for p in parts) or "<root>"


def _validate(doc):
    validator = jsonschema.Draft202012Validator(JOB_SCHEMA)
    errors = [(_path(e.absolute_path), e.message) for e in validator.iter_errors(doc)]
    if errors:
        raise SchemaError(sorted(errors))
    command = doc["command"]
    inputs = doc.get("inputs", {})
    schema = _INPUT_SCHEMAS.get(command, _EMPTY)
    validator = jsonschema.Draft202012Validator(schema)
    errors = [(_path(("inputs",) + tuple(e.absolute_path)), e.message) for e in validator.iter_errors(inputs)]
    if errors:
        raise SchemaError(sorted(errors))


def _parse_poly(text, path):
    """Parse with variables in sorted order so printing does not depend on the input text."""
    try:
        p = MultiPoly.parse(text)
    except ParseError as exc:
        raise ParseError(exc.message, exc.line, exc.column, path) from None
    return p.with_vars(tuple(sorted(p.vars)))


def _typed(value, key, path):
    """Convert string leaves under known keys into Fractions / MultiPolys."""
    if isinstance(value, dict):
        return {k: _typed(v, k if key not in _RAT_KEYS else key, path + (k,)) for k, v in value.items()}
    if isinstance(value, list):
        return [_typed(v, key, path + (i,)) for i, v in enumerate(value)]
    if key in _RAT_KEYS:
        return parse_rational(value, _path(path))
    if key in _POLY_KEYS and isinstance(value, str):
        if key == "at" and value == "oo":
            return value
        return _parse_poly(value, _path(path))
    return value


def parse_job(text):
    """Parse and validate a job document; returns a :class:`JobSpec`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    _validate(doc)
    spec = JobSpec(doc["command"])
    if "field" in doc:
        coeffs = [parse_rational(c, f"field/min_poly/{i}") for i, c in enumerate(doc["field"]["min_poly"])]
        spec.field = UniPoly(coeffs, "t")
        spec.generator = doc["field"].get("generator", "a")
    spec.inputs = _typed(doc.get("inputs", {}), None, ("inputs",))
    return spec


def _untyped(value):
    if isinstance(value, dict):
        return {k: _untyped(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_untyped(v) for v in value]
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, MultiPoly):
        return str(value)
    return value


def job_to_dict(spec):
    doc = {"command": spec.command}
    if spec.field is not None:
        doc["field"] = {
            "min_poly": [format_rational(c) for c in spec.field.coeffs],
            "generator": spec.generator,
        }
    if spec.inputs:
        doc["inputs"] = _untyped(spec.inputs)
    return doc


def serialize_job(spec):
    return json.dumps(job_to_dict(spec), indent=2, sort_keys=True) + "\n"
