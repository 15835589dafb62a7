"""JSON wire format: rationals as ``"p/q"`` strings, cones by their normals."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .cone import PolyCone
from .polytope import HirzebruchParams, Polytope

SCHEMA_VERSION = "1"

RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?[0-9]+(/[1-9][0-9]*)?$"},
    ]
}
INT_VECTOR = {"type": "array", "minItems": 1, "items": {"type": "integer"}}

POLYTOPE_SCHEMA = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "vertices": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "minItems": 1, "items": RATIONAL},
        },
    },
    "required": ["vertices"],
    "additionalProperties": False,
}

CONE_SCHEMA = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "normals": {"type": "array", "minItems": 1, "items": INT_VECTOR},
        "rays": {"type": "array", "items": INT_VECTOR},
    },
    "required": ["normals"],
    "additionalProperties": False,
}

PARAMS_SCHEMA = {
    "type": "object",
    "properties": {
        "a": RATIONAL,
        "b": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 0},
    },
    "required": ["a", "b", "m"],
    "additionalProperties": False,
}


def rational_to_json(x) -> str:
    return str(Fraction(x))


def rational_from_json(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError("rationals must be integers or 'p/q' strings")
    return Fraction(x)


def polytope_to_json(poly: Polytope) -> dict:
    return {
        "dim": poly.dim,
        "vertices": [[rational_to_json(x) for x in v] for v in poly.vertices],
    }


def polytope_from_json(doc: dict) -> Polytope:
    verts = [[rational_from_json(x) for x in v] for v in doc["vertices"]]
    return Polytope(verts, doc.get("dim"))


def cone_to_json(C: PolyCone, with_rays: bool = True) -> dict:
    doc: dict[str, Any] = {"dim": C.dim, "normals": [list(u) for u in C.normals]}
    if with_rays and C.pointed:
        doc["rays"] = [list(r) for r in C.rays]
    return doc


def cone_from_json(doc: dict, prune: bool = False) -> PolyCone:
    """Rebuild a cone from its normals; any ``rays`` field is ignored."""
    return PolyCone(doc["normals"], doc.get("dim"), prune=prune)


def params_to_json(p: HirzebruchParams) -> dict:
    return {"a": rational_to_json(p.a), "b": p.b, "m": p.m}


def params_from_json(doc: dict) -> HirzebruchParams:
    return HirzebruchParams.from_abm(rational_from_json(doc["a"]), doc["b"], doc["m"])


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
