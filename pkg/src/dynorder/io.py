"""JSON wire format for diagrams (schema version 1)."""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .diagram import Diagram, EdgeKind, EmbeddingAnnotation, IntersectionEdge, Orbit, OrbitPoint, SeparatrixRecord
from .errors import ParseError, SchemaError

SCHEMA_VERSION = 1

_POINT = {
    "type": "object",
    "properties": {
        "orbit": {"type": "string"},
        "point": {"type": "integer", "minimum": 0},
    },
    "required": ["orbit", "point"],
    "additionalProperties": False,
}

_RECORD = {
    "type": "object",
    "properties": {
        "saddle": _POINT,
        "branches": {
            "type": "array",
            "items": {"type": "array", "items": _POINT},
            "minItems": 2,
            "maxItems": 2,
        },
    },
    "required": ["saddle", "branches"],
    "additionalProperties": False,
}

_ANNOTATION = {
    "type": "object",
    "properties": {
        "saddle_orbit": {"type": "string"},
        "tight": {"type": "boolean"},
        "strongly_tight": {"type": "boolean"},
        "handle_genus_witness": {"type": "integer", "minimum": 0},
    },
    "required": ["saddle_orbit", "tight", "strongly_tight", "handle_genus_witness"],
    "additionalProperties": False,
}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Morse-Smale diagram",
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "orbits": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "period": {"type": "integer", "minimum": 1},
                    "index": {"type": "integer", "minimum": 0, "maximum": 3},
                    "separatrix_swap": {"type": "boolean"},
                },
                "required": ["id", "period", "index"],
                "additionalProperties": False,
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "upper": {"type": "string"},
                    "lower": {"type": "string"},
                    "kind": {"enum": [k.value for k in EdgeKind]},
                },
                "required": ["upper", "lower", "kind"],
                "additionalProperties": False,
            },
        },
        "separatrices": {"type": "array", "items": _RECORD},
        "repeller_separatrices": {"type": "array", "items": _RECORD},
        "annotations": {"type": "array", "items": _ANNOTATION},
        "repeller_annotations": {"type": "array", "items": _ANNOTATION},
        "no_heteroclinic_curves": {"type": "boolean"},
    },
    "required": ["schema_version", "name", "orbits", "edges"],
    "additionalProperties": False,
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _path(parts) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in parts)


def load_document(doc: Any) -> Diagram:
    """Build a diagram from an already decoded JSON value.

    Raises:
        SchemaError: the document does not match the schema or repeats an
            orbit id.
    """
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise SchemaError(_path(err.absolute_path), err.message)

    seen: set[str] = set()
    for i, o in enumerate(doc["orbits"]):
        if o["id"] in seen:
            raise SchemaError(_path(["orbits", i, "id"]), f"duplicate orbit id {o['id']!r}")
        seen.add(o["id"])

    def point(p) -> OrbitPoint:
        return OrbitPoint(p["orbit"], p["point"])

    def record(r) -> SeparatrixRecord:
        return SeparatrixRecord(point(r["saddle"]), tuple(tuple(point(t) for t in b) for b in r["branches"]))

    return Diagram(
        name=doc["name"],
        orbits=tuple(
            Orbit(o["id"], o["period"], o["index"], o.get("separatrix_swap", False)) for o in doc["orbits"]
        ),
        edges=tuple(IntersectionEdge(e["upper"], e["lower"], EdgeKind(e["kind"])) for e in doc["edges"]),
        separatrices=tuple(record(r) for r in doc.get("separatrices", [])),
        repeller_separatrices=tuple(record(r) for r in doc.get("repeller_separatrices", [])),
        annotations=tuple(EmbeddingAnnotation(**a) for a in doc.get("annotations", [])),
        repeller_annotations=tuple(EmbeddingAnnotation(**a) for a in doc.get("repeller_annotations", [])),
        no_heteroclinic_curves=doc.get("no_heteroclinic_curves"),
    )


def parse_document(data: bytes | str) -> Diagram:
    """Decode a UTF-8 JSON document into a structurally checked diagram.

    Semantic checks are left to :func:`dynorder.validation.validate`.

    Raises:
        ParseError: the bytes are not UTF-8 JSON.
        SchemaError: see :func:`load_document`.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(1, f"not UTF-8: {exc.reason}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    return load_document(doc)


def emit_document(diagram: Diagram) -> dict[str, Any]:
    def point(p: OrbitPoint) -> dict[str, Any]:
        return {"orbit": p.orbit, "point": p.point}

    def record(r: SeparatrixRecord) -> dict[str, Any]:
        return {"saddle": point(r.saddle), "branches": [[point(t) for t in b] for b in r.branches]}

    def annotation(a: EmbeddingAnnotation) -> dict[str, Any]:
        return {
            "saddle_orbit": a.saddle_orbit,
            "tight": a.tight,
            "strongly_tight": a.strongly_tight,
            "handle_genus_witness": a.handle_genus_witness,
        }

    return {
        "schema_version": SCHEMA_VERSION,
        "name": diagram.name,
        "orbits": [
            {"id": o.id, "period": o.period, "index": o.index, "separatrix_swap": o.separatrix_swap}
            for o in diagram.orbits
        ],
        "edges": [{"upper": e.upper, "lower": e.lower, "kind": e.kind.value} for e in diagram.edges],
        "separatrices": [record(r) for r in diagram.separatrices],
        "repeller_separatrices": [record(r) for r in diagram.repeller_separatrices],
        "annotations": [annotation(a) for a in diagram.annotations],
        "repeller_annotations": [annotation(a) for a in diagram.repeller_annotations],
        "no_heteroclinic_curves": diagram.no_heteroclinic_curves,
    }


def dumps(diagram: Diagram) -> str:
    return json.dumps(emit_document(diagram), indent=2) + "\n"
