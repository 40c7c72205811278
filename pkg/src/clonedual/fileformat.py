"""Instance files: JSON documents ``{"format_version": "1", "kind": ..., "payload": ...}``.

Partitions are written as block-id arrays (any labels are accepted on input
and canonicalized), bonds and maps as index arrays.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

import jsonschema

from .clone_algebra import FinAlgebra
from .duality import AlgHom
from .errors import DualityError, SchemaError
from .finspace import FinSpace, UniformMap
from .partition import Partition
from .tower import Tower

__all__ = ["ingest", "loads", "emit", "dumps", "to_document", "from_document", "FORMAT_VERSION"]

FORMAT_VERSION = "1"

Instance = Union[FinSpace, FinAlgebra, Tower, UniformMap, AlgHom]

_NAT_ARRAY = {"type": "array", "items": {"type": "integer", "minimum": 0}}

_SPACE = {
    "type": "object",
    "required": ["points", "generators"],
    "additionalProperties": False,
    "properties": {
        "points": {"type": "integer", "minimum": 0},
        "generators": {"type": "array", "minItems": 1, "items": _NAT_ARRAY},
    },
}

_ALGEBRA = {
    "type": "object",
    "required": ["index", "kernel"],
    "additionalProperties": False,
    "properties": {
        "index": {"type": "integer", "minimum": 0},
        "kernel": _NAT_ARRAY,
    },
}

_PAYLOADS = {
    "space": _SPACE,
    "algebra": _ALGEBRA,
    "tower": {
        "type": "object",
        "required": ["levels", "bonds"],
        "additionalProperties": False,
        "properties": {
            "levels": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
            "bonds": {"type": "array", "items": _NAT_ARRAY},
        },
    },
    "map": {
        "type": "object",
        "required": ["source", "target", "values"],
        "additionalProperties": False,
        "properties": {"source": _SPACE, "target": _SPACE, "values": _NAT_ARRAY},
    },
    "hom": {
        "type": "object",
        "required": ["source", "target", "block_map"],
        "additionalProperties": False,
        "properties": {"source": _ALGEBRA, "target": _ALGEBRA, "block_map": _NAT_ARRAY},
    },
}

_ENVELOPE = {
    "type": "object",
    "required": ["format_version", "kind", "payload"],
    "additionalProperties": False,
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"enum": sorted(_PAYLOADS)},
        "payload": {"type": "object"},
    },
}


def _where(error: jsonschema.ValidationError) -> str:
    path = "/".join(str(p) for p in error.absolute_path)
    return path or "<root>"


def _validate(instance: Any, schema: dict, prefix: str = "") -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(instance), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise SchemaError(f"{prefix}{_where(e)}: {e.message}")


def _space(body: dict, field: str) -> FinSpace:
    n = body["points"]
    gens = []
    for k, g in enumerate(body["generators"]):
        if len(g) != n:
            raise SchemaError(f"{field}generators/{k}: expected {n} block ids, got {len(g)}")
        gens.append(Partition.from_labels(g))
    return FinSpace(n, tuple(gens))


def _algebra(body: dict, field: str) -> FinAlgebra:
    if len(body["kernel"]) != body["index"]:
        raise SchemaError(f"{field}kernel: expected {body['index']} block ids")
    return FinAlgebra(body["index"], Partition.from_labels(body["kernel"]))


def from_document(doc: Any) -> Instance:
    """Validate a parsed document and build the domain object it describes."""
    _validate(doc, _ENVELOPE)
    kind, body = doc["kind"], doc["payload"]
    _validate(body, _PAYLOADS[kind], prefix="payload/")
    try:
        if kind == "space":
            return _space(body, "payload/")
        if kind == "algebra":
            return _algebra(body, "payload/")
        if kind == "tower":
            return Tower(tuple(body["levels"]), tuple(tuple(b) for b in body["bonds"]))
        if kind == "map":
            src = _space(body["source"], "payload/source/")
            tgt = _space(body["target"], "payload/target/")
            return UniformMap(src, tgt, tuple(body["values"]))
        src = _algebra(body["source"], "payload/source/")
        tgt = _algebra(body["target"], "payload/target/")
        return AlgHom(src, tgt, tuple(body["block_map"]))
    except SchemaError:
        raise
    except (DualityError, ValueError) as exc:
        raise SchemaError(f"payload: {exc}") from exc


def loads(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_document(doc)


def ingest(path: Union[str, Path]) -> Instance:
    return loads(Path(path).read_text(encoding="utf-8"))


def _space_body(x: FinSpace) -> dict:
    return {"points": x.point_count, "generators": [list(g.block_id) for g in x.generators]}


def _algebra_body(a: FinAlgebra) -> dict:
    return {"index": a.index_size, "kernel": list(a.finest_kernel.block_id)}


def to_document(obj: Instance) -> dict:
    if isinstance(obj, FinSpace):
        kind, body = "space", _space_body(obj)
    elif isinstance(obj, FinAlgebra):
        kind, body = "algebra", _algebra_body(obj)
    elif isinstance(obj, Tower):
        kind, body = "tower", {"levels": list(obj.levels), "bonds": [list(b) for b in obj.bonds]}
    elif isinstance(obj, UniformMap):
        kind, body = "map", {"source": _space_body(obj.source),
                             "target": _space_body(obj.target),
                             "values": list(obj.values)}
    elif isinstance(obj, AlgHom):
        kind, body = "hom", {"source": _algebra_body(obj.source),
                             "target": _algebra_body(obj.target),
                             "block_map": list(obj.block_map)}
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {"format_version": FORMAT_VERSION, "kind": kind, "payload": body}


def dumps(obj: Instance) -> str:
    return json.dumps(to_document(obj), indent=2, sort_keys=True) + "\n"


def emit(obj: Instance, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
