"""JSON input documents, witness files, and report emission."""
from __future__ import annotations

import hashlib
import json
from typing import Any, Optional

from .complexes import UniformComplex, build_complex
from .errors import HypergraphError, ParseError, ValidationError
from .minors import MinorWitness

VERSION = "0.1.0"


def _field(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise ParseError(f"{where}: missing field '{key}'")
    return obj[key]


def _int_field(obj: dict, key: str, where: str) -> int:
    value = _field(obj, key, where)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"{where}: field '{key}' must be an integer")
    return value


def _vertex_list(value: Any, what: str, where: str) -> list[int]:
    if not isinstance(value, list) or any(
            not isinstance(v, int) or isinstance(v, bool) for v in value):
        raise ParseError(f"{where}: {what} must be a list of integers")
    return value


def parse_complex(obj: Any, where: str = "document") -> UniformComplex:
    """Build a complex from a parsed ComplexDocument object.

    Schema problems raise ParseError; documents that are well-formed but
    describe an illegal complex raise ValidationError carrying the
    structural error's message.
    """
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    d = _int_field(obj, "d", where)
    n = _int_field(obj, "n", where)
    raw = _field(obj, "facets", where)
    if not isinstance(raw, list):
        raise ParseError(f"{where}: field 'facets' must be a list")
    facets = [_vertex_list(f, f"facet #{k}", where) for k, f in enumerate(raw)]
    names = obj.get("names")
    if names is not None:
        if not isinstance(names, list) or any(not isinstance(x, str) for x in names):
            raise ParseError(f"{where}: field 'names' must be a list of strings")
    try:
        return build_complex(d, n, facets, names)
    except HypergraphError as exc:
        raise ValidationError(f"{where}: {type(exc).__name__}: {exc}") from exc


def load_complex(path: str) -> UniformComplex:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return parse_complex(obj, where=path)


def complex_to_document(c: UniformComplex) -> dict:
    doc: dict[str, Any] = {
        "d": c.d,
        "n": c.n,
        "facets": [list(f) for f in c.facets],
    }
    if c.names is not None:
        doc["names"] = list(c.names)
    return doc


def dumps_document(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def serialize(c: UniformComplex, path: str) -> None:
    """Write the canonical document; facets arrive pre-sorted from the complex."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_document(complex_to_document(c)))


def witness_to_payload(w: MinorWitness) -> dict:
    return {
        "branch_sets": [sorted(bs) for bs in w.branch_sets],
        "facet_assignment": [{"target": list(t), "host": list(h)}
                             for t, h in w.facet_assignment],
    }


def witness_from_payload(obj: Any, where: str = "witness") -> MinorWitness:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    raw_sets = _field(obj, "branch_sets", where)
    if not isinstance(raw_sets, list):
        raise ParseError(f"{where}: field 'branch_sets' must be a list")
    branch_sets = tuple(
        frozenset(_vertex_list(bs, f"branch set #{k}", where))
        for k, bs in enumerate(raw_sets))
    raw_assign = _field(obj, "facet_assignment", where)
    if not isinstance(raw_assign, list):
        raise ParseError(f"{where}: field 'facet_assignment' must be a list")
    pairs = []
    for k, entry in enumerate(raw_assign):
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: assignment #{k} must be an object")
        target = _vertex_list(_field(entry, "target", where), f"assignment #{k} target", where)
        host = _vertex_list(_field(entry, "host", where), f"assignment #{k} host", where)
        pairs.append((tuple(sorted(target)), tuple(sorted(host))))
    return MinorWitness(branch_sets, tuple(sorted(pairs)))


def load_witness_file(path: str) -> tuple[UniformComplex, MinorWitness]:
    """Read a witness file: the minor target plus the witness payload."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected a JSON object")
    target = parse_complex(_field(obj, "target", path), where=f"{path}#target")
    witness = witness_from_payload(_field(obj, "witness", path), where=f"{path}#witness")
    return target, witness


def witness_file_document(target: UniformComplex, w: MinorWitness) -> dict:
    return {"target": complex_to_document(target), "witness": witness_to_payload(w)}


def sha256_of_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def make_report(command: str, input_sha256: Optional[str], status: str,
                result: Any, *, seed: Optional[int] = None,
                threads: int = 1, timings: Optional[dict] = None) -> str:
    """The single-report stdout format; key order is fixed by sort_keys."""
    doc = {
        "command": command,
        "input_sha256": input_sha256,
        "result": result,
        "seed": seed,
        "status": status,
        "threads": threads,
        "timings": timings,
        "version": VERSION,
    }
    return dumps_document(doc)
