"""Lattice JSON documents and DOT emission.

Document format (version "1")::

    {"format_version": "1",
     "elements": ["0", "a", "1"],
     "covers": [["0", "a"], ["a", "1"]],
     "metadata": {...}}            # optional

Any other top-level key is rejected.
"""

from __future__ import annotations

import json
from typing import Any

from .core import FiniteLattice, validate_named
from .errors import NotALattice, NotAPartialOrder

FORMAT_VERSION = "1"
_REQUIRED = ("format_version", "elements", "covers")
_ALLOWED = set(_REQUIRED) | {"metadata"}


class DocumentError(ValueError):
    pass


def lattice_from_document(doc: dict[str, Any] | str) -> FiniteLattice:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("lattice document must be a JSON object")
    unknown = set(doc) - _ALLOWED
    if unknown:
        raise DocumentError(f"unknown keys: {sorted(unknown)}")
    missing = [k for k in _REQUIRED if k not in doc]
    if missing:
        raise DocumentError(f"missing keys: {missing}")
    if doc["format_version"] != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {doc['format_version']!r}")
    elements = doc["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise DocumentError("elements must be an array of strings")
    if len(set(elements)) != len(elements):
        raise DocumentError("element names must be unique")
    covers = doc["covers"]
    if not isinstance(covers, list) or not all(
        isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c) for c in covers
    ):
        raise DocumentError("covers must be an array of [lower, upper] name pairs")
    declared = set(elements)
    for lo, hi in covers:
        if lo not in declared or hi not in declared:
            raise DocumentError(f"cover [{lo!r}, {hi!r}] references an undeclared element")
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise DocumentError("metadata must be an object")
    meta = dict(metadata)
    gens = meta.get("generators")
    if gens:
        pos = {name: i for i, name in enumerate(elements)}
        meta["generators"] = {g: pos[name] for g, name in gens.items()}
    try:
        return validate_named(elements, [tuple(c) for c in covers], meta=meta)
    except (NotALattice, NotAPartialOrder) as exc:
        # report the offending elements by name
        w = exc.witness
        if w and all(isinstance(i, int) and 0 <= i < len(elements) for i in w):
            exc.witness = tuple(elements[i] for i in w)
        raise


def lattice_to_document(L: FiniteLattice, metadata: dict | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "elements": list(L.names),
        "covers": [[L.names[a], L.names[b]] for a, b in L.covers],
    }
    meta = {}
    for key in ("caption", "notes", "source"):
        if key in L.meta:
            meta[key] = L.meta[key]
    if L.meta.get("generators"):
        meta["generators"] = {g: L.names[i] for g, i in L.meta["generators"].items()}
    if metadata:
        meta.update(metadata)
    if meta:
        doc["metadata"] = meta
    return doc


def dumps(L: FiniteLattice) -> str:
    return json.dumps(lattice_to_document(L), indent=1, sort_keys=True)


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(L: FiniteLattice, name: str = "lattice") -> str:
    """Hasse diagram as a DOT digraph; edges point from lower to upper cover."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, label in enumerate(L.names):
        lines.append(f"  n{i} [label={_quote(label)}];")
    for a, b in sorted(L.covers):
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
