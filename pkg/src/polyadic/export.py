"""Serialization of diagrams to DOT and JSON documents.

Outputs are deterministic byte for byte: vertices appear in canonical order,
JSON objects are dumped with sorted keys, and every document carries the same
header block (schema version, polynomial, multiplicity mode, ordering, seed).
"""

from __future__ import annotations

import json

from .core import Diagram
from .vershik import Ordering
from .version import __version__

SCHEMA_VERSION = 1


def document_header(
    diagram: Diagram, ordering: Ordering | None = None, seed: int | None = None
) -> dict:
    header = {
        "schema_version": SCHEMA_VERSION,
        "generator": f"polyadic {__version__}",
        "polynomial": diagram.spec.to_json(),
        "mode": diagram.mode,
    }
    if ordering is not None:
        header["ordering"] = ordering.describe()
    if seed is not None:
        header["seed"] = seed
    return header


def to_stable_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _node_id(v) -> str:
    return f"n{v.level}_" + "_".join(map(str, v.coords))


def export_dot(diagram: Diagram, max_level: int, parallel_edges: bool = False) -> str:
    """DOT text of the diagram up to max_level.

    Multiplicities appear as edge labels by default, or as that many parallel
    edge lines when `parallel_edges` is set.
    """
    lines = [
        "digraph diagram {",
        "  rankdir=TB;",
        '  node [shape=box, fontname="monospace"];',
    ]
    for level in range(max_level + 1):
        names = []
        for v in diagram.vertices(level):
            lines.append(f'  {_node_id(v)} [label="{v}"];')
            names.append(_node_id(v))
        lines.append("  { rank=same; " + "; ".join(names) + "; }")
    for level in range(1, max_level + 1):
        for w in diagram.vertices(level):
            for u in diagram.source_set(w):
                count = diagram.multiplicity(u, w)
                if parallel_edges:
                    lines.extend(f"  {_node_id(u)} -> {_node_id(w)};" for _ in range(count))
                else:
                    lines.append(f'  {_node_id(u)} -> {_node_id(w)} [label="{count}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(diagram: Diagram, max_level: int) -> dict:
    """A complete JSON document for the diagram up to max_level."""
    levels = []
    for level in range(max_level + 1):
        vertices = []
        for v in diagram.vertices(level):
            entry = {
                "coords": list(v.coords),
                "dimension": diagram.dimension(v),
            }
            if level > 0:
                entry["sources"] = [
                    {"coords": list(u.coords), "multiplicity": diagram.multiplicity(u, v)}
                    for u in diagram.source_set(v)
                ]
            vertices.append(entry)
        levels.append({"level": level, "vertex_count": diagram.vertex_count(level), "vertices": vertices})
    doc = document_header(diagram)
    doc["levels"] = levels
    return doc
