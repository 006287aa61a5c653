"""JSON graph and packing files.

Graph file::

    {"format": "dijoin-graph", "version": 1,
     "nodes": ["a", "b"],
     "arcs": [{"tail": "a", "head": "b", "weight": 3, "id": 0}]}

``id`` is optional and defaults to the arc's position in the list. Packing
file::

    {"format": "dijoin-packing", "version": 1, "tau": 2, "no_dicut": false,
     "dijoins": [{"arcs": [0, 2], "multiplicity": 1}, ...]}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import InvalidInputError
from .graph import Arc, WeightedDigraph, node_key
from .packing import Packing

GRAPH_FORMAT = "dijoin-graph"
PACKING_FORMAT = "dijoin-packing"
VERSION = 1


def _check_header(doc: Any, fmt: str) -> None:
    if not isinstance(doc, dict):
        raise InvalidInputError("expected a JSON object")
    if doc.get("format", fmt) != fmt:
        raise InvalidInputError(f"expected format {fmt!r}, got {doc.get('format')!r}")
    if doc.get("version") != VERSION:
        raise InvalidInputError(f"unsupported version {doc.get('version')!r}")


def graph_from_dict(doc: dict) -> WeightedDigraph:
    _check_header(doc, GRAPH_FORMAT)
    try:
        nodes = tuple(doc["nodes"])
        arcs = []
        for pos, rec in enumerate(doc["arcs"]):
            weight = rec["weight"]
            if isinstance(weight, bool) or not isinstance(weight, int):
                raise InvalidInputError(f"arc {pos}: weight must be an integer")
            arcs.append(Arc(rec["tail"], rec["head"], weight, rec.get("id", pos)))
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed graph file: {exc}") from exc
    return WeightedDigraph(nodes, tuple(arcs))


def graph_to_dict(g: WeightedDigraph) -> dict:
    return {
        "format": GRAPH_FORMAT,
        "version": VERSION,
        "nodes": list(g.nodes),
        "arcs": [
            {"tail": a.tail, "head": a.head, "weight": a.weight, "id": a.id} for a in g.arcs
        ],
    }


def packing_to_dict(p: Packing) -> dict:
    return {
        "format": PACKING_FORMAT,
        "version": VERSION,
        "tau": p.tau,
        "no_dicut": p.no_dicut,
        "dijoins": [
            {"arcs": sorted(J, key=node_key), "multiplicity": lam}
            for J, lam in zip(p.dijoins, p.multiplicities)
        ],
    }


def packing_from_dict(doc: dict) -> Packing:
    """Read a packing without validating it; see ``packing_violations``."""
    _check_header(doc, PACKING_FORMAT)
    try:
        dijoins = tuple(frozenset(rec["arcs"]) for rec in doc["dijoins"])
        mult = tuple(rec["multiplicity"] for rec in doc["dijoins"])
        tau = doc["tau"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed packing file: {exc}") from exc
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in (*mult, tau)):
        raise InvalidInputError("tau and multiplicities must be integers")
    return Packing(dijoins, mult, tau, bool(doc.get("no_dicut", False)))


def _load(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc


def read_graph(path: str | Path) -> WeightedDigraph:
    return graph_from_dict(_load(path))


def read_packing(path: str | Path) -> Packing:
    return packing_from_dict(_load(path))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_json(path: str | Path, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
