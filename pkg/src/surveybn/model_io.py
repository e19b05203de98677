"""Network file format: canonical JSON parsing and serialization.

The on-disk document is
``{name, nodes: [{id, label, states, position?}], edges: [{from, to, tag?}],
cpts: [{child, parents, rows}]}``. Serialization is canonical: keys sorted,
node/edge/cpt lists sorted by identity, floats printed with 12 significant
digits. Parse -> serialize -> parse is the identity, and serialization is
byte-stable after one canonicalization pass.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .core import ROW_SUM_TOL, BayesianNetwork, Cpt, Dag, SurveyBnError, Variable


class FormatError(SurveyBnError):
    """The document is not a well-formed network file."""


# ---------------------------------------------------------------------------
# canonical JSON emission
# ---------------------------------------------------------------------------

def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise FormatError("non-finite number is not representable in the network format")
    return format(float(x), ".12g")


def _is_scalar_list(value: list) -> bool:
    return all(not isinstance(v, (dict, list)) for v in value)


def _emit(value: Any, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [f'{inner}{json.dumps(str(k))}: {_emit(value[k], indent + 1)}' for k in sorted(value)]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        value = list(value)
        if not value:
            return "[]"
        if _is_scalar_list(value):
            return "[" + ", ".join(_emit(v, indent) for v in value) + "]"
        parts = [f"{inner}{_emit(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt_float(float(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    raise FormatError(f"cannot serialize value of type {type(value).__name__}")


def canonical_dumps(document: dict) -> str:
    """Render a JSON document in the canonical byte-stable form."""
    return _emit(document, 0) + "\n"


# ---------------------------------------------------------------------------
# network <-> document
# ---------------------------------------------------------------------------

def network_to_document(net: BayesianNetwork) -> dict:
    nodes = []
    for var in sorted(net.variables, key=lambda v: v.id):
        node: dict[str, Any] = {"id": var.id, "label": var.label, "states": list(var.states)}
        if var.position is not None:
            node["position"] = {"x": var.position[0], "y": var.position[1]}
        nodes.append(node)
    edges = []
    for a, b in sorted(set(net.dag.edges)):
        edge: dict[str, Any] = {"from": a, "to": b}
        tag = net.dag.edge_tags.get((a, b))
        if tag is not None:
            edge["tag"] = tag
        edges.append(edge)
    cpts = []
    for child in sorted(net.cpts):
        cpt = net.cpts[child]
        cpts.append(
            {
                "child": child,
                "parents": list(cpt.parents),
                "rows": [[float(p) for p in row] for row in cpt.table],
            }
        )
    doc: dict[str, Any] = {"name": net.name, "nodes": nodes, "edges": edges, "cpts": cpts}
    if net.description:
        doc["description"] = net.description
    if net.source:
        doc["source"] = net.source
    return doc


def serialize_network(net: BayesianNetwork) -> str:
    return canonical_dumps(network_to_document(net))


def serialize_structure(variables: Sequence[Variable], dag: Dag, name: str = "") -> str:
    """Serialize a structure-only document (empty ``cpts`` list)."""
    net = BayesianNetwork(variables=tuple(variables), dag=dag, cpts={}, name=name)
    return canonical_dumps(network_to_document(net))


def _require(doc: dict, key: str, kind: type) -> Any:
    if key not in doc:
        raise FormatError(f"missing key {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise FormatError(f"key {key!r} must be {kind.__name__}, got {type(value).__name__}")
    return value


def parse_variables(document: dict) -> tuple[Variable, ...]:
    """The ``nodes`` section of a network document, as Variables."""
    out = []
    for node in _require(document, "nodes", list):
        if not isinstance(node, dict):
            raise FormatError("each node must be an object")
        position = None
        if "position" in node:
            pos = node["position"]
            if not isinstance(pos, dict) or "x" not in pos or "y" not in pos:
                raise FormatError(f"node {node.get('id')!r} position must have x and y")
            position = (float(pos["x"]), float(pos["y"]))
        states = _require(node, "states", list)
        out.append(
            Variable(
                id=str(_require(node, "id", str)),
                label=str(node.get("label", "")),
                states=tuple(str(s) for s in states),
                position=position,
            )
        )
    return tuple(out)


def _parse_edges(document: dict) -> tuple[tuple[tuple[str, str], ...], dict[tuple[str, str], str]]:
    edges: list[tuple[str, str]] = []
    tags: dict[tuple[str, str], str] = {}
    for edge in document.get("edges", []):
        if not isinstance(edge, dict) or "from" not in edge or "to" not in edge:
            raise FormatError("each edge must be an object with 'from' and 'to'")
        pair = (str(edge["from"]), str(edge["to"]))
        edges.append(pair)
        if "tag" in edge:
            tags[pair] = str(edge["tag"])
    return tuple(edges), tags


def parse_structure(text: str) -> tuple[tuple[Variable, ...], Dag]:
    """Parse only the nodes and edges of a network document."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise FormatError("top-level document must be an object")
    variables = parse_variables(document)
    edges, tags = _parse_edges(document)
    dag = Dag(nodes=tuple(sorted(v.id for v in variables)), edges=tuple(sorted(edges)), edge_tags=tags)
    return variables, dag


def parse_network(text: str) -> BayesianNetwork:
    """Parse a full network document.

    CPT rows whose sum is within 1e-9 of 1 are re-normalized exactly on
    ingestion; rows further off are kept as-is so that
    :func:`surveybn.core.validate_network` can report them.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise FormatError("top-level document must be an object")

    variables = parse_variables(document)
    edges, tags = _parse_edges(document)
    dag = Dag(nodes=tuple(sorted(v.id for v in variables)), edges=tuple(sorted(edges)), edge_tags=tags)

    cpts: dict[str, Cpt] = {}
    for entry in document.get("cpts", []):
        if not isinstance(entry, dict):
            raise FormatError("each cpt must be an object")
        child = str(_require(entry, "child", str))
        parents = tuple(str(p) for p in _require(entry, "parents", list))
        rows = _require(entry, "rows", list)
        if child in cpts:
            raise FormatError(f"duplicate CPT for {child!r}")
        try:
            table = np.asarray(rows, dtype=np.float64)
        except ValueError as exc:
            raise FormatError(f"CPT rows for {child!r} must be a rectangular list of lists") from exc
        if table.ndim != 2:
            raise FormatError(f"CPT rows for {child!r} must be a rectangular list of lists")
        sums = table.sum(axis=1)
        fixable = np.abs(sums - 1.0) <= ROW_SUM_TOL
        table = np.where(fixable[:, None], table / np.where(sums == 0.0, 1.0, sums)[:, None], table)
        cpts[child] = Cpt(child=child, parents=parents, table=table)

    variables = tuple(sorted(variables, key=lambda v: v.id))
    return BayesianNetwork(
        variables=variables,
        dag=dag,
        cpts=cpts,
        name=str(document.get("name", "")),
        description=str(document.get("description", "")),
        source=str(document.get("source", "")),
    )


def load_network(path: str | Path) -> BayesianNetwork:
    return parse_network(Path(path).read_text(encoding="utf-8"))


def save_network(net: BayesianNetwork, path: str | Path) -> None:
    Path(path).write_text(serialize_network(net), encoding="utf-8")


def load_structure(path: str | Path) -> tuple[tuple[Variable, ...], Dag]:
    return parse_structure(Path(path).read_text(encoding="utf-8"))


def load_schema(path: str | Path) -> tuple[Variable, ...]:
    """Variables from the ``nodes`` section of any network/structure file."""
    variables, _ = parse_structure(Path(path).read_text(encoding="utf-8"))
    return variables
