"""Discrete Bayesian-network data model: variables, DAG, CPTs, validation.

Everything here is immutable after construction and safe to share across
threads. Construction is deliberately permissive: structurally broken
networks can be built and then inspected with :func:`validate_network`,
which reports violations as data instead of raising.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

ROW_SUM_TOL = 1e-9

EDGE_TAGS = ("cause-consequence", "definition-synthesis", "learned", "expert-added")


class SurveyBnError(Exception):
    """Base class for errors raised by this package."""


class CycleError(SurveyBnError):
    """A directed cycle was found where a DAG was required."""

    def __init__(self, cycle: Sequence[str]):
        self.cycle = list(cycle)
        super().__init__("cycle detected: " + " -> ".join([*self.cycle, self.cycle[0]]))


@dataclass(frozen=True)
class Variable:
    """A discrete survey factor: one node of the network.

    ``states`` is the ordered list of answer labels; its length is the
    cardinality K. ``position`` is optional UI layout metadata and carries
    no semantics.
    """

    id: str
    label: str
    states: tuple[str, ...]
    position: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        if self.position is not None:
            object.__setattr__(self, "position", (float(self.position[0]), float(self.position[1])))

    @property
    def k(self) -> int:
        return len(self.states)

    def state_index(self, label: str) -> int:
        """Index of a state label. Matching is case-sensitive."""
        try:
            return self.states.index(label)
        except ValueError:
            raise KeyError(f"variable {self.id!r} has no state {label!r}") from None


@dataclass(frozen=True)
class Dag:
    """Directed graph over variable ids with optional per-edge tags.

    Edges are stored in the order given (duplicates permitted so that
    validation can report them). Acyclicity is not enforced here.
    """

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...] = ()
    edge_tags: Mapping[tuple[str, str], str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple((str(a), str(b)) for a, b in self.edges))
        object.__setattr__(self, "edge_tags", dict(self.edge_tags))

    @cached_property
    def _parent_map(self) -> dict[str, tuple[str, ...]]:
        parents: dict[str, list[str]] = {n: [] for n in self.nodes}
        for a, b in self.edges:
            parents.setdefault(b, []).append(a)
        return {n: tuple(sorted(set(ps))) for n, ps in parents.items()}

    @cached_property
    def _child_map(self) -> dict[str, tuple[str, ...]]:
        children: dict[str, list[str]] = {n: [] for n in self.nodes}
        for a, b in self.edges:
            children.setdefault(a, []).append(b)
        return {n: tuple(sorted(set(cs))) for n, cs in children.items()}

    def parents_of(self, node: str) -> tuple[str, ...]:
        return self._parent_map.get(node, ())

    def children_of(self, node: str) -> tuple[str, ...]:
        return self._child_map.get(node, ())

    def has_edge(self, a: str, b: str) -> bool:
        return (a, b) in set(self.edges)

    def replace_edges(
        self,
        edges: Iterable[tuple[str, str]],
        edge_tags: Mapping[tuple[str, str], str] | None = None,
    ) -> "Dag":
        """A copy of this DAG with a different edge set."""
        edges = tuple(edges)
        if edge_tags is None:
            edge_tags = {e: t for e, t in self.edge_tags.items() if e in set(edges)}
        return Dag(self.nodes, edges, edge_tags)


@dataclass(frozen=True, eq=False)
class Cpt:
    """Conditional probability table for one child node.

    ``table`` has one row per joint parent configuration (a single row for
    root nodes) and one column per child state. Rows are indexed in
    mixed-radix order with the LAST parent varying fastest; this layout is
    part of the serialized format.
    """

    child: str
    parents: tuple[str, ...]
    table: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "parents", tuple(self.parents))
        table = np.asarray(self.table, dtype=np.float64)
        if table.ndim == 1:
            table = table.reshape(1, -1)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def n_rows(self) -> int:
        return self.table.shape[0]

    @property
    def k(self) -> int:
        return self.table.shape[1]

    def row_index(self, parent_states: Sequence[int], parent_cards: Sequence[int]) -> int:
        """Mixed-radix row index for a parent configuration (last parent fastest)."""
        if not self.parents:
            return 0
        return int(np.ravel_multi_index(tuple(int(s) for s in parent_states), tuple(parent_cards)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cpt):
            return NotImplemented
        return (
            self.child == other.child
            and self.parents == other.parents
            and self.table.shape == other.table.shape
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:  # pragma: no cover - identity hash is enough
        return hash((self.child, self.parents, self.table.shape))


@dataclass(frozen=True, eq=False)
class BayesianNetwork:
    """An immutable discrete Bayesian network: variables, DAG, and CPTs."""

    variables: tuple[Variable, ...]
    dag: Dag
    cpts: Mapping[str, Cpt]
    name: str = ""
    description: str = ""
    source: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "cpts", dict(self.cpts))

    @cached_property
    def _var_map(self) -> dict[str, Variable]:
        return {v.id: v for v in self.variables}

    def variable(self, node: str) -> Variable:
        return self._var_map[node]

    def card(self, node: str) -> int:
        return self._var_map[node].k

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BayesianNetwork):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.dag == other.dag
            and self.cpts == other.cpts
            and self.name == other.name
            and self.description == other.description
            and self.source == other.source
        )


@dataclass(frozen=True)
class Violation:
    """One violated invariant, identified by a stable code and the guilty parts."""

    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def __str__(self) -> str:
        if self.is_valid:
            return "valid"
        return "\n".join(f"[{v.code}] {v.message}" for v in self.violations)


def find_cycle(dag: Dag) -> list[str] | None:
    """One directed cycle in ``dag`` as a node list, or None if acyclic."""
    color: dict[str, int] = {}  # 0 unseen, 1 on stack, 2 done
    stack: list[str] = []

    children: dict[str, list[str]] = {n: [] for n in dag.nodes}
    for a, b in dag.edges:
        if a in children:
            children[a].append(b)

    def visit(node: str) -> list[str] | None:
        color[node] = 1
        stack.append(node)
        for nxt in sorted(children.get(node, ())):
            if nxt not in children:
                continue  # dangling endpoint, reported separately
            state = color.get(nxt, 0)
            if state == 1:
                return stack[stack.index(nxt):]
            if state == 0:
                found = visit(nxt)
                if found is not None:
                    return found
        stack.pop()
        color[node] = 2
        return None

    for start in sorted(dag.nodes):
        if color.get(start, 0) == 0:
            found = visit(start)
            if found is not None:
                return found
    return None


def topological_order(dag: Dag) -> list[str]:
    """Nodes ordered so every parent precedes its children.

    Deterministic: ties are broken by lexical node id. Raises
    :class:`CycleError` carrying one offending cycle if the graph is not
    acyclic.
    """
    nodes = set(dag.nodes)
    for a, b in dag.edges:
        if a not in nodes or b not in nodes:
            raise ValueError(f"edge ({a!r}, {b!r}) references an undeclared node")

    indegree = {n: 0 for n in dag.nodes}
    children: dict[str, set[str]] = {n: set() for n in dag.nodes}
    for a, b in set(dag.edges):
        if b not in children[a]:
            children[a].add(b)
            indegree[b] += 1

    heap = [n for n, d in indegree.items() if d == 0]
    heapq.heapify(heap)
    order: list[str] = []
    while heap:
        node = heapq.heappop(heap)
        order.append(node)
        for child in sorted(children[node]):
            indegree[child] -= 1
            if indegree[child] == 0:
                heapq.heappush(heap, child)
    if len(order) != len(nodes):
        cycle = find_cycle(dag)
        assert cycle is not None
        raise CycleError(cycle)
    return order


def validate_network(net: BayesianNetwork) -> ValidationReport:
    """Check every structural invariant and report each violation found.

    An empty report means the network is valid. Violations are data, not
    failures: any representable network can be validated.
    """
    out: list[Violation] = []

    seen_ids: set[str] = set()
    for var in net.variables:
        if var.id in seen_ids:
            out.append(Violation("duplicate_variable", f"variable id {var.id!r} declared twice"))
        seen_ids.add(var.id)
        if len(set(var.states)) != len(var.states):
            out.append(Violation("duplicate_state", f"variable {var.id!r} has repeated state labels"))
        if var.k < 2:
            out.append(Violation("cardinality", f"variable {var.id!r} has {var.k} state(s), need >= 2"))

    declared = set(net.dag.nodes)
    if declared != seen_ids:
        missing = sorted(declared - seen_ids)
        extra = sorted(seen_ids - declared)
        if missing:
            out.append(Violation("undeclared_variable", f"dag nodes without a variable: {missing}"))
        if extra:
            out.append(Violation("unused_variable", f"variables not in the dag: {extra}"))

    seen_edges: set[tuple[str, str]] = set()
    for a, b in net.dag.edges:
        if a == b:
            out.append(Violation("self_loop", f"self-loop on {a!r}"))
        if (a, b) in seen_edges:
            out.append(Violation("duplicate_edge", f"edge ({a!r}, {b!r}) appears twice"))
        seen_edges.add((a, b))
        for end in (a, b):
            if end not in declared:
                out.append(Violation("dangling_edge", f"edge ({a!r}, {b!r}) endpoint {end!r} is not a node"))
    for edge, tag in net.dag.edge_tags.items():
        if tag not in EDGE_TAGS:
            out.append(Violation("bad_edge_tag", f"edge {edge} has unknown tag {tag!r}"))

    cycle = find_cycle(net.dag)
    if cycle is not None:
        out.append(Violation("cycle", "cycle through nodes {" + ", ".join(sorted(cycle)) + "}"))

    for node in net.dag.nodes:
        cpt = net.cpts.get(node)
        if cpt is None:
            out.append(Violation("missing_cpt", f"node {node!r} has no CPT"))
            continue
        if node not in net._var_map:
            continue  # already reported as undeclared_variable
        if set(cpt.parents) != set(net.dag.parents_of(node)):
            out.append(
                Violation(
                    "parent_mismatch",
                    f"CPT for {node!r} lists parents {list(cpt.parents)}, dag has {list(net.dag.parents_of(node))}",
                )
            )
            continue
        known = all(p in net._var_map for p in cpt.parents)
        if not known:
            continue
        expected_rows = 1
        for p in cpt.parents:
            expected_rows *= net.card(p)
        if cpt.table.shape != (expected_rows, net.card(node)):
            out.append(
                Violation(
                    "shape_mismatch",
                    f"CPT for {node!r} has shape {cpt.table.shape}, expected ({expected_rows}, {net.card(node)})",
                )
            )
            continue
        if np.any(cpt.table < 0.0) or np.any(cpt.table > 1.0):
            bad = np.argwhere((cpt.table < 0.0) | (cpt.table > 1.0))[0]
            out.append(
                Violation(
                    "entry_range",
                    f"CPT for {node!r} entry at row {bad[0]}, column {bad[1]} is outside [0, 1]",
                )
            )
        sums = cpt.table.sum(axis=1)
        off = np.argwhere(np.abs(sums - 1.0) > ROW_SUM_TOL)
        for (row,) in off:
            out.append(
                Violation(
                    "row_sum",
                    f"CPT for {node!r} row {row} sums to {sums[row]:.12g}, expected 1",
                )
            )

    for node in net.cpts:
        if node not in declared:
            out.append(Violation("extra_cpt", f"CPT for {node!r} but no such node"))

    return ValidationReport(tuple(out))


def parameter_count(net: BayesianNetwork) -> int:
    """Number of independent CPT parameters: sum of (K-1) * prod(parent cards)."""
    total = 0
    for node in net.dag.nodes:
        rows = 1
        for p in net.dag.parents_of(node):
            rows *= net.card(p)
        total += rows * (net.card(node) - 1)
    return total
