"""Exact posterior marginals given evidence, plus a brute-force oracle.

:func:`posterior_marginals` runs variable elimination with a min-degree
ordering and answers the interactive "what-if" queries: evidence here is
observational conditioning (fixing observed outcomes), not a graph-surgery
intervention. :func:`brute_force_marginals` materializes the full joint by
chain-rule enumeration and exists purely as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .core import BayesianNetwork, SurveyBnError

BRUTE_FORCE_LIMIT = 10_000_000


class EvidenceError(SurveyBnError):
    """The evidence references an unknown node or an out-of-range state."""


class ImpossibleEvidenceError(SurveyBnError):
    """The evidence combination has probability zero under the model."""


class StateSpaceTooLarge(SurveyBnError):
    """The joint state space exceeds what brute-force enumeration permits."""


@dataclass(frozen=True)
class EvidenceQuery:
    """States a user has fixed: variable id -> state index."""

    assignments: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignments", dict(self.assignments))

    def validate(self, net: BayesianNetwork) -> None:
        for node, state in self.assignments.items():
            if node not in net._var_map:
                raise EvidenceError(f"evidence names unknown node {node!r}")
            if not isinstance(state, (int, np.integer)) or isinstance(state, bool):
                raise EvidenceError(f"evidence for {node!r} must be an integer state index")
            if not 0 <= int(state) < net.card(node):
                raise EvidenceError(
                    f"evidence state {state} for {node!r} out of range [0, {net.card(node)})"
                )


@dataclass(frozen=True)
class MarginalsResult:
    """Per-node posterior distributions plus the query that produced them."""

    marginals: Mapping[str, np.ndarray]
    evidence: EvidenceQuery

    def __post_init__(self) -> None:
        object.__setattr__(self, "marginals", dict(self.marginals))

    def vector(self, node: str) -> np.ndarray:
        return self.marginals[node]


# ---------------------------------------------------------------------------
# factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Factor:
    scope: tuple[str, ...]
    table: np.ndarray  # one axis per scope variable, in scope order


def _cpt_factor(net: BayesianNetwork, node: str) -> _Factor:
    cpt = net.cpts[node]
    scope = cpt.parents + (node,)
    shape = tuple(net.card(v) for v in scope)
    return _Factor(scope, cpt.table.reshape(shape))


def _reduce(factor: _Factor, evidence: Mapping[str, int]) -> _Factor:
    scope, table = factor.scope, factor.table
    for node in [v for v in scope if v in evidence]:
        axis = scope.index(node)
        table = np.take(table, evidence[node], axis=axis)
        scope = scope[:axis] + scope[axis + 1:]
    return _Factor(scope, table)


def _align(factor: _Factor, scope: tuple[str, ...], cards: dict[str, int]) -> np.ndarray:
    perm = [factor.scope.index(v) for v in scope if v in factor.scope]
    table = factor.table.transpose(perm)
    shape = tuple(cards[v] if v in factor.scope else 1 for v in scope)
    return table.reshape(shape)


def _product(a: _Factor, b: _Factor, cards: dict[str, int]) -> _Factor:
    scope = tuple(sorted(set(a.scope) | set(b.scope)))
    return _Factor(scope, _align(a, scope, cards) * _align(b, scope, cards))


def _sum_out(factor: _Factor, node: str) -> _Factor:
    axis = factor.scope.index(node)
    return _Factor(factor.scope[:axis] + factor.scope[axis + 1:], factor.table.sum(axis=axis))


def _min_degree_order(factors: Sequence[_Factor], keep: set[str]) -> list[str]:
    """Elimination order by the min-degree heuristic, lexical tie-break."""
    neighbors: dict[str, set[str]] = {}
    for f in factors:
        for v in f.scope:
            neighbors.setdefault(v, set()).update(f.scope)
    for v, ns in neighbors.items():
        ns.discard(v)

    order: list[str] = []
    remaining = {v for v in neighbors if v not in keep}
    while remaining:
        best = min(remaining, key=lambda v: (len(neighbors[v] & (remaining | keep)), v))
        order.append(best)
        live = neighbors[best] & (remaining | keep)
        for u in live:
            neighbors[u].update(live - {u})
            neighbors[u].discard(best)
        remaining.discard(best)
    return order


def _eliminate(factors: list[_Factor], order: Sequence[str], cards: dict[str, int]) -> list[_Factor]:
    for node in order:
        related = [f for f in factors if node in f.scope]
        if not related:
            continue
        product = related[0]
        for f in related[1:]:
            product = _product(f, product, cards)
        factors = [f for f in factors if node not in f.scope]
        factors.append(_sum_out(product, node))
    return factors


def posterior_marginals(
    net: BayesianNetwork,
    ev: EvidenceQuery | None = None,
    *,
    elimination_order: Sequence[str] | None = None,
) -> MarginalsResult:
    """Exact P(node | evidence) for every node, by variable elimination.

    ``elimination_order`` overrides the min-degree heuristic (any
    permutation of the non-target variables is valid and yields identical
    results; the override exists for order-independence testing).
    """
    ev = ev or EvidenceQuery()
    ev.validate(net)
    assignments = {k: int(v) for k, v in ev.assignments.items()}
    cards = {v.id: v.k for v in net.variables}

    if elimination_order is not None:
        unknown = sorted(set(elimination_order) - set(cards))
        if unknown:
            raise EvidenceError(f"elimination order names unknown node(s): {unknown}")
        missing = sorted(set(cards) - set(elimination_order))
        if missing:
            raise EvidenceError(f"elimination order must cover every node; missing {missing}")

    base = [_reduce(_cpt_factor(net, node), assignments) for node in net.dag.nodes]

    # P(evidence): eliminate everything; zero mass means impossible evidence.
    if assignments:
        order = _pick_order(base, set(), elimination_order)
        z = 1.0
        for f in _eliminate(list(base), order, cards):
            z *= float(f.table)
        if z <= 0.0:
            raise ImpossibleEvidenceError(
                "evidence combination has probability zero under the model: "
                + ", ".join(f"{k}={v}" for k, v in sorted(assignments.items()))
            )

    marginals: dict[str, np.ndarray] = {}
    for node in net.dag.nodes:
        if node in assignments:
            vec = np.zeros(cards[node])
            vec[assignments[node]] = 1.0
            marginals[node] = vec
            continue
        order = _pick_order(base, {node}, elimination_order)
        result = _eliminate(list(base), order, cards)
        vec = np.ones(cards[node])
        for f in result:
            vec = vec * _align(f, (node,), cards)
        total = vec.sum()
        if total <= 0.0:
            raise ImpossibleEvidenceError(f"evidence leaves no probability mass on {node!r}")
        marginals[node] = vec / total
    return MarginalsResult(marginals=marginals, evidence=ev)


def _pick_order(
    factors: Sequence[_Factor], keep: set[str], override: Sequence[str] | None
) -> list[str]:
    if override is None:
        return _min_degree_order(factors, keep)
    present = {v for f in factors for v in f.scope}
    return [v for v in override if v in present and v not in keep]


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def joint_probability(net: BayesianNetwork, full: Mapping[str, int]) -> float:
    """Chain-rule probability of one complete assignment."""
    missing = [n for n in net.dag.nodes if n not in full]
    if missing:
        raise EvidenceError(f"assignment is incomplete, missing {missing}")
    prob = 1.0
    for node in net.dag.nodes:
        cpt = net.cpts[node]
        row = 0
        if cpt.parents:
            cards = [net.card(p) for p in cpt.parents]
            row = cpt.row_index([full[p] for p in cpt.parents], cards)
        prob *= float(cpt.table[row, int(full[node])])
    return prob


def brute_force_marginals(net: BayesianNetwork, ev: EvidenceQuery | None = None) -> MarginalsResult:
    """Enumerate the entire joint distribution and condition on the evidence.

    Independent of the elimination engine by construction; refuses joint
    state spaces above ``BRUTE_FORCE_LIMIT`` configurations.
    """
    ev = ev or EvidenceQuery()
    ev.validate(net)
    nodes = list(net.dag.nodes)
    cards = [net.card(n) for n in nodes]
    total = 1
    for k in cards:
        total *= k
    if total > BRUTE_FORCE_LIMIT:
        raise StateSpaceTooLarge(
            f"joint state space has {total} configurations; oracle limit is {BRUTE_FORCE_LIMIT}"
        )

    axis = {n: i for i, n in enumerate(nodes)}
    joint = np.ones(tuple(cards))
    for node in nodes:
        cpt = net.cpts[node]
        involved = [axis[p] for p in cpt.parents] + [axis[node]]
        shape = [1] * len(nodes)
        for i in involved:
            shape[i] = cards[i]
        block = cpt.table.reshape([cards[i] for i in involved])
        block = block.transpose(np.argsort(involved))  # axes into global node order
        joint = joint * block.reshape(shape)

    for node, state in ev.assignments.items():
        i = axis[node]
        index: list[slice | list[int]] = [slice(None)] * len(nodes)
        index[i] = [int(state)]
        joint = joint[tuple(index)]

    z = joint.sum()
    if z <= 0.0:
        raise ImpossibleEvidenceError("evidence combination has probability zero under the model")

    marginals: dict[str, np.ndarray] = {}
    for node in nodes:
        others = tuple(i for i, n in enumerate(nodes) if n != node)
        vec = joint.sum(axis=others)
        if node in ev.assignments:
            full = np.zeros(net.card(node))
            full[int(ev.assignments[node])] = vec.item()
            vec = full
        marginals[node] = vec / z
    return MarginalsResult(marginals=marginals, evidence=ev)
