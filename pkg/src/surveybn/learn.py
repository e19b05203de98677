"""Data-driven structure learning and structure comparison.

Implements BIC scoring, the chi-squared conditional-independence test,
hill-climbing and Peter-Clark structure search, bootstrap edge-stability
analysis, and BIC ranking of candidate structures.

Score direction follows BIC = -2 * logL + k * ln(n): lower is better.
All learners are deterministic functions of (dataset, config, seed).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
from scipy.stats import chi2

from .core import CycleError, Dag, SurveyBnError, find_cycle
from .data import MISSING, Dataset

DEFAULT_SIGNIFICANCE = 0.05
DEFAULT_MAX_PARENTS = 4
DEFAULT_TABU_LENGTH = 10
DEFAULT_BOOTSTRAP_REPLICATES = 100

# move deltas this close are treated as exact score ties and broken by the
# lexicographic move key, keeping orientations of score-equivalent edges
# stable across runs and bootstrap replicates
SCORE_TIE_TOL = 1e-9

PROVENANCES = ("expert", "hc", "pc", "manual")


class LearnError(SurveyBnError):
    pass


class CiTestUntestable(LearnError):
    """Every stratum of a CI test fell below the minimum expected count."""


class ConstraintConflictError(LearnError):
    """A structure constraint could not be honored by the learner."""


@dataclass(frozen=True)
class StructureConstraints:
    """Edge whitelist/blacklist imposed on learned structures.

    ``required_edges`` must appear (with that direction) in any output;
    ``forbidden_edges`` must not. Both are sets of ordered (parent, child)
    pairs.
    """

    required_edges: frozenset[tuple[str, str]] = frozenset()
    forbidden_edges: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self) -> None:
        required = frozenset((str(a), str(b)) for a, b in self.required_edges)
        forbidden = frozenset((str(a), str(b)) for a, b in self.forbidden_edges)
        object.__setattr__(self, "required_edges", required)
        object.__setattr__(self, "forbidden_edges", forbidden)
        overlap = required & forbidden
        if overlap:
            raise ValueError(f"edges both required and forbidden: {sorted(overlap)}")
        nodes = sorted({n for e in required for n in e})
        cycle = find_cycle(Dag(nodes=tuple(nodes), edges=tuple(sorted(required))))
        if cycle is not None:
            raise ValueError("required edges admit no acyclic completion: cycle " + " -> ".join(cycle))


_EMPTY_CONSTRAINTS = StructureConstraints()


@dataclass(frozen=True)
class ScoreReport:
    """BIC evaluation of one candidate structure on one dataset."""

    candidate: Dag
    provenance: str
    bic: float
    log_likelihood: float
    parameter_count: int
    n: int
    config: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {PROVENANCES}, got {self.provenance!r}")
        object.__setattr__(self, "config", dict(self.config))

    def to_document(self) -> dict:
        """Plain-data form used by the report JSON file format."""
        return {
            "provenance": self.provenance,
            "bic": float(self.bic),
            "log_likelihood": float(self.log_likelihood),
            "k": int(self.parameter_count),
            "n": int(self.n),
            "config": dict(self.config),
        }


@dataclass(frozen=True)
class EdgeConfidence:
    """Bootstrap stability of learned edges.

    Counts are integers out of ``b`` replicates, so every fraction is an
    exact rational with denominator ``b``. Directed counts are keyed by
    ordered pair; adjacency counts by sorted pair (either direction).
    """

    b: int
    directed_counts: Mapping[tuple[str, str], int]
    adjacency_counts: Mapping[tuple[str, str], int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "directed_counts", dict(self.directed_counts))
        object.__setattr__(self, "adjacency_counts", dict(self.adjacency_counts))

    def directed_fraction(self, a: str, b: str) -> float:
        return self.directed_counts.get((a, b), 0) / self.b

    def adjacency_fraction(self, a: str, b: str) -> float:
        key = (a, b) if a <= b else (b, a)
        return self.adjacency_counts.get(key, 0) / self.b

    def pairs(self) -> list[tuple[str, str]]:
        """Sorted pairs that appeared (in either direction) at least once."""
        return sorted(self.adjacency_counts)


# ---------------------------------------------------------------------------
# likelihood and BIC
# ---------------------------------------------------------------------------

def _complete_rows(ds: Dataset, nodes: Sequence[str]) -> np.ndarray:
    """Rows with no missing value in any of ``nodes``, as int64."""
    cols = [ds.column(n) for n in nodes]
    mask = (ds.codes[:, cols] != MISSING).all(axis=1)
    return ds.codes[mask].astype(np.int64)


def _family_log_likelihood(rows: np.ndarray, cols: Sequence[int], cards: Sequence[int]) -> float:
    """Maximized log-likelihood term for one family (parents first, child last).

    Uses the multinomial ML identity sum(count * ln(count / total)) with the
    0 * ln 0 = 0 convention.
    """
    if rows.shape[0] == 0:
        return 0.0
    arr = rows[:, cols]
    flat = np.ravel_multi_index(tuple(arr.T), tuple(cards)) if len(cols) > 1 else arr[:, 0]
    counts = np.bincount(flat, minlength=int(np.prod(cards))).reshape(-1, cards[-1])
    totals = counts.sum(axis=1)
    nz = counts > 0
    term = float(np.sum(counts[nz] * np.log(counts[nz])))
    tz = totals > 0
    return term - float(np.sum(totals[tz] * np.log(totals[tz])))


class _FamilyScorer:
    """Per-family BIC local scores on a fixed complete-case table, cached.

    The row set is complete cases over one fixed node set, so local deltas
    are exact: changing one family changes exactly one term.
    """

    def __init__(self, ds: Dataset, nodes: Sequence[str]):
        self.nodes = tuple(nodes)
        self.cols = {n: i for i, n in enumerate(self.nodes)}
        self.cards = {n: ds.variable(n).k for n in self.nodes}
        self.rows = _complete_rows(ds, self.nodes)[:, [ds.column(n) for n in self.nodes]]
        self.n = int(self.rows.shape[0])
        self._cache: dict[tuple[str, tuple[str, ...]], float] = {}

    def log_n(self) -> float:
        return math.log(self.n) if self.n > 0 else 0.0

    def family_ll(self, child: str, parents: Sequence[str]) -> float:
        fam = [*parents, child]
        return _family_log_likelihood(self.rows, [self.cols[v] for v in fam], [self.cards[v] for v in fam])

    def local(self, child: str, parents: Iterable[str]) -> float:
        """-2 * family logL + family parameter count * ln(n)."""
        parents = tuple(sorted(parents))
        key = (child, parents)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        k_local = (self.cards[child] - 1) * math.prod(self.cards[p] for p in parents)
        score = -2.0 * self.family_ll(child, parents) + k_local * self.log_n()
        self._cache[key] = score
        return score

    def total(self, dag: Dag) -> float:
        return sum(self.local(node, dag.parents_of(node)) for node in dag.nodes)


def log_likelihood(dag: Dag, ds: Dataset) -> float:
    """Maximized log-likelihood of the complete-case data under ``dag``.

    Rows with a missing value in any of the dag's nodes are excluded, so
    nested structures are compared on identical data and adding an edge can
    never decrease the result. Decomposes as a sum of per-family terms.
    """
    nodes = list(dag.nodes)
    rows = _complete_rows(ds, nodes)
    cols = {n: ds.column(n) for n in nodes}
    cards = {n: ds.variable(n).k for n in nodes}
    total = 0.0
    for node in nodes:
        fam = [*dag.parents_of(node), node]
        total += _family_log_likelihood(rows, [cols[v] for v in fam], [cards[v] for v in fam])
    return total


def bic_score(dag: Dag, ds: Dataset, provenance: str = "manual", config: Mapping[str, object] | None = None) -> ScoreReport:
    """BIC report for one structure: -2 * logL + k * ln(n), lower is better.

    n is the number of complete cases over the dag's node set.
    """
    rows = _complete_rows(ds, list(dag.nodes))
    n = int(rows.shape[0])
    if n == 0:
        raise LearnError("no complete cases over the dag's nodes; BIC is undefined")
    ll = log_likelihood(dag, ds)
    k = 0
    for node in dag.nodes:
        k += (ds.variable(node).k - 1) * math.prod(ds.variable(p).k for p in dag.parents_of(node))
    return ScoreReport(
        candidate=dag,
        provenance=provenance,
        bic=-2.0 * ll + k * math.log(n),
        log_likelihood=ll,
        parameter_count=k,
        n=n,
        config=dict(config or {}),
    )


def compare_structures(candidates: Sequence[tuple[Dag, str]], ds: Dataset) -> list[ScoreReport]:
    """Score candidates and rank them best (lowest BIC) first.

    Ties break by fewer parameters, then provenance order
    expert > hc > pc > manual.
    """
    if not candidates:
        raise LearnError("no candidate structures to compare")
    reports = [bic_score(dag, ds, provenance=prov) for dag, prov in candidates]
    rank = {p: i for i, p in enumerate(PROVENANCES)}
    return sorted(reports, key=lambda r: (r.bic, r.parameter_count, rank[r.provenance]))


# ---------------------------------------------------------------------------
# conditional-independence testing
# ---------------------------------------------------------------------------

def chi_square_ci_test(ds: Dataset, x: str, y: str, z: Iterable[str] = ()) -> float:
    """P-value of the chi-squared test of X independent of Y given Z.

    Complete cases over {x, y} | z; the statistic sums over observed
    z-strata whose expected counts all reach 5, against df
    (Kx-1)(Ky-1)*prod(Kz). Raises :class:`CiTestUntestable` when no stratum
    is adequate; callers conventionally treat that as independence.
    """
    z = tuple(z)
    if x == y:
        raise LearnError("x and y must differ")
    if x in z or y in z:
        raise LearnError("x and y must not appear in z")
    scope = (x, y, *z)
    rows = _complete_rows(ds, scope)[:, [ds.column(v) for v in scope]]
    kx = ds.variable(x).k
    ky = ds.variable(y).k
    z_cards = [ds.variable(v).k for v in z]

    if z:
        strata = np.ravel_multi_index(tuple(rows[:, 2:].T), tuple(z_cards))
    else:
        strata = np.zeros(rows.shape[0], dtype=np.int64)

    stat = 0.0
    tested = 0
    for s in np.unique(strata):
        cell = rows[strata == s]
        observed = (
            np.bincount(cell[:, 0] * ky + cell[:, 1], minlength=kx * ky)
            .reshape(kx, ky)
            .astype(np.float64)
        )
        expected = np.outer(observed.sum(axis=1), observed.sum(axis=0)) / observed.sum()
        if expected.min() < 5.0:
            continue
        stat += float(((observed - expected) ** 2 / expected).sum())
        tested += 1
    if tested == 0:
        raise CiTestUntestable(
            f"no stratum of {x} x {y} given {list(z)} reaches the minimum expected count 5"
        )
    df = (kx - 1) * (ky - 1) * math.prod(z_cards)
    return float(chi2.sf(stat, df))


# ---------------------------------------------------------------------------
# Peter-Clark
# ---------------------------------------------------------------------------

def _reaches(directed: set[tuple[str, str]], start: str, goal: str) -> bool:
    """True if a directed path start -> ... -> goal exists."""
    if start == goal:
        return True
    children: dict[str, set[str]] = {}
    for a, b in directed:
        children.setdefault(a, set()).add(b)
    frontier = [start]
    seen = {start}
    while frontier:
        node = frontier.pop()
        for nxt in children.get(node, ()):
            if nxt == goal:
                return True
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return False


class _Pdag:
    """Mutable partially directed graph used during PC orientation."""

    def __init__(self, nodes: Sequence[str], skeleton: Iterable[frozenset], forbidden: frozenset):
        self.nodes = tuple(nodes)
        self.undirected: set[frozenset] = set(skeleton)
        self.directed: set[tuple[str, str]] = set()
        self.forbidden = forbidden
        self.neighbors: dict[str, set[str]] = {n: set() for n in nodes}
        for pair in self.undirected:
            a, b = sorted(pair)
            self.neighbors[a].add(b)
            self.neighbors[b].add(a)

    def adjacent(self, a: str, b: str) -> bool:
        return b in self.neighbors[a]

    def is_undirected(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.undirected

    def orient(self, a: str, b: str) -> bool:
        """Direct a-b as a->b if undirected, allowed, and acyclic; else no-op."""
        if not self.is_undirected(a, b):
            return False
        if (a, b) in self.forbidden:
            return False
        if _reaches(self.directed, b, a):
            return False
        self.undirected.discard(frozenset((a, b)))
        self.directed.add((a, b))
        return True


def _apply_meek_rules(g: _Pdag) -> None:
    """Propagate orientations with Meek rules R1-R4 until fixpoint."""
    changed = True
    while changed:
        changed = False
        for pair in sorted(g.undirected, key=sorted):
            for a, b in (tuple(sorted(pair)), tuple(sorted(pair))[::-1]):
                if not g.is_undirected(a, b):
                    continue
                # R1: x -> a, a - b, x and b nonadjacent  =>  a -> b
                if any(
                    (x, a) in g.directed and not g.adjacent(x, b)
                    for x in sorted(g.neighbors[a])
                    if x != b
                ):
                    changed |= g.orient(a, b)
                    continue
                # R2: a -> x -> b with a - b  =>  a -> b
                if any(
                    (a, x) in g.directed and (x, b) in g.directed
                    for x in sorted(g.neighbors[a] & g.neighbors[b])
                ):
                    changed |= g.orient(a, b)
                    continue
                # R3: a - c, a - d, c -> b, d -> b, c and d nonadjacent  =>  a -> b
                spouses = [
                    x
                    for x in sorted(g.neighbors[a] & g.neighbors[b])
                    if g.is_undirected(a, x) and (x, b) in g.directed
                ]
                if any(
                    not g.adjacent(c, d) for c, d in combinations(spouses, 2)
                ):
                    changed |= g.orient(a, b)
                    continue
                # R4: a - c, a - d, c -> d, d -> b, b and c nonadjacent  =>  a -> b
                fired = False
                for d in sorted(g.neighbors[a]):
                    if (d, b) not in g.directed:
                        continue
                    for c in sorted(g.neighbors[a]):
                        if c != d and (c, d) in g.directed and not g.adjacent(b, c):
                            fired = g.orient(a, b)
                            break
                    if fired:
                        break
                changed |= fired


def pc_algorithm(
    ds: Dataset,
    significance: float = DEFAULT_SIGNIFICANCE,
    constraints: StructureConstraints | None = None,
    *,
    audit_log: list | None = None,
) -> Dag:
    """Peter-Clark constraint-based structure learning over all variables.

    Starts from the complete undirected graph, removes edges whose endpoints
    test conditionally independent (growing conditioning sets drawn from
    current neighborhoods), orients v-structures from separating sets,
    propagates with Meek rules, then directs leftover undirected edges from
    the lexically smaller to the larger id. Untestable CI calls count as
    independence. ``audit_log``, when given, receives one record per removed
    edge with its justification.
    """
    if not 0.0 < significance < 1.0:
        raise LearnError(f"significance must be in (0, 1), got {significance}")
    constraints = constraints or _EMPTY_CONSTRAINTS
    nodes = sorted(v.id for v in ds.variables)
    protected = {
        frozenset(e) for e in constraints.required_edges
    }

    adj: dict[str, set[str]] = {n: set(m for m in nodes if m != n) for n in nodes}
    removed_at_start = {
        frozenset((a, b))
        for a, b in constraints.forbidden_edges
        if (b, a) in constraints.forbidden_edges
    }
    for pair in sorted(removed_at_start, key=sorted):
        a, b = sorted(pair)
        adj[a].discard(b)
        adj[b].discard(a)
        if audit_log is not None:
            audit_log.append(
                {"edge": (a, b), "separating_set": None, "p_value": None, "reason": "forbidden"}
            )

    sepsets: dict[frozenset, frozenset] = {}
    level = 0
    while True:
        any_candidate = False
        for a in nodes:
            for b in sorted(adj[a]):
                if a >= b or frozenset((a, b)) in protected:
                    continue
                separated = False
                for tail, head in ((a, b), (b, a)):
                    pool = sorted(adj[tail] - {head})
                    if len(pool) < level:
                        continue
                    any_candidate = True
                    for zs in combinations(pool, level):
                        try:
                            p = chi_square_ci_test(ds, a, b, zs)
                            independent = p > significance
                            reason = "independent"
                        except CiTestUntestable:
                            p = None
                            independent = True
                            reason = "untestable"
                        if independent:
                            adj[a].discard(b)
                            adj[b].discard(a)
                            sepsets[frozenset((a, b))] = frozenset(zs)
                            if audit_log is not None:
                                audit_log.append(
                                    {
                                        "edge": (a, b),
                                        "separating_set": tuple(zs),
                                        "p_value": p,
                                        "reason": reason,
                                    }
                                )
                            separated = True
                            break
                    if separated:
                        break
        if not any_candidate:
            break
        level += 1

    skeleton = {frozenset((a, b)) for a in nodes for b in adj[a]}
    g = _Pdag(nodes, skeleton, constraints.forbidden_edges)

    # background knowledge first: required edges are oriented before anything
    for a, b in sorted(constraints.required_edges):
        g.orient(a, b)

    # v-structures: a - c - b with a, b nonadjacent and c outside sepset(a, b)
    for c in nodes:
        for a, b in combinations(sorted(g.neighbors[c]), 2):
            if g.adjacent(a, b):
                continue
            if c not in sepsets.get(frozenset((a, b)), frozenset()):
                g.orient(a, c)
                g.orient(b, c)

    _apply_meek_rules(g)

    # DAG-ize the leftovers deterministically: lexically small -> large,
    # falling back to the reverse when that direction would close a cycle
    for pair in sorted(g.undirected, key=sorted):
        a, b = sorted(pair)
        if not g.orient(a, b):
            g.orient(b, a)

    for a, b in sorted(constraints.required_edges):
        if (a, b) not in g.directed:
            raise ConstraintConflictError(
                f"required edge ({a!r}, {b!r}) was lost during orientation"
            )

    edges = tuple(sorted(g.directed))
    dag = Dag(nodes=tuple(nodes), edges=edges, edge_tags={e: "learned" for e in edges})
    cycle = find_cycle(dag)
    if cycle is not None:  # pragma: no cover - orientation guards prevent this
        raise CycleError(cycle)
    return dag


# ---------------------------------------------------------------------------
# hill climbing
# ---------------------------------------------------------------------------

def _inverse_move(op: str, a: str, b: str) -> tuple[str, str, str]:
    if op == "add":
        return ("delete", a, b)
    if op == "delete":
        return ("add", a, b)
    return ("reverse", b, a)


def _climb(
    scorer: _FamilyScorer,
    start_parents: dict[str, set[str]],
    constraints: StructureConstraints,
    max_parents: int,
    tabu_length: int,
) -> tuple[dict[str, set[str]], float]:
    """Greedy BIC descent from one start; returns (parents map, bic)."""
    nodes = scorer.nodes
    parents = {n: set(ps) for n, ps in start_parents.items()}
    locals_ = {n: scorer.local(n, parents[n]) for n in nodes}
    bic = sum(locals_.values())
    # maxlen=0 keeps the deque permanently empty, disabling tabu
    tabu: deque[tuple[str, str, str]] = deque(maxlen=max(tabu_length, 0))

    while True:
        edges = {(p, c) for c in nodes for p in parents[c]}
        best: tuple[float, tuple[str, str, str]] | None = None

        def consider(delta: float, key: tuple[str, str, str]) -> None:
            nonlocal best
            if (
                best is None
                or delta < best[0] - SCORE_TIE_TOL
                or (abs(delta - best[0]) <= SCORE_TIE_TOL and key < best[1])
            ):
                best = (delta, key)

        for a in nodes:
            for b in nodes:
                if a == b:
                    continue
                if (a, b) not in edges:
                    key = ("add", a, b)
                    if (
                        (a, b) not in constraints.forbidden_edges
                        and len(parents[b]) < max_parents
                        and key not in tabu
                        and not _reaches(edges, b, a)
                    ):
                        consider(scorer.local(b, parents[b] | {a}) - locals_[b], key)
                    continue
                key = ("delete", a, b)
                if (a, b) not in constraints.required_edges and key not in tabu:
                    consider(scorer.local(b, parents[b] - {a}) - locals_[b], key)
                key = ("reverse", a, b)
                # reversing to b -> a closes a cycle iff a still reaches b
                # through some other path
                if (
                    (a, b) not in constraints.required_edges
                    and (b, a) not in constraints.forbidden_edges
                    and len(parents[a]) < max_parents
                    and key not in tabu
                    and not _reaches(edges - {(a, b)}, a, b)
                ):
                    consider(
                        scorer.local(b, parents[b] - {a})
                        - locals_[b]
                        + scorer.local(a, parents[a] | {b})
                        - locals_[a],
                        key,
                    )

        if best is None or best[0] >= -SCORE_TIE_TOL:
            return parents, bic

        op, a, b = best[1]
        if op == "add":
            parents[b].add(a)
        elif op == "delete":
            parents[b].discard(a)
        else:
            parents[b].discard(a)
            parents[a].add(b)
        for node in (a, b):
            locals_[node] = scorer.local(node, parents[node])
        bic = sum(locals_.values())
        tabu.append(_inverse_move(op, a, b))


def hill_climb(
    ds: Dataset,
    constraints: StructureConstraints | None = None,
    *,
    max_parents: int = DEFAULT_MAX_PARENTS,
    tabu_length: int = DEFAULT_TABU_LENGTH,
    restarts: int = 0,
    seed: int = 0,
) -> Dag:
    """Greedy BIC hill climbing over add/delete/reverse single-edge moves.

    Starts from the required edges (the empty graph absent constraints) and
    descends until no move improves BIC. Optional random restarts rerun the
    descent from random admissible DAGs (edges drawn forward along a random
    node order); the best local optimum by BIC wins. Deterministic for a
    fixed seed.
    """
    constraints = constraints or _EMPTY_CONSTRAINTS
    nodes = sorted(v.id for v in ds.variables)
    for a, b in sorted(constraints.required_edges | constraints.forbidden_edges):
        for end in (a, b):
            if end not in set(nodes):
                raise LearnError(f"constraint edge ({a!r}, {b!r}) endpoint {end!r} is not a dataset variable")
    scorer = _FamilyScorer(ds, nodes)
    if scorer.n == 0:
        raise LearnError("no complete cases over the dataset's variables")

    base: dict[str, set[str]] = {n: set() for n in nodes}
    for a, b in constraints.required_edges:
        base[b].add(a)

    best_parents, best_bic = _climb(scorer, base, constraints, max_parents, tabu_length)

    rng = np.random.default_rng(seed)
    for _ in range(max(restarts, 0)):
        start = {n: set(ps) for n, ps in base.items()}
        edges = {(p, c) for c in nodes for p in start[c]}
        order = list(nodes)
        rng.shuffle(order)
        for i, b in enumerate(order):
            for a in order[:i]:
                # required edges may run against the order, so keep the
                # reachability guard even though drawn edges point forward
                if (
                    rng.random() < 0.5
                    or (a, b) in edges
                    or (a, b) in constraints.forbidden_edges
                    or len(start[b]) >= max_parents
                    or _reaches(edges, b, a)
                ):
                    continue
                start[b].add(a)
                edges.add((a, b))
        parents, bic = _climb(scorer, start, constraints, max_parents, tabu_length)
        if bic < best_bic - SCORE_TIE_TOL:
            best_parents, best_bic = parents, bic

    edges = tuple(sorted((p, c) for c in nodes for p in best_parents[c]))
    dag = Dag(nodes=tuple(nodes), edges=edges, edge_tags={e: "learned" for e in edges})
    cycle = find_cycle(dag)
    if cycle is not None:  # pragma: no cover - move guards prevent this
        raise CycleError(cycle)
    return dag


# ---------------------------------------------------------------------------
# bootstrap edge confidence
# ---------------------------------------------------------------------------

Learner = Callable[[Dataset, int], Dag]


def hc_learner(
    constraints: StructureConstraints | None = None,
    *,
    max_parents: int = DEFAULT_MAX_PARENTS,
    tabu_length: int = DEFAULT_TABU_LENGTH,
    restarts: int = 0,
) -> Learner:
    """Hill-climbing learner factory for :func:`bootstrap_edges`."""

    def run(ds: Dataset, seed: int) -> Dag:
        return hill_climb(
            ds,
            constraints,
            max_parents=max_parents,
            tabu_length=tabu_length,
            restarts=restarts,
            seed=seed,
        )

    return run


def pc_learner(
    significance: float = DEFAULT_SIGNIFICANCE,
    constraints: StructureConstraints | None = None,
) -> Learner:
    """PC learner factory for :func:`bootstrap_edges`."""

    def run(ds: Dataset, seed: int) -> Dag:
        return pc_algorithm(ds, significance, constraints)

    return run


def bootstrap_edges(
    ds: Dataset,
    learner: Learner,
    b: int = DEFAULT_BOOTSTRAP_REPLICATES,
    seed: int = 0,
) -> EdgeConfidence:
    """Edge stability under b row-resamples with replacement.

    Replicate i resamples n_total rows with generator seed ``seed + i`` and
    runs ``learner(replicate, seed + i)``. Deterministic for a fixed seed.
    """
    if b < 1:
        raise LearnError(f"replicate count must be >= 1, got {b}")
    directed: dict[tuple[str, str], int] = {}
    adjacency: dict[tuple[str, str], int] = {}
    for i in range(b):
        rng = np.random.default_rng(seed + i)
        idx = rng.integers(0, ds.n_total, size=ds.n_total)
        replicate = Dataset(ds.variables, ds.codes[idx])
        try:
            dag = learner(replicate, seed + i)
        except Exception as exc:
            raise LearnError(f"learner failed on bootstrap replicate {i}: {exc}") from exc
        for a, c in set(dag.edges):
            directed[(a, c)] = directed.get((a, c), 0) + 1
        for pair in {tuple(sorted(e)) for e in dag.edges}:
            adjacency[pair] = adjacency.get(pair, 0) + 1
    return EdgeConfidence(b=b, directed_counts=directed, adjacency_counts=adjacency)
