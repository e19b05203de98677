"""CPT estimation and forward sampling.

Root nodes are fitted as plain marginal frequencies, count(x)/N. Child
nodes use the Dirichlet-smoothed estimator

    P(x | p) = (count(x, p) + alpha) / (count(p) + alpha * K)

with alpha added per child-state cell and alpha*K per row, so every row
sums to 1 analytically and, for alpha > 0, every entry is positive. Root
rows are deliberately unsmoothed, so an unobserved root state keeps
probability 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import BayesianNetwork, Cpt, Dag, SurveyBnError, Variable, topological_order, validate_network
from .data import Dataset, joint_counts, state_counts


class EstimationError(SurveyBnError):
    pass


@dataclass(frozen=True)
class EstimationConfig:
    """Smoothing strength and sampling seed.

    ``alpha`` is the equivalent sample size of the uniform Dirichlet prior;
    0 disables smoothing and is only usable when every parent configuration
    is observed.
    """

    alpha: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")


def estimate_root_cpt(ds: Dataset, var: str) -> Cpt:
    """Marginal-frequency CPT for a parentless node: count(x) / N."""
    table = state_counts(ds, var)
    if table.n_valid == 0:
        raise EstimationError(f"no valid observations for {var!r}")
    probs = table.counts / table.n_valid
    return Cpt(child=var, parents=(), table=probs.reshape(1, -1))


def estimate_child_cpt(ds: Dataset, child: str, parents: Sequence[str], cfg: EstimationConfig) -> Cpt:
    """Smoothed conditional CPT: (count(x,p) + a) / (count(p) + a*K)."""
    parents = tuple(parents)
    table = joint_counts(ds, child, parents)
    k = ds.variable(child).k
    counts = table.counts.reshape(-1, k).astype(np.float64)
    config_counts = counts.sum(axis=1)

    if cfg.alpha == 0.0:
        unobserved = np.nonzero(config_counts == 0)[0]
        if unobserved.size:
            states = np.unravel_index(int(unobserved[0]), tuple(ds.variable(p).k for p in parents))
            named = ", ".join(
                f"{p}={ds.variable(p).states[s]}" for p, s in zip(parents, states)
            )
            raise EstimationError(
                f"alpha=0 but parent configuration ({named}) of {child!r} is unobserved"
            )

    rows = (counts + cfg.alpha) / (config_counts[:, None] + cfg.alpha * k)
    return Cpt(child=child, parents=parents, table=rows)


def fit_network(dag: Dag, ds: Dataset, cfg: EstimationConfig | None = None) -> BayesianNetwork:
    """Fit one CPT per node of ``dag`` from the dataset.

    Roots use the marginal estimator, children the smoothed conditional
    estimator. Per-node errors are re-raised with the node id attached.
    """
    cfg = cfg or EstimationConfig()
    known = {v.id for v in ds.variables}
    missing = sorted(set(dag.nodes) - known)
    if missing:
        raise EstimationError(f"dag nodes not present in the dataset: {missing}")

    cpts: dict[str, Cpt] = {}
    for node in dag.nodes:
        parents = dag.parents_of(node)
        try:
            if parents:
                cpts[node] = estimate_child_cpt(ds, node, parents, cfg)
            else:
                cpts[node] = estimate_root_cpt(ds, node)
        except EstimationError as exc:
            raise EstimationError(f"node {node!r}: {exc}") from exc

    variables = tuple(sorted((v for v in ds.variables if v.id in set(dag.nodes)), key=lambda v: v.id))
    net = BayesianNetwork(
        variables=variables,
        dag=dag,
        cpts=cpts,
        name="fitted",
        source=f"fit(alpha={cfg.alpha:g})",
    )
    report = validate_network(net)
    if not report.is_valid:
        raise EstimationError(f"fitted network failed validation:\n{report}")
    return net


def forward_sample(net: BayesianNetwork, n: int, seed: int) -> Dataset:
    """Ancestral sampling: ``n`` complete records, deterministic per seed.

    Sampling walks the topological order; the generator is numpy's default
    PCG64, so results are bit-reproducible within this implementation and
    statistically equivalent across reimplementations.
    """
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    rng = np.random.default_rng(seed)
    order = topological_order(net.dag)
    drawn: dict[str, np.ndarray] = {}
    for node in order:
        cpt = net.cpts[node]
        if cpt.parents:
            cards = tuple(net.card(p) for p in cpt.parents)
            config = np.ravel_multi_index(tuple(drawn[p] for p in cpt.parents), cards)
            probs = cpt.table[config]
        else:
            probs = np.broadcast_to(cpt.table[0], (n, cpt.k))
        cum = np.cumsum(probs, axis=1)
        u = rng.random(n)
        states = (cum <= u[:, None]).sum(axis=1)
        drawn[node] = np.minimum(states, cpt.k - 1)

    variables = tuple(sorted(net.variables, key=lambda v: v.id))
    codes = np.stack([drawn[v.id] for v in variables], axis=1).astype(np.int16)
    return Dataset(variables=variables, codes=codes)
