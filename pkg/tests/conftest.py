"""Shared builders and fixtures for the test suite."""

import socket
import subprocess
import sys
import time
from pathlib import Path

import httpx
import numpy as np
import pytest

from surveybn import BayesianNetwork, Cpt, Dag, Variable

REPO = Path(__file__).resolve().parents[1]
MODELS = REPO / "models"
DATA = REPO / "data"

BINARY = ("no", "yes")


def make_chain() -> BayesianNetwork:
    """A -> B with P(A)=[0.5,0.5], P(B=1|A=0)=0.2, P(B=1|A=1)=0.9."""
    return BayesianNetwork(
        (Variable("A", "A", BINARY), Variable("B", "B", BINARY)),
        Dag(("A", "B"), (("A", "B"),)),
        {
            "A": Cpt("A", (), [[0.5, 0.5]]),
            "B": Cpt("B", ("A",), [[0.8, 0.2], [0.1, 0.9]]),
        },
        name="chain",
    )


def make_three_chain(p: float = 0.9) -> BayesianNetwork:
    """x1 -> x2 -> x3, each child copying its parent with probability p."""
    row = [[p, 1.0 - p], [1.0 - p, p]]
    return BayesianNetwork(
        tuple(Variable(f"x{i}", f"x{i}", BINARY) for i in (1, 2, 3)),
        Dag(("x1", "x2", "x3"), (("x1", "x2"), ("x2", "x3"))),
        {
            "x1": Cpt("x1", (), [[0.5, 0.5]]),
            "x2": Cpt("x2", ("x1",), row),
            "x3": Cpt("x3", ("x2",), row),
        },
        name="three-chain",
    )


def make_collider() -> BayesianNetwork:
    """x1 -> x3 <- x2, a noisy OR.

    Unlike an XOR gate this keeps each parent marginally dependent on the
    child, so pairwise tests see the skeleton while the parents stay
    independent of each other.
    """
    return BayesianNetwork(
        tuple(Variable(f"x{i}", f"x{i}", BINARY) for i in (1, 2, 3)),
        Dag(("x1", "x2", "x3"), (("x1", "x3"), ("x2", "x3"))),
        {
            "x1": Cpt("x1", (), [[0.5, 0.5]]),
            "x2": Cpt("x2", (), [[0.5, 0.5]]),
            "x3": Cpt(
                "x3",
                ("x1", "x2"),
                [[0.9, 0.1], [0.4, 0.6], [0.4, 0.6], [0.1, 0.9]],
            ),
        },
        name="collider",
    )


FIG1_NODES = (
    "code_understanding",
    "developer_happiness",
    "environment_performance",
    "focus_without_distraction",
    "meaningful_work",
    "time_lost_to_obstacles",
)

FIG1_EDGES = (
    ("code_understanding", "time_lost_to_obstacles"),
    ("environment_performance", "time_lost_to_obstacles"),
    ("focus_without_distraction", "time_lost_to_obstacles"),
    ("meaningful_work", "developer_happiness"),
    ("time_lost_to_obstacles", "developer_happiness"),
)


def make_fig1_binary() -> BayesianNetwork:
    """The 6-node survey DAG with binary states and sharply interactive CPTs.

    Time lost is a noisy 2-of-3 majority over its parents being low;
    happiness is a noisy AND of meaningful work and low time lost. Root
    marginals are moderate so every parent configuration receives ample
    samples in forward sampling.
    """
    variables = tuple(Variable(n, n, ("low", "high")) for n in FIG1_NODES)
    dag = Dag(FIG1_NODES, FIG1_EDGES)
    rows_time = []
    for c in (0, 1):
        for e in (0, 1):
            for f in (0, 1):
                lows = (1 - c) + (1 - e) + (1 - f)
                p_high = 0.88 if lows >= 2 else 0.12
                rows_time.append([1.0 - p_high, p_high])
    rows_happy = []
    for m in (0, 1):
        for t in (0, 1):
            p_high = 0.85 if (m == 1 and t == 0) else 0.15
            rows_happy.append([1.0 - p_high, p_high])
    cpts = {
        "code_understanding": Cpt("code_understanding", (), [[0.55, 0.45]]),
        "environment_performance": Cpt("environment_performance", (), [[0.40, 0.60]]),
        "focus_without_distraction": Cpt("focus_without_distraction", (), [[0.45, 0.55]]),
        "meaningful_work": Cpt("meaningful_work", (), [[0.50, 0.50]]),
        "time_lost_to_obstacles": Cpt(
            "time_lost_to_obstacles",
            ("code_understanding", "environment_performance", "focus_without_distraction"),
            rows_time,
        ),
        "developer_happiness": Cpt(
            "developer_happiness",
            ("meaningful_work", "time_lost_to_obstacles"),
            rows_happy,
        ),
    }
    return BayesianNetwork(variables, dag, cpts, name="fig1-binary")


def random_network(rng: np.random.Generator, max_nodes: int = 8,
                   max_states: int = 5) -> BayesianNetwork:
    """A random DAG with BDeu-smoothed random CPTs, for oracle comparisons."""
    n_nodes = int(rng.integers(2, max_nodes + 1))
    names = [f"v{i}" for i in range(n_nodes)]
    cards = [int(rng.integers(2, max_states + 1)) for _ in names]
    order = rng.permutation(n_nodes)
    parents: dict[str, list[str]] = {name: [] for name in names}
    for pos, idx in enumerate(order):
        pool = [names[j] for j in order[:pos]]
        for cand in pool:
            if rng.random() < 0.4 and len(parents[names[idx]]) < 3:
                parents[names[idx]].append(cand)
    variables = tuple(
        Variable(name, name, tuple(f"s{k}" for k in range(card)))
        for name, card in zip(names, cards)
    )
    card_of = {v.id: len(v.states) for v in variables}
    edges = tuple(
        sorted((p, child) for child, ps in parents.items() for p in ps)
    )
    dag = Dag(tuple(names), edges)
    cpts = {}
    for child in names:
        ps = tuple(sorted(parents[child]))
        rows = int(np.prod([card_of[p] for p in ps])) if ps else 1
        k = card_of[child]
        # Dirichlet-like rows via smoothed random counts: strictly positive
        raw = rng.random((rows, k)) * rng.integers(1, 50) + 0.5
        table = raw / raw.sum(axis=1, keepdims=True)
        cpts[child] = Cpt(child, ps, table)
    return BayesianNetwork(variables, dag, cpts, name="random")


def mec_signature(dag: Dag) -> tuple[frozenset, frozenset]:
    """(skeleton, v-structures): equal signatures = same Markov class."""
    skeleton = frozenset(frozenset(e) for e in dag.edges)
    colliders = set()
    for child in dag.nodes:
        ps = sorted(dag.parents_of(child))
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                a, b = ps[i], ps[j]
                if not (dag.has_edge(a, b) or dag.has_edge(b, a)):
                    colliders.add((a, b, child))
    return skeleton, frozenset(colliders)


@pytest.fixture(scope="session")
def chain() -> BayesianNetwork:
    return make_chain()


@pytest.fixture(scope="session")
def collider() -> BayesianNetwork:
    return make_collider()


@pytest.fixture(scope="session")
def fig1_binary() -> BayesianNetwork:
    return make_fig1_binary()


@pytest.fixture(scope="session")
def devex_path() -> Path:
    return MODELS / "devex.json"


def free_port() -> int:
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture(scope="session")
def live_server():
    """Real uvicorn subprocess serving the shipped models."""
    port = free_port()
    proc = subprocess.Popen(
        [sys.executable, "-m", "surveybn", "serve", "--models", str(MODELS), "--port", str(port)],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    base = f"http://127.0.0.1:{port}"
    try:
        deadline = time.monotonic() + 30.0
        while True:
            try:
                if httpx.get(f"{base}/api/networks", timeout=1.0).status_code == 200:
                    break
            except httpx.HTTPError:
                pass
            if proc.poll() is not None or time.monotonic() > deadline:
                raise RuntimeError("service did not come up")
            time.sleep(0.05)
        yield base
    finally:
        proc.terminate()
        proc.wait(timeout=10)
