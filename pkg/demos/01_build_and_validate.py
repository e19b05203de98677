"""Build a small developer-experience network by hand and validate it.

Constructs variables, a tagged DAG, and CPTs directly, runs the structural
validator, and round-trips the result through the canonical JSON format.
"""

from pathlib import Path

from surveybn import (
    BayesianNetwork,
    Cpt,
    Dag,
    Variable,
    parameter_count,
    parse_network,
    serialize_network,
    topological_order,
    validate_network,
)

# -- variables ---------------------------------------------------------------
# Three survey factors on a coarse three-point scale.
LEVELS = ("low", "medium", "high")

variables = (
    Variable("tooling_quality", "Quality of the local tooling", LEVELS),
    Variable("build_speed", "Speed of the local build", LEVELS),
    Variable("flow_state", "Time spent in flow", LEVELS),
)

# -- structure ---------------------------------------------------------------
# tooling_quality drives build_speed; both drive flow_state.
edges = (
    ("tooling_quality", "build_speed"),
    ("tooling_quality", "flow_state"),
    ("build_speed", "flow_state"),
)
dag = Dag(
    nodes=tuple(v.id for v in variables),
    edges=edges,
    edge_tags={e: "cause-consequence" for e in edges},
)
print("topological order:", topological_order(dag))

# -- parameters --------------------------------------------------------------
# Root CPT: one row. Child CPTs: one row per parent configuration, the last
# parent cycling fastest.
cpts = {
    "tooling_quality": Cpt("tooling_quality", (), [[0.3, 0.5, 0.2]]),
    "build_speed": Cpt(
        "build_speed",
        ("tooling_quality",),
        [
            [0.7, 0.2, 0.1],  # tooling low
            [0.2, 0.6, 0.2],  # tooling medium
            [0.1, 0.3, 0.6],  # tooling high
        ],
    ),
    "flow_state": Cpt(
        "flow_state",
        ("tooling_quality", "build_speed"),
        [
            # tooling low; build low / medium / high
            [0.8, 0.15, 0.05],
            [0.6, 0.3, 0.1],
            [0.5, 0.35, 0.15],
            # tooling medium
            [0.5, 0.4, 0.1],
            [0.3, 0.5, 0.2],
            [0.2, 0.5, 0.3],
            # tooling high
            [0.3, 0.4, 0.3],
            [0.15, 0.45, 0.4],
            [0.05, 0.35, 0.6],
        ],
    ),
}

net = BayesianNetwork(variables, dag, cpts, name="Flow demo")

# -- validation --------------------------------------------------------------
report = validate_network(net)
print("valid:", report.is_valid)
for violation in report.violations:
    print("  violation:", violation)
print("free parameters:", parameter_count(net))

# -- canonical JSON round trip -----------------------------------------------
text = serialize_network(net)
again = parse_network(text)
assert serialize_network(again) == text, "round trip must be stable"
print("canonical JSON:", len(text), "bytes, round trip stable")

# The shipped demo models live in models/; they parse with the same reader.
models_dir = Path(__file__).resolve().parents[1] / "models"
for path in sorted(models_dir.glob("*.json")):
    shipped = parse_network(path.read_text(encoding="utf-8"))
    print(f"shipped model {path.name}: {shipped.name!r}, "
          f"{len(shipped.variables)} nodes, {len(shipped.dag.edges)} edges")
