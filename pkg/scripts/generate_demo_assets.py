"""Regenerate the shipped demo models and data files.

Run from the repository root:

    python3 scripts/generate_demo_assets.py

Everything is seeded, so committed artifacts only change when this script
changes. Model files are written at the parse -> serialize fixpoint, which
makes round-trips byte-stable on the shipped bytes.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from surveybn import (
    BayesianNetwork,
    Cpt,
    Dag,
    Dataset,
    Variable,
    forward_sample,
    hill_climb,
    parse_network,
    parse_structure,
    parse_survey_csv,
    serialize_network,
    serialize_structure,
    serialize_survey_csv,
    validate_network,
)

ROOT = Path(__file__).resolve().parent.parent

LIKERT5 = ("very_low", "low", "medium", "high", "very_high")
LEVEL3 = ("low", "medium", "high")


def root_row(k: int, target: float, temp: float) -> np.ndarray:
    p = np.exp(-np.abs(np.arange(k) - target) / temp)
    return (p / p.sum()).reshape(1, -1)


def graded_rows(child_k: int, parent_cards: list[int], weights: list[float], temp: float) -> np.ndarray:
    """CPT whose mass peaks near the weighted mean of the parent levels.

    A negative weight inverts that parent's influence (more of the parent,
    less of the child). Rows follow the mixed-radix convention: last parent
    varies fastest.
    """
    rows = []
    for config in np.ndindex(*parent_cards):
        total = 0.0
        for state, weight, card in zip(config, weights, parent_cards):
            scaled = state * (child_k - 1) / (card - 1)
            if weight < 0:
                scaled = (child_k - 1) - scaled
            total += abs(weight) * scaled
        target = total / sum(abs(w) for w in weights)
        p = np.exp(-np.abs(np.arange(child_k) - round(target)) / temp)
        rows.append(p / p.sum())
    return np.asarray(rows)


def canonical_bytes(net: BayesianNetwork) -> str:
    """Serialize at the parse -> serialize fixpoint."""
    text = serialize_network(net)
    for _ in range(10):
        again = serialize_network(parse_network(text))
        if again == text:
            return text
        text = again
    raise AssertionError("canonical form did not stabilize")


def write_model(path: Path, net: BayesianNetwork) -> BayesianNetwork:
    report = validate_network(net)
    assert report.is_valid, f"{path.name}: {report}"
    text = canonical_bytes(net)
    parsed = parse_network(text)
    assert serialize_network(parsed) == text, f"{path.name} is not byte-stable"
    assert validate_network(parsed).is_valid
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path} ({len(text)} bytes)")
    return parsed


def build_devex() -> BayesianNetwork:
    variables = (
        Variable("focus_without_distraction", "Ability to focus without distraction", LIKERT5, (40.0, 40.0)),
        Variable("environment_performance", "Development environment performance", LIKERT5, (260.0, 40.0)),
        Variable("code_understanding", "Ease of understanding the code base", LIKERT5, (480.0, 40.0)),
        Variable("meaningful_work", "Work feels meaningful", LIKERT5, (700.0, 40.0)),
        Variable("time_lost_to_obstacles", "Time lost to engineering obstacles", LIKERT5, (260.0, 220.0)),
        Variable("developer_happiness", "Overall developer happiness", LIKERT5, (480.0, 400.0)),
    )
    edges = (
        ("code_understanding", "time_lost_to_obstacles"),
        ("environment_performance", "time_lost_to_obstacles"),
        ("focus_without_distraction", "time_lost_to_obstacles"),
        ("meaningful_work", "developer_happiness"),
        ("time_lost_to_obstacles", "developer_happiness"),
    )
    dag = Dag(
        nodes=tuple(sorted(v.id for v in variables)),
        edges=edges,
        edge_tags={e: "cause-consequence" for e in edges},
    )
    cpts = {
        "focus_without_distraction": Cpt("focus_without_distraction", (), root_row(5, 2.2, 1.0)),
        "environment_performance": Cpt("environment_performance", (), root_row(5, 2.8, 0.9)),
        "code_understanding": Cpt("code_understanding", (), root_row(5, 1.8, 1.1)),
        "meaningful_work": Cpt("meaningful_work", (), root_row(5, 2.6, 1.0)),
        # more focus, a faster environment, and clearer code all reduce time lost
        "time_lost_to_obstacles": Cpt(
            "time_lost_to_obstacles",
            ("code_understanding", "environment_performance", "focus_without_distraction"),
            graded_rows(5, [5, 5, 5], [-1.0, -1.0, -1.0], 0.45),
        ),
        # meaningful work raises happiness, time lost lowers it
        "developer_happiness": Cpt(
            "developer_happiness",
            ("meaningful_work", "time_lost_to_obstacles"),
            graded_rows(5, [5, 5], [1.0, -1.0], 0.45),
        ),
    }
    return BayesianNetwork(
        variables=tuple(sorted(variables, key=lambda v: v.id)),
        dag=dag,
        cpts=cpts,
        name="Developer experience",
        description="Six survey factors around daily engineering friction and happiness.",
        source="synthetic demo",
    )


def build_delivery() -> BayesianNetwork:
    variables = (
        Variable("ci_cd_automation", "Degree of CI/CD automation", LEVEL3, (140.0, 40.0)),
        Variable("automated_testing", "Automated test coverage", LEVEL3, (520.0, 40.0)),
        Variable("change_lead_time", "Change lead time", LEVEL3, (40.0, 220.0)),
        Variable("deployment_frequency", "Deployment frequency", LEVEL3, (280.0, 220.0)),
        Variable("change_failure_rate", "Change failure rate", LEVEL3, (520.0, 220.0)),
        Variable("failed_deployment_recovery_time", "Failed deployment recovery time", LEVEL3, (760.0, 220.0)),
        Variable("throughput", "Delivery throughput", LEVEL3, (160.0, 400.0)),
        Variable("stability", "Delivery stability", LEVEL3, (640.0, 400.0)),
        Variable("delivery_performance", "Software delivery performance", LEVEL3, (400.0, 560.0)),
    )
    cause = (
        ("ci_cd_automation", "change_lead_time"),
        ("ci_cd_automation", "deployment_frequency"),
        ("automated_testing", "change_failure_rate"),
        ("automated_testing", "failed_deployment_recovery_time"),
    )
    synthesis = (
        ("change_lead_time", "throughput"),
        ("deployment_frequency", "throughput"),
        ("change_failure_rate", "stability"),
        ("failed_deployment_recovery_time", "stability"),
        ("throughput", "delivery_performance"),
        ("stability", "delivery_performance"),
    )
    tags = {e: "cause-consequence" for e in cause}
    tags.update({e: "definition-synthesis" for e in synthesis})
    dag = Dag(nodes=tuple(sorted(v.id for v in variables)), edges=cause + synthesis, edge_tags=tags)
    cpts = {
        "ci_cd_automation": Cpt("ci_cd_automation", (), root_row(3, 1.2, 0.9)),
        "automated_testing": Cpt("automated_testing", (), root_row(3, 1.4, 0.9)),
        "change_lead_time": Cpt(
            "change_lead_time", ("ci_cd_automation",), graded_rows(3, [3], [-1.0], 0.5)
        ),
        "deployment_frequency": Cpt(
            "deployment_frequency", ("ci_cd_automation",), graded_rows(3, [3], [1.0], 0.5)
        ),
        "change_failure_rate": Cpt(
            "change_failure_rate", ("automated_testing",), graded_rows(3, [3], [-1.0], 0.5)
        ),
        "failed_deployment_recovery_time": Cpt(
            "failed_deployment_recovery_time", ("automated_testing",), graded_rows(3, [3], [-1.0], 0.55)
        ),
        # low lead time and frequent deployments define high throughput
        "throughput": Cpt(
            "throughput",
            ("change_lead_time", "deployment_frequency"),
            graded_rows(3, [3, 3], [-1.0, 1.0], 0.4),
        ),
        # low failure rate and fast recovery define high stability
        "stability": Cpt(
            "stability",
            ("change_failure_rate", "failed_deployment_recovery_time"),
            graded_rows(3, [3, 3], [-1.0, -1.0], 0.4),
        ),
        "delivery_performance": Cpt(
            "delivery_performance",
            ("stability", "throughput"),
            graded_rows(3, [3, 3], [1.0, 1.0], 0.4),
        ),
    }
    return BayesianNetwork(
        variables=tuple(sorted(variables, key=lambda v: v.id)),
        dag=dag,
        cpts=cpts,
        name="Delivery performance",
        description="DORA-style delivery metrics synthesized into throughput, stability, and overall performance.",
        source="synthetic demo",
    )


def build_survey_csv(net: BayesianNetwork) -> str:
    ds = forward_sample(net, 2500, seed=7)
    codes = np.array(ds.codes)
    rng = np.random.default_rng(11)
    holes = rng.random(codes.shape) < 0.03
    codes[holes] = -1
    withheld = Dataset(ds.variables, codes)
    text = serialize_survey_csv(withheld)
    assert serialize_survey_csv(parse_survey_csv(text, withheld.variables)) == text
    return text


def build_draft_structure(net: BayesianNetwork) -> str:
    # the draft the elicitation demo starts from: the five causal edges plus
    # one speculative edge that experts end up scoring below threshold
    draft = net.dag.replace_edges(
        net.dag.edges + (("environment_performance", "developer_happiness"),),
        edge_tags={**net.dag.edge_tags, ("environment_performance", "developer_happiness"): "cause-consequence"},
    )
    text = serialize_structure(net.variables, draft, name="Developer experience draft")
    variables, parsed = parse_structure(text)
    assert serialize_structure(variables, parsed, name="Developer experience draft") == text
    return text


ELICITATION_ROWS = [
    ("focus_without_distraction", "time_lost_to_obstacles", ["Strong", "Strong", "Moderate", "Strong", "Strong"]),
    ("environment_performance", "time_lost_to_obstacles", ["Strong", "Moderate", "Strong", "Moderate", "Strong"]),
    ("code_understanding", "time_lost_to_obstacles", ["Strong", "Moderate", "Moderate", "Strong", "NotSure"]),
    ("time_lost_to_obstacles", "developer_happiness", ["Strong", "Strong", "Strong", "Moderate", "Strong"]),
    ("meaningful_work", "developer_happiness", ["Strong", "Strong", "Moderate", "None"]),
    ("environment_performance", "developer_happiness", ["Weak", "None", "Weak", "NotSure", "Moderate"]),
]


def build_elicitation_csv() -> str:
    lines = ["cause,effect,rating"]
    for cause, effect, ratings in ELICITATION_ROWS:
        for rating in ratings:
            lines.append(f"{cause},{effect},{rating}")
    return "\n".join(lines) + "\n"


def main() -> None:
    models = ROOT / "models"
    data = ROOT / "data"
    models.mkdir(exist_ok=True)
    data.mkdir(exist_ok=True)

    devex = write_model(models / "devex.json", build_devex())
    write_model(models / "delivery.json", build_delivery())

    survey = build_survey_csv(devex)
    (data / "devex_survey.csv").write_text(survey, encoding="utf-8")
    print(f"wrote {data / 'devex_survey.csv'} ({survey.count(chr(10)) - 1} records)")

    draft = build_draft_structure(devex)
    (data / "devex_draft_structure.json").write_text(draft, encoding="utf-8")
    print(f"wrote {data / 'devex_draft_structure.json'}")

    responses = build_elicitation_csv()
    (data / "elicitation_responses.csv").write_text(responses, encoding="utf-8")
    print(f"wrote {data / 'elicitation_responses.csv'}")

    # sanity: restarted structure learning on a fresh large sample finds the
    # generator's skeleton, confirming the synthetic CPTs are strong enough
    # to demo with
    sample = forward_sample(devex, 10_000, seed=0)
    learned = hill_climb(sample, restarts=30, seed=0)
    true_skeleton = {frozenset(e) for e in devex.dag.edges}
    got_skeleton = {frozenset(e) for e in learned.edges}
    print(f"hc skeleton check: {'ok' if got_skeleton == true_skeleton else f'differs: {got_skeleton}'}")


if __name__ == "__main__":
    main()
