"""Refine a draft structure with expert elicitation scores.

Experts rate each proposed cause-effect relationship as Strong, Moderate,
Weak, None, or Not sure. Ratings map to weights (1.0 / 0.8 / 0.2 / 0 / 0),
a relationship's score is the mean weight over all its responses, and only
relationships scoring at or above 0.70 survive. Experts may also add edges
the draft missed; those arrive tagged "expert-added".
"""

from pathlib import Path

from surveybn import (
    apply_threshold,
    load_structure,
    merge_structures,
    parse_elicitation_csv,
    score_all,
)

root = Path(__file__).resolve().parents[1]

# The draft: the five survey-motivated edges plus one speculative edge.
variables, draft = load_structure(root / "data" / "devex_draft_structure.json")
print(f"draft structure: {len(draft.edges)} proposed edges")

responses = parse_elicitation_csv(
    (root / "data" / "elicitation_responses.csv").read_text(encoding="utf-8")
)
print(f"{len(responses)} expert responses loaded")

scores = score_all(responses)
print("\nrelationship scores:")
for edge, score in sorted(scores.items(), key=lambda kv: -kv[1]):
    print(f"  {edge[0]} -> {edge[1]}: {score:.2f}")

decision = apply_threshold(scores)
print("\nretained (score >= 0.70):", len(decision.retained))
for edge in sorted(decision.removed):
    print(f"removed: {edge[0]} -> {edge[1]} (score {scores[edge]:.2f})")

# Experts asked for a direct link the draft lacked.
refined = merge_structures(
    draft,
    retained=decision.retained,
    removed=decision.removed,
    expert_additions=[("code_understanding", "developer_happiness")],
)
print(f"\nrefined structure: {len(refined.edges)} edges")
for edge in sorted(refined.edges):
    print(f"  {edge[0]} -> {edge[1]}  [{refined.edge_tags[edge]}]")
