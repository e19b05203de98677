"""Fit CPTs from survey responses with BDeu smoothing.

Loads the shipped developer-experience survey (2,500 records, ~3% missing
cells), reuses the shipped model's DAG, and estimates every CPT from the
data. Child rows are smoothed with equivalent sample size alpha; root
marginals are plain relative frequencies.
"""

from pathlib import Path

import numpy as np

from surveybn import (
    EstimationConfig,
    fit_network,
    joint_counts,
    load_network,
    parse_survey_csv,
    state_counts,
)

root = Path(__file__).resolve().parents[1]
reference = load_network(root / "models" / "devex.json")

# The survey schema is the model's variable list: column order in the CSV is
# free, cells hold state names, empty cells mean "not answered".
csv_text = (root / "data" / "devex_survey.csv").read_text(encoding="utf-8")
ds = parse_survey_csv(csv_text, reference.variables)
print(f"parsed {ds.n_total} records over {len(ds.variables)} variables")

# Listwise deletion is per statistic: each family drops only the records
# missing one of its own columns.
for node in reference.dag.nodes:
    parents = reference.dag.parents_of(node)
    table = (
        joint_counts(ds, node, parents) if parents else state_counts(ds, node)
    )
    print(f"  {node}: {table.n_valid} complete records for this family")

fitted = fit_network(reference.dag, ds, EstimationConfig(alpha=1.0))

# The survey was sampled from the reference model, so fitted rows should sit
# close to the generating rows wherever the data support them. Rows for rare
# parent configurations lean on the smoothing prior instead.
print("\nfitted vs generating CPT rows (only rows with >= 50 records):")
for node in reference.dag.nodes:
    parents = reference.dag.parents_of(node)
    counts = (
        joint_counts(ds, node, parents) if parents else state_counts(ds, node)
    ).counts.reshape(fitted.cpts[node].table.shape)
    support = counts.sum(axis=1)
    gap = np.abs(fitted.cpts[node].table - reference.cpts[node].table).sum(axis=1)
    seen = support >= 50
    print(f"  {node}: {int(seen.sum())}/{len(gap)} rows supported, "
          f"max L1 {gap[seen].max():.3f}")

# Smoothing guarantees strictly positive child rows even for configurations
# the survey never observed.
time_lost = fitted.cpts["time_lost_to_obstacles"]
print("\nno zero entries in smoothed child CPTs:", bool((time_lost.table > 0).all()))
print("every row sums to 1:", bool(np.allclose(time_lost.table.sum(axis=1), 1.0)))
