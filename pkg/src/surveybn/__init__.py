"""Discrete Bayesian networks over software-engineering survey factors.

Build networks by hand, fit their CPTs from survey data with Dirichlet
smoothing, learn structures from data (hill climbing, Peter-Clark), refine
them with expert elicitation scores, answer exact what-if queries, and
serve the results over HTTP.
"""

from .bench import (
    BenchError,
    BenchReport,
    bench_load,
    bench_single,
    pick_model,
)
from .core import (
    EDGE_TAGS,
    BayesianNetwork,
    Cpt,
    CycleError,
    Dag,
    SurveyBnError,
    ValidationReport,
    Variable,
    Violation,
    find_cycle,
    parameter_count,
    topological_order,
    validate_network,
)
from .data import (
    MISSING,
    CountTable,
    DataError,
    Dataset,
    joint_counts,
    parse_survey_csv,
    serialize_survey_csv,
    state_counts,
)
from .elicit import (
    ElicitationConfig,
    ElicitationError,
    ElicitationResponse,
    Rating,
    ThresholdResult,
    apply_threshold,
    merge_structures,
    parse_elicitation_csv,
    score_all,
    score_relationship,
    serialize_elicitation_csv,
)
from .estimate import (
    EstimationConfig,
    EstimationError,
    estimate_child_cpt,
    estimate_root_cpt,
    fit_network,
    forward_sample,
)
from .infer import (
    EvidenceError,
    EvidenceQuery,
    ImpossibleEvidenceError,
    MarginalsResult,
    StateSpaceTooLarge,
    brute_force_marginals,
    joint_probability,
    posterior_marginals,
)
from .learn import (
    CiTestUntestable,
    ConstraintConflictError,
    EdgeConfidence,
    LearnError,
    ScoreReport,
    StructureConstraints,
    bic_score,
    bootstrap_edges,
    chi_square_ci_test,
    compare_structures,
    hc_learner,
    hill_climb,
    log_likelihood,
    pc_algorithm,
    pc_learner,
)
from .model_io import (
    FormatError,
    canonical_dumps,
    load_network,
    load_schema,
    load_structure,
    network_to_document,
    parse_network,
    parse_structure,
    save_network,
    serialize_network,
    serialize_structure,
)
from .service import ModelRegistry, RegistryError, create_app, run_server

__version__ = "1.0.0"

__all__ = [
    "BayesianNetwork",
    "BenchError",
    "BenchReport",
    "CiTestUntestable",
    "ConstraintConflictError",
    "CountTable",
    "Cpt",
    "CycleError",
    "Dag",
    "DataError",
    "Dataset",
    "EDGE_TAGS",
    "EdgeConfidence",
    "ElicitationConfig",
    "ElicitationError",
    "ElicitationResponse",
    "EstimationConfig",
    "EstimationError",
    "EvidenceError",
    "EvidenceQuery",
    "FormatError",
    "ImpossibleEvidenceError",
    "LearnError",
    "MISSING",
    "MarginalsResult",
    "ModelRegistry",
    "Rating",
    "RegistryError",
    "ScoreReport",
    "StateSpaceTooLarge",
    "StructureConstraints",
    "SurveyBnError",
    "ThresholdResult",
    "ValidationReport",
    "Variable",
    "Violation",
    "apply_threshold",
    "bench_load",
    "bench_single",
    "bic_score",
    "bootstrap_edges",
    "brute_force_marginals",
    "canonical_dumps",
    "chi_square_ci_test",
    "compare_structures",
    "create_app",
    "estimate_child_cpt",
    "estimate_root_cpt",
    "find_cycle",
    "fit_network",
    "forward_sample",
    "hc_learner",
    "hill_climb",
    "joint_counts",
    "joint_probability",
    "load_network",
    "load_schema",
    "load_structure",
    "log_likelihood",
    "merge_structures",
    "network_to_document",
    "parameter_count",
    "parse_elicitation_csv",
    "parse_network",
    "parse_structure",
    "parse_survey_csv",
    "pc_algorithm",
    "pc_learner",
    "pick_model",
    "posterior_marginals",
    "run_server",
    "save_network",
    "score_all",
    "score_relationship",
    "serialize_elicitation_csv",
    "serialize_network",
    "serialize_structure",
    "serialize_survey_csv",
    "state_counts",
    "topological_order",
    "validate_network",
]
