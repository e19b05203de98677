"""Command-line entry point wiring fit, learn, elicit, sample, serve, bench.

Exit codes: 0 success, 1 usage error, 2 data/model error, 3 network error.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path
from typing import NoReturn

from .bench import BenchError, bench_load, bench_single, pick_model
from .core import SurveyBnError
from .data import joint_counts, parse_survey_csv, serialize_survey_csv, state_counts
from .elicit import (
    ElicitationConfig,
    apply_threshold,
    merge_structures,
    parse_elicitation_csv,
    score_all,
)
from .estimate import EstimationConfig, fit_network, forward_sample
from .learn import (
    StructureConstraints,
    bic_score,
    bootstrap_edges,
    hc_learner,
    hill_climb,
    pc_algorithm,
    pc_learner,
)
from .model_io import (
    canonical_dumps,
    load_network,
    load_schema,
    load_structure,
    save_network,
    serialize_structure,
)
from .service import ModelRegistry, create_app

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NETWORK = 3


class _Parser(argparse.ArgumentParser):
    """argparse with the documented usage exit code (1, not argparse's 2)."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _env_port() -> int:
    raw = os.environ.get("BN_PORT", "8000")
    try:
        return int(raw)
    except ValueError:
        return 8000


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise SurveyBnError(f"no such file: {path}")
    return p.read_text(encoding="utf-8")


def _load_constraints(path: str | None) -> StructureConstraints | None:
    if path is None:
        return None
    doc = json.loads(_read_text(path))
    if not isinstance(doc, dict):
        raise SurveyBnError(f"constraints file {path} must hold a JSON object")
    required = [tuple(e) for e in doc.get("required_edges", [])]
    forbidden = [tuple(e) for e in doc.get("forbidden_edges", [])]
    try:
        return StructureConstraints(frozenset(required), frozenset(forbidden))
    except (ValueError, TypeError) as exc:
        raise SurveyBnError(f"bad constraints file {path}: {exc}") from exc


def _load_evidence(path: str | None) -> dict:
    if path is None:
        return {}
    doc = json.loads(_read_text(path))
    if isinstance(doc, dict) and isinstance(doc.get("evidence"), dict):
        return doc["evidence"]
    if isinstance(doc, dict):
        return doc
    raise SurveyBnError(f"evidence file {path} must hold a JSON object")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_fit(args: argparse.Namespace) -> int:
    variables, dag = load_structure(args.dag)
    ds = parse_survey_csv(_read_text(args.data), variables)
    net = fit_network(dag, ds, EstimationConfig(alpha=args.alpha))
    save_network(net, args.out)
    print(f"fitted {len(dag.nodes)} nodes from {ds.n_total} records (alpha={args.alpha:g})")
    for node in sorted(dag.nodes):
        parents = dag.parents_of(node)
        counts = joint_counts(ds, node, parents) if parents else state_counts(ds, node)
        print(f"  {node}: n_valid={counts.n_valid}")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_learn(args: argparse.Namespace) -> int:
    schema = load_schema(args.schema)
    ds = parse_survey_csv(_read_text(args.data), schema)
    constraints = _load_constraints(args.constraints)

    config: dict = {"method": args.method, "seed": args.seed}
    if args.method == "hc":
        config.update(
            max_parents=args.max_parents, tabu_length=args.tabu_length, restarts=args.restarts
        )
        dag = hill_climb(
            ds,
            constraints,
            max_parents=args.max_parents,
            tabu_length=args.tabu_length,
            restarts=args.restarts,
            seed=args.seed,
        )
        learner = hc_learner(
            constraints,
            max_parents=args.max_parents,
            tabu_length=args.tabu_length,
            restarts=args.restarts,
        )
    else:
        config.update(significance=args.significance)
        dag = pc_algorithm(ds, args.significance, constraints)
        learner = pc_learner(args.significance, constraints)

    Path(args.out).write_text(serialize_structure(schema, dag), encoding="utf-8")
    report = bic_score(dag, ds, provenance=args.method, config=config)
    print(f"learned {len(dag.edges)} edge(s) with {args.method}; bic={report.bic:.4f} n={report.n}")
    print(f"wrote {args.out}")
    if args.report:
        Path(args.report).write_text(canonical_dumps(report.to_document()), encoding="utf-8")
        print(f"wrote {args.report}")

    if args.bootstrap:
        confidence = bootstrap_edges(ds, learner, b=args.bootstrap, seed=args.seed)
        edges = []
        for a, b in confidence.pairs():
            edges.append(
                {
                    "from": a,
                    "to": b,
                    "directed_count": confidence.directed_counts.get((a, b), 0),
                    "directed_fraction": confidence.directed_fraction(a, b),
                    "reverse_count": confidence.directed_counts.get((b, a), 0),
                    "reverse_fraction": confidence.directed_fraction(b, a),
                    "adjacency_count": confidence.adjacency_counts[(a, b)],
                    "adjacency_fraction": confidence.adjacency_fraction(a, b),
                }
            )
        doc = {"b": confidence.b, "edges": edges}
        if args.confidence:
            Path(args.confidence).write_text(canonical_dumps(doc), encoding="utf-8")
            print(f"wrote {args.confidence}")
        else:
            print(canonical_dumps(doc))
    return EXIT_OK


def cmd_elicit(args: argparse.Namespace) -> int:
    variables, base = load_structure(args.base)
    responses = parse_elicitation_csv(_read_text(args.responses))
    cfg = ElicitationConfig(threshold=args.threshold, exclude_not_sure=args.exclude_not_sure)
    scores = score_all(responses, cfg)
    outcome = apply_threshold(scores, cfg)
    additions = [tuple(pair) for pair in (args.add or [])]
    refined = merge_structures(base, outcome.retained, outcome.removed, additions)
    Path(args.out).write_text(serialize_structure(variables, refined), encoding="utf-8")
    for (a, b), score in sorted(scores.items()):
        verdict = "retained" if (a, b) in outcome.retained else "removed"
        print(f"  {a} -> {b}: score={score:.4f} {verdict}")
    for a, b in sorted(additions):
        print(f"  {a} -> {b}: expert-added")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    net = load_network(args.network)
    ds = forward_sample(net, args.n, args.seed)
    Path(args.out).write_text(serialize_survey_csv(ds), encoding="utf-8")
    print(f"wrote {ds.n_total} records to {args.out} (seed={args.seed})")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    if not args.models:
        print("serve: a model directory is required (--models or BN_MODEL_DIR)", file=sys.stderr)
        return EXIT_USAGE
    registry = ModelRegistry.from_directory(args.models)
    app = create_app(registry)

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        print(f"cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    finally:
        probe.close()

    import uvicorn

    print(f"serving {len(registry)} model(s) from {args.models} on http://{args.host}:{args.port}")
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except KeyboardInterrupt:
        pass
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    base_url = args.url.rstrip("/")
    model_id = args.model or pick_model(base_url)
    evidence = _load_evidence(args.evidence)
    if args.mode == "single":
        report = bench_single(base_url, model_id, evidence, requests=args.requests)
    else:
        report = bench_load(base_url, model_id, evidence, users=args.users, requests=args.requests)
    print(report.to_table())
    print(json.dumps(report.to_document(), sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="surveybn", description="Discrete Bayesian networks over survey factors.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    fit = sub.add_parser("fit", help="estimate CPTs for a structure from survey data")
    fit.add_argument("dag", help="structure JSON file (nodes + edges)")
    fit.add_argument("data", help="survey CSV file")
    fit.add_argument("--alpha", type=float, default=1.0, help="BDeu equivalent sample size (default 1)")
    fit.add_argument("--out", required=True, help="output network JSON file")
    fit.set_defaults(func=cmd_fit)

    learn = sub.add_parser("learn", help="learn a structure from survey data")
    learn.add_argument("data", help="survey CSV file")
    learn.add_argument("--schema", required=True, help="structure or network JSON declaring the variables")
    learn.add_argument("--method", choices=("hc", "pc"), default="hc")
    learn.add_argument("--significance", type=float, default=0.05, help="PC test significance")
    learn.add_argument("--max-parents", type=int, default=4, dest="max_parents")
    learn.add_argument("--tabu-length", type=int, default=10, dest="tabu_length")
    learn.add_argument("--restarts", type=int, default=0)
    learn.add_argument("--seed", type=int, default=0)
    learn.add_argument("--constraints", help="JSON file with required_edges / forbidden_edges")
    learn.add_argument("--bootstrap", type=int, metavar="B", help="bootstrap replicate count")
    learn.add_argument("--confidence", help="output JSON file for bootstrap edge confidence")
    learn.add_argument("--report", help="output JSON file for the BIC report")
    learn.add_argument("--out", required=True, help="output structure JSON file")
    learn.set_defaults(func=cmd_learn)

    elicit = sub.add_parser("elicit", help="refine a structure from expert ratings")
    elicit.add_argument("base", help="base structure JSON file")
    elicit.add_argument("responses", help="elicitation responses CSV file")
    elicit.add_argument("--threshold", type=float, default=0.70)
    elicit.add_argument(
        "--exclude-not-sure",
        action="store_true",
        dest="exclude_not_sure",
        help="drop NotSure responses from the denominator",
    )
    elicit.add_argument(
        "--add",
        nargs=2,
        action="append",
        metavar=("CAUSE", "EFFECT"),
        help="expert-added edge (repeatable)",
    )
    elicit.add_argument("--out", required=True, help="output structure JSON file")
    elicit.set_defaults(func=cmd_elicit)

    sample = sub.add_parser("sample", help="forward-sample synthetic survey data")
    sample.add_argument("network", help="network JSON file")
    sample.add_argument("-n", type=int, required=True, help="record count")
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--out", required=True, help="output survey CSV file")
    sample.set_defaults(func=cmd_sample)

    serve = sub.add_parser("serve", help="serve models over HTTP")
    serve.add_argument(
        "--models",
        default=os.environ.get("BN_MODEL_DIR"),
        help="model directory (default: BN_MODEL_DIR)",
    )
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--port",
        type=int,
        default=_env_port(),
        help="port (default: BN_PORT or 8000)",
    )
    serve.set_defaults(func=cmd_serve)

    bench = sub.add_parser("bench", help="benchmark a running service")
    bench.add_argument("url", help="service base url, e.g. http://127.0.0.1:8000")
    bench.add_argument("--model", help="model id (default: first listed)")
    bench.add_argument("--mode", choices=("single", "load"), default="single")
    bench.add_argument("--requests", type=int, default=1000)
    bench.add_argument("--users", type=int, default=50, help="concurrent users (load mode)")
    bench.add_argument("--evidence", help="JSON file with the evidence to post")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    except (SurveyBnError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
