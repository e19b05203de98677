"""HTTP service exposing stored networks and evidence-based inference.

Models are immutable and loaded once at startup; every request is
stateless, so concurrent clients always see results identical to serial
execution. Wire format: evidence as ``{"evidence": {"<node>": <state>}}``,
marginals as ``{"marginals": {"<node>": [p, ...]}}`` with probabilities
serialized to 6 decimal places.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response

from .core import BayesianNetwork, SurveyBnError, validate_network
from .infer import (
    EvidenceError,
    EvidenceQuery,
    ImpossibleEvidenceError,
    posterior_marginals,
)
from .model_io import load_network, network_to_document

WIRE_DECIMALS = 6
CONTENT_TYPE = "application/json; charset=utf-8"


class RegistryError(SurveyBnError):
    pass


class ModelRegistry:
    """Immutable id -> network map backing the service.

    Construction fails on a duplicate id or an invalid network, so a
    running service only ever holds models that pass validation.
    """

    def __init__(self, entries: Iterable[tuple[str, BayesianNetwork]]):
        self._networks: dict[str, BayesianNetwork] = {}
        for model_id, net in entries:
            if model_id in self._networks:
                raise RegistryError(f"duplicate model id {model_id!r}")
            report = validate_network(net)
            if not report.is_valid:
                raise RegistryError(f"model {model_id!r} fails validation:\n{report}")
            self._networks[model_id] = net

    @classmethod
    def from_directory(cls, path: str | Path) -> "ModelRegistry":
        """Load every *.json file in a directory; the id is the file stem."""
        path = Path(path)
        if not path.is_dir():
            raise RegistryError(f"model directory {str(path)!r} does not exist")
        return cls((p.stem, load_network(p)) for p in sorted(path.glob("*.json")))

    def ids(self) -> list[str]:
        return sorted(self._networks)

    def get(self, model_id: str) -> BayesianNetwork | None:
        return self._networks.get(model_id)

    def __len__(self) -> int:
        return len(self._networks)


def _wire_round(vector) -> list[float]:
    return [round(float(p), WIRE_DECIMALS) for p in vector]


def _wire_dumps(document) -> bytes:
    return json.dumps(document, sort_keys=True, separators=(",", ":")).encode("utf-8")


def _json_response(document, status_code: int = 200) -> Response:
    return Response(content=_wire_dumps(document), status_code=status_code, media_type=CONTENT_TYPE)


def _error_response(status_code: int, code: str, message: str, field: str | None = None) -> Response:
    body: dict = {"error": {"code": code, "message": message}}
    if field is not None:
        body["error"]["field"] = field
    return _json_response(body, status_code=status_code)


def _priors_document(net: BayesianNetwork) -> dict[str, list[float]]:
    result = posterior_marginals(net)
    return {node: _wire_round(vec) for node, vec in sorted(result.marginals.items())}


def create_app(registry: ModelRegistry) -> FastAPI:
    """Build the FastAPI application serving a fixed model registry."""
    app = FastAPI(title="surveybn", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    summaries = []
    documents: dict[str, bytes] = {}
    for model_id in registry.ids():
        net = registry.get(model_id)
        assert net is not None
        summaries.append(
            {
                "id": model_id,
                "name": net.name or model_id,
                "node_count": len(net.dag.nodes),
                "edge_count": len(net.dag.edges),
            }
        )
        document = {"id": model_id, **network_to_document(net), "priors": _priors_document(net)}
        documents[model_id] = _wire_dumps(document)
    listing = _wire_dumps(summaries)

    @app.get("/api/networks")
    def list_networks() -> Response:
        return Response(content=listing, media_type=CONTENT_TYPE)

    @app.get("/api/networks/{model_id}")
    def get_network(model_id: str) -> Response:
        body = documents.get(model_id)
        if body is None:
            return _error_response(404, "not_found", f"no model with id {model_id!r}")
        return Response(content=body, media_type=CONTENT_TYPE)

    @app.post("/api/networks/{model_id}/infer")
    async def infer(model_id: str, request: Request) -> Response:
        net = registry.get(model_id)
        if net is None:
            return _error_response(404, "not_found", f"no model with id {model_id!r}")

        try:
            payload = await request.json()
        except json.JSONDecodeError:
            return _error_response(422, "invalid_evidence", "request body is not valid JSON")
        if not isinstance(payload, dict) or not isinstance(payload.get("evidence"), dict):
            return _error_response(
                422, "invalid_evidence", 'request body must be {"evidence": {"<node>": <state index>}}'
            )

        evidence: Mapping = payload["evidence"]
        for node, state in evidence.items():
            try:
                EvidenceQuery({node: state}).validate(net)
            except EvidenceError as exc:
                return _error_response(422, "invalid_evidence", str(exc), field=str(node))

        try:
            result = posterior_marginals(net, EvidenceQuery(dict(evidence)))
        except ImpossibleEvidenceError as exc:
            return _error_response(409, "impossible_evidence", str(exc))

        marginals = {node: _wire_round(vec) for node, vec in sorted(result.marginals.items())}
        return _json_response({"marginals": marginals})

    return app


def run_server(model_dir: str | Path, host: str = "127.0.0.1", port: int = 8000) -> None:
    """Serve a model directory until interrupted (blocking)."""
    import uvicorn

    registry = ModelRegistry.from_directory(model_dir)
    app = create_app(registry)
    uvicorn.run(app, host=host, port=port, log_level="warning")
