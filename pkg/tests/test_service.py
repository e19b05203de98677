"""HTTP service: endpoints, wire format, error envelopes, registry."""

import json

import pytest
from fastapi.testclient import TestClient

from surveybn import (
    ModelRegistry,
    RegistryError,
    create_app,
    load_network,
    network_to_document,
    posterior_marginals,
)

from conftest import MODELS, make_chain


@pytest.fixture(scope="module")
def registry() -> ModelRegistry:
    return ModelRegistry.from_directory(MODELS)


@pytest.fixture(scope="module")
def client(registry) -> TestClient:
    return TestClient(create_app(registry))


class TestRegistry:
    def test_from_directory_finds_shipped_models(self, registry):
        assert "devex" in registry.ids()
        assert registry.ids() == sorted(registry.ids())

    def test_get_unknown_returns_none(self, registry):
        assert registry.get("nope") is None

    def test_duplicate_id_rejected(self):
        net = make_chain()
        with pytest.raises(RegistryError, match="duplicate"):
            ModelRegistry([("m", net), ("m", net)])

    def test_invalid_network_rejected(self):
        from surveybn import BayesianNetwork, Cpt, Dag, Variable

        broken = BayesianNetwork(
            (Variable("a", "a", ("n", "y")),),
            Dag(("a",)),
            {"a": Cpt("a", (), [[0.7, 0.7]])},
        )
        with pytest.raises(RegistryError, match="validation"):
            ModelRegistry([("bad", broken)])

    def test_missing_directory_rejected(self, tmp_path):
        with pytest.raises(RegistryError, match="does not exist"):
            ModelRegistry.from_directory(tmp_path / "nowhere")

    def test_len(self, registry):
        assert len(registry) == len(registry.ids())


class TestListing:
    def test_bare_sorted_array(self, client, registry):
        r = client.get("/api/networks")
        assert r.status_code == 200
        body = r.json()
        assert isinstance(body, list)
        assert [m["id"] for m in body] == registry.ids()

    def test_summary_shape(self, client):
        entry = client.get("/api/networks").json()[0]
        assert set(entry) == {"id", "name", "node_count", "edge_count"}

    def test_counts_match_model(self, client, registry):
        for entry in client.get("/api/networks").json():
            net = registry.get(entry["id"])
            assert entry["node_count"] == len(net.dag.nodes)
            assert entry["edge_count"] == len(net.dag.edges)

    def test_content_type(self, client):
        r = client.get("/api/networks")
        assert r.headers["content-type"] == "application/json; charset=utf-8"


class TestDocument:
    def test_matches_shipped_file_plus_priors(self, client):
        body = client.get("/api/networks/devex").json()
        net = load_network(MODELS / "devex.json")
        expected = network_to_document(net)
        assert body["id"] == "devex"
        for key in ("nodes", "edges", "cpts"):
            assert body[key] == expected[key]

    def test_priors_are_six_decimal_rounded(self, client):
        body = client.get("/api/networks/devex").json()
        net = load_network(MODELS / "devex.json")
        priors = posterior_marginals(net).marginals
        for node, vec in body["priors"].items():
            assert vec == [round(float(p), 6) for p in priors[node]]

    def test_unknown_model_404(self, client):
        r = client.get("/api/networks/nope")
        assert r.status_code == 404
        assert r.json() == {
            "error": {"code": "not_found", "message": "no model with id 'nope'"}
        }


class TestInfer:
    def test_empty_evidence_equals_priors_bit_for_bit(self, client):
        doc = client.get("/api/networks/devex").json()
        r = client.post("/api/networks/devex/infer", json={"evidence": {}})
        assert r.status_code == 200
        assert r.json() == {"marginals": doc["priors"]}

    def test_evidence_pins_observed_node(self, client):
        net = load_network(MODELS / "devex.json")
        node = net.dag.nodes[0]
        r = client.post(
            "/api/networks/devex/infer", json={"evidence": {node: 2}}
        )
        vec = r.json()["marginals"][node]
        assert vec[2] == 1.0
        assert sum(vec) == pytest.approx(1.0, abs=1e-5)

    def test_marginals_match_library(self, client):
        from surveybn import EvidenceQuery

        net = load_network(MODELS / "devex.json")
        node = sorted(net.dag.nodes)[1]
        result = posterior_marginals(net, EvidenceQuery({node: 0}))
        r = client.post("/api/networks/devex/infer", json={"evidence": {node: 0}})
        for name, vec in r.json()["marginals"].items():
            assert vec == [round(float(p), 6) for p in result.marginals[name]]

    def test_response_has_only_marginals_key(self, client):
        r = client.post("/api/networks/devex/infer", json={"evidence": {}})
        assert set(r.json()) == {"marginals"}

    def test_unknown_model_404(self, client):
        r = client.post("/api/networks/nope/infer", json={"evidence": {}})
        assert r.status_code == 404
        assert r.json()["error"]["code"] == "not_found"

    def test_unknown_node_422_names_field(self, client):
        r = client.post(
            "/api/networks/devex/infer", json={"evidence": {"ghost": 0}}
        )
        assert r.status_code == 422
        err = r.json()["error"]
        assert err["code"] == "invalid_evidence"
        assert err["field"] == "ghost"

    def test_out_of_range_state_422(self, client):
        net = load_network(MODELS / "devex.json")
        node = net.dag.nodes[0]
        r = client.post(
            "/api/networks/devex/infer", json={"evidence": {node: 99}}
        )
        assert r.status_code == 422
        assert r.json()["error"]["field"] == node

    def test_state_name_rejected_in_favor_of_index(self, client):
        net = load_network(MODELS / "devex.json")
        node = net.dag.nodes[0]
        state_name = net.variable(node).states[0]
        r = client.post(
            "/api/networks/devex/infer", json={"evidence": {node: state_name}}
        )
        assert r.status_code == 422

    def test_malformed_json_422(self, client):
        r = client.post(
            "/api/networks/devex/infer",
            content=b"{not json",
            headers={"content-type": "application/json"},
        )
        assert r.status_code == 422
        assert r.json()["error"]["code"] == "invalid_evidence"

    def test_missing_evidence_key_422(self, client):
        r = client.post("/api/networks/devex/infer", json={"observations": {}})
        assert r.status_code == 422

    def test_impossible_evidence_409(self):
        from surveybn import BayesianNetwork, Cpt, Dag, Variable

        # alarm is deterministically on when power is on
        net = BayesianNetwork(
            (
                Variable("alarm", "alarm", ("off", "on")),
                Variable("power", "power", ("off", "on")),
            ),
            Dag(("alarm", "power"), (("power", "alarm"),)),
            {
                "power": Cpt("power", (), [[0.0, 1.0]]),
                "alarm": Cpt("alarm", ("power",), [[1.0, 0.0], [0.0, 1.0]]),
            },
        )
        client = TestClient(create_app(ModelRegistry([("grid", net)])))
        r = client.post("/api/networks/grid/infer", json={"evidence": {"alarm": 0}})
        assert r.status_code == 409
        assert r.json()["error"]["code"] == "impossible_evidence"

    def test_cors_header_present(self, client):
        r = client.get("/api/networks", headers={"origin": "http://localhost:5173"})
        assert r.headers["access-control-allow-origin"] == "*"


class TestWireStability:
    def test_keys_sorted_and_compact(self, client):
        raw = client.get("/api/networks/devex").content
        parsed = json.loads(raw)
        assert raw == json.dumps(
            parsed, sort_keys=True, separators=(",", ":")
        ).encode("utf-8")

    def test_repeat_requests_byte_identical(self, client):
        a = client.post("/api/networks/devex/infer", json={"evidence": {}}).content
        b = client.post("/api/networks/devex/infer", json={"evidence": {}}).content
        assert a == b
