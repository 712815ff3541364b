import pytest
from fastapi.testclient import TestClient

from conftest import LiveServer
from nli_service.app import create_app
from nli_service.config import ServiceConfig
from nli_service.model import EntailmentModel


@pytest.fixture(scope="module")
def app(pretrained_base_dir):
    config = ServiceConfig(model=pretrained_base_dir, max_batch_size=64)
    model = EntailmentModel(pretrained_base_dir)
    return create_app(config, model=model)


@pytest.fixture(scope="module")
def client(app):
    return TestClient(app, raise_server_exceptions=False)


def pairs_payload(n, prefix="p"):
    return {
        "pairs": [
            {"id": f"{prefix}{i}", "premise": "alpha bravo charlie", "hypothesis": "alpha bravo"}
            for i in range(n)
        ]
    }


class TestHealth:
    def test_reports_model_and_limit(self, client, pretrained_base_dir):
        resp = client.get("/health")
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["model"] == pretrained_base_dir
        assert doc["max_batch_size"] == 64


class TestScore:
    def test_three_pairs_ids_and_order(self, client):
        resp = client.post("/score", json=pairs_payload(3))
        assert resp.status_code == 200
        scores = resp.json()["scores"]
        assert [s["id"] for s in scores] == ["p0", "p1", "p2"]
        assert all(0.0 <= s["entail"] <= 1.0 for s in scores)

    def test_identical_requests_identical_scores(self, client):
        a = client.post("/score", json=pairs_payload(4)).json()
        b = client.post("/score", json=pairs_payload(4)).json()
        assert a == b

    def test_oversized_batch_rejected_413(self, client):
        resp = client.post("/score", json=pairs_payload(65))
        assert resp.status_code == 413
        assert "error" in resp.json()

    def test_empty_hypothesis_rejected_400(self, client):
        payload = {"pairs": [{"id": "x", "premise": "alpha", "hypothesis": "   "}]}
        resp = client.post("/score", json=payload)
        assert resp.status_code == 400
        assert "hypothesis" in resp.json()["error"]

    def test_empty_premise_rejected_400(self, client):
        payload = {"pairs": [{"id": "x", "premise": "", "hypothesis": "alpha"}]}
        resp = client.post("/score", json=payload)
        assert resp.status_code == 400

    def test_duplicate_ids_rejected_400(self, client):
        payload = {
            "pairs": [
                {"id": "same", "premise": "alpha", "hypothesis": "bravo"},
                {"id": "same", "premise": "charlie", "hypothesis": "delta"},
            ]
        }
        resp = client.post("/score", json=payload)
        assert resp.status_code == 400
        assert "duplicate" in resp.json()["error"]

    def test_missing_fields_rejected_400(self, client):
        resp = client.post("/score", json={"pairs": [{"id": "x"}]})
        assert resp.status_code == 400
        assert "error" in resp.json()

    def test_no_pairs_rejected_400(self, client):
        resp = client.post("/score", json={"pairs": []})
        assert resp.status_code == 400


class TestAgainstPrimaryClient:
    """The primary package's client and validator drive a live server."""

    def test_primary_validator_passes(self, app):
        zentail_scorers = pytest.importorskip("zentail.scorers")
        with LiveServer(app) as server:
            probs = zentail_scorers.validate_endpoint(server.url, n_pairs=50)
        assert len(probs) == 50

    def test_primary_external_scorer_round_trip(self, app):
        zentail_scorers = pytest.importorskip("zentail.scorers")
        with LiveServer(app) as server:
            scorer = zentail_scorers.ExternalScorer(server.url, batch_size=16, parallel=2)
            probs = scorer.score_batch(
                [("alpha bravo charlie", "alpha bravo")] * 20
                + [("kilo lima mike", "romeo sierra")] * 20
            )
        assert len(probs) == 40
        # the toy-pretrained model separates affirming from denying hypotheses
        assert sum(probs[:20]) / 20 > sum(probs[20:]) / 20
