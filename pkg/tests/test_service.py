import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from factpipe.config import PipelineConfig
from factpipe.model import Verdict
from factpipe.pipeline import Runtime
from factpipe.service import create_app

DATA = Path(__file__).parent / "data"


@pytest.fixture
def client() -> TestClient:
    return TestClient(create_app(PipelineConfig(cache_ttl_seconds=0.0)))


@pytest.fixture
def fixture_document() -> str:
    return (DATA / "fixture_document.txt").read_text(encoding="utf-8")


class TestHealth:
    def test_stub_providers_report_ok(self, client):
        resp = client.get("/api/v1/health")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["providers"]["classifier"] == "ok"
        assert body["providers"]["search:web-a"] == "ok"


class TestDetectEndpoint:
    def test_detect_returns_labeled_claims(self, client, fixture_document):
        resp = client.post(
            "/api/v1/claims/detect",
            json={"document": fixture_document, "language": "en"},
        )
        assert resp.status_code == 200
        claims = resp.json()["claims"]
        assert len(claims) == 5
        assert [c["label"] for c in claims] == [
            "check_worthy",
            "not_check_worthy",
            "check_worthy",
            "not_check_worthy",
            "not_check_worthy",
        ]

    def test_malformed_language_is_422(self, client):
        resp = client.post(
            "/api/v1/claims/detect", json={"document": "Text.", "language": "!!"}
        )
        assert resp.status_code == 422

    def test_missing_field_is_422(self, client):
        resp = client.post("/api/v1/claims/detect", json={"document": "Text."})
        assert resp.status_code == 422


class TestFactcheckEndpoint:
    def test_returns_golden_report_content(self, client, fixture_document):
        golden = json.loads((DATA / "golden_report.json").read_text(encoding="utf-8"))
        resp = client.post(
            "/api/v1/factcheck", json={"document": fixture_document, "language": "en"}
        )
        assert resp.status_code == 200
        body = resp.json()
        timings = body.pop("timings")
        assert set(timings) == {"segment_ms", "detect_ms", "verify_ms", "total_ms"}
        assert body == golden

    def test_oversize_document_is_413(self, fixture_document):
        app = create_app(PipelineConfig(max_document_chars=50))
        client = TestClient(app)
        resp = client.post(
            "/api/v1/factcheck", json={"document": "x" * 51, "language": "en"}
        )
        assert resp.status_code == 413


class TestVerifyEndpoint:
    def test_single_claim_verdict(self, client):
        resp = client.post(
            "/api/v1/verify",
            json={"claim": "The Nile is about 6650 kilometers long.", "language": "en"},
        )
        assert resp.status_code == 200
        verdict = Verdict.from_json_dict(resp.json())
        assert verdict.label.value == "supported"
        assert len(verdict.evidence) == 3

    def test_empty_claim_is_422(self, client):
        resp = client.post("/api/v1/verify", json={"claim": "  ", "language": "en"})
        assert resp.status_code == 422

    def test_verify_uses_language(self, client):
        resp = client.post(
            "/api/v1/verify", json={"claim": "Elva er 600 kilometer lang.", "language": "NB-no"}
        )
        assert resp.status_code == 200
        assert resp.json()["claim"]["sentence"]["language"] == "nb-no"
