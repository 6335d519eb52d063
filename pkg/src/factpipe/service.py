"""REST service exposing the pipeline to the editor frontend.

Endpoints (JSON, UTF-8):
    POST /api/v1/claims/detect  {document, language} -> {claims: [...]}
    POST /api/v1/factcheck      {document, language} -> FactCheckReport
    POST /api/v1/verify         {claim, language} -> Verdict
    GET  /api/v1/health         -> {status, providers: {...}}

Per-claim failures surface as Uncertain verdicts, not HTTP errors: an editor
fact-checking fifty sentences must not lose forty-nine results to one flaky
connector.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .claim_detect import detect_batched
from .config import PipelineConfig
from .exceptions import DocumentTooLarge, MalformedTag
from .model import Claim, ClaimLabel, LanguageTag, Sentence, parse_language_tag
from .pipeline import Runtime, check_claim, run_pipeline
from .segmenter import segment


class DocumentRequest(BaseModel):
    document: str
    language: str


class VerifyRequest(BaseModel):
    claim: str
    language: str


def create_app(config: PipelineConfig | None = None, runtime: Runtime | None = None) -> FastAPI:
    runtime = runtime or Runtime(config)
    app = FastAPI(title="factpipe", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.runtime = runtime

    def parse_language(raw: str) -> LanguageTag:
        try:
            return parse_language_tag(raw)
        except MalformedTag as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    def check_size(document: str) -> None:
        limit = runtime.config.max_document_chars
        if len(document) > limit:
            raise HTTPException(
                status_code=413,
                detail=f"document has {len(document)} chars, limit {limit}",
            )

    @app.post("/api/v1/claims/detect")
    def detect_claims(req: DocumentRequest) -> dict:
        language = parse_language(req.language)
        check_size(req.document)
        sentences = segment(req.document, language, runtime.segmenter_config)
        claims = detect_batched(
            sentences, runtime.classifier, runtime.config.detection_batch_size
        )
        return {"claims": [c.to_json_dict() for c in claims]}

    @app.post("/api/v1/factcheck")
    def factcheck(req: DocumentRequest) -> dict:
        language = parse_language(req.language)
        try:
            report = run_pipeline(req.document, language, runtime=runtime)
        except DocumentTooLarge as exc:
            raise HTTPException(status_code=413, detail=str(exc)) from exc
        return report.to_json_dict()

    @app.post("/api/v1/verify")
    def verify(req: VerifyRequest) -> dict:
        language = parse_language(req.language)
        text = req.claim.strip()
        if not text:
            raise HTTPException(status_code=422, detail="claim must be non-empty")
        check_size(text)
        sentence = Sentence(text=text, start=0, end=len(text), language=language)
        claim = Claim(sentence=sentence, label=ClaimLabel.CHECK_WORTHY, score=1.0)
        verdict = check_claim(claim, runtime)
        return verdict.to_json_dict()

    @app.get("/api/v1/health")
    def health() -> dict:
        providers = runtime.health()
        status = "ok" if all(v == "ok" for v in providers.values()) else "degraded"
        return {"status": status, "providers": providers}

    return app
