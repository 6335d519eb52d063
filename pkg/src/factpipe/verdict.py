"""Veracity prediction: per-snippet stance via an NLI provider, majority-vote
aggregation, and LLM-generated justification and correction.

Majority voting ignores provider confidence; exact ties are broken by the
already-computed retrieval similarity, and anything still undecidable comes
back Uncertain rather than silently mislabeled.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

import httpx

from .exceptions import ProviderMalformedResponse, ProviderUnavailable
from .heuristics import keyword_stance
from .llm import (
    LOCAL_STUB,
    HttpLlmBackend,
    LlmProvider,
    TemplateRegistry,
    resolve_llm,
)
from .model import Claim, EvidenceItem, StanceLabel, Verdict, VerdictLabel

logger = logging.getLogger(__name__)

JUSTIFICATION_MAX_CHARS = 600


class NliKind(str, Enum):
    REMOTE_MODEL = "remote_model"
    LLM_PROMPT = "llm_prompt"
    KEYWORD_STUB = "keyword_stub"


@dataclass(frozen=True)
class NliProvider:
    kind: NliKind = NliKind.KEYWORD_STUB
    endpoint: str | None = None
    prompt_template_id: str | None = None
    timeout: float = 10.0

    def __post_init__(self):
        if self.kind is NliKind.REMOTE_MODEL and not self.endpoint:
            raise ValueError("remote_model NLI requires an endpoint")
        if self.kind is NliKind.LLM_PROMPT and not self.prompt_template_id:
            raise ValueError("llm_prompt NLI requires prompt_template_id")


class KeywordStubNli:
    """Deterministic offline stance rules (see heuristics.keyword_stance)."""

    def __init__(self, provider: NliProvider):
        self.provider = provider
        self.calls = 0

    def predict(self, claim_text: str, evidence_text: str, language) -> StanceLabel:
        self.calls += 1
        return keyword_stance(claim_text, evidence_text)

    def health(self) -> str:
        return "ok"


class RemoteNli:
    """POST {"claim", "evidence", "language"} -> {"stance", "confidence"}."""

    def __init__(self, provider: NliProvider):
        self.provider = provider
        self.calls = 0
        self._client = httpx.Client(timeout=provider.timeout)

    def predict(self, claim_text: str, evidence_text: str, language) -> StanceLabel:
        self.calls += 1
        try:
            resp = self._client.post(
                self.provider.endpoint,
                json={
                    "claim": claim_text,
                    "evidence": evidence_text,
                    "language": language.code,
                },
            )
            resp.raise_for_status()
            body = resp.json()
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"NLI endpoint: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ProviderMalformedResponse("NLI returned non-JSON body") from exc
        stance = body.get("stance") if isinstance(body, dict) else None
        if stance not in ("supports", "refutes"):
            raise ProviderMalformedResponse(f"NLI stance {stance!r} is not supports/refutes")
        return StanceLabel(stance)

    def health(self) -> str:
        try:
            self._client.get(self.provider.endpoint, timeout=2.0)
            return "ok"
        except httpx.HTTPError:
            return "unreachable"


class LlmPromptNli:
    def __init__(self, provider: NliProvider, templates: TemplateRegistry | None = None):
        self.provider = provider
        llm_provider = LlmProvider(name="nli-llm", endpoint=provider.endpoint or LOCAL_STUB)
        self._llm = resolve_llm(llm_provider, templates)
        if isinstance(self._llm, HttpLlmBackend) and provider.prompt_template_id:
            self._llm.stance_template = provider.prompt_template_id

    @property
    def calls(self) -> int:
        return self._llm.calls

    def predict(self, claim_text: str, evidence_text: str, language) -> StanceLabel:
        return self._llm.predict_stance(claim_text, evidence_text, language)

    def health(self) -> str:
        return self._llm.health()


def resolve_nli(provider: NliProvider, templates: TemplateRegistry | None = None):
    if provider.kind is NliKind.KEYWORD_STUB:
        return KeywordStubNli(provider)
    if provider.kind is NliKind.REMOTE_MODEL:
        return RemoteNli(provider)
    return LlmPromptNli(provider, templates)


def _as_nli(provider):
    if isinstance(provider, NliProvider):
        return resolve_nli(provider)
    return provider


def _as_llm(provider):
    if isinstance(provider, LlmProvider):
        return resolve_llm(provider)
    return provider


def predict_stances(
    claim: Claim,
    evidence: Sequence[EvidenceItem],
    provider,
    *,
    concurrency: int = 1,
) -> list[EvidenceItem]:
    """Set the stance on each evidence item, preserving order.

    Items whose individual stance call fails come back with stance unset so
    they are excluded from voting; one bad snippet never sinks the claim.
    """
    for item in evidence:
        if not item.snippet.strip():
            raise ValueError("evidence snippets must be non-empty")
    backend = _as_nli(provider)

    def stance_for(item: EvidenceItem) -> EvidenceItem:
        try:
            stance = backend.predict(claim.text, item.snippet, claim.language)
        except (ProviderUnavailable, ProviderMalformedResponse) as exc:
            logger.warning("stance call failed for %s: %s", item.normalized_url, exc)
            return item
        return replace(item, stance=stance)

    if concurrency > 1 and len(evidence) > 1:
        with ThreadPoolExecutor(max_workers=min(concurrency, len(evidence))) as pool:
            return list(pool.map(stance_for, evidence))
    return [stance_for(item) for item in evidence]


def aggregate(claim: Claim, evidence_with_stance: Sequence[EvidenceItem]) -> Verdict:
    """Majority vote over stance-bearing items.

    Strict majority decides; an exact tie is broken by summed similarity per
    side; a still-tied or empty vote yields Uncertain. Vote counts are
    recorded on the verdict.
    """
    supports = [e for e in evidence_with_stance if e.stance is StanceLabel.SUPPORTS]
    refutes = [e for e in evidence_with_stance if e.stance is StanceLabel.REFUTES]
    s, r = len(supports), len(refutes)
    if s > r:
        label = VerdictLabel.SUPPORTED
    elif r > s:
        label = VerdictLabel.REFUTED
    elif s == 0:
        label = VerdictLabel.UNCERTAIN
    else:
        weight_s = sum(e.similarity or 0.0 for e in supports)
        weight_r = sum(e.similarity or 0.0 for e in refutes)
        if weight_s > weight_r:
            label = VerdictLabel.SUPPORTED
        elif weight_r > weight_s:
            label = VerdictLabel.REFUTED
        else:
            label = VerdictLabel.UNCERTAIN
    return Verdict(
        claim=claim,
        label=label,
        support_votes=s,
        refute_votes=r,
        evidence=tuple(evidence_with_stance),
    )


def extractive_justification(evidence: Sequence[EvidenceItem]) -> str:
    """Fallback summary: top-2 snippets by similarity, truncated."""
    top = sorted(evidence, key=lambda e: -(e.similarity or 0.0))[:2]
    return " ".join(e.snippet for e in top)[:JUSTIFICATION_MAX_CHARS]


def justify(verdict: Verdict, provider) -> str:
    """Summarize the evidence as the verdict's rationale.

    Provider failures degrade to a deterministic extractive fallback, so this
    always returns a string.
    """
    if not verdict.evidence:
        raise ValueError("justify requires non-empty evidence")
    backend = _as_llm(provider)
    try:
        return backend.summarize(verdict.claim.text, verdict.evidence, verdict.claim.language)
    except (ProviderUnavailable, ProviderMalformedResponse) as exc:
        logger.warning("justification provider failed, using extractive fallback: %s", exc)
        return extractive_justification(verdict.evidence)


def correct(verdict: Verdict, provider) -> str | None:
    """Rewrite a refuted claim; best-effort, None for any other label or on
    provider failure."""
    if verdict.label is not VerdictLabel.REFUTED:
        return None
    backend = _as_llm(provider)
    justification = verdict.justification or extractive_justification(verdict.evidence)
    try:
        return backend.correct(verdict.claim.text, justification, verdict.claim.language)
    except (ProviderUnavailable, ProviderMalformedResponse) as exc:
        logger.warning("correction provider failed: %s", exc)
        return None
