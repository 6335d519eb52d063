"""Check-worthiness classification over a pluggable provider interface.

A provider is either a remote fine-tuned classifier server, an LLM prompted
for strict 0/1 labels, or the offline heuristic stub. All three expose the
same contract: one score in [0, 1] per input sentence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import httpx

from .exceptions import ProviderMalformedResponse, ProviderUnavailable
from .heuristics import heuristic_checkworthiness_score
from .llm import LOCAL_STUB, HttpLlmBackend, LlmProvider, TemplateRegistry, resolve_llm
from .model import Claim, ClaimLabel, LanguageTag, Sentence


class ClassifierKind(str, Enum):
    REMOTE_MODEL = "remote_model"
    LLM_PROMPT = "llm_prompt"
    HEURISTIC_STUB = "heuristic_stub"


@dataclass(frozen=True)
class ClassifierProvider:
    kind: ClassifierKind = ClassifierKind.HEURISTIC_STUB
    endpoint: str | None = None
    prompt_template_id: str | None = None
    decision_threshold: float = 0.5
    timeout: float = 10.0

    def __post_init__(self):
        if not 0.0 < self.decision_threshold < 1.0:
            raise ValueError("decision_threshold must be in (0, 1)")
        if self.kind is ClassifierKind.REMOTE_MODEL and not self.endpoint:
            raise ValueError("remote_model classifier requires an endpoint")
        if self.kind is ClassifierKind.LLM_PROMPT and not self.prompt_template_id:
            raise ValueError("llm_prompt classifier requires prompt_template_id")


class HeuristicStubClassifier:
    """Deterministic offline classifier; scores depend only on sentence text."""

    def __init__(self, provider: ClassifierProvider):
        self.provider = provider
        self.calls = 0

    def scores(self, texts: Sequence[str], language: LanguageTag) -> list[float]:
        self.calls += 1
        return [heuristic_checkworthiness_score(t) for t in texts]

    def health(self) -> str:
        return "ok"


class RemoteClassifier:
    """Inference-server client: POST {"sentences", "language"} -> {"scores"}."""

    def __init__(self, provider: ClassifierProvider):
        self.provider = provider
        self.calls = 0
        self._client = httpx.Client(timeout=provider.timeout)

    def scores(self, texts: Sequence[str], language: LanguageTag) -> list[float]:
        self.calls += 1
        try:
            resp = self._client.post(
                self.provider.endpoint,
                json={"sentences": list(texts), "language": language.code},
            )
            resp.raise_for_status()
            body = resp.json()
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"classifier endpoint: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ProviderMalformedResponse("classifier returned non-JSON body") from exc
        scores = body.get("scores") if isinstance(body, dict) else None
        if not isinstance(scores, list) or len(scores) != len(texts):
            raise ProviderMalformedResponse("classifier response missing per-sentence scores")
        out = []
        for s in scores:
            if not isinstance(s, (int, float)) or not 0.0 <= s <= 1.0:
                raise ProviderMalformedResponse(f"score {s!r} outside [0, 1]")
            out.append(float(s))
        return out

    def health(self) -> str:
        return _probe(self._client, self.provider.endpoint)


class LlmPromptClassifier:
    """Classifies via an LLM prompted for a strict JSON array of 0/1 labels."""

    def __init__(self, provider: ClassifierProvider, templates: TemplateRegistry | None = None):
        self.provider = provider
        llm_provider = LlmProvider(name="classifier-llm", endpoint=provider.endpoint or LOCAL_STUB)
        self._llm = resolve_llm(llm_provider, templates)
        if isinstance(self._llm, HttpLlmBackend) and provider.prompt_template_id:
            self._llm.classify_template = provider.prompt_template_id

    @property
    def calls(self) -> int:
        return self._llm.calls

    def scores(self, texts: Sequence[str], language: LanguageTag) -> list[float]:
        return self._llm.classify_checkworthy(texts, language)

    def health(self) -> str:
        return self._llm.health()


def resolve_classifier(provider: ClassifierProvider, templates: TemplateRegistry | None = None):
    if provider.kind is ClassifierKind.HEURISTIC_STUB:
        return HeuristicStubClassifier(provider)
    if provider.kind is ClassifierKind.REMOTE_MODEL:
        return RemoteClassifier(provider)
    return LlmPromptClassifier(provider, templates)


def _as_classifier(provider):
    if isinstance(provider, ClassifierProvider):
        return resolve_classifier(provider)
    return provider


def _probe(client: httpx.Client, endpoint: str | None) -> str:
    if not endpoint or endpoint == LOCAL_STUB:
        return "ok"
    try:
        client.get(endpoint, timeout=2.0)
        return "ok"
    except httpx.HTTPError:
        return "unreachable"


def detect(sentences: Sequence[Sentence], provider) -> list[Claim]:
    """Classify each sentence, returning one Claim per input in input order.

    The label derives from the provider score and the decision threshold;
    a score exactly at the threshold counts as check-worthy.
    """
    backend = _as_classifier(provider)
    if not sentences:
        return []
    for s in sentences:
        if not s.text.strip():
            raise ValueError("sentences must have non-empty text")
    scores = backend.scores([s.text for s in sentences], sentences[0].language)
    if len(scores) != len(sentences):
        raise ProviderMalformedResponse("provider returned wrong number of scores")
    threshold = backend.provider.decision_threshold
    claims = []
    for sentence, score in zip(sentences, scores):
        if not 0.0 <= score <= 1.0:
            raise ProviderMalformedResponse(f"score {score} outside [0, 1]")
        label = ClaimLabel.CHECK_WORTHY if score >= threshold else ClaimLabel.NOT_CHECK_WORTHY
        claims.append(Claim(sentence=sentence, label=label, score=score))
    return claims


def detect_batched(
    sentences: Sequence[Sentence], provider, batch_size: int
) -> list[Claim]:
    """detect() in provider-call chunks of ``batch_size``.

    Output is identical to the unbatched call. A failed batch fails the whole
    call; no partial output is returned.
    """
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    backend = _as_classifier(provider)
    claims: list[Claim] = []
    for i in range(0, len(sentences), batch_size):
        claims.extend(detect(sentences[i : i + batch_size], backend))
    return claims
