"""LLM provider descriptors, the prompt template registry, and backends.

Remote LLMs are reached through a minimal inference-server protocol:
``POST endpoint {"prompt": str, "temperature": float, "seed": int?}`` ->
``{"text": str}``. The ``local-stub`` endpoint selects a deterministic
backend so the pipeline runs offline and reproducibly.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

import httpx

from .exceptions import ConfigError, ProviderMalformedResponse, ProviderUnavailable
from .heuristics import echo_question, heuristic_checkworthiness_score, keyword_stance
from .model import LanguageTag, StanceLabel

if TYPE_CHECKING:
    from .model import EvidenceItem

LOCAL_STUB = "local-stub"

QUESTION_TEMPLATE = "question_decomposition"
CLASSIFY_TEMPLATE = "claim_classification"
STANCE_TEMPLATE = "stance_nli"
JUSTIFY_TEMPLATE = "justification_summary"
CORRECTION_TEMPLATE = "correction"

_LIST_MARKER = re.compile(r"^\s*(?:\d+[.)]|[-*•])\s*")


@dataclass(frozen=True)
class LlmProvider:
    """Descriptor for a text-generation backend."""

    name: str
    endpoint: str
    temperature: float = 0.2
    seed: int | None = None
    max_questions: int = 3
    timeout: float = 10.0

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_questions < 1:
            raise ValueError("max_questions must be >= 1")

    @property
    def is_stub(self) -> bool:
        return self.endpoint == LOCAL_STUB


class TemplateRegistry:
    """Named prompt templates with {claim}/{language}-style placeholders.

    Templates resolve from user-supplied directories first, then from the
    files bundled with the package. Ids map to ``<id>.txt``.
    """

    def __init__(self, extra_dirs: Sequence[str | Path] = ()):
        self._extra_dirs = [Path(d) for d in extra_dirs]

    def get(self, template_id: str) -> str:
        for d in self._extra_dirs:
            path = d / f"{template_id}.txt"
            if path.is_file():
                return path.read_text(encoding="utf-8")
        bundled = resources.files("factpipe").joinpath(f"templates/{template_id}.txt")
        if bundled.is_file():
            return bundled.read_text(encoding="utf-8")
        raise ConfigError(f"unknown prompt template id: {template_id!r}")

    def render(self, template_id: str, **variables: str) -> str:
        return self.get(template_id).format(**variables)

    def fingerprint(self, template_id: str) -> str:
        return hashlib.sha256(self.get(template_id).encode("utf-8")).hexdigest()[:12]


def parse_question_list(text: str) -> list[str]:
    """Parse LLM question output: a JSON string array if present, otherwise
    one question per line with list markers ("1.", "-") stripped."""
    start = text.find("[")
    end = text.rfind("]")
    if start != -1 and end > start:
        try:
            parsed = json.loads(text[start : end + 1])
        except json.JSONDecodeError:
            parsed = None
        if isinstance(parsed, list):
            return [str(q).strip() for q in parsed if str(q).strip()]
    questions = []
    for line in text.splitlines():
        line = _LIST_MARKER.sub("", line).strip()
        if line:
            questions.append(line)
    return questions


class StubLlmBackend:
    """Deterministic offline LLM with fixed, inspectable behavior per task."""

    def __init__(self, provider: LlmProvider):
        self.provider = provider
        self.calls = 0

    def generate_questions(self, claim_text: str, language: LanguageTag) -> list[str]:
        self.calls += 1
        return [echo_question(claim_text)]

    def classify_checkworthy(self, texts: Sequence[str], language: LanguageTag) -> list[float]:
        self.calls += 1
        return [1.0 if heuristic_checkworthiness_score(t) >= 0.5 else 0.0 for t in texts]

    def predict_stance(
        self, claim_text: str, evidence_text: str, language: LanguageTag
    ) -> StanceLabel:
        self.calls += 1
        return keyword_stance(claim_text, evidence_text)

    def summarize(
        self, claim_text: str, evidence: Sequence["EvidenceItem"], language: LanguageTag
    ) -> str:
        self.calls += 1
        return evidence[0].snippet

    def correct(self, claim_text: str, justification: str, language: LanguageTag) -> str:
        self.calls += 1
        return f"Correction: {justification}"

    def health(self) -> str:
        return "ok"


class HttpLlmBackend:
    """Talks to a remote text-generation server and parses per task."""

    def __init__(self, provider: LlmProvider, templates: TemplateRegistry | None = None):
        self.provider = provider
        self.templates = templates or TemplateRegistry()
        self.calls = 0
        self.question_template = QUESTION_TEMPLATE
        self.classify_template = CLASSIFY_TEMPLATE
        self.stance_template = STANCE_TEMPLATE
        self._client = httpx.Client(timeout=provider.timeout)

    def _complete(self, prompt: str) -> str:
        payload: dict = {"prompt": prompt, "temperature": self.provider.temperature}
        if self.provider.seed is not None:
            payload["seed"] = self.provider.seed
        self.calls += 1
        try:
            resp = self._client.post(self.provider.endpoint, json=payload)
            resp.raise_for_status()
            body = resp.json()
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"LLM {self.provider.name}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ProviderMalformedResponse(f"LLM {self.provider.name}: non-JSON body") from exc
        if not isinstance(body, dict) or not isinstance(body.get("text"), str):
            raise ProviderMalformedResponse(f"LLM {self.provider.name}: missing 'text'")
        return body["text"]

    def generate_questions(self, claim_text: str, language: LanguageTag) -> list[str]:
        prompt = self.templates.render(
            self.question_template, claim=claim_text, language=language.code
        )
        return parse_question_list(self._complete(prompt))

    def classify_checkworthy(self, texts: Sequence[str], language: LanguageTag) -> list[float]:
        prompt = self.templates.render(
            self.classify_template,
            sentences=json.dumps(list(texts), ensure_ascii=False),
            language=language.code,
        )
        text = self._complete(prompt)
        start, end = text.find("["), text.rfind("]")
        if start == -1 or end <= start:
            raise ProviderMalformedResponse("classification output has no JSON array")
        try:
            labels = json.loads(text[start : end + 1])
        except json.JSONDecodeError as exc:
            raise ProviderMalformedResponse("classification output is not valid JSON") from exc
        if not isinstance(labels, list) or len(labels) != len(texts):
            raise ProviderMalformedResponse("classification output has wrong length")
        if any(label not in (0, 1) for label in labels):
            raise ProviderMalformedResponse("classification labels must be 0 or 1")
        return [float(label) for label in labels]

    def predict_stance(
        self, claim_text: str, evidence_text: str, language: LanguageTag
    ) -> StanceLabel:
        prompt = self.templates.render(
            self.stance_template,
            claim=claim_text,
            evidence=evidence_text,
            language=language.code,
        )
        text = self._complete(prompt).casefold()
        supports = text.find("supports")
        refutes = text.find("refutes")
        if supports == -1 and refutes == -1:
            raise ProviderMalformedResponse("stance output mentions neither label")
        if refutes == -1 or (supports != -1 and supports < refutes):
            return StanceLabel.SUPPORTS
        return StanceLabel.REFUTES

    def summarize(
        self, claim_text: str, evidence: Sequence["EvidenceItem"], language: LanguageTag
    ) -> str:
        lines = [f"- {e.title} ({e.normalized_url}): {e.snippet}" for e in evidence]
        prompt = self.templates.render(
            JUSTIFY_TEMPLATE,
            claim=claim_text,
            evidence="\n".join(lines),
            language=language.code,
        )
        return self._complete(prompt).strip()

    def correct(self, claim_text: str, justification: str, language: LanguageTag) -> str:
        prompt = self.templates.render(
            CORRECTION_TEMPLATE,
            claim=claim_text,
            justification=justification,
            language=language.code,
        )
        return self._complete(prompt).strip()

    def health(self) -> str:
        try:
            self._client.get(self.provider.endpoint, timeout=2.0)
            return "ok"
        except httpx.HTTPError:
            return "unreachable"


def resolve_llm(provider: LlmProvider, templates: TemplateRegistry | None = None):
    """Build the backend for a descriptor (stub or HTTP)."""
    if provider.is_stub:
        return StubLlmBackend(provider)
    return HttpLlmBackend(provider, templates)
