"""Decompose a check-worthy claim into search questions via an LLM provider.

Using a claim verbatim as the only query retrieves too narrowly, so the LLM
diversifies it into targeted questions; the verbatim claim is still always
kept as the final query so the direct route is never lost.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import EmptyGeneration
from .llm import LlmProvider, resolve_llm
from .model import Claim, ClaimLabel

__all__ = ["LlmProvider", "QuestionSet", "decompose", "fallback_question_set"]


@dataclass(frozen=True)
class QuestionSet:
    claim_text: str
    questions: tuple[str, ...]

    def __post_init__(self):
        if not self.questions:
            raise ValueError("a QuestionSet needs at least one question")
        if any(not q.strip() for q in self.questions):
            raise ValueError("questions must be non-empty")
        folded = [q.strip().casefold() for q in self.questions]
        if len(set(folded)) != len(folded):
            raise ValueError("questions must be unique after casefold/trim")


def _as_llm(provider):
    if isinstance(provider, LlmProvider):
        return resolve_llm(provider)
    return provider


def fallback_question_set(claim: Claim) -> QuestionSet:
    """The degenerate set used when generation yields nothing: claim verbatim."""
    return QuestionSet(claim_text=claim.text, questions=(claim.text,))


def decompose(claim: Claim, provider) -> QuestionSet:
    """Generate up to ``max_questions`` deduplicated questions for a claim.

    The verbatim claim text is appended as the final query entry. Raises
    EmptyGeneration when the provider produced no parseable questions; the
    caller falls back to ``fallback_question_set``.
    """
    if claim.label is not ClaimLabel.CHECK_WORTHY:
        raise ValueError("decompose expects a check-worthy claim")
    backend = _as_llm(provider)
    raw = backend.generate_questions(claim.text, claim.language)

    claim_key = claim.text.strip().casefold()
    seen = {claim_key}  # the verbatim claim is reserved for the final slot
    questions: list[str] = []
    limit = backend.provider.max_questions
    for q in raw:
        q = q.strip()
        key = q.casefold()
        if not q or key in seen:
            continue
        seen.add(key)
        questions.append(q)
        if len(questions) >= limit:
            break
    if not questions:
        raise EmptyGeneration(f"no questions generated for claim: {claim.text[:80]!r}")
    questions.append(claim.text)
    return QuestionSet(claim_text=claim.text, questions=tuple(questions))
