"""Shared domain types for the fact-checking pipeline.

All types are immutable value objects: safe to share between threads and to
use as cache keys. JSON serialization uses snake_case field names; optional
fields are omitted when unset so that ``serialize(deserialize(x)) == x``
holds for any document produced by this module.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .exceptions import MalformedTag

_PRIMARY_SUBTAG = re.compile(r"^[a-z]{2,8}$")
_SUBTAG = re.compile(r"^[a-z0-9]{2,8}$")


@dataclass(frozen=True)
class LanguageTag:
    """BCP-47-style language tag, canonicalized to lowercase."""

    code: str

    def __post_init__(self):
        subtags = self.code.split("-")
        if not subtags or not _PRIMARY_SUBTAG.match(subtags[0]):
            raise MalformedTag(f"bad primary subtag in {self.code!r}")
        for sub in subtags[1:]:
            if not _SUBTAG.match(sub):
                raise MalformedTag(f"bad subtag {sub!r} in {self.code!r}")

    def __str__(self) -> str:
        return self.code


def parse_language_tag(raw: str) -> LanguageTag:
    """Parse and canonicalize a language tag, rejecting malformed strings."""
    if not raw or not raw.strip():
        raise MalformedTag("empty language tag")
    return LanguageTag(raw.strip().lower())


class ClaimLabel(str, Enum):
    CHECK_WORTHY = "check_worthy"
    NOT_CHECK_WORTHY = "not_check_worthy"


class StanceLabel(str, Enum):
    SUPPORTS = "supports"
    REFUTES = "refutes"


class VerdictLabel(str, Enum):
    SUPPORTED = "supported"
    REFUTED = "refuted"
    UNCERTAIN = "uncertain"


@dataclass(frozen=True)
class Sentence:
    """A sentence with character offsets into its source document.

    Offsets are Unicode scalar-value indices (Python string indices), so they
    stay stable across serialization regardless of script.
    """

    text: str
    start: int
    end: int
    language: LanguageTag

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValueError(f"invalid span ({self.start}, {self.end})")
        if self.end - self.start != len(self.text):
            raise ValueError("span length does not match text length")

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "text": self.text,
            "span": {"start": self.start, "end": self.end},
            "language": self.language.code,
        }

    @classmethod
    def from_json_dict(cls, d: dict[str, Any]) -> "Sentence":
        return cls(
            text=d["text"],
            start=d["span"]["start"],
            end=d["span"]["end"],
            language=parse_language_tag(d["language"]),
        )


@dataclass(frozen=True)
class Claim:
    sentence: Sentence
    label: ClaimLabel
    score: float

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score {self.score} outside [0, 1]")

    @property
    def text(self) -> str:
        return self.sentence.text

    @property
    def language(self) -> LanguageTag:
        return self.sentence.language

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "sentence": self.sentence.to_json_dict(),
            "label": self.label.value,
            "score": self.score,
        }

    @classmethod
    def from_json_dict(cls, d: dict[str, Any]) -> "Claim":
        return cls(
            sentence=Sentence.from_json_dict(d["sentence"]),
            label=ClaimLabel(d["label"]),
            score=d["score"],
        )


@dataclass(frozen=True)
class EvidenceItem:
    """A retrieved snippet with its source and optional similarity/stance.

    ``question_index`` and ``rank`` record where the item sat in the search
    fan-out; they make the canonical retrieval order recoverable after the
    item list has been shuffled (e.g. by concurrent completion).
    """

    url: str
    normalized_url: str
    title: str
    snippet: str
    source_engine: str
    similarity: float | None = None
    stance: StanceLabel | None = None
    question_index: int | None = None
    rank: int | None = None

    def __post_init__(self):
        if not self.url:
            raise ValueError("url must be non-empty")
        if self.similarity is not None and not 0.0 <= self.similarity <= 1.0:
            raise ValueError(f"similarity {self.similarity} outside [0, 1]")

    def to_json_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "url": self.url,
            "normalized_url": self.normalized_url,
            "title": self.title,
            "snippet": self.snippet,
            "source_engine": self.source_engine,
        }
        if self.similarity is not None:
            d["similarity"] = self.similarity
        if self.stance is not None:
            d["stance"] = self.stance.value
        if self.question_index is not None:
            d["question_index"] = self.question_index
        if self.rank is not None:
            d["rank"] = self.rank
        return d

    @classmethod
    def from_json_dict(cls, d: dict[str, Any]) -> "EvidenceItem":
        stance = d.get("stance")
        return cls(
            url=d["url"],
            normalized_url=d["normalized_url"],
            title=d["title"],
            snippet=d["snippet"],
            source_engine=d["source_engine"],
            similarity=d.get("similarity"),
            stance=StanceLabel(stance) if stance is not None else None,
            question_index=d.get("question_index"),
            rank=d.get("rank"),
        )


@dataclass(frozen=True)
class Verdict:
    """Aggregated veracity prediction for one claim.

    ``error`` carries the failure annotation when a pipeline stage broke for
    this claim and the verdict degraded to Uncertain.
    """

    claim: Claim
    label: VerdictLabel
    support_votes: int
    refute_votes: int
    evidence: tuple[EvidenceItem, ...] = field(default_factory=tuple)
    justification: str | None = None
    correction: str | None = None
    error: str | None = None

    def __post_init__(self):
        if self.support_votes < 0 or self.refute_votes < 0:
            raise ValueError("vote counts must be non-negative")
        with_stance = sum(1 for e in self.evidence if e.stance is not None)
        if self.support_votes + self.refute_votes != with_stance:
            raise ValueError(
                f"votes {self.support_votes}+{self.refute_votes} != "
                f"{with_stance} stance-bearing evidence items"
            )
        if self.correction is not None and self.label is not VerdictLabel.REFUTED:
            raise ValueError("correction is only valid on refuted verdicts")

    def to_json_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "claim": self.claim.to_json_dict(),
            "label": self.label.value,
            "support_votes": self.support_votes,
            "refute_votes": self.refute_votes,
            "evidence": [e.to_json_dict() for e in self.evidence],
        }
        if self.justification is not None:
            d["justification"] = self.justification
        if self.correction is not None:
            d["correction"] = self.correction
        if self.error is not None:
            d["error"] = self.error
        return d

    @classmethod
    def from_json_dict(cls, d: dict[str, Any]) -> "Verdict":
        return cls(
            claim=Claim.from_json_dict(d["claim"]),
            label=VerdictLabel(d["label"]),
            support_votes=d["support_votes"],
            refute_votes=d["refute_votes"],
            evidence=tuple(EvidenceItem.from_json_dict(e) for e in d["evidence"]),
            justification=d.get("justification"),
            correction=d.get("correction"),
            error=d.get("error"),
        )


def canonical_json(d: dict[str, Any]) -> str:
    """Byte-stable JSON encoding: sorted keys, compact separators, UTF-8."""
    return json.dumps(d, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
