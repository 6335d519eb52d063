"""Rule-based multilingual sentence segmentation with character spans.

A boundary is a terminal punctuation mark followed by whitespace and then an
uppercase letter or a letter from an uncased script (or end of document).
Requiring the whitespace means decimals like "3.5" and intra-token dots never
split; abbreviations are suppressed via per-language lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .model import LanguageTag, Sentence

TERMINAL_CHARS = frozenset(".!?…។。؟।")


@dataclass(frozen=True)
class SegmenterConfig:
    """Per-language abbreviation lists plus the minimum sentence length.

    Sentences shorter than ``min_sentence_chars`` are merged into their
    neighbor instead of being emitted as punctuation fragments.
    """

    abbreviations: dict[str, frozenset[str]] = field(default_factory=dict)
    min_sentence_chars: int = 3

    def __post_init__(self):
        if self.min_sentence_chars < 1:
            raise ValueError("min_sentence_chars must be >= 1")
        for lang, entries in self.abbreviations.items():
            for entry in entries:
                if not entry.endswith("."):
                    raise ValueError(f"abbreviation {entry!r} ({lang}) must end with '.'")

    def abbreviations_for(self, language: LanguageTag) -> frozenset[str]:
        code = language.code
        if code in self.abbreviations:
            return self.abbreviations[code]
        primary = code.split("-")[0]
        return self.abbreviations.get(primary, frozenset())


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """Read an abbreviation list: one entry per line, '#' comments, UTF-8."""
    entries = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(line.casefold())
    return frozenset(entries)


@lru_cache(maxsize=1)
def default_config() -> SegmenterConfig:
    """Config with the bundled English abbreviation list."""
    text = resources.files("factpipe").joinpath("data/abbreviations_en.txt").read_text("utf-8")
    entries = frozenset(
        line.strip().casefold()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    )
    return SegmenterConfig(abbreviations={"en": entries})


def _starts_next_sentence(ch: str) -> bool:
    # Uppercase in cased scripts; any letter in uncased scripts (CJK, Devanagari, ...).
    return ch.isalpha() and not ch.islower()


def _token_ending_at(document: str, i: int) -> str:
    start = i
    while start > 0 and not document[start - 1].isspace():
        start -= 1
    return document[start : i + 1]


def _boundary_offsets(document: str, abbreviations: frozenset[str]) -> list[int]:
    ends = []
    n = len(document)
    for i, ch in enumerate(document):
        if ch not in TERMINAL_CHARS:
            continue
        j = i + 1
        while j < n and document[j].isspace():
            j += 1
        if j < n:
            if j == i + 1:  # no whitespace after the mark: decimal or mid-token
                continue
            if not _starts_next_sentence(document[j]):
                continue
        if ch == "." and _token_ending_at(document, i).casefold() in abbreviations:
            continue
        ends.append(i + 1)
    return ends


def segment(
    document: str,
    language: LanguageTag,
    config: SegmenterConfig | None = None,
) -> list[Sentence]:
    """Split ``document`` into sentences whose spans index into it.

    Deterministic and idempotent: re-segmenting any returned sentence yields
    exactly that sentence. Trailing text without terminal punctuation is
    emitted as a final sentence. An empty document yields an empty list.
    """
    if config is None:
        config = default_config()
    abbreviations = config.abbreviations_for(language)

    spans: list[tuple[int, int]] = []
    prev = 0
    for end in _boundary_offsets(document, abbreviations):
        start = prev
        while start < end and document[start].isspace():
            start += 1
        if start < end:
            spans.append((start, end))
        prev = end
    start, end = prev, len(document)
    while start < end and document[start].isspace():
        start += 1
    while end > start and document[end - 1].isspace():
        end -= 1
    if start < end:
        spans.append((start, end))

    # Merge fragments shorter than the minimum into the preceding sentence;
    # a short leading fragment merges forward instead.
    min_chars = config.min_sentence_chars
    merged: list[tuple[int, int]] = []
    for s, e in spans:
        if merged and e - s < min_chars:
            merged[-1] = (merged[-1][0], e)
        else:
            merged.append((s, e))
    if len(merged) >= 2 and merged[0][1] - merged[0][0] < min_chars:
        merged[0:2] = [(merged[0][0], merged[1][1])]

    return [
        Sentence(text=document[s:e], start=s, end=e, language=language)
        for s, e in merged
    ]
