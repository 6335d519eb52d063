"""Deterministic text rules backing the offline stub providers.

These are intentionally simple and inspectable: the stubs exist so the whole
pipeline can run byte-reproducibly without model servers, not to be accurate.
"""

from __future__ import annotations

import re

from .model import StanceLabel

OPINION_PREFIXES = (
    "i think",
    "i believe",
    "i feel",
    "i guess",
    "i hope",
    "in my opinion",
    "we think",
    "we believe",
    "personally",
)

COMPARISON_WORDS = frozenset(
    {
        "more", "less", "most", "least", "fewer", "greater", "higher",
        "lower", "than", "best", "worst", "fastest", "slowest", "biggest",
        "smallest", "largest",
    }
)

NEGATION_TOKENS = frozenset({"not", "no", "never", "false"})

STOPWORDS = frozenset(
    {
        "the", "a", "an", "and", "or", "but", "to", "of", "in", "on", "at",
        "by", "for", "with", "is", "are", "was", "were", "be", "been",
        "being", "it", "its", "this", "that", "these", "those", "as", "from",
        "has", "have", "had", "he", "she", "they", "we", "you", "i", "his",
        "her", "their", "our", "your", "my", "me", "him", "them", "us",
        "will", "would", "can", "could", "do", "does", "did", "about",
        "into", "over", "under", "there", "here", "what", "who", "when",
    }
)

_WORD = re.compile(r"\w+")


def heuristic_checkworthiness_score(text: str) -> float:
    """Score a sentence's check-worthiness with fixed lexical rules.

    Questions and first-person opinions score 0.1; sentences with digits,
    mid-sentence capitalized multiword spans (named-entity-like), or
    comparison words score 0.9; everything else 0.4.
    """
    stripped = text.strip()
    if not stripped:
        return 0.1
    folded = stripped.casefold()
    if stripped.endswith("?") or folded.startswith(OPINION_PREFIXES):
        return 0.1
    if any(ch.isdigit() for ch in stripped):
        return 0.9
    tokens = stripped.split()
    caps = [t[0].isalpha() and t[0].isupper() for t in tokens]
    for i in range(1, len(caps) - 1):
        if caps[i] and caps[i + 1]:
            return 0.9
    words = {w.casefold() for w in _WORD.findall(stripped)}
    if words & COMPARISON_WORDS:
        return 0.9
    return 0.4


def content_words(text: str) -> set[str]:
    """Casefolded tokens that carry content: non-stopwords of length >= 3,
    plus anything containing a digit."""
    out = set()
    for w in _WORD.findall(text.casefold()):
        if w in STOPWORDS:
            continue
        if len(w) >= 3 or any(c.isdigit() for c in w):
            out.add(w)
    return out


def keyword_stance(claim_text: str, snippet: str) -> StanceLabel:
    """Stance rules: verbatim containment supports; a negation token near a
    claim keyword refutes; otherwise majority content-word overlap decides."""
    claim_folded = claim_text.casefold().strip()
    snippet_folded = snippet.casefold()
    if claim_folded and claim_folded in snippet_folded:
        return StanceLabel.SUPPORTS

    keywords = content_words(claim_text)
    tokens = _WORD.findall(snippet_folded)
    for i, tok in enumerate(tokens):
        if tok in NEGATION_TOKENS:
            window = tokens[max(0, i - 3) : i + 4]
            if any(w in keywords for w in window):
                return StanceLabel.REFUTES

    present = sum(1 for w in keywords if w in set(tokens))
    if 2 * present >= len(keywords):
        return StanceLabel.SUPPORTS
    return StanceLabel.REFUTES


def echo_question(claim_text: str) -> str:
    """Turn a claim into one templated question ("X did Y" -> "Who did Y?")."""
    stripped = claim_text.strip().rstrip(".!?…។。؟।").strip()
    parts = stripped.split(None, 1)
    rest = parts[1] if len(parts) > 1 else ""
    return ("Who " + rest).strip() + "?"
