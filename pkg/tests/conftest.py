import pytest

from factpipe.evidence import evidence_item
from factpipe.model import Claim, ClaimLabel, LanguageTag, Sentence


@pytest.fixture
def en() -> LanguageTag:
    return LanguageTag("en")


def make_sentence(text: str, lang: str = "en", start: int = 0) -> Sentence:
    return Sentence(text=text, start=start, end=start + len(text), language=LanguageTag(lang))


def make_claim(
    text: str,
    label: ClaimLabel = ClaimLabel.CHECK_WORTHY,
    score: float = 0.9,
    lang: str = "en",
) -> Claim:
    return Claim(sentence=make_sentence(text, lang), label=label, score=score)


def make_item(
    url: str,
    title: str = "",
    snippet: str = "",
    engine: str = "web-a",
    **kwargs,
):
    return evidence_item(
        url=url,
        title=title or f"title for {url}",
        snippet=snippet or f"snippet for {url}",
        source_engine=engine,
        **kwargs,
    )
