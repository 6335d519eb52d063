import json
import random

import pytest

from factpipe.exceptions import MalformedTag
from factpipe.model import (
    Claim,
    ClaimLabel,
    EvidenceItem,
    LanguageTag,
    Sentence,
    StanceLabel,
    Verdict,
    VerdictLabel,
    parse_language_tag,
)

from .conftest import make_claim, make_item, make_sentence


class TestParseLanguageTag:
    def test_uppercase_normalized(self):
        assert parse_language_tag("EN").code == "en"

    def test_region_subtag_normalized(self):
        assert parse_language_tag("nb-NO").code == "nb-no"

    def test_empty_rejected(self):
        with pytest.raises(MalformedTag):
            parse_language_tag("")

    @pytest.mark.parametrize("raw", ["x", "e!", "en--us", "toolongsubtag1", "en-", "99"])
    def test_malformed_rejected(self, raw):
        with pytest.raises(MalformedTag):
            parse_language_tag(raw)

    def test_valid_multi_subtag(self):
        assert parse_language_tag("zh-Hant-TW").code == "zh-hant-tw"


class TestSentence:
    def test_span_must_match_text(self):
        with pytest.raises(ValueError):
            Sentence(text="abc", start=0, end=2, language=LanguageTag("en"))

    def test_span_must_be_nonempty(self):
        with pytest.raises(ValueError):
            Sentence(text="", start=3, end=3, language=LanguageTag("en"))

    def test_negative_start_rejected(self):
        with pytest.raises(ValueError):
            Sentence(text="ab", start=-1, end=1, language=LanguageTag("en"))


class TestClaim:
    @pytest.mark.parametrize("score", [-0.1, 1.1])
    def test_score_bounds(self, score):
        with pytest.raises(ValueError):
            make_claim("text here", score=score)


class TestEvidenceItem:
    def test_empty_url_rejected(self):
        with pytest.raises(ValueError):
            EvidenceItem(url="", normalized_url="", title="t", snippet="s", source_engine="e")

    @pytest.mark.parametrize("sim", [-0.01, 1.01])
    def test_similarity_bounds(self, sim):
        with pytest.raises(ValueError):
            make_item("https://a.com/x", similarity=sim)


class TestVerdict:
    def test_vote_count_must_match_stance_bearing_items(self):
        items = (
            make_item("https://a.com/1", stance=StanceLabel.SUPPORTS),
            make_item("https://a.com/2"),
        )
        with pytest.raises(ValueError):
            Verdict(
                claim=make_claim("c one"),
                label=VerdictLabel.SUPPORTED,
                support_votes=2,
                refute_votes=0,
                evidence=items,
            )

    def test_correction_only_on_refuted(self):
        with pytest.raises(ValueError):
            Verdict(
                claim=make_claim("c one"),
                label=VerdictLabel.SUPPORTED,
                support_votes=0,
                refute_votes=0,
                correction="nope",
            )

    def test_negative_votes_rejected(self):
        with pytest.raises(ValueError):
            Verdict(
                claim=make_claim("c one"),
                label=VerdictLabel.UNCERTAIN,
                support_votes=-1,
                refute_votes=1,
            )


def _random_sentence(rng: random.Random) -> Sentence:
    text = "".join(rng.choice("abc déf.?! ") for _ in range(rng.randint(1, 30))).strip() or "x"
    start = rng.randint(0, 50)
    return Sentence(
        text=text,
        start=start,
        end=start + len(text),
        language=LanguageTag(rng.choice(["en", "nb-no", "hi", "zh-hant"])),
    )


def _random_item(rng: random.Random) -> EvidenceItem:
    return make_item(
        url=f"https://host{rng.randint(0, 9)}.example.com/p{rng.randint(0, 99)}",
        title=f"title {rng.randint(0, 999)}",
        snippet=f"some snippet text {rng.randint(0, 999)}",
        engine=rng.choice(["web-a", "web-b", "wiki"]),
        similarity=rng.choice([None, round(rng.random(), 6)]),
        stance=rng.choice([None, StanceLabel.SUPPORTS, StanceLabel.REFUTES]),
        question_index=rng.choice([None, rng.randint(0, 3)]),
        rank=rng.choice([None, rng.randint(1, 10)]),
    )


def _random_verdict(rng: random.Random) -> Verdict:
    items = tuple(_random_item(rng) for _ in range(rng.randint(0, 5)))
    supports = sum(1 for i in items if i.stance is StanceLabel.SUPPORTS)
    refutes = sum(1 for i in items if i.stance is StanceLabel.REFUTES)
    label = rng.choice([VerdictLabel.SUPPORTED, VerdictLabel.REFUTED, VerdictLabel.UNCERTAIN])
    return Verdict(
        claim=Claim(
            sentence=_random_sentence(rng),
            label=rng.choice(list(ClaimLabel)),
            score=round(rng.random(), 6),
        ),
        label=label,
        support_votes=supports,
        refute_votes=refutes,
        evidence=items,
        justification=rng.choice([None, "because sources say so"]),
        correction="fixed text" if label is VerdictLabel.REFUTED and rng.random() < 0.5 else None,
        error=rng.choice([None, "SomeError: boom"]),
    )


class TestJsonRoundTrip:
    """serialize(deserialize(x)) == x through a real JSON encode/decode."""

    def test_sentence(self):
        rng = random.Random(1)
        for _ in range(100):
            s = _random_sentence(rng)
            assert Sentence.from_json_dict(json.loads(json.dumps(s.to_json_dict()))) == s

    def test_claim(self):
        rng = random.Random(2)
        for _ in range(100):
            c = Claim(
                sentence=_random_sentence(rng),
                label=rng.choice(list(ClaimLabel)),
                score=round(rng.random(), 6),
            )
            assert Claim.from_json_dict(json.loads(json.dumps(c.to_json_dict()))) == c

    def test_evidence_item(self):
        rng = random.Random(3)
        for _ in range(200):
            e = _random_item(rng)
            assert EvidenceItem.from_json_dict(json.loads(json.dumps(e.to_json_dict()))) == e

    def test_verdict(self):
        rng = random.Random(4)
        for _ in range(200):
            v = _random_verdict(rng)
            assert Verdict.from_json_dict(json.loads(json.dumps(v.to_json_dict()))) == v

    def test_enum_wire_values(self):
        assert ClaimLabel.CHECK_WORTHY.value == "check_worthy"
        assert ClaimLabel.NOT_CHECK_WORTHY.value == "not_check_worthy"
        assert StanceLabel.SUPPORTS.value == "supports"
        assert StanceLabel.REFUTES.value == "refutes"
        assert VerdictLabel.SUPPORTED.value == "supported"
        assert VerdictLabel.REFUTED.value == "refuted"
        assert VerdictLabel.UNCERTAIN.value == "uncertain"
