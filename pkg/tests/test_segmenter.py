import random

import pytest

from factpipe.model import LanguageTag
from factpipe.segmenter import (
    SegmenterConfig,
    default_config,
    load_abbreviations,
    segment,
)

EN = LanguageTag("en")


class TestBasicSplitting:
    def test_two_terminal_periods(self):
        sentences = segment("Hello world. This is a test.", EN)
        assert [s.text for s in sentences] == ["Hello world.", "This is a test."]

    def test_abbreviation_suppresses_split(self):
        sentences = segment("Dr. Smith arrived.", EN)
        assert [s.text for s in sentences] == ["Dr. Smith arrived."]

    def test_empty_document(self):
        assert segment("", EN) == []

    def test_whitespace_only_document(self):
        assert segment("   \n\t ", EN) == []

    def test_decimal_number_never_splits(self):
        sentences = segment("The value rose to 3.5 last year. Analysts agree.", EN)
        assert [s.text for s in sentences] == [
            "The value rose to 3.5 last year.",
            "Analysts agree.",
        ]

    def test_question_and_exclamation(self):
        sentences = segment("Really? Yes! Fine.", EN)
        assert [s.text for s in sentences] == ["Really?", "Yes!", "Fine."]

    def test_lowercase_continuation_does_not_split(self):
        # "e. g" style lowercase continuation: no new sentence starts.
        sentences = segment("They arrived late. and left early", EN)
        assert len(sentences) == 1

    def test_trailing_fragment_without_terminal(self):
        sentences = segment("First sentence. and then a trailing bit", EN)
        assert [s.text for s in sentences] == ["First sentence. and then a trailing bit"]

    def test_trailing_fragment_is_its_own_sentence_when_split(self):
        sentences = segment("First sentence. Trailing bit without period", EN)
        assert [s.text for s in sentences] == [
            "First sentence.",
            "Trailing bit without period",
        ]

    def test_devanagari_danda(self):
        doc = "यह पहला वाक्य है। यह दूसरा वाक्य है।"
        sentences = segment(doc, LanguageTag("hi"))
        assert [s.text for s in sentences] == ["यह पहला वाक्य है।", "यह दूसरा वाक्य है।"]

    def test_uncased_script_starts_sentence(self):
        doc = "第一句话。 第二句话。"
        sentences = segment(doc, LanguageTag("zh"))
        assert len(sentences) == 2


class TestMerging:
    def test_short_sentence_merges_into_preceding(self):
        sentences = segment("A long first sentence here. B.", EN, SegmenterConfig(min_sentence_chars=3))
        assert [s.text for s in sentences] == ["A long first sentence here. B."]

    def test_short_leading_sentence_merges_forward(self):
        sentences = segment("B. A long second sentence here.", EN, SegmenterConfig(min_sentence_chars=3))
        assert [s.text for s in sentences] == ["B. A long second sentence here."]

    def test_lone_short_sentence_kept(self):
        sentences = segment("B.", EN, SegmenterConfig(min_sentence_chars=3))
        assert [s.text for s in sentences] == ["B."]


class TestProperties:
    DOCS = [
        "Hello world. This is a test.",
        "Dr. Smith arrived. He was early. Mrs. Jones followed at 3.5 p.m. sharp.",
        "One! Two? Three… Four. and five",
        "Ends without punctuation",
        "यह पहला वाक्य है। यह दूसरा वाक्य है।",
        "Mixed 语言 text. Followed by More Text. 你好。 And so on.",
    ]

    @pytest.mark.parametrize("doc", DOCS)
    def test_span_fidelity(self, doc):
        for s in segment(doc, EN):
            assert doc[s.start : s.end] == s.text

    @pytest.mark.parametrize("doc", DOCS)
    def test_spans_strictly_increasing_non_overlapping(self, doc):
        spans = [(s.start, s.end) for s in segment(doc, EN)]
        for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
            assert e1 <= s2

    @pytest.mark.parametrize("doc", DOCS)
    def test_idempotence(self, doc):
        for s in segment(doc, EN):
            again = segment(s.text, EN)
            assert [a.text for a in again] == [s.text]

    def test_determinism(self):
        doc = "Some text. With sentences! And 3.5 numbers. Dr. Who arrived."
        assert segment(doc, EN) == segment(doc, EN)

    def test_random_documents_span_fidelity(self):
        rng = random.Random(42)
        vocab = ["Alpha", "beta", "Gamma", "3.5", "Dr.", "word", "X"]
        punct = [". ", "! ", "? ", " ", "… "]
        for _ in range(200):
            doc = "".join(
                rng.choice(vocab) + rng.choice(punct) for _ in range(rng.randint(0, 20))
            )
            sentences = segment(doc, EN)
            for s in sentences:
                assert doc[s.start : s.end] == s.text
            for a, b in zip(sentences, sentences[1:]):
                assert a.end <= b.start


class TestConfig:
    def test_min_chars_validated(self):
        with pytest.raises(ValueError):
            SegmenterConfig(min_sentence_chars=0)

    def test_abbreviation_must_end_with_period(self):
        with pytest.raises(ValueError):
            SegmenterConfig(abbreviations={"en": frozenset({"dr"})})

    def test_default_config_has_english_entries(self):
        config = default_config()
        assert "dr." in config.abbreviations_for(EN)
        # other languages fall back to the bare terminal rules
        assert config.abbreviations_for(LanguageTag("hi")) == frozenset()

    def test_language_fallback_to_primary_subtag(self):
        config = default_config()
        assert config.abbreviations_for(LanguageTag("en-gb")) == config.abbreviations_for(EN)

    def test_load_abbreviations_file(self, tmp_path):
        path = tmp_path / "abbrev.txt"
        path.write_text("# comment\nSt.\nvs.\n\n", encoding="utf-8")
        entries = load_abbreviations(path)
        assert entries == frozenset({"st.", "vs."})
