import pytest

from zentail.errors import DataError
from zentail.hypotheses import GlossLexicon, hypothesis_set, render_definition, render_word
from zentail.types import AspectSpec, Label


class TestCanonicalExemplars:
    """The three benchmark aspects must render their canonical example
    hypotheses byte-exactly."""

    def test_topic_word(self, topic_aspect):
        assert render_word(topic_aspect, "sports").text == "this text is about sports"

    def test_emotion_word(self, emotion_aspect):
        assert render_word(emotion_aspect, "anger").text == "this text expresses anger"

    def test_situation_word(self, situation_aspect):
        assert render_word(situation_aspect, "shelter").text == "The people there need shelter"

    def test_topic_definition(self, topic_aspect, topic_lexicon):
        assert (
            render_definition(topic_aspect, "sports", topic_lexicon).text
            == "this text is about an active diversion requiring physical exertion and competition"
        )

    def test_emotion_definition(self, emotion_aspect, emotion_lexicon):
        assert (
            render_definition(emotion_aspect, "anger", emotion_lexicon).text
            == "this text expresses a strong emotion; a feeling that is oriented "
            "toward some real or supposed grievance"
        )

    def test_situation_definition(self, situation_aspect, situation_lexicon):
        assert (
            render_definition(situation_aspect, "shelter", situation_lexicon).text
            == "The people there need a structure that provides privacy and protection from danger"
        )


class TestRendering:
    def test_unknown_label_rejected(self, toy_aspect):
        with pytest.raises(DataError, match="unknown label"):
            render_word(toy_aspect, "confusion")

    def test_none_label_renders_in_word_mode(self, toy_aspect):
        hyp = render_word(toy_aspect, "none")
        assert hyp.text == "this text expresses none"
        assert hyp.mode == "word"

    def test_missing_gloss_rejected(self, toy_aspect):
        with pytest.raises(DataError, match="no gloss"):
            render_definition(toy_aspect, "anger", GlossLexicon.empty())

    def test_multiword_label_inserted_verbatim(self, situation_aspect):
        hyp = render_word(situation_aspect, "medical assistance")
        assert hyp.text == "The people there need medical assistance"

    def test_gloss_on_label_object_wins_over_lexicon(self):
        spec = AspectSpec(
            name="g",
            interpretation="about {label}",
            labels=(Label("x", gloss="from the label"),),
            task_kind="single_label",
        )
        hyp = render_definition(spec, "x", GlossLexicon({"x": "from the lexicon"}))
        assert hyp.text == "about from the label"


class TestHypothesisSet:
    def test_topic_combination_counts(self, topic_aspect, topic_lexicon):
        hyps = hypothesis_set(topic_aspect, "combination", topic_lexicon)
        assert len(hyps) == 20  # two hypotheses per label, no none-label

    def test_emotion_word_counts(self, emotion_aspect):
        hyps = hypothesis_set(emotion_aspect, "word")
        assert len(hyps) == 10  # nine labels plus none

    def test_definition_mode_keeps_none_in_word_mode(self, emotion_aspect, emotion_lexicon):
        hyps = hypothesis_set(emotion_aspect, "definition", emotion_lexicon)
        assert len(hyps) == 10
        by_label = {h.label: h for h in hyps}
        assert by_label["none"].mode == "word"
        assert all(h.mode == "definition" for h in hyps if h.label != "none")

    def test_missing_gloss_fails_whole_set(self, situation_aspect, situation_lexicon):
        partial = GlossLexicon(
            {name: situation_lexicon.get(name)
             for name in situation_aspect.label_names if name != "shelter"}
        )
        with pytest.raises(DataError, match="no gloss"):
            hypothesis_set(situation_aspect, "definition", partial)

    def test_deterministic_and_surjective(self, situation_aspect, situation_lexicon):
        a = hypothesis_set(situation_aspect, "combination", situation_lexicon)
        b = hypothesis_set(situation_aspect, "combination", situation_lexicon)
        assert [(h.label, h.mode, h.text) for h in a] == [(h.label, h.mode, h.text) for h in b]
        for mode in ("word", "definition"):
            labels = [h.label for h in a if h.mode == mode and h.label != "none"]
            assert labels == list(situation_aspect.label_names)

    def test_bad_mode_rejected(self, toy_aspect):
        with pytest.raises(DataError, match="generation mode"):
            hypothesis_set(toy_aspect, "wordy")
