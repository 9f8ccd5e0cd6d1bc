"""Summary gating, fallback behavior, and the deterministic text pattern."""

import pytest
from hypothesis import given
import hypothesis.strategies as st

from scholar_profiles.assistant import (
    Assistant,
    AssistantConfig,
    DISCLAIMER,
    SummaryBackend,
    SummaryRequest,
    SummaryStyle,
    deterministic_summary,
    load_prompts,
)
from scholar_profiles.errors import BackendUnavailable, EmptyCorpus
from scholar_profiles.model import TopicRef, WorkType

from conftest import corpus_st, make_work


class RecordingBackend:
    def __init__(self, reply="A generated summary.", fail=False):
        self.calls = []
        self.reply = reply
        self.fail = fail

    def complete(self, system_prompt, user_prompt, max_words):
        self.calls.append((system_prompt, user_prompt, max_words))
        if self.fail:
            raise BackendUnavailable("stub backend down")
        return self.reply


def topics(*labels):
    return frozenset(TopicRef(f"T-{label}", label) for label in labels)


class TestDeterministicSummary:
    def test_full_sentence(self):
        corpus = [
            make_work(year=2019, topics=topics("Networks")),
            make_work(year=2020, topics=topics("Networks")),
            make_work(year=2021, topics=topics("Ethics")),
        ]
        assert deterministic_summary(corpus) == (
            "This corpus comprises 3 publications (2019–2021), "
            "with most frequent topics: Networks, Ethics."
        )

    def test_single_dataset_no_topics(self):
        corpus = [make_work(work_type=WorkType.DATASET, year=2022)]
        assert deterministic_summary(corpus) == "This corpus comprises 1 datasets (2022)."

    def test_same_year_collapses(self):
        corpus = [make_work(year=2020), make_work(year=2020, title="Other")]
        assert "(2020)" in deterministic_summary(corpus)
        assert "2020–2020" not in deterministic_summary(corpus)

    def test_clause_joining(self):
        corpus = [
            make_work(year=2020),
            make_work(work_type=WorkType.DATASET, year=2020),
            make_work(work_type=WorkType.SOFTWARE, year=2020),
        ]
        assert deterministic_summary(corpus).startswith(
            "This corpus comprises 1 publications, 1 datasets, and 1 software outputs"
        )

    def test_no_years_omits_clause(self):
        corpus = [make_work(year=None)]
        assert deterministic_summary(corpus) == "This corpus comprises 1 publications."

    def test_topic_ties_alphabetical_top3(self):
        corpus = [
            make_work(topics=topics("Zeta", "Alpha")),
            make_work(topics=topics("Mid", "Alpha")),
            make_work(topics=topics("Zeta", "Beta")),
        ]
        text = deterministic_summary(corpus)
        assert text.endswith("with most frequent topics: Alpha, Zeta, Beta.")

    def test_empty_corpus_rejected(self):
        with pytest.raises(EmptyCorpus):
            deterministic_summary([])

    @given(corpus_st(max_size=8).filter(lambda c: c))
    def test_pure_function(self, corpus):
        assert deterministic_summary(corpus) == deterministic_summary(list(corpus))


class TestSummarizeGating:
    def request(self, opt_in, **kw):
        return SummaryRequest(works=(make_work(year=2020),), opt_in=opt_in, **kw)

    def test_opt_out_never_touches_backend(self):
        backend = RecordingBackend()
        assistant = Assistant(backend=backend)
        result = assistant.summarize(self.request(opt_in=False))
        assert result.backend is SummaryBackend.DETERMINISTIC
        assert backend.calls == []

    def test_opt_in_without_backend_falls_back(self):
        assistant = Assistant(AssistantConfig())
        result = assistant.summarize(self.request(opt_in=True))
        assert result.backend is SummaryBackend.DETERMINISTIC

    def test_opt_in_with_backend_generates(self):
        backend = RecordingBackend(reply="Networks, mostly.")
        assistant = Assistant(backend=backend)
        result = assistant.summarize(self.request(opt_in=True))
        assert result.backend is SummaryBackend.GENERATIVE
        assert result.text == "Networks, mostly."
        assert len(backend.calls) == 1

    def test_backend_failure_falls_back_when_enabled(self):
        assistant = Assistant(AssistantConfig(fallback_enabled=True),
                              backend=RecordingBackend(fail=True))
        result = assistant.summarize(self.request(opt_in=True))
        assert result.backend is SummaryBackend.DETERMINISTIC

    def test_backend_failure_surfaces_when_fallback_disabled(self):
        assistant = Assistant(AssistantConfig(fallback_enabled=False),
                              backend=RecordingBackend(fail=True))
        with pytest.raises(BackendUnavailable):
            assistant.summarize(self.request(opt_in=True))

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            Assistant().summarize(SummaryRequest(works=(), opt_in=False))

    def test_every_result_carries_disclaimer(self):
        for opt_in in (False, True):
            result = Assistant(backend=RecordingBackend()).summarize(self.request(opt_in))
            assert result.disclaimer == DISCLAIMER

    def test_generative_word_cap_with_slack(self):
        backend = RecordingBackend(reply=" ".join(["word"] * 500))
        assistant = Assistant(backend=backend)
        result = assistant.summarize(self.request(opt_in=True, max_words=100))
        assert len(result.text.split()) == 110

    def test_deterministic_word_cap_exact(self):
        result = Assistant().summarize(SummaryRequest(
            works=(make_work(year=2020),), max_words=3))
        assert len(result.text.split()) == 3

    def test_style_selects_prompt(self):
        backend = RecordingBackend()
        assistant = Assistant(backend=backend)
        assistant.summarize(self.request(opt_in=True, style=SummaryStyle.BULLET_POINTS))
        system_prompt = backend.calls[0][0]
        assert "bullet points" in system_prompt


class TestPrompts:
    def test_packaged_defaults_load(self):
        prompts = load_prompts()
        assert "summarize.paragraph" in prompts
        assert "summarize.bullet_points" in prompts

    def test_custom_file(self, tmp_path):
        path = tmp_path / "prompts.yaml"
        path.write_text("summarize.paragraph: be brief\n", encoding="utf-8")
        assert load_prompts(str(path)) == {"summarize.paragraph": "be brief"}

    def test_env_config(self, monkeypatch):
        monkeypatch.setenv("AI_BACKEND_URL", "https://example.test/v1/chat")
        monkeypatch.setenv("AI_FALLBACK_ENABLED", "false")
        config = AssistantConfig.from_env()
        assert config.backend_url == "https://example.test/v1/chat"
        assert config.fallback_enabled is False
