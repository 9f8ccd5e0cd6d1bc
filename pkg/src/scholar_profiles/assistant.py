"""Narrative drafting support: a pluggable text-generation backend plus a
deterministic offline fallback.

The generative path runs only when the user opted in AND a backend is
configured; everything else falls back to a pure, reproducible summary.
Results are suggestions: they carry a disclaimer and are never auto-saved.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

import requests
import yaml

from .errors import BackendUnavailable, EmptyCorpus
from .model import Work, WorkType

DISCLAIMER = (
    "This text was generated automatically as a starting point; "
    "review and edit it before publishing."
)

DEFAULT_MAX_WORDS = 150
GENERATIVE_SLACK = 0.10


class SummaryStyle(str, Enum):
    PARAGRAPH = "paragraph"
    BULLET_POINTS = "bullet_points"


class SummaryBackend(str, Enum):
    GENERATIVE = "generative"
    DETERMINISTIC = "deterministic"


@dataclass(frozen=True)
class SummaryRequest:
    works: tuple[Work, ...]
    style: SummaryStyle = SummaryStyle.PARAGRAPH
    max_words: int = DEFAULT_MAX_WORDS
    opt_in: bool = False


@dataclass(frozen=True)
class SummaryResult:
    text: str
    backend: SummaryBackend
    disclaimer: str = DISCLAIMER

    def as_dict(self) -> dict:
        return {
            "text": self.text,
            "backend": self.backend.value,
            "disclaimer": self.disclaimer,
        }


@dataclass
class AssistantConfig:
    backend_url: str | None = None
    backend_key: str | None = None
    model_name: str | None = None
    fallback_enabled: bool = True
    prompts_path: str | None = None
    max_inflight: int = 2

    @classmethod
    def from_env(cls, env=os.environ) -> "AssistantConfig":
        return cls(
            backend_url=env.get("AI_BACKEND_URL") or None,
            backend_key=env.get("AI_BACKEND_KEY") or None,
            model_name=env.get("AI_MODEL_NAME") or None,
            fallback_enabled=env.get("AI_FALLBACK_ENABLED", "true").lower() != "false",
        )


def load_prompts(path: str | None = None) -> dict:
    """Key -> prompt text, from the configured file or the packaged default."""
    if path:
        text = Path(path).read_text(encoding="utf-8")
    else:
        text = resources.files("scholar_profiles").joinpath("prompts.yaml").read_text("utf-8")
    data = yaml.safe_load(text) or {}
    if not isinstance(data, dict):
        raise ValueError("prompt configuration must be a mapping of key -> text")
    return data


class HttpCompletionBackend:
    """Minimal chat-completion client for an OpenAI-compatible endpoint."""

    def __init__(self, url: str, key: str | None, model: str | None, timeout: float = 30.0):
        self.url = url
        self.key = key
        self.model = model
        self.timeout = timeout

    def complete(self, system_prompt: str, user_prompt: str, max_words: int) -> str:
        headers = {"Content-Type": "application/json"}
        if self.key:
            headers["Authorization"] = f"Bearer {self.key}"
        payload = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system_prompt},
                {"role": "user", "content": user_prompt},
            ],
            # rough words->tokens margin
            "max_tokens": max(64, max_words * 3),
        }
        try:
            response = requests.post(self.url, json=payload, headers=headers,
                                     timeout=self.timeout)
            response.raise_for_status()
            body = response.json()
            text = body["choices"][0]["message"]["content"].strip()
        except Exception as exc:
            raise BackendUnavailable(f"generation backend failed: {exc}") from exc
        if not text:
            raise BackendUnavailable("generation backend returned empty text")
        return text


def _count_clause(count: int, noun: str) -> str | None:
    return f"{count} {noun}" if count else None


def _join_clauses(clauses: list[str]) -> str:
    if len(clauses) == 1:
        return clauses[0]
    if len(clauses) == 2:
        return f"{clauses[0]} and {clauses[1]}"
    return ", ".join(clauses[:-1]) + f", and {clauses[-1]}"


def deterministic_summary(works) -> str:
    """Pure extractive summary; identical corpora yield byte-identical text."""
    works = list(works)
    if not works:
        raise EmptyCorpus("nothing to summarize")

    counts = {t: 0 for t in WorkType}
    for w in works:
        counts[w.work_type] += 1
    clauses = [c for c in (
        _count_clause(counts[WorkType.PUBLICATION], "publications"),
        _count_clause(counts[WorkType.DATASET], "datasets"),
        _count_clause(counts[WorkType.SOFTWARE], "software outputs"),
        _count_clause(counts[WorkType.OTHER], "other outputs"),
    ) if c]

    sentence = f"This corpus comprises {_join_clauses(clauses)}"

    years = [w.year for w in works if w.year is not None]
    if years:
        first, last = min(years), max(years)
        sentence += f" ({first})" if first == last else f" ({first}–{last})"

    topic_counts: dict[str, int] = {}
    for w in works:
        for t in w.topics:
            topic_counts[t.label] = topic_counts.get(t.label, 0) + 1
    if topic_counts:
        top = sorted(topic_counts.items(), key=lambda kv: (-kv[1], kv[0]))[:3]
        sentence += ", with most frequent topics: " + ", ".join(label for label, _ in top)

    return sentence + "."


def _truncate_words(text: str, limit: int) -> str:
    words = text.split()
    if len(words) <= limit:
        return text
    return " ".join(words[:limit])


def _works_digest(works) -> str:
    lines = []
    for w in sorted(works, key=lambda w: (-(w.year or 0), w.title)):
        topics = ", ".join(sorted(t.label for t in w.topics))
        line = f"- [{w.work_type.value}] {w.title}"
        if w.year:
            line += f" ({w.year})"
        if topics:
            line += f" — topics: {topics}"
        lines.append(line)
    return "\n".join(lines)


class Assistant:
    """Bounds concurrent backend calls and applies the opt-in/fallback gates."""

    def __init__(self, config: AssistantConfig | None = None, backend=None):
        self.config = config or AssistantConfig()
        if backend is not None:
            self.backend = backend
        elif self.config.backend_url:
            self.backend = HttpCompletionBackend(
                self.config.backend_url, self.config.backend_key, self.config.model_name
            )
        else:
            self.backend = None
        self._prompts = None
        self._gate = threading.Semaphore(max(1, self.config.max_inflight))

    def prompts(self) -> dict:
        if self._prompts is None:
            self._prompts = load_prompts(self.config.prompts_path)
        return self._prompts

    def summarize(self, request: SummaryRequest) -> SummaryResult:
        if not request.works:
            raise EmptyCorpus("nothing to summarize")

        if request.opt_in and self.backend is not None:
            try:
                prompt_key = f"summarize.{request.style.value}"
                system_prompt = self.prompts().get(
                    prompt_key, self.prompts().get("summarize.paragraph", "")
                )
                user_prompt = (
                    f"Summarize the following research outputs in at most "
                    f"{request.max_words} words.\n{_works_digest(request.works)}"
                )
                with self._gate:
                    text = self.backend.complete(system_prompt, user_prompt, request.max_words)
                slack = int(request.max_words * (1 + GENERATIVE_SLACK))
                return SummaryResult(_truncate_words(text, slack), SummaryBackend.GENERATIVE)
            except BackendUnavailable:
                if not self.config.fallback_enabled:
                    raise

        text = _truncate_words(deterministic_summary(request.works), request.max_words)
        return SummaryResult(text, SummaryBackend.DETERMINISTIC)
