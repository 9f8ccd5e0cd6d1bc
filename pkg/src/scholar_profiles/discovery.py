"""Name search over researchers holding at least one public profile.

Matching: every query token must be a prefix of some distinct name token
(so "an an" cannot match "Anna"). Ranking tiers: exact full name, then
all-tokens-exact, then prefix matches; ties break on display name, then id.
The index is an in-memory structure rebuilt from the store at startup;
mutations swap the entry map atomically so readers never see partial state.
"""

from __future__ import annotations

import re
import threading
import unicodedata
from dataclasses import dataclass

from .errors import EmptyQuery

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def normalize_name(name: str) -> list[str]:
    """Casefold, strip diacritics, and split into alphanumeric tokens."""
    folded = unicodedata.normalize("NFKD", name.casefold())
    stripped = "".join(c for c in folded if not unicodedata.combining(c))
    return _TOKEN_RE.findall(stripped)


def _assignable(query_tokens, name_tokens, match) -> bool:
    """Can each query token claim a distinct name token satisfying ``match``?"""

    def assign(i, used):
        if i == len(query_tokens):
            return True
        for j, name_token in enumerate(name_tokens):
            if j not in used and match(query_tokens[i], name_token):
                if assign(i + 1, used | {j}):
                    return True
        return False

    return assign(0, frozenset())


@dataclass(frozen=True)
class SearchEntry:
    researcher_id: str
    display_name: str
    tokens: tuple[str, ...]
    public_profile_ids: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "researcher_id": self.researcher_id,
            "display_name": self.display_name,
            "public_profile_ids": list(self.public_profile_ids),
        }


# ranking tiers, best first
TIER_EXACT_FULL_NAME = 0
TIER_ALL_TOKENS_EXACT = 1
TIER_PREFIX = 2


def match_tier(query_tokens: list[str], entry_tokens) -> int | None:
    """Best tier the entry reaches for the query, or None when it misses."""
    tokens = list(entry_tokens)
    if not _assignable(query_tokens, tokens, lambda q, n: n.startswith(q)):
        return None
    if query_tokens == tokens:
        return TIER_EXACT_FULL_NAME
    if _assignable(query_tokens, tokens, lambda q, n: q == n):
        return TIER_ALL_TOKENS_EXACT
    return TIER_PREFIX


class SearchIndex:
    """Thread-safe name index; present iff a researcher has a public profile."""

    def __init__(self):
        self._entries: dict[str, SearchEntry] = {}
        self._lock = threading.Lock()

    def upsert(self, researcher_id: str, display_name: str, public_profile_ids) -> None:
        profile_ids = tuple(sorted(public_profile_ids))
        with self._lock:
            entries = dict(self._entries)
            if profile_ids:
                entries[researcher_id] = SearchEntry(
                    researcher_id=researcher_id,
                    display_name=display_name,
                    tokens=tuple(normalize_name(display_name)),
                    public_profile_ids=profile_ids,
                )
            else:
                entries.pop(researcher_id, None)
            self._entries = entries

    def remove(self, researcher_id: str) -> None:
        self.upsert(researcher_id, "", ())

    def search(self, query: str, limit: int = 20) -> list[SearchEntry]:
        query_tokens = normalize_name(query)
        if not query_tokens:
            raise EmptyQuery("query is empty after normalization")
        entries = self._entries  # atomic snapshot
        ranked = []
        for entry in entries.values():
            tier = match_tier(query_tokens, entry.tokens)
            if tier is not None:
                ranked.append((tier, entry.display_name, entry.researcher_id, entry))
        ranked.sort(key=lambda row: row[:3])
        return [row[3] for row in ranked[:max(limit, 0)]]

    def __len__(self) -> int:
        return len(self._entries)
