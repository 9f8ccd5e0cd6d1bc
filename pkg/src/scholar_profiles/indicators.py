"""Researcher-level indicators over a (possibly filtered) work corpus.

All functions are pure; ``reference_year`` is always an explicit parameter so
the same corpus yields the same numbers in every run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownIndicatorKey
from .model import Access, EMPTY_FILTER, FilterSpec, Work, WorkType, apply_filter

#: value rendered for optional indicators that are absent for a corpus
NOT_AVAILABLE = "n/a"

PANEL_KEYS = (
    "total_outputs",
    "output_count.publication",
    "output_count.dataset",
    "output_count.software",
    "output_count.other",
    "citation_sum",
    "popularity_sum",
    "influence_sum",
    "h_index",
    "open_access_share",
    "academic_age",
)


def h_index(citations) -> int:
    """Largest h such that at least h values are >= h; 0 for an empty multiset."""
    ranked = sorted(citations, reverse=True)
    h = 0
    for i, c in enumerate(ranked):
        if c >= i + 1:
            h = i + 1
        else:
            break
    return h


@dataclass(frozen=True)
class IndicatorSet:
    output_counts: dict
    total_outputs: int
    citation_sum: int
    popularity_sum: float
    influence_sum: float
    h_index: int
    open_access_share: float | None
    academic_age: int | None

    def as_dict(self) -> dict:
        return {
            "output_counts": {t.value: self.output_counts[t] for t in WorkType},
            "total_outputs": self.total_outputs,
            "citation_sum": self.citation_sum,
            "popularity_sum": self.popularity_sum,
            "influence_sum": self.influence_sum,
            "h_index": self.h_index,
            "open_access_share": self.open_access_share,
            "academic_age": self.academic_age,
        }

    def value_for(self, key: str):
        """Look up one panel key; absent optional values become "n/a"."""
        if key not in PANEL_KEYS:
            raise UnknownIndicatorKey(f"unknown indicator key: {key!r}")
        if key.startswith("output_count."):
            return self.output_counts[WorkType(key.split(".", 1)[1])]
        value = getattr(self, key)
        return NOT_AVAILABLE if value is None else value


def compute_indicators(
    works, reference_year: int, flt: FilterSpec = EMPTY_FILTER
) -> IndicatorSet:
    """Aggregate indicators over ``apply_filter(works, flt)``.

    Absent citation/popularity/influence values contribute 0 to sums and to
    the h-index; open_access_share counts access=open strictly; academic age
    is reference_year - earliest year + 1 over works that carry a year.
    """
    corpus = apply_filter(works, flt)
    counts = {t: 0 for t in WorkType}
    for w in corpus:
        counts[w.work_type] += 1
    years = [w.year for w in corpus if w.year is not None]
    total = len(corpus)
    return IndicatorSet(
        output_counts=counts,
        total_outputs=total,
        citation_sum=sum(w.citation_count or 0 for w in corpus),
        popularity_sum=sum(w.popularity_score or 0.0 for w in corpus),
        influence_sum=sum(w.influence_score or 0.0 for w in corpus),
        h_index=h_index(w.citation_count or 0 for w in corpus),
        open_access_share=(
            sum(1 for w in corpus if w.access is Access.OPEN) / total if total else None
        ),
        academic_age=(reference_year - min(years) + 1) if years else None,
    )


def indicator_panel(works, reference_year: int, flt: FilterSpec, selection) -> list:
    """Project compute_indicators onto ``selection``, in the requested order."""
    indicators = compute_indicators(works, reference_year, flt)
    return [(key, indicators.value_for(key)) for key in selection]
