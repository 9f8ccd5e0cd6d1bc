"""Shared factories and hypothesis strategies for the test suite."""

from __future__ import annotations

import itertools

import hypothesis.strategies as st

from scholar_profiles.model import (
    Access,
    FilterSpec,
    TopicRef,
    Work,
    WorkType,
)

TOPIC_POOL = tuple(
    TopicRef(f"T{i}", label) for i, label in enumerate(
        ["Network Science", "Scholarly Communication", "Research Ethics",
         "Machine Learning", "Data Stewardship", "Open Hardware"]
    )
)
LICENSE_POOL = ("CC-BY-4.0", "CC0-1.0", "MIT", "GPL-3.0", "proprietary")

_counter = itertools.count()


def make_work(**overrides) -> Work:
    """Build a valid Work with distinct defaults; override any field."""
    n = next(_counter)
    fields = dict(
        work_id=f"w{n}",
        title=f"Synthetic work {n}",
        work_type=WorkType.PUBLICATION,
        year=2020,
    )
    fields.update(overrides)
    return Work(**fields)


@st.composite
def works_st(draw, max_topics=3):
    n = draw(st.integers(min_value=0, max_value=2**32))
    topics = draw(st.sets(st.sampled_from(TOPIC_POOL), max_size=max_topics))
    return Work(
        work_id=f"hw{n}-{next(_counter)}",
        title=draw(st.text(min_size=1, max_size=30).filter(lambda s: s.strip())),
        work_type=draw(st.sampled_from(WorkType)),
        doi=None,
        year=draw(st.one_of(st.none(), st.integers(min_value=1990, max_value=2026))),
        citation_count=draw(st.one_of(st.none(), st.integers(min_value=0, max_value=500))),
        popularity_score=draw(st.one_of(st.none(), st.floats(min_value=0, max_value=100, allow_nan=False))),
        influence_score=draw(st.one_of(st.none(), st.floats(min_value=0, max_value=100, allow_nan=False))),
        access=draw(st.sampled_from(Access)),
        license=draw(st.one_of(st.none(), st.sampled_from(LICENSE_POOL))),
        topics=frozenset(topics),
    )


@st.composite
def corpus_st(draw, max_size=12):
    return draw(st.lists(works_st(), max_size=max_size))


@st.composite
def filter_st(draw):
    year_range = draw(
        st.one_of(
            st.none(),
            st.tuples(
                st.integers(min_value=1995, max_value=2026),
                st.integers(min_value=1995, max_value=2026),
            ).map(lambda p: (min(p), max(p))),
        )
    )
    return FilterSpec(
        topics=frozenset(draw(st.sets(st.sampled_from([t.topic_id for t in TOPIC_POOL]), max_size=3))),
        work_types=frozenset(draw(st.sets(st.sampled_from(WorkType), max_size=2))),
        licenses=frozenset(draw(st.sets(st.sampled_from(LICENSE_POOL), max_size=2))),
        access=draw(st.one_of(st.none(), st.sampled_from(Access))),
        year_range=year_range,
    )
