"""Core model: DOI normalization, dedup keys, and faceted filtering."""

import pytest
from hypothesis import assume, given
import hypothesis.strategies as st

from scholar_profiles.errors import InvalidFilter, MalformedDoi
from scholar_profiles.model import (
    Access,
    ContributorRole,
    FilterSpec,
    Work,
    WorkType,
    apply_filter,
    dedup_key,
    normalize_doi,
)

from conftest import TOPIC_POOL, corpus_st, filter_st, make_work


def oracle_retained(work, spec):
    """Brute-force facet predicate, written straight from the filtering rules:

    a work is retained iff it satisfies every non-empty facet; a set-valued
    facet is satisfied when the work matches any member; missing attributes
    satisfy nothing.
    """
    if spec.topics:
        if not any(t.topic_id in spec.topics for t in work.topics):
            return False
    if spec.work_types:
        if work.work_type not in spec.work_types:
            return False
    if spec.licenses:
        if work.license is None:
            return False
        if work.license not in spec.licenses:
            return False
    if spec.access is not None:
        if work.access == Access.UNKNOWN:
            return False
        if work.access != spec.access:
            return False
    if spec.year_range is not None:
        if work.year is None:
            return False
        if work.year < spec.year_range[0] or work.year > spec.year_range[1]:
            return False
    return True


class TestNormalizeDoi:
    def test_strips_resolver_and_lowercases(self):
        assert normalize_doi("https://doi.org/10.1000/ABC") == "10.1000/abc"

    def test_idempotent_on_normalized_input(self):
        assert normalize_doi("10.5555/xyz") == "10.5555/xyz"

    def test_rejects_non_doi(self):
        with pytest.raises(MalformedDoi):
            normalize_doi("not-a-doi")

    @pytest.mark.parametrize("raw", [
        "http://dx.doi.org/10.1234/a.b-c",
        "doi:10.99/Suffix(1)",
        "DOI:10.99/x",
    ])
    def test_known_prefixes(self, raw):
        out = normalize_doi(raw)
        assert out.startswith("10.")
        assert out == out.lower()

    @given(st.text(min_size=1))
    def test_idempotence(self, raw):
        try:
            once = normalize_doi(raw)
        except MalformedDoi:
            return
        assert normalize_doi(once) == once


class TestDedupKey:
    def test_doi_case_insensitive(self):
        a = make_work(doi=normalize_doi("10.1/A"))
        b = make_work(doi=normalize_doi("10.1/a"), title="Entirely different")
        assert dedup_key(a) == dedup_key(b)

    def test_title_casefold_and_collapse(self):
        a = make_work(title="Deep  Parsing", year=2019)
        b = make_work(title="deep parsing", year=2019)
        assert dedup_key(a) == dedup_key(b)

    def test_year_distinguishes(self):
        a = make_work(title="Deep Parsing", year=2019)
        b = make_work(title="Deep Parsing", year=2020)
        assert dedup_key(a) != dedup_key(b)

    def test_doi_key_never_collides_with_title_key(self):
        a = make_work(doi="10.1/a")
        b = make_work(title="10.1/a", year=None)
        assert dedup_key(a) != dedup_key(b)


class TestApplyFilter:
    def test_empty_filter_is_identity(self):
        works = {make_work(), make_work(work_type=WorkType.DATASET)}
        assert apply_filter(works, FilterSpec()) == works

    def test_topic_and_type_conjunction(self):
        t1, t2 = TOPIC_POOL[0], TOPIC_POOL[1]
        corpus = [
            make_work(work_type=WorkType.DATASET, topics=frozenset({t1})),
            make_work(work_type=WorkType.DATASET, topics=frozenset({t2})),
            make_work(work_type=WorkType.PUBLICATION, topics=frozenset({t1})),
            make_work(work_type=WorkType.DATASET),
            make_work(work_type=WorkType.SOFTWARE, topics=frozenset({t1, t2})),
        ]
        spec = FilterSpec(
            topics=frozenset({t1.topic_id}),
            work_types=frozenset({WorkType.DATASET}),
        )
        expected = {w for w in corpus if oracle_retained(w, spec)}
        assert expected == {corpus[0]}
        assert apply_filter(corpus, spec) == expected

    def test_inverted_year_range_rejected(self):
        with pytest.raises(InvalidFilter):
            FilterSpec(year_range=(2020, 2019))

    def test_unknown_access_matches_no_access_constraint(self):
        w = make_work(access=Access.UNKNOWN)
        assert apply_filter([w], FilterSpec(access=Access.UNKNOWN)) == set()
        assert apply_filter([w], FilterSpec(access=Access.OPEN)) == set()

    def test_missing_license_matches_no_license_constraint(self):
        w = make_work(license=None)
        assert apply_filter([w], FilterSpec(licenses=frozenset({"MIT"}))) == set()


@given(corpus_st(), filter_st())
def test_filter_matches_oracle(corpus, spec):
    assert apply_filter(corpus, spec) == {w for w in corpus if oracle_retained(w, spec)}


@given(corpus_st(), filter_st())
def test_filter_idempotent(corpus, spec):
    once = apply_filter(corpus, spec)
    assert apply_filter(once, spec) == once


@given(corpus_st(), filter_st())
def test_filter_monotone_shrinking(corpus, spec):
    assert len(apply_filter(corpus, spec)) <= len(corpus)


@given(corpus_st(), filter_st())
def test_adding_facet_never_grows(corpus, spec):
    # constraining a previously-unconstrained facet can only shrink the result
    assume(not spec.work_types)
    base = apply_filter(corpus, spec)
    tightened = FilterSpec(
        topics=spec.topics,
        work_types=frozenset({WorkType.DATASET}),
        licenses=spec.licenses,
        access=spec.access,
        year_range=spec.year_range,
    )
    assert apply_filter(corpus, tightened) <= base


@given(corpus_st())
def test_single_facet_conjunction(corpus):
    t1 = TOPIC_POOL[0].topic_id
    both = FilterSpec(topics=frozenset({t1}), work_types=frozenset({WorkType.DATASET}))
    topics_only = FilterSpec(topics=frozenset({t1}))
    types_only = FilterSpec(work_types=frozenset({WorkType.DATASET}))
    assert apply_filter(corpus, both) == (
        apply_filter(corpus, topics_only) & apply_filter(corpus, types_only)
    )


def test_credit_vocabulary_has_exactly_14_roles():
    assert len(ContributorRole) == 14
    assert ContributorRole("Writing – original draft") is ContributorRole.WRITING_ORIGINAL_DRAFT


def test_work_rejects_negative_scores():
    with pytest.raises(ValueError):
        Work(work_id="x", title="t", work_type=WorkType.OTHER, citation_count=-1)
