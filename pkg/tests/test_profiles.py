"""Profile content rules, roles, completeness, and rendered views."""

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from scholar_profiles.errors import (
    ConstraintViolation,
    Forbidden,
    KindMismatch,
    UnknownElement,
    UnknownRole,
    UnknownWork,
)
from scholar_profiles.indicators import NOT_AVAILABLE
from scholar_profiles.model import (
    Access,
    ContributorRole,
    EMPTY_FILTER,
    FilterSpec,
    Researcher,
    WorkType,
    apply_filter,
)
from scholar_profiles.profiles import (
    ContributionListContent,
    DropdownContent,
    NarrativeContent,
    ProfileInstance,
    TextFieldContent,
    Visibility,
    build_view,
    check_view_access,
    completeness,
    content_from_payload,
    element_is_filled,
    set_contributor_roles,
    set_element_content,
)
from scholar_profiles.seeds import seed_templates
from scholar_profiles.templates import ElementKind, Template, TemplateElement

from conftest import TOPIC_POOL, corpus_st, filter_st, make_work
from test_indicators import recount

ORCID = "0000-0001-2345-6789"
REF_YEAR = 2026


def informative():
    return next(t for t in seed_templates() if t.template_id == "informative-profile")


def researcher_with(works):
    return Researcher("r1", ORCID, "Maria Papadopoulou", frozenset(works))


def profile_for(template, researcher_id="r1", **overrides):
    fields = dict(
        profile_id="p1",
        researcher_id=researcher_id,
        template_id=template.template_id,
        template_version=template.version,
    )
    fields.update(overrides)
    return ProfileInstance(**fields)


class TestElementContent:
    def test_narrative_stored(self):
        t = informative()
        template = seed_templates()[1]  # narrative-only résumé
        profile = profile_for(template)
        updated = set_element_content(profile, template, "personal-statement",
                                      NarrativeContent("I study networks."))
        assert updated.contents["personal-statement"].text == "I study networks."

    def test_unknown_element(self):
        template = informative()
        with pytest.raises(UnknownElement):
            set_element_content(profile_for(template), template, "ghost",
                                NarrativeContent("x"))

    def test_kind_mismatch_on_indicator_panel(self):
        template = informative()
        with pytest.raises(KindMismatch):
            set_element_content(profile_for(template), template, "key-indicators",
                                NarrativeContent("numbers?"))

    def test_dropdown_must_use_listed_option(self):
        template = seed_templates()[2]
        with pytest.raises(ConstraintViolation):
            set_element_content(profile_for(template), template, "career-stage",
                                DropdownContent("Archmage"))

    def test_max_length_enforced(self):
        template = seed_templates()[2]
        with pytest.raises(ConstraintViolation):
            set_element_content(profile_for(template), template, "current-position",
                                TextFieldContent("x" * 201))

    def test_pinned_excluded_overlap(self):
        template = informative()
        with pytest.raises(ConstraintViolation):
            set_element_content(profile_for(template), template, "research-outputs",
                                ContributionListContent(pinned=("w1",),
                                                        excluded=frozenset({"w1"})))

    def test_payload_parsing(self):
        template = seed_templates()[2]
        el = template.element("career-stage")
        content = content_from_payload(el, {"selected": "Senior"})
        assert content == DropdownContent("Senior")
        with pytest.raises(KindMismatch):
            content_from_payload(el, {"text": "Senior"})


class TestRoles:
    def test_set_and_remove(self):
        work = make_work()
        researcher = researcher_with([work])
        profile = profile_for(informative())
        updated = set_contributor_roles(profile, researcher, work.work_id,
                                        {"Software", "Supervision"})
        assert updated.role_assignments[work.work_id] == frozenset(
            {ContributorRole.SOFTWARE, ContributorRole.SUPERVISION})
        cleared = set_contributor_roles(updated, researcher, work.work_id, set())
        assert work.work_id not in cleared.role_assignments

    def test_unknown_work(self):
        researcher = researcher_with([make_work()])
        with pytest.raises(UnknownWork):
            set_contributor_roles(profile_for(informative()), researcher,
                                  "nope", {"Software"})

    def test_unknown_role(self):
        work = make_work()
        researcher = researcher_with([work])
        with pytest.raises(UnknownRole):
            set_contributor_roles(profile_for(informative()), researcher,
                                  work.work_id, {"Chief Vibes Officer"})


class TestCompleteness:
    def test_partial(self):
        template = seed_templates()[1]  # 2 of 4 elements required
        profile = profile_for(template, contents={
            "personal-statement": NarrativeContent("done"),
        })
        assert completeness(template, profile) == 0.5

    def test_vacuous_when_nothing_required(self):
        template = Template("t", "T", elements=(
            TemplateElement("n", ElementKind.NARRATIVE, "N"),))
        assert completeness(template, profile_for(template)) == 1.0

    def test_full(self):
        template = seed_templates()[1]
        profile = profile_for(template, contents={
            "personal-statement": NarrativeContent("a"),
            "knowledge-contributions": NarrativeContent("b"),
        })
        assert completeness(template, profile) == 1.0

    def test_whitespace_only_counts_as_empty(self):
        el = TemplateElement("n", ElementKind.NARRATIVE, "N")
        assert not element_is_filled(el, NarrativeContent("   \n"))
        assert element_is_filled(el, NarrativeContent("words"))

    def test_computed_elements_always_filled(self):
        panel = informative().element("key-indicators")
        outputs = informative().element("research-outputs")
        assert element_is_filled(panel, None)
        assert element_is_filled(outputs, None)


class TestAccess:
    def test_private_profile_blocks_non_owner(self):
        profile = profile_for(informative())
        with pytest.raises(Forbidden):
            check_view_access(profile, None)
        with pytest.raises(Forbidden):
            check_view_access(profile, "someone-else")
        check_view_access(profile, "r1")

    def test_public_profile_open_to_all(self):
        profile = profile_for(informative(), visibility=Visibility.PUBLIC)
        check_view_access(profile, None)

    @given(st.sampled_from([None, "r1", "r2"]), st.sampled_from(Visibility))
    def test_access_matrix(self, viewer, visibility):
        profile = profile_for(informative(), visibility=visibility)
        allowed = visibility is Visibility.PUBLIC or viewer == "r1"
        if allowed:
            check_view_access(profile, viewer)
        else:
            with pytest.raises(Forbidden):
                check_view_access(profile, viewer)


def displayed_ids(view):
    ids = []
    for el in view.elements:
        if el["kind"] == "contribution_list":
            ids.extend(w["work_id"] for w in el["works"])
    return ids


class TestRender:
    def corpus(self):
        t1, t2 = TOPIC_POOL[0], TOPIC_POOL[1]
        return [
            make_work(work_id="wa", title="Alpha", year=2019, citation_count=12,
                      access=Access.OPEN, license="CC-BY-4.0",
                      topics=frozenset({t1, t2})),
            make_work(work_id="wb", title="Beta", year=2020, citation_count=5,
                      work_type=WorkType.DATASET, access=Access.OPEN,
                      license="CC0-1.0", topics=frozenset({t1})),
            make_work(work_id="wc", title="Gamma", year=2021,
                      work_type=WorkType.SOFTWARE),
            make_work(work_id="wd", title="Delta", year=2022, citation_count=9,
                      access=Access.CLOSED, topics=frozenset({TOPIC_POOL[2]})),
            make_work(work_id="we", title="Epsilon", year=2022, citation_count=2,
                      access=Access.OPEN, license="CC-BY-4.0"),
        ]

    def view(self, flt=EMPTY_FILTER, contents=None, corpus=None):
        template = informative()
        researcher = researcher_with(self.corpus() if corpus is None else corpus)
        profile = profile_for(template, contents=contents or {})
        return build_view(researcher, template, profile, flt, REF_YEAR)

    def test_empty_filter_shows_all_and_matches_unfiltered_indicators(self):
        view = self.view()
        assert len(displayed_ids(view)) == 5
        panel = next(e for e in view.elements if e["kind"] == "indicator_panel")
        values = {row["key"]: row["value"] for row in panel["indicators"]}
        expected = recount(self.corpus(), REF_YEAR)
        assert values["total_outputs"] == expected["total"]
        assert values["citation_sum"] == expected["citation_sum"]
        assert values["h_index"] == expected["h"]
        assert values["open_access_share"] == pytest.approx(expected["oa_share"])
        assert values["academic_age"] == expected["age"]

    def test_filtered_view_matches_oracle(self):
        t1 = TOPIC_POOL[0].topic_id
        flt = FilterSpec(topics=frozenset({t1}))
        view = self.view(flt)
        corpus = self.corpus()
        expected_ids = {w.work_id for w in apply_filter(corpus, flt)}
        assert set(displayed_ids(view)) == expected_ids
        panel = next(e for e in view.elements if e["kind"] == "indicator_panel")
        values = {row["key"]: row["value"] for row in panel["indicators"]}
        expected = recount([w for w in corpus if w.work_id in expected_ids], REF_YEAR)
        assert values["total_outputs"] == expected["total"] == 2
        assert values["citation_sum"] == expected["citation_sum"] == 17
        assert values["h_index"] == expected["h"] == 2

    def test_excluded_works_hidden_and_uncounted(self):
        contents = {"research-outputs": ContributionListContent(
            excluded=frozenset({"wa"}))}
        view = self.view(contents=contents)
        assert "wa" not in displayed_ids(view)
        lst = next(e for e in view.elements if e["kind"] == "contribution_list")
        type_counts = {e["value"]: e["count"] for e in lst["facets"]["work_type"]}
        assert type_counts["publication"] == 2  # wa excluded from facet counts too

    def test_pinned_first_in_stored_order(self):
        contents = {"research-outputs": ContributionListContent(pinned=("wc", "wa"))}
        view = self.view(contents=contents)
        ids = displayed_ids(view)
        assert ids[:2] == ["wc", "wa"]
        # the rest keep year-desc, title-asc order
        assert ids[2:] == ["wd", "we", "wb"]

    def test_default_ordering_year_desc_title_asc(self):
        ids = displayed_ids(self.view())
        assert ids == ["wd", "we", "wc", "wb", "wa"]

    def test_facet_count_soundness(self):
        view = self.view()
        lst = next(e for e in view.elements if e["kind"] == "contribution_list")
        for entry in lst["facets"]["topics"]:
            refined = self.view(FilterSpec(topics=frozenset({entry["value"]})))
            assert len(displayed_ids(refined)) == entry["count"]
        for entry in lst["facets"]["access"]:
            refined = self.view(FilterSpec(access=Access(entry["value"])))
            assert len(displayed_ids(refined)) == entry["count"]
        for entry in lst["facets"]["year"]:
            refined = self.view(FilterSpec(year_range=(entry["value"], entry["value"])))
            assert len(displayed_ids(refined)) == entry["count"]
        for entry in lst["facets"]["license"]:
            refined = self.view(FilterSpec(licenses=frozenset({entry["value"]})))
            assert len(displayed_ids(refined)) == entry["count"]
        for entry in lst["facets"]["work_type"]:
            refined = self.view(FilterSpec(work_types=frozenset({WorkType(entry["value"])})))
            assert len(displayed_ids(refined)) == entry["count"]

    def test_unknown_access_absent_from_facet(self):
        view = self.view()
        lst = next(e for e in view.elements if e["kind"] == "contribution_list")
        assert all(e["value"] != "unknown" for e in lst["facets"]["access"])

    def test_indicator_panel_over_full_corpus_without_contribution_list(self):
        template = Template("t", "T", elements=(
            TemplateElement("p", ElementKind.INDICATOR_PANEL, "P",
                            config=informative().element("key-indicators").config),))
        researcher = researcher_with(self.corpus())
        profile = profile_for(template)
        view = build_view(researcher, template, profile,
                          FilterSpec(topics=frozenset({"T0"})), REF_YEAR)
        values = {r["key"]: r["value"] for r in view.elements[0]["indicators"]}
        assert values["total_outputs"] == 5  # filter has nothing to act on

    def test_empty_corpus_renders_na_markers(self):
        view = self.view(corpus=[])
        panel = next(e for e in view.elements if e["kind"] == "indicator_panel")
        values = {r["key"]: r["value"] for r in panel["indicators"]}
        assert values["open_access_share"] == NOT_AVAILABLE
        assert values["academic_age"] == NOT_AVAILABLE


@settings(max_examples=60)
@given(corpus_st(max_size=10), filter_st())
def test_render_indicator_coherence_property(corpus, flt):
    from scholar_profiles.ingestion import deduplicate

    corpus = deduplicate(corpus)
    template = informative()
    researcher = Researcher("r1", ORCID, "Maria", frozenset(corpus))
    profile = profile_for(template)
    view = build_view(researcher, template, profile, flt, REF_YEAR)
    shown = displayed_ids(view)
    assert len(shown) == len(set(shown))
    panel = next(e for e in view.elements if e["kind"] == "indicator_panel")
    values = {r["key"]: r["value"] for r in panel["indicators"]}
    assert values["total_outputs"] == len(set(shown))
    by_id = {w.work_id: w for w in researcher.works}
    expected = recount([by_id[i] for i in shown], REF_YEAR)
    assert values["citation_sum"] == expected["citation_sum"]
    assert values["h_index"] == expected["h"]
