"""The three templates that ship as the platform's default collection."""

from __future__ import annotations

from .model import WorkType
from .templates import (
    ContributionListConfig,
    DropdownConfig,
    ElementKind,
    FACET_NAMES,
    IndicatorPanelConfig,
    NarrativeConfig,
    Template,
    TemplateElement,
    TemplateState,
    TextFieldConfig,
)

ALL_TYPES = frozenset(WorkType)
ALL_FACETS = frozenset(FACET_NAMES)


def seed_templates() -> list[Template]:
    informative = Template(
        template_id="informative-profile",
        name="Informative Profile",
        description=(
            "A structured track record: the full output list with interactive "
            "facets, next to the key researcher-level indicators."
        ),
        state=TemplateState.PUBLISHED,
        version=1,
        elements=(
            TemplateElement(
                element_id="key-indicators",
                kind=ElementKind.INDICATOR_PANEL,
                label="Key indicators",
                config=IndicatorPanelConfig(indicator_keys=(
                    "total_outputs", "h_index", "citation_sum", "popularity_sum",
                    "influence_sum", "open_access_share", "academic_age",
                )),
            ),
            TemplateElement(
                element_id="research-outputs",
                kind=ElementKind.CONTRIBUTION_LIST,
                label="Research outputs",
                required=True,
                config=ContributionListConfig(
                    allowed_work_types=ALL_TYPES, facets_enabled=ALL_FACETS,
                ),
            ),
        ),
    )

    resume = Template(
        template_id="resume-for-researchers",
        name="Résumé for Researchers",
        description="A narrative-first account of a research career.",
        state=TemplateState.PUBLISHED,
        version=1,
        elements=(
            TemplateElement(
                element_id="personal-statement",
                kind=ElementKind.NARRATIVE,
                label="Personal statement",
                required=True,
                config=NarrativeConfig(max_length=3000, ai_assist_enabled=True),
            ),
            TemplateElement(
                element_id="knowledge-contributions",
                kind=ElementKind.NARRATIVE,
                label="Contributions to the generation of knowledge",
                required=True,
                config=NarrativeConfig(max_length=3000, ai_assist_enabled=True),
            ),
            TemplateElement(
                element_id="people-development",
                kind=ElementKind.NARRATIVE,
                label="Contributions to the development of individuals",
                config=NarrativeConfig(max_length=3000),
            ),
            TemplateElement(
                element_id="societal-contributions",
                kind=ElementKind.NARRATIVE,
                label="Contributions to the broader society",
                config=NarrativeConfig(max_length=3000),
            ),
        ),
    )

    brief_cv = Template(
        template_id="brief-research-cv",
        name="Brief Research CV",
        description="A short hybrid CV: a summary narrative plus selected outputs.",
        state=TemplateState.PUBLISHED,
        version=1,
        elements=(
            TemplateElement(
                element_id="research-summary",
                kind=ElementKind.NARRATIVE,
                label="Research summary",
                required=True,
                config=NarrativeConfig(max_length=1500, ai_assist_enabled=True),
            ),
            TemplateElement(
                element_id="career-stage",
                kind=ElementKind.DROPDOWN,
                label="Career stage",
                config=DropdownConfig(options=(
                    "Doctoral researcher", "Early career", "Established", "Senior",
                )),
            ),
            TemplateElement(
                element_id="selected-outputs",
                kind=ElementKind.CONTRIBUTION_LIST,
                label="Selected outputs",
                config=ContributionListConfig(
                    allowed_work_types=frozenset(
                        {WorkType.PUBLICATION, WorkType.DATASET, WorkType.SOFTWARE}
                    ),
                    facets_enabled=frozenset({"topics", "year"}),
                ),
            ),
            TemplateElement(
                element_id="current-position",
                kind=ElementKind.TEXT_FIELD,
                label="Current position",
                config=TextFieldConfig(max_length=200),
            ),
        ),
    )

    return [informative, resume, brief_cv]
