"""Profile instances: element content, contributor roles, rendered views.

A profile binds a researcher to one template version at creation time and
never migrates automatically. Rendering is where filtering, facet counts,
and indicator panels come together: the panels are computed over exactly
the works the contribution lists display under the active filter.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import (
    ConstraintViolation,
    Forbidden,
    KindMismatch,
    UnknownElement,
    UnknownRole,
    UnknownWork,
)
from .indicators import compute_indicators
from .model import (
    Access,
    ContributorRole,
    EMPTY_FILTER,
    FilterSpec,
    Researcher,
    Work,
    matches_filter,
)
from .templates import ElementKind, Template, TemplateElement


class Visibility(str, Enum):
    PRIVATE = "private"
    PUBLIC = "public"


@dataclass(frozen=True)
class NarrativeContent:
    text: str


@dataclass(frozen=True)
class TextFieldContent:
    text: str


@dataclass(frozen=True)
class DropdownContent:
    selected: str


@dataclass(frozen=True)
class ContributionListContent:
    pinned: tuple[str, ...] = ()
    excluded: frozenset[str] = frozenset()


@dataclass(frozen=True)
class ProfileInstance:
    profile_id: str
    researcher_id: str
    template_id: str
    template_version: int
    visibility: Visibility = Visibility.PRIVATE
    contents: dict = field(default_factory=dict)
    role_assignments: dict = field(default_factory=dict)
    revision: int = 1
    created_at: str = ""
    updated_at: str = ""


def content_to_doc(content) -> dict:
    """Serialize a content variant for storage/API echo."""
    if isinstance(content, NarrativeContent):
        return {"kind": "narrative", "text": content.text}
    if isinstance(content, TextFieldContent):
        return {"kind": "text_field", "text": content.text}
    if isinstance(content, DropdownContent):
        return {"kind": "dropdown", "selected": content.selected}
    if isinstance(content, ContributionListContent):
        return {
            "kind": "contribution_list",
            "pinned": list(content.pinned),
            "excluded": sorted(content.excluded),
        }
    raise TypeError(f"not an element content: {content!r}")


def content_from_doc(doc: dict):
    kind = doc.get("kind")
    if kind == "narrative":
        return NarrativeContent(doc["text"])
    if kind == "text_field":
        return TextFieldContent(doc["text"])
    if kind == "dropdown":
        return DropdownContent(doc["selected"])
    if kind == "contribution_list":
        return ContributionListContent(
            pinned=tuple(doc.get("pinned", ())),
            excluded=frozenset(doc.get("excluded", ())),
        )
    raise ValueError(f"unknown content kind {kind!r}")


def content_from_payload(element: TemplateElement, payload: dict):
    """Parse an API payload into the content variant for ``element``'s kind."""
    kind = element.kind
    if kind is ElementKind.NARRATIVE or kind is ElementKind.TEXT_FIELD:
        if not isinstance(payload.get("text"), str):
            raise KindMismatch(f"element {element.element_id!r} expects {{'text': ...}}")
        content = NarrativeContent(payload["text"]) if kind is ElementKind.NARRATIVE \
            else TextFieldContent(payload["text"])
    elif kind is ElementKind.DROPDOWN:
        if not isinstance(payload.get("selected"), str):
            raise KindMismatch(f"element {element.element_id!r} expects {{'selected': ...}}")
        content = DropdownContent(payload["selected"])
    elif kind is ElementKind.CONTRIBUTION_LIST:
        if "pinned" not in payload and "excluded" not in payload:
            raise KindMismatch(
                f"element {element.element_id!r} expects {{'pinned': [...], 'excluded': [...]}}"
            )
        content = ContributionListContent(
            pinned=tuple(payload.get("pinned", ())),
            excluded=frozenset(payload.get("excluded", ())),
        )
    else:
        raise KindMismatch(f"element {element.element_id!r} is computed; it takes no content")
    validate_content(element, content)
    return content


def validate_content(element: TemplateElement, content) -> None:
    kind, cfg = element.kind, element.config
    if kind is ElementKind.NARRATIVE and isinstance(content, NarrativeContent):
        if cfg.max_length is not None and len(content.text) > cfg.max_length:
            raise ConstraintViolation(f"narrative exceeds max_length {cfg.max_length}")
    elif kind is ElementKind.TEXT_FIELD and isinstance(content, TextFieldContent):
        if cfg.max_length is not None and len(content.text) > cfg.max_length:
            raise ConstraintViolation(f"text exceeds max_length {cfg.max_length}")
    elif kind is ElementKind.DROPDOWN and isinstance(content, DropdownContent):
        if content.selected not in cfg.options:
            raise ConstraintViolation(f"{content.selected!r} is not one of the dropdown options")
    elif kind is ElementKind.CONTRIBUTION_LIST and isinstance(content, ContributionListContent):
        overlap = set(content.pinned) & content.excluded
        if overlap:
            raise ConstraintViolation(f"works {sorted(overlap)} are both pinned and excluded")
    else:
        raise KindMismatch(
            f"content {type(content).__name__} does not fit element kind {kind.value}"
        )


def set_element_content(profile: ProfileInstance, template: Template,
                        element_id: str, content) -> ProfileInstance:
    element = template.element(element_id)
    if element is None:
        raise UnknownElement(f"template has no element {element_id!r}")
    validate_content(element, content)
    contents = dict(profile.contents)
    contents[element_id] = content
    return replace(profile, contents=contents)


def set_contributor_roles(profile: ProfileInstance, researcher: Researcher,
                          work_id: str, roles) -> ProfileInstance:
    """Replace the role set for one owned work; an empty set removes it."""
    if work_id not in {w.work_id for w in researcher.works}:
        raise UnknownWork(f"work {work_id!r} is not in the researcher's corpus")
    parsed = set()
    for role in roles:
        try:
            parsed.add(role if isinstance(role, ContributorRole) else ContributorRole(role))
        except ValueError:
            raise UnknownRole(f"not a CRediT role: {role!r}") from None
    assignments = dict(profile.role_assignments)
    if parsed:
        assignments[work_id] = frozenset(parsed)
    else:
        assignments.pop(work_id, None)
    return replace(profile, role_assignments=assignments)


def element_is_filled(element: TemplateElement, content) -> bool:
    """Emptiness rules shared with template analytics and completeness."""
    kind = element.kind
    if kind in (ElementKind.INDICATOR_PANEL, ElementKind.CONTRIBUTION_LIST):
        return True
    if content is None:
        return False
    if kind is ElementKind.DROPDOWN:
        return bool(content.selected)
    return bool(content.text.strip())


def completeness(template: Template, profile: ProfileInstance) -> float:
    """Fraction of required elements filled; 1.0 when nothing is required."""
    required = [el for el in template.elements if el.required]
    if not required:
        return 1.0
    filled = sum(
        1 for el in required if element_is_filled(el, profile.contents.get(el.element_id))
    )
    return filled / len(required)


def check_view_access(profile: ProfileInstance, viewer_researcher_id: str | None) -> None:
    if profile.visibility is Visibility.PUBLIC:
        return
    if viewer_researcher_id != profile.researcher_id:
        raise Forbidden("this profile is private")


@dataclass(frozen=True)
class ProfileView:
    profile_id: str
    researcher: dict
    template_id: str
    template_version: int
    visibility: str
    active_filter: dict
    completeness: float
    elements: list
    created_at: str
    updated_at: str
    revision: int

    def as_dict(self) -> dict:
        return {
            "profile_id": self.profile_id,
            "researcher": self.researcher,
            "template_id": self.template_id,
            "template_version": self.template_version,
            "visibility": self.visibility,
            "active_filter": self.active_filter,
            "completeness": self.completeness,
            "elements": self.elements,
            "created_at": self.created_at,
            "updated_at": self.updated_at,
            "revision": self.revision,
        }


def _work_sort_key(work: Work):
    # newest first; missing years sink; title then id break ties
    return (-(work.year if work.year is not None else -10**6),
            work.title.casefold(), work.work_id)


def _work_payload(work: Work, roles) -> dict:
    return {
        "work_id": work.work_id,
        "doi": work.doi,
        "title": work.title,
        "work_type": work.work_type.value,
        "year": work.year,
        "venue": work.venue,
        "authors": list(work.authors),
        "citation_count": work.citation_count,
        "popularity_score": work.popularity_score,
        "influence_score": work.influence_score,
        "access": work.access.value,
        "license": work.license,
        "topics": sorted(
            ({"topic_id": t.topic_id, "label": t.label} for t in work.topics),
            key=lambda t: t["topic_id"],
        ),
        "roles": sorted(r.value for r in roles),
    }


def _facet_counts(works, enabled) -> dict:
    """Per-facet value counts over the pre-filter (but post-exclusion) corpus.

    The access facet omits ``unknown`` because selecting it can never match.
    """
    facets = {}
    if "topics" in enabled:
        counts = {}
        for w in works:
            for t in w.topics:
                entry = counts.setdefault(t.topic_id, {"value": t.topic_id, "label": t.label, "count": 0})
                entry["count"] += 1
        facets["topics"] = sorted(counts.values(), key=lambda e: (-e["count"], e["label"], e["value"]))
    if "license" in enabled:
        counts = {}
        for w in works:
            if w.license is not None:
                counts[w.license] = counts.get(w.license, 0) + 1
        facets["license"] = _plain_facet(counts)
    if "access" in enabled:
        counts = {}
        for w in works:
            if w.access is not Access.UNKNOWN:
                counts[w.access.value] = counts.get(w.access.value, 0) + 1
        facets["access"] = _plain_facet(counts)
    if "work_type" in enabled:
        counts = {}
        for w in works:
            counts[w.work_type.value] = counts.get(w.work_type.value, 0) + 1
        facets["work_type"] = _plain_facet(counts)
    if "year" in enabled:
        counts = {}
        for w in works:
            if w.year is not None:
                counts[w.year] = counts.get(w.year, 0) + 1
        facets["year"] = _plain_facet(counts)
    return facets


def _plain_facet(counts: dict) -> list:
    return sorted(
        ({"value": value, "count": count} for value, count in counts.items()),
        key=lambda e: (-e["count"], str(e["value"])),
    )


def build_view(researcher: Researcher, template: Template, profile: ProfileInstance,
               flt: FilterSpec, reference_year: int) -> ProfileView:
    """Render the profile: ordered elements, filtered lists, coherent panels."""
    corpus = sorted(researcher.works, key=_work_sort_key)

    displayed_union: dict[str, Work] = {}
    list_payloads: dict[str, dict] = {}
    has_contribution_list = False

    for el in template.elements:
        if el.kind is not ElementKind.CONTRIBUTION_LIST:
            continue
        has_contribution_list = True
        content = profile.contents.get(el.element_id) or ContributionListContent()
        restricted = [w for w in corpus if w.work_type in el.config.allowed_work_types
                      and w.work_id not in content.excluded]
        displayed = [w for w in restricted if matches_filter(w, flt)]
        by_id = {w.work_id: w for w in displayed}
        pinned = [by_id[i] for i in content.pinned if i in by_id]
        rest = [w for w in displayed if w.work_id not in set(content.pinned)]
        ordered = pinned + rest
        for w in ordered:
            displayed_union[w.work_id] = w
        list_payloads[el.element_id] = {
            "works": [
                _work_payload(w, profile.role_assignments.get(w.work_id, frozenset()))
                for w in ordered
            ],
            "total": len(ordered),
            "facets": _facet_counts(restricted, el.config.facets_enabled),
        }

    if has_contribution_list:
        indicator_corpus = list(displayed_union.values())
    else:
        indicator_corpus = list(researcher.works)
    indicators = compute_indicators(indicator_corpus, reference_year, EMPTY_FILTER)

    elements = []
    for el in template.elements:
        body = {
            "element_id": el.element_id,
            "kind": el.kind.value,
            "label": el.label,
            "required": el.required,
        }
        content = profile.contents.get(el.element_id)
        if el.kind is ElementKind.CONTRIBUTION_LIST:
            body.update(list_payloads[el.element_id])
        elif el.kind is ElementKind.INDICATOR_PANEL:
            body["indicators"] = [
                {"key": key, "value": indicators.value_for(key)}
                for key in el.config.indicator_keys
            ]
        elif el.kind is ElementKind.DROPDOWN:
            body["selected"] = content.selected if content else None
            body["options"] = list(el.config.options)
        else:
            body["text"] = content.text if content else ""
            if el.kind is ElementKind.NARRATIVE:
                body["ai_assist_enabled"] = el.config.ai_assist_enabled
        elements.append(body)

    return ProfileView(
        profile_id=profile.profile_id,
        researcher={
            "researcher_id": researcher.researcher_id,
            "orcid": researcher.orcid,
            "display_name": researcher.display_name,
        },
        template_id=template.template_id,
        template_version=template.version,
        visibility=profile.visibility.value,
        active_filter=flt.as_dict(),
        completeness=completeness(template, profile),
        elements=elements,
        created_at=profile.created_at,
        updated_at=profile.updated_at,
        revision=profile.revision,
    )
