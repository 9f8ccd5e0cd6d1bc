"""Template definition, validation, lifecycle, analytics, and feedback.

A template is an ordered composition of typed elements. Drafts may change
freely; during piloting only labels, descriptions, and element configs may
change (element ids, kinds, order, and required flags are frozen so that
completion statistics stay comparable); published templates are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import (
    ForeignProfile,
    IllegalTransition,
    InvalidTemplate,
    RatingOutOfRange,
    StructuralEditInPiloting,
    TemplateLocked,
    TemplateNotAcceptingFeedback,
)
from .indicators import PANEL_KEYS
from .model import WorkType


class TemplateState(str, Enum):
    DRAFT = "draft"
    PILOTING = "piloting"
    PUBLISHED = "published"


class ElementKind(str, Enum):
    NARRATIVE = "narrative"
    INDICATOR_PANEL = "indicator_panel"
    CONTRIBUTION_LIST = "contribution_list"
    DROPDOWN = "dropdown"
    TEXT_FIELD = "text_field"


FACET_NAMES = ("topics", "license", "access", "work_type", "year")

_ALLOWED_TRANSITIONS = {
    (TemplateState.DRAFT, TemplateState.PILOTING),
    (TemplateState.PILOTING, TemplateState.PUBLISHED),
    (TemplateState.PILOTING, TemplateState.DRAFT),
}


@dataclass(frozen=True)
class NarrativeConfig:
    max_length: int | None = None
    ai_assist_enabled: bool = False


@dataclass(frozen=True)
class IndicatorPanelConfig:
    indicator_keys: tuple[str, ...] = ()


@dataclass(frozen=True)
class ContributionListConfig:
    allowed_work_types: frozenset[WorkType] = frozenset(WorkType)
    facets_enabled: frozenset[str] = frozenset(FACET_NAMES)


@dataclass(frozen=True)
class DropdownConfig:
    options: tuple[str, ...] = ()


@dataclass(frozen=True)
class TextFieldConfig:
    max_length: int | None = None


_CONFIG_TYPES = {
    ElementKind.NARRATIVE: NarrativeConfig,
    ElementKind.INDICATOR_PANEL: IndicatorPanelConfig,
    ElementKind.CONTRIBUTION_LIST: ContributionListConfig,
    ElementKind.DROPDOWN: DropdownConfig,
    ElementKind.TEXT_FIELD: TextFieldConfig,
}


@dataclass(frozen=True)
class TemplateElement:
    element_id: str
    kind: ElementKind
    label: str
    required: bool = False
    config: object = None

    def __post_init__(self):
        if self.config is None:
            object.__setattr__(self, "config", _CONFIG_TYPES[self.kind]())
        elif not isinstance(self.config, _CONFIG_TYPES[self.kind]):
            raise TypeError(
                f"element {self.element_id!r}: config {type(self.config).__name__} "
                f"does not fit kind {self.kind.value}"
            )


@dataclass(frozen=True)
class Template:
    template_id: str
    name: str
    description: str = ""
    state: TemplateState = TemplateState.DRAFT
    version: int = 1
    elements: tuple[TemplateElement, ...] = ()

    def element(self, element_id: str) -> TemplateElement | None:
        for el in self.elements:
            if el.element_id == element_id:
                return el
        return None


@dataclass(frozen=True)
class TemplateIssue:
    code: str
    message: str
    element_id: str | None = None

    def as_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "element_id": self.element_id}


def validate_template(candidate: Template) -> list[TemplateIssue]:
    """Collect every rule violation; an empty list means the template is valid."""
    issues = []

    def flag(code, message, element_id=None):
        issues.append(TemplateIssue(code, message, element_id))

    if not candidate.name.strip():
        flag("empty_name", "template name must be non-empty")

    seen_ids = set()
    for el in candidate.elements:
        if el.element_id in seen_ids:
            flag("duplicate_element_id", f"element id {el.element_id!r} appears twice", el.element_id)
        seen_ids.add(el.element_id)

        if not el.label.strip():
            flag("empty_element_label", "element label must be non-empty", el.element_id)

        cfg = el.config
        if el.kind is ElementKind.DROPDOWN:
            if not cfg.options:
                flag("empty_dropdown_options", "dropdown needs at least one option", el.element_id)
            if len(set(cfg.options)) != len(cfg.options):
                flag("duplicate_dropdown_options", "dropdown options must be distinct", el.element_id)
        elif el.kind is ElementKind.INDICATOR_PANEL:
            if not cfg.indicator_keys:
                flag("empty_indicator_selection", "indicator panel needs at least one key", el.element_id)
            for key in cfg.indicator_keys:
                if key not in PANEL_KEYS:
                    flag("unknown_indicator_key", f"unknown indicator key {key!r}", el.element_id)
        elif el.kind is ElementKind.CONTRIBUTION_LIST:
            if not cfg.allowed_work_types:
                flag("empty_allowed_work_types", "contribution list needs at least one work type", el.element_id)
            for name in cfg.facets_enabled:
                if name not in FACET_NAMES:
                    flag("unknown_facet", f"unknown facet {name!r}", el.element_id)
        elif el.kind in (ElementKind.NARRATIVE, ElementKind.TEXT_FIELD):
            if cfg.max_length is not None and cfg.max_length <= 0:
                flag("non_positive_max_length", "max_length must be positive", el.element_id)

    return issues


def require_valid(candidate: Template) -> Template:
    issues = validate_template(candidate)
    if issues:
        raise InvalidTemplate(
            "; ".join(i.message for i in issues),
            issues=[i.as_dict() for i in issues],
        )
    return candidate


def transition_state(template: Template, target: TemplateState) -> Template:
    """Move along draft -> piloting -> published (piloting may fall back to draft)."""
    require_valid(template)
    if (template.state, target) not in _ALLOWED_TRANSITIONS:
        raise IllegalTransition(
            f"cannot move template {template.template_id!r} "
            f"from {template.state.value} to {target.value}"
        )
    return replace(template, state=target)


def _structure(template: Template):
    return [(el.element_id, el.kind, el.required) for el in template.elements]


def edit_template(current: Template, candidate: Template) -> Template:
    """Apply an edit, enforcing the per-state edit classes; bumps the version."""
    if current.state is TemplateState.PUBLISHED:
        raise TemplateLocked(f"template {current.template_id!r} is published")
    if current.state is TemplateState.PILOTING and _structure(candidate) != _structure(current):
        raise StructuralEditInPiloting(
            "element ids, kinds, order, and required flags are frozen while piloting"
        )
    require_valid(candidate)
    return replace(
        candidate,
        template_id=current.template_id,
        state=current.state,
        version=current.version + 1,
    )


@dataclass(frozen=True)
class TemplateAnalytics:
    template_id: str
    total_users: int
    element_completion: dict

    def as_dict(self) -> dict:
        return {
            "template_id": self.template_id,
            "total_users": self.total_users,
            "element_completion": {
                eid: {"filled": c["filled"], "rate": c["rate"]}
                for eid, c in self.element_completion.items()
            },
        }


def compute_analytics(template: Template, profiles) -> TemplateAnalytics:
    """Total distinct users plus per-element completion over their profiles.

    A researcher counts as having filled an element when any of their
    profiles on this template carries non-empty content for it.
    """
    from .profiles import element_is_filled  # deferred: profiles imports templates

    foreign = [p.profile_id for p in profiles if p.template_id != template.template_id]
    if foreign:
        raise ForeignProfile(f"profiles {foreign} reference another template")

    users = {p.researcher_id for p in profiles}
    total = len(users)
    completion = {}
    for el in template.elements:
        filled_users = {
            p.researcher_id
            for p in profiles
            if element_is_filled(el, p.contents.get(el.element_id))
        }
        completion[el.element_id] = {
            "filled": len(filled_users),
            "rate": (len(filled_users) / total) if total else None,
        }
    return TemplateAnalytics(template.template_id, total, completion)


@dataclass(frozen=True)
class FeedbackEntry:
    feedback_id: str
    template_id: str
    researcher_id: str
    rating: int
    comment: str
    submitted_at: str


def check_feedback(template: Template, rating: int) -> None:
    """Guards for record_feedback: bounds plus the lifecycle gate."""
    if not 1 <= rating <= 5:
        raise RatingOutOfRange(f"rating must be in [1, 5], got {rating}")
    if template.state is TemplateState.DRAFT:
        raise TemplateNotAcceptingFeedback(
            f"template {template.template_id!r} is still a draft"
        )


# -- JSON interchange format (CLI import/export, API bodies) -------------------

def _config_to_doc(element: TemplateElement) -> dict:
    cfg = element.config
    if element.kind is ElementKind.NARRATIVE:
        return {"max_length": cfg.max_length, "ai_assist_enabled": cfg.ai_assist_enabled}
    if element.kind is ElementKind.INDICATOR_PANEL:
        return {"indicator_keys": list(cfg.indicator_keys)}
    if element.kind is ElementKind.CONTRIBUTION_LIST:
        return {
            "allowed_work_types": sorted(t.value for t in cfg.allowed_work_types),
            "facets_enabled": sorted(cfg.facets_enabled),
        }
    if element.kind is ElementKind.DROPDOWN:
        return {"options": list(cfg.options)}
    return {"max_length": cfg.max_length}


def _config_from_doc(kind: ElementKind, doc: dict):
    doc = doc or {}
    try:
        if kind is ElementKind.NARRATIVE:
            return NarrativeConfig(
                max_length=doc.get("max_length"),
                ai_assist_enabled=bool(doc.get("ai_assist_enabled", False)),
            )
        if kind is ElementKind.INDICATOR_PANEL:
            return IndicatorPanelConfig(indicator_keys=tuple(doc.get("indicator_keys", ())))
        if kind is ElementKind.CONTRIBUTION_LIST:
            return ContributionListConfig(
                allowed_work_types=frozenset(WorkType(t) for t in doc.get("allowed_work_types", ())),
                facets_enabled=frozenset(doc.get("facets_enabled", ())),
            )
        if kind is ElementKind.DROPDOWN:
            return DropdownConfig(options=tuple(doc.get("options", ())))
        return TextFieldConfig(max_length=doc.get("max_length"))
    except ValueError as exc:
        raise InvalidTemplate(f"bad element config: {exc}") from exc


def template_to_doc(template: Template) -> dict:
    return {
        "template_id": template.template_id,
        "name": template.name,
        "description": template.description,
        "state": template.state.value,
        "version": template.version,
        "elements": [
            {
                "element_id": el.element_id,
                "kind": el.kind.value,
                "label": el.label,
                "required": el.required,
                "config": _config_to_doc(el),
            }
            for el in template.elements
        ],
    }


def template_from_doc(doc: dict) -> Template:
    try:
        elements = tuple(
            TemplateElement(
                element_id=el["element_id"],
                kind=ElementKind(el["kind"]),
                label=el["label"],
                required=bool(el.get("required", False)),
                config=_config_from_doc(ElementKind(el["kind"]), el.get("config")),
            )
            for el in doc.get("elements", ())
        )
        return Template(
            template_id=doc["template_id"],
            name=doc["name"],
            description=doc.get("description", ""),
            state=TemplateState(doc.get("state", "draft")),
            version=int(doc.get("version", 1)),
            elements=elements,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidTemplate(f"bad template document: {exc}") from exc
