"""Platform orchestration: auth, researchers, templates, profiles, search, AI.

This is the single service layer behind both the HTTP API and the admin CLI,
so the two surfaces cannot drift apart. All methods either return
JSON-ready dicts or raise a DomainError carrying a stable code.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timezone

from .assistant import Assistant, AssistantConfig, SummaryRequest, SummaryStyle
from .config import AppConfig
from .discovery import SearchIndex
from .errors import (
    AiAssistDisabled,
    AuthError,
    Conflict,
    DuplicateEntity,
    Forbidden,
    InvalidFilter,
    InvalidToken,
    TemplateNotAvailable,
    UnknownElement,
    UnknownTemplate,
    ValidationFailure,
)
from .indicators import compute_indicators
from .ingestion import (
    FixtureEnrichmentSource,
    FixtureWorkSource,
    ingest_researcher,
)
from .model import Access, FilterSpec, WorkType, validate_orcid
from .profiles import (
    ContributionListContent,
    ProfileInstance,
    Visibility,
    build_view,
    check_view_access,
    completeness,
    content_from_payload,
    content_to_doc,
    set_contributor_roles,
    set_element_content,
)
from .seeds import seed_templates
from .store import Store
from .templates import (
    ElementKind,
    Template,
    TemplateState,
    check_feedback,
    compute_analytics,
    edit_template,
    require_valid,
    template_from_doc,
    template_to_doc,
    transition_state,
)


@dataclass(frozen=True)
class AuthContext:
    subject: str  # "anonymous" | "researcher" | "admin"
    researcher_id: str | None = None

    @property
    def is_admin(self) -> bool:
        return self.subject == "admin"


ANONYMOUS = AuthContext("anonymous")


def effective_reference_year(config: AppConfig) -> int:
    """Configured reference year, else the current UTC year (edge only)."""
    if config.reference_year is not None:
        return config.reference_year
    return datetime.now(timezone.utc).year


def filter_from_params(topics=None, types=None, licenses=None,
                       access=None, year_min=None, year_max=None) -> FilterSpec:
    """Build a FilterSpec from the query-param shapes the API and CLI share."""

    def split(raw):
        if raw is None:
            return frozenset()
        if isinstance(raw, (list, tuple, set, frozenset)):
            items = raw
        else:
            items = raw.split(",")
        return frozenset(s.strip() for s in items if s and s.strip())

    try:
        work_types = frozenset(WorkType(t) for t in split(types))
        access_value = Access(access) if access else None
    except ValueError as exc:
        raise InvalidFilter(str(exc)) from exc
    year_range = None
    if year_min is not None or year_max is not None:
        try:
            lo = int(year_min) if year_min is not None else 1000
            hi = int(year_max) if year_max is not None else 9999
        except (TypeError, ValueError) as exc:
            raise InvalidFilter(f"bad year bound: {exc}") from exc
        year_range = (lo, hi)
    return FilterSpec(
        topics=split(topics),
        work_types=work_types,
        licenses=split(licenses),
        access=access_value,
        year_range=year_range,
    )


class Platform:
    def __init__(self, config: AppConfig):
        self.config = config
        self.store = Store(config.store_path)
        self.assistant = Assistant(AssistantConfig(
            backend_url=config.ai_backend_url,
            backend_key=config.ai_backend_key,
            model_name=config.ai_model_name,
            fallback_enabled=config.ai_fallback_enabled,
            prompts_path=config.ai_prompts_path,
            max_inflight=config.ai_max_inflight,
        ))
        self.index = SearchIndex()
        self.rebuild_index()

    # -- auth ---------------------------------------------------------------

    def authenticate(self, token: str | None) -> AuthContext:
        if not token:
            return ANONYMOUS
        if token == self.config.admin_token:
            return AuthContext("admin")
        researcher_id = self.store.researcher_id_for_token(token)
        if researcher_id is None:
            raise InvalidToken("unrecognized bearer token")
        return AuthContext("researcher", researcher_id)

    def _require_admin(self, auth: AuthContext) -> None:
        if auth.subject == "anonymous":
            raise AuthError("this operation requires a token")
        if not auth.is_admin:
            raise Forbidden("this operation requires the admin token")

    def _require_researcher(self, auth: AuthContext) -> str:
        if auth.subject == "anonymous":
            raise AuthError("this operation requires a researcher token")
        if auth.researcher_id is None:
            raise Forbidden("this operation requires a researcher token")
        return auth.researcher_id

    def reference_year(self) -> int:
        return effective_reference_year(self.config)

    def rebuild_index(self) -> None:
        for researcher in self.store.list_researchers():
            self.index.upsert(
                researcher.researcher_id,
                researcher.display_name,
                self.store.public_profile_ids(researcher.researcher_id),
            )

    # -- researchers -----------------------------------------------------------

    def register_researcher(self, auth: AuthContext, orcid: str,
                            display_name: str) -> dict:
        self._require_admin(auth)
        validate_orcid(orcid)
        if not (display_name or "").strip():
            raise ValidationFailure("display_name must be non-empty")
        researcher = self.store.add_researcher(orcid, display_name)
        return {
            "researcher_id": researcher.researcher_id,
            "orcid": researcher.orcid,
            "display_name": researcher.display_name,
        }

    def sync_researcher(self, auth: AuthContext, orcid: str) -> dict:
        self._require_admin(auth)
        if not self.config.fixtures_dir:
            raise ValidationFailure("fixtures_dir is not configured")
        existing = self.store.get_researcher(orcid=orcid)
        researcher, report = ingest_researcher(
            orcid,
            existing.display_name,
            FixtureWorkSource(self.config.fixtures_dir),
            FixtureEnrichmentSource(self.config.fixtures_dir),
            self.store,
            reference_year=self.reference_year(),
        )
        return {
            "orcid": researcher.orcid,
            "imported": report.imported,
            "deduplicated": report.deduplicated,
            "enriched": report.enriched,
            "unmatched_records": report.unmatched_records,
            "dropped_future_works": report.dropped_future_works,
            "summary": report.summary_line,
        }

    def indicators_for(self, orcid: str, flt: FilterSpec) -> dict:
        researcher = self.store.get_researcher(orcid=orcid)
        return compute_indicators(
            researcher.works, self.reference_year(), flt
        ).as_dict()

    # -- templates ------------------------------------------------------------------

    def _template_visible(self, auth: AuthContext, template: Template) -> bool:
        if auth.is_admin:
            return True
        if template.state is TemplateState.PUBLISHED:
            return True
        if template.state is TemplateState.PILOTING and auth.researcher_id:
            return self.store.has_grant(template.template_id, auth.researcher_id)
        return False

    def list_templates(self, auth: AuthContext, limit: int = 20,
                       offset: int = 0) -> list[dict]:
        visible = [
            template_to_doc(t)
            for t in self.store.list_templates()
            if self._template_visible(auth, t)
        ]
        return _page(visible, limit, offset)

    def get_template(self, auth: AuthContext, template_id: str) -> dict:
        template = self.store.get_template(template_id)
        if not self._template_visible(auth, template):
            raise UnknownTemplate(f"no template {template_id!r}")
        return template_to_doc(template)

    def create_template(self, auth: AuthContext, doc: dict) -> dict:
        self._require_admin(auth)
        candidate = template_from_doc({**doc, "state": "draft", "version": 1})
        require_valid(candidate)
        if self.store.find_template(candidate.template_id) is not None:
            raise DuplicateEntity(f"template {candidate.template_id!r} already exists")
        return template_to_doc(self.store.save_template_version(candidate))

    def update_template(self, auth: AuthContext, template_id: str, doc: dict) -> dict:
        self._require_admin(auth)
        current = self.store.get_template(template_id)
        base_version = int(doc.get("version", current.version))
        if base_version != current.version:
            raise Conflict(
                f"template is at version {current.version}, edit based on {base_version}"
            )
        candidate = template_from_doc({**doc, "template_id": template_id})
        edited = edit_template(current, candidate)
        return template_to_doc(self.store.save_template_version(edited))

    def transition_template(self, auth: AuthContext, template_id: str,
                            target: str) -> dict:
        self._require_admin(auth)
        current = self.store.get_template(template_id)
        try:
            state = TemplateState(target)
        except ValueError as exc:
            raise ValidationFailure(f"unknown state {target!r}") from exc
        moved = transition_state(current, state)
        self.store.set_template_state(template_id, current.version, state)
        return template_to_doc(moved)

    def grant_pilot_access(self, auth: AuthContext, template_id: str,
                           researcher_id: str) -> dict:
        self._require_admin(auth)
        self.store.get_template(template_id)
        self.store.get_researcher(researcher_id=researcher_id)
        self.store.add_grant(template_id, researcher_id)
        return {"template_id": template_id, "researcher_id": researcher_id}

    def template_analytics(self, auth: AuthContext, template_id: str) -> dict:
        self._require_admin(auth)
        template = self.store.get_template(template_id)
        profiles = self.store.list_profiles_by_template(template_id)
        return compute_analytics(template, profiles).as_dict()

    def submit_feedback(self, auth: AuthContext, template_id: str,
                        rating, comment: str = "") -> dict:
        researcher_id = self._require_researcher(auth)
        template = self.store.get_template(template_id)
        if not isinstance(rating, int) or isinstance(rating, bool):
            raise ValidationFailure("rating must be an integer")
        check_feedback(template, rating)
        if template.state is TemplateState.PILOTING and not self.store.has_grant(
            template_id, researcher_id
        ):
            raise Forbidden("piloting feedback is limited to invited researchers")
        entry = self.store.add_feedback(template_id, researcher_id, rating, comment)
        return _feedback_doc(entry)

    def list_feedback(self, auth: AuthContext, template_id: str,
                      limit: int = 20, offset: int = 0) -> list[dict]:
        self._require_admin(auth)
        self.store.get_template(template_id)
        entries = [_feedback_doc(e) for e in self.store.list_feedback(template_id)]
        return _page(entries, limit, offset)

    # -- profiles ---------------------------------------------------------------------

    def create_profile(self, auth: AuthContext, template_id: str) -> dict:
        researcher_id = self._require_researcher(auth)
        self.store.get_researcher(researcher_id=researcher_id)
        template = self.store.get_template(template_id)
        available = template.state is TemplateState.PUBLISHED or (
            template.state is TemplateState.PILOTING
            and self.store.has_grant(template_id, researcher_id)
        )
        if not available:
            raise TemplateNotAvailable(
                f"template {template_id!r} is not open for profiles"
            )
        profile = self.store.insert_profile(researcher_id, template_id, template.version)
        return self._profile_doc(profile)

    def _profile_doc(self, profile: ProfileInstance) -> dict:
        template = self.store.get_template(profile.template_id, profile.template_version)
        return {
            "profile_id": profile.profile_id,
            "researcher_id": profile.researcher_id,
            "template_id": profile.template_id,
            "template_version": profile.template_version,
            "visibility": profile.visibility.value,
            "completeness": completeness(template, profile),
            "contents": {
                element_id: content_to_doc(content)
                for element_id, content in sorted(profile.contents.items())
            },
            "role_assignments": {
                work_id: sorted(r.value for r in roles)
                for work_id, roles in sorted(profile.role_assignments.items())
            },
            "revision": profile.revision,
            "created_at": profile.created_at,
            "updated_at": profile.updated_at,
        }

    def profile_view(self, auth: AuthContext, profile_id: str, flt: FilterSpec) -> dict:
        profile = self.store.get_profile(profile_id)
        check_view_access(profile, auth.researcher_id)
        researcher = self.store.get_researcher(researcher_id=profile.researcher_id)
        template = self.store.get_template(profile.template_id, profile.template_version)
        view = build_view(researcher, template, profile, flt, self.reference_year())
        return view.as_dict()

    def _owned_profile(self, auth: AuthContext, profile_id: str,
                       expected_revision: int | None) -> ProfileInstance:
        researcher_id = self._require_researcher(auth)
        profile = self.store.get_profile(profile_id)
        if profile.researcher_id != researcher_id:
            raise Forbidden("only the profile owner may modify it")
        if expected_revision is not None and expected_revision != profile.revision:
            raise Conflict(
                f"profile is at revision {profile.revision}, "
                f"edit based on {expected_revision}"
            )
        return profile

    def set_element(self, auth: AuthContext, profile_id: str, element_id: str,
                    payload: dict, expected_revision: int | None = None) -> dict:
        profile = self._owned_profile(auth, profile_id, expected_revision)
        template = self.store.get_template(profile.template_id, profile.template_version)
        element = template.element(element_id)
        if element is None:
            raise UnknownElement(f"template has no element {element_id!r}")
        content = content_from_payload(element, payload)
        updated = set_element_content(profile, template, element_id, content)
        return self._profile_doc(self.store.update_profile(updated))

    def set_roles(self, auth: AuthContext, profile_id: str, work_id: str,
                  roles, expected_revision: int | None = None) -> dict:
        profile = self._owned_profile(auth, profile_id, expected_revision)
        researcher = self.store.get_researcher(researcher_id=profile.researcher_id)
        updated = set_contributor_roles(profile, researcher, work_id, roles)
        return self._profile_doc(self.store.update_profile(updated))

    def set_visibility(self, auth: AuthContext, profile_id: str,
                       visibility: str, expected_revision: int | None = None) -> dict:
        profile = self._owned_profile(auth, profile_id, expected_revision)
        try:
            target = Visibility(visibility)
        except ValueError as exc:
            raise ValidationFailure(f"unknown visibility {visibility!r}") from exc
        stored = self.store.update_profile(replace(profile, visibility=target))
        researcher = self.store.get_researcher(researcher_id=profile.researcher_id)
        self.index.upsert(
            researcher.researcher_id,
            researcher.display_name,
            self.store.public_profile_ids(researcher.researcher_id),
        )
        return self._profile_doc(stored)

    # -- search & AI -----------------------------------------------------------------

    def search(self, query: str, limit: int = 20) -> list[dict]:
        limit = max(1, min(int(limit), 100))
        return [entry.as_dict() for entry in self.index.search(query, limit)]

    def summarize(self, auth: AuthContext, profile_id: str, element_id: str,
                  style: str = "paragraph", max_words: int = 150,
                  opt_in: bool = False) -> dict:
        profile = self._owned_profile(auth, profile_id, None)
        template = self.store.get_template(profile.template_id, profile.template_version)
        element = template.element(element_id)
        if element is None:
            raise UnknownElement(f"template has no element {element_id!r}")
        if element.kind is not ElementKind.NARRATIVE or not element.config.ai_assist_enabled:
            raise AiAssistDisabled(
                f"element {element_id!r} does not accept drafted narratives"
            )
        try:
            summary_style = SummaryStyle(style)
        except ValueError as exc:
            raise ValidationFailure(f"unknown style {style!r}") from exc
        if not isinstance(max_words, int) or max_words <= 0:
            raise ValidationFailure("max_words must be a positive integer")
        researcher = self.store.get_researcher(researcher_id=profile.researcher_id)
        corpus = _summary_corpus(researcher, template, profile)
        result = self.assistant.summarize(SummaryRequest(
            works=tuple(corpus),
            style=summary_style,
            max_words=max_words,
            opt_in=bool(opt_in),
        ))
        return result.as_dict()


def _summary_corpus(researcher, template: Template, profile: ProfileInstance):
    """The works an AI draft talks about: what the contribution lists show."""
    lists = [el for el in template.elements if el.kind is ElementKind.CONTRIBUTION_LIST]
    if not lists:
        return sorted(researcher.works, key=lambda w: w.work_id)
    union = {}
    for el in lists:
        content = profile.contents.get(el.element_id) or ContributionListContent()
        for work in researcher.works:
            if work.work_type in el.config.allowed_work_types \
                    and work.work_id not in content.excluded:
                union[work.work_id] = work
    return [union[k] for k in sorted(union)]


def _page(rows: list, limit: int, offset: int) -> list:
    limit = max(1, min(int(limit), 100))
    offset = max(0, int(offset))
    return rows[offset:offset + limit]


def _feedback_doc(entry) -> dict:
    return {
        "feedback_id": entry.feedback_id,
        "template_id": entry.template_id,
        "researcher_id": entry.researcher_id,
        "rating": entry.rating,
        "comment": entry.comment,
        "submitted_at": entry.submitted_at,
    }


def install_seed_templates(store: Store) -> dict:
    """Idempotently install the default collection; reports created/unchanged."""
    created = unchanged = 0
    for template in seed_templates():
        existing = store.find_template(template.template_id)
        if existing is None:
            store.save_template_version(template)
            created += 1
        else:
            unchanged += 1
    return {"created": created, "unchanged": unchanged}
