"""Domain error hierarchy.

Every error carries a stable machine-readable ``code`` that the HTTP layer
and the CLI surface verbatim, so clients never have to parse messages.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all platform errors."""

    code = "domain_error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details


# -- input / validation errors (HTTP 400) -----------------------------------

class ValidationFailure(DomainError):
    code = "validation_failed"


class MalformedDoi(ValidationFailure):
    code = "malformed_doi"


class InvalidOrcid(ValidationFailure):
    code = "invalid_orcid"


class InvalidFilter(ValidationFailure):
    code = "invalid_filter"


class UnknownIndicatorKey(ValidationFailure):
    code = "unknown_indicator_key"


class InvalidTemplate(ValidationFailure):
    """Raised when a template candidate fails validation.

    ``details["issues"]`` carries the full list of violations.
    """

    code = "invalid_template"


class RatingOutOfRange(ValidationFailure):
    code = "rating_out_of_range"


class KindMismatch(ValidationFailure):
    code = "kind_mismatch"


class ConstraintViolation(ValidationFailure):
    code = "constraint_violation"


class UnknownRole(ValidationFailure):
    code = "unknown_role"


class EmptyQuery(ValidationFailure):
    code = "empty_query"


class EmptyCorpus(ValidationFailure):
    code = "empty_corpus"


class AiAssistDisabled(ValidationFailure):
    code = "ai_assist_disabled"


class ForeignProfile(ValidationFailure):
    code = "foreign_profile"


# -- auth errors (HTTP 401 / 403) --------------------------------------------

class AuthError(DomainError):
    code = "auth_required"


class InvalidToken(AuthError):
    code = "invalid_token"


class Forbidden(DomainError):
    code = "forbidden"


# -- missing entities (HTTP 404) ---------------------------------------------

class NotFound(DomainError):
    code = "not_found"


class UnknownResearcher(NotFound):
    code = "unknown_researcher"


class UnknownTemplate(NotFound):
    code = "unknown_template"


class UnknownProfile(NotFound):
    code = "unknown_profile"


class UnknownElement(NotFound):
    code = "unknown_element"


class UnknownWork(NotFound):
    code = "unknown_work"


# -- state conflicts (HTTP 409) ------------------------------------------------

class Conflict(DomainError):
    code = "conflict"


class IllegalTransition(Conflict):
    code = "illegal_transition"


class TemplateLocked(Conflict):
    code = "template_locked"


class StructuralEditInPiloting(Conflict):
    code = "structural_edit_in_piloting"


class TemplateNotAcceptingFeedback(Conflict):
    code = "template_not_accepting_feedback"


class TemplateNotAvailable(Conflict):
    code = "template_not_available"


class DuplicateEntity(Conflict):
    code = "duplicate_entity"


# -- infrastructure ------------------------------------------------------------

class SourceUnavailable(DomainError):
    code = "source_unavailable"


class BackendUnavailable(DomainError):
    code = "backend_unavailable"


class StorageError(DomainError):
    code = "storage_error"


class StoreLocked(StorageError):
    code = "store_locked"
