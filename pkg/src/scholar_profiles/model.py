"""Shared domain vocabulary: works, researchers, topics, filters, roles.

Everything here is an immutable value; the operations are pure functions,
safe to call from any number of concurrent callers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import InvalidFilter, InvalidOrcid, MalformedDoi


class WorkType(str, Enum):
    PUBLICATION = "publication"
    DATASET = "dataset"
    SOFTWARE = "software"
    OTHER = "other"


class Access(str, Enum):
    OPEN = "open"
    CLOSED = "closed"
    UNKNOWN = "unknown"


class ContributorRole(str, Enum):
    """The 14 CRediT contributor roles, stored by their canonical labels."""

    CONCEPTUALIZATION = "Conceptualization"
    DATA_CURATION = "Data curation"
    FORMAL_ANALYSIS = "Formal analysis"
    FUNDING_ACQUISITION = "Funding acquisition"
    INVESTIGATION = "Investigation"
    METHODOLOGY = "Methodology"
    PROJECT_ADMINISTRATION = "Project administration"
    RESOURCES = "Resources"
    SOFTWARE = "Software"
    SUPERVISION = "Supervision"
    VALIDATION = "Validation"
    VISUALIZATION = "Visualization"
    WRITING_ORIGINAL_DRAFT = "Writing – original draft"
    WRITING_REVIEW_EDITING = "Writing – review & editing"


_DOI_PREFIXES = ("https://doi.org/", "http://dx.doi.org/", "doi:")
_DOI_RE = re.compile(r"10\.\d+(?:\.\d+)*/.+", re.DOTALL)
_ORCID_RE = re.compile(r"\d{4}-\d{4}-\d{4}-\d{3}[\dX]")


def normalize_doi(raw: str) -> str:
    """Strip resolver prefixes, lowercase, and validate the ``10.<reg>/<suffix>`` shape."""
    candidate = raw.strip()
    if not candidate:
        raise MalformedDoi("empty DOI string")
    lowered = candidate.lower()
    for prefix in _DOI_PREFIXES:
        if lowered.startswith(prefix):
            candidate = candidate[len(prefix):]
            lowered = candidate.lower()
    if not _DOI_RE.fullmatch(lowered):
        raise MalformedDoi(f"not a DOI: {raw!r}")
    return lowered


def validate_orcid(value: str) -> str:
    """Check the 16-character grouped ORCID iD format (digits, optional trailing X)."""
    if not _ORCID_RE.fullmatch(value or ""):
        raise InvalidOrcid(f"not an ORCID iD: {value!r}")
    return value


@dataclass(frozen=True)
class TopicRef:
    topic_id: str
    label: str

    def __post_init__(self):
        if not self.topic_id:
            raise ValueError("topic_id must be non-empty")
        if not self.label:
            raise ValueError("topic label must be non-empty")


@dataclass(frozen=True)
class Work:
    """One scholarly output with its enrichment fields.

    ``doi`` is stored normalized (lowercase, no resolver prefix); ``year`` is
    optional because imported records do not always carry one.
    """

    work_id: str
    title: str
    work_type: WorkType
    doi: str | None = None
    year: int | None = None
    venue: str | None = None
    authors: tuple[str, ...] = ()
    citation_count: int | None = None
    popularity_score: float | None = None
    influence_score: float | None = None
    access: Access = Access.UNKNOWN
    license: str | None = None
    topics: frozenset[TopicRef] = frozenset()

    def __post_init__(self):
        if not self.title.strip():
            raise ValueError("work title must be non-empty")
        if self.doi is not None and self.doi != normalize_doi(self.doi):
            raise ValueError(f"doi not normalized: {self.doi!r}")
        if self.year is not None and self.year < 1000:
            raise ValueError(f"implausible year: {self.year}")
        for name in ("citation_count", "popularity_score", "influence_score"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")

    @property
    def topic_ids(self) -> frozenset[str]:
        return frozenset(t.topic_id for t in self.topics)


def dedup_key(work: Work):
    """Comparable duplicate key: the normalized DOI, else (collapsed title, year)."""
    if work.doi:
        return ("doi", work.doi)
    collapsed = " ".join(work.title.casefold().split())
    return ("title", collapsed, work.year)


@dataclass(frozen=True)
class Researcher:
    researcher_id: str
    orcid: str
    display_name: str
    works: frozenset[Work] = frozenset()

    def __post_init__(self):
        validate_orcid(self.orcid)
        if not self.display_name.strip():
            raise ValueError("display_name must be non-empty")
        keys = [dedup_key(w) for w in self.works]
        if len(keys) != len(set(keys)):
            raise ValueError("corpus contains works with duplicate dedup keys")


@dataclass(frozen=True)
class FilterSpec:
    """A conjunction of facets; within a set-valued facet any member matches.

    An all-empty FilterSpec means "no filtering".
    """

    topics: frozenset[str] = frozenset()
    work_types: frozenset[WorkType] = frozenset()
    licenses: frozenset[str] = frozenset()
    access: Access | None = None
    year_range: tuple[int, int] | None = None

    def __post_init__(self):
        if self.year_range is not None:
            lo, hi = self.year_range
            if lo > hi:
                raise InvalidFilter(f"year_range min {lo} > max {hi}")

    @property
    def is_empty(self) -> bool:
        return (
            not self.topics
            and not self.work_types
            and not self.licenses
            and self.access is None
            and self.year_range is None
        )

    def as_dict(self) -> dict:
        return {
            "topics": sorted(self.topics),
            "work_types": sorted(t.value for t in self.work_types),
            "licenses": sorted(self.licenses),
            "access": self.access.value if self.access else None,
            "year_range": list(self.year_range) if self.year_range else None,
        }


EMPTY_FILTER = FilterSpec()


def matches_filter(work: Work, spec: FilterSpec) -> bool:
    """Predicate behind apply_filter; works lacking a facet attribute never match it."""
    if spec.topics and not (work.topic_ids & spec.topics):
        return False
    if spec.work_types and work.work_type not in spec.work_types:
        return False
    if spec.licenses and (work.license is None or work.license not in spec.licenses):
        return False
    if spec.access is not None:
        if work.access is Access.UNKNOWN or work.access is not spec.access:
            return False
    if spec.year_range is not None:
        lo, hi = spec.year_range
        if work.year is None or not (lo <= work.year <= hi):
            return False
    return True


def apply_filter(works, spec: FilterSpec) -> set[Work]:
    """Retain the works satisfying every non-empty facet of ``spec``."""
    return {w for w in works if matches_filter(w, spec)}
