"""Metadata processing: import work stubs, enrich, deduplicate, persist.

Live HTTP sources are out of scope; the default clients read JSONL fixture
files (one object per line) from a configurable directory:

  works.jsonl       {"orcid", "doi"?, "title", "year"?, "type"?}
  enrichment.jsonl  {"doi", "provider": "graph"|"topics", ...record fields}
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Protocol

from .errors import MalformedDoi, SourceUnavailable, UnknownResearcher
from .model import (
    Access,
    Researcher,
    TopicRef,
    Work,
    WorkType,
    dedup_key,
    normalize_doi,
    validate_orcid,
)

WORKS_FIXTURE = "works.jsonl"
ENRICHMENT_FIXTURE = "enrichment.jsonl"


class StubSource(str, Enum):
    ORCID_IMPORT = "orcid_import"
    MANUAL = "manual"


class Provider(str, Enum):
    GRAPH = "graph"
    TOPICS = "topics"


@dataclass(frozen=True)
class WorkStub:
    title: str
    doi: str | None = None
    year: int | None = None
    work_type: WorkType | None = None
    source: StubSource = StubSource.ORCID_IMPORT

    def __post_init__(self):
        if not self.title.strip():
            raise ValueError("stub title must be non-empty")


@dataclass(frozen=True)
class EnrichmentRecord:
    doi: str
    provider: Provider
    authors: tuple[str, ...] | None = None
    venue: str | None = None
    citation_count: int | None = None
    popularity_score: float | None = None
    influence_score: float | None = None
    access: Access | None = None
    license: str | None = None
    topics: frozenset[TopicRef] | None = None


@dataclass
class IngestReport:
    """Per-run audit trail; ``summary_line`` is what the CLI prints."""

    imported: int = 0
    deduplicated: int = 0
    enriched: int = 0
    unmatched_records: list = field(default_factory=list)
    malformed_dois: list = field(default_factory=list)
    dropped_future_works: list = field(default_factory=list)
    dropped_values: list = field(default_factory=list)
    matched_dois: set = field(default_factory=set)

    @property
    def summary_line(self) -> str:
        return (
            f"works: imported {self.imported}, "
            f"deduplicated to {self.deduplicated}, enriched {self.enriched}"
        )


class WorkSource(Protocol):
    def works_for(self, orcid: str) -> list[WorkStub]: ...


class EnrichmentSource(Protocol):
    def records_for(self, dois: set[str]) -> list[EnrichmentRecord]: ...


def _read_jsonl(path: Path) -> list[dict]:
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise SourceUnavailable(f"cannot read fixture {path}: {exc}") from exc
    rows = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rows.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise SourceUnavailable(f"{path}:{lineno}: bad JSON: {exc}") from exc
    return rows


class FixtureWorkSource:
    """Work stubs from a works.jsonl fixture, filtered by ORCID iD."""

    def __init__(self, fixtures_dir: str | Path):
        self.path = Path(fixtures_dir) / WORKS_FIXTURE

    def works_for(self, orcid: str) -> list[WorkStub]:
        stubs = []
        for row in _read_jsonl(self.path):
            if row.get("orcid") != orcid:
                continue
            try:
                stubs.append(
                    WorkStub(
                        title=row["title"],
                        doi=row.get("doi"),
                        year=row.get("year"),
                        work_type=WorkType(row["type"]) if row.get("type") else None,
                    )
                )
            except (KeyError, ValueError) as exc:
                raise SourceUnavailable(f"bad stub row {row!r}: {exc}") from exc
        return stubs


class FixtureEnrichmentSource:
    """Enrichment records from an enrichment.jsonl fixture, filtered by DOI."""

    def __init__(self, fixtures_dir: str | Path):
        self.path = Path(fixtures_dir) / ENRICHMENT_FIXTURE

    def records_for(self, dois: set[str]) -> list[EnrichmentRecord]:
        records = []
        for row in _read_jsonl(self.path):
            try:
                doi = normalize_doi(row["doi"])
            except (KeyError, MalformedDoi) as exc:
                raise SourceUnavailable(f"bad enrichment row {row!r}: {exc}") from exc
            if doi not in dois:
                continue
            records.append(parse_enrichment_row(row))
        return records


def parse_enrichment_row(row: dict) -> EnrichmentRecord:
    provider = Provider(row["provider"])
    topics = None
    if row.get("topics") is not None:
        topics = frozenset(TopicRef(t["topic_id"], t["label"]) for t in row["topics"])
    return EnrichmentRecord(
        doi=row["doi"],
        provider=provider,
        authors=tuple(row["authors"]) if row.get("authors") else None,
        venue=row.get("venue"),
        citation_count=row.get("citation_count"),
        popularity_score=row.get("popularity_score"),
        influence_score=row.get("influence_score"),
        access=Access(row["access"]) if row.get("access") else None,
        license=row.get("license"),
        topics=topics,
    )


def fetch_orcid_works(orcid: str, client: WorkSource) -> list[WorkStub]:
    """All public work stubs the client exposes for one iD, undeduplicated."""
    try:
        validate_orcid(orcid)
    except Exception as exc:
        raise UnknownResearcher(f"malformed ORCID iD: {orcid!r}") from exc
    return client.works_for(orcid)


def _work_id(scope: str, key) -> str:
    digest = hashlib.sha1(f"{scope}|{key!r}".encode("utf-8")).hexdigest()
    return f"w{digest[:16]}"


def enrich(stubs, records, *, id_scope: str = "", report: IngestReport | None = None) -> list[Work]:
    """Join stubs with enrichment records on normalized DOI.

    Bibliographic stub fields win; indicator fields (citations, scores,
    access, license) come only from graph records and topics only from
    topics records. Records matching no stub are listed in the report.
    """
    report = report if report is not None else IngestReport()

    graph_by_doi: dict[str, list[EnrichmentRecord]] = {}
    topics_by_doi: dict[str, set[TopicRef]] = {}
    for rec in records:
        try:
            doi = normalize_doi(rec.doi)
        except MalformedDoi:
            report.malformed_dois.append(rec.doi)
            continue
        if rec.provider is Provider.GRAPH:
            graph_by_doi.setdefault(doi, []).append(rec)
        else:
            topics_by_doi.setdefault(doi, set()).update(rec.topics or ())

    matched: set[str] = set()
    works = []
    for stub in stubs:
        doi = None
        if stub.doi:
            try:
                doi = normalize_doi(stub.doi)
            except MalformedDoi:
                report.malformed_dois.append(stub.doi)

        authors: tuple[str, ...] = ()
        venue = None
        citation = popularity = influence = None
        access = Access.UNKNOWN
        license_id = None
        topics: frozenset[TopicRef] = frozenset()

        if doi is not None:
            for rec in graph_by_doi.get(doi, ()):
                matched.add(doi)
                if rec.authors and not authors:
                    authors = rec.authors
                if rec.venue and venue is None:
                    venue = rec.venue
                if rec.citation_count is not None and citation is None:
                    citation = _non_negative(rec.citation_count, report)
                if rec.popularity_score is not None and popularity is None:
                    popularity = _non_negative(rec.popularity_score, report)
                if rec.influence_score is not None and influence is None:
                    influence = _non_negative(rec.influence_score, report)
                if rec.access is not None and access is Access.UNKNOWN:
                    access = rec.access
                if rec.license and license_id is None:
                    license_id = rec.license
            if doi in topics_by_doi:
                matched.add(doi)
                topics = frozenset(topics_by_doi[doi])

        work = Work(
            work_id="pending",
            title=stub.title,
            work_type=stub.work_type or WorkType.OTHER,
            doi=doi,
            year=stub.year,
            venue=venue,
            authors=authors,
            citation_count=citation,
            popularity_score=popularity,
            influence_score=influence,
            access=access,
            license=license_id,
            topics=topics,
        )
        works.append(replace(work, work_id=_work_id(id_scope, dedup_key(work))))

    joined = set(graph_by_doi) | set(topics_by_doi)
    report.unmatched_records.extend(sorted(joined - matched))
    report.matched_dois |= matched
    report.enriched = sum(1 for w in works if w.doi in matched)
    return works


def _non_negative(value, report: IngestReport):
    if value < 0:
        report.dropped_values.append(value)
        return None
    return value


def _populated_fields(work: Work) -> int:
    score = 0
    score += work.doi is not None
    score += work.year is not None
    score += work.venue is not None
    score += bool(work.authors)
    score += work.citation_count is not None
    score += work.popularity_score is not None
    score += work.influence_score is not None
    score += work.access is not Access.UNKNOWN
    score += work.license is not None
    score += bool(work.topics)
    return score


def deduplicate(works) -> list[Work]:
    """Keep one work per dedup key: the most populated copy, first-in on ties."""
    survivors: dict = {}
    order: list = []
    for work in works:
        key = dedup_key(work)
        if key not in survivors:
            survivors[key] = work
            order.append(key)
        elif _populated_fields(work) > _populated_fields(survivors[key]):
            survivors[key] = work
    return [survivors[key] for key in order]


def ingest_researcher(
    orcid: str,
    display_name: str,
    work_source: WorkSource,
    enrichment_source: EnrichmentSource,
    store,
    *,
    reference_year: int | None = None,
) -> tuple[Researcher, IngestReport]:
    """Fetch, enrich, deduplicate, and persist one researcher's corpus.

    Re-running against identical sources leaves the stored corpus unchanged
    (work ids are content-derived). Works dated beyond reference_year + 1
    are dropped and reported, never stored.
    """
    report = IngestReport()
    stubs = fetch_orcid_works(orcid, work_source)
    report.imported = len(stubs)

    dois = set()
    for stub in stubs:
        if stub.doi:
            try:
                dois.add(normalize_doi(stub.doi))
            except MalformedDoi:
                pass
    records = enrichment_source.records_for(dois)

    works = enrich(stubs, records, id_scope=orcid, report=report)
    if reference_year is not None:
        kept = []
        for w in works:
            if w.year is not None and w.year > reference_year + 1:
                report.dropped_future_works.append(w.title)
            else:
                kept.append(w)
        works = kept

    deduped = deduplicate(works)
    report.deduplicated = len(deduped)
    report.enriched = sum(1 for w in deduped if w.doi in report.matched_dois)

    researcher = store.upsert_researcher(orcid, display_name)
    researcher = store.sync_works(researcher.researcher_id, deduped)
    return researcher, report
