"""Embedded relational persistence (SQLite) behind one storage abstraction.

Every public method runs in its own transaction; mutations use BEGIN
IMMEDIATE so concurrent writers serialize, and optimistic revision checks
turn lost updates into Conflict errors instead of silent overwrites.
Templates are stored one row per (template_id, version) so profiles can
keep rendering the version they were created against.
"""

from __future__ import annotations

import json
import secrets
import sqlite3
import uuid
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path

from .errors import (
    Conflict,
    DuplicateEntity,
    StoreLocked,
    UnknownProfile,
    UnknownResearcher,
    UnknownTemplate,
)
from .model import Access, ContributorRole, Researcher, TopicRef, Work, WorkType
from .profiles import ProfileInstance, Visibility, content_from_doc, content_to_doc
from .templates import (
    ElementKind,
    FeedbackEntry,
    Template,
    TemplateElement,
    TemplateState,
    _config_from_doc,
    _config_to_doc,
)

_SCHEMA = """
CREATE TABLE IF NOT EXISTS researchers (
  researcher_id TEXT PRIMARY KEY,
  orcid TEXT NOT NULL UNIQUE,
  display_name TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS topics (
  topic_id TEXT PRIMARY KEY,
  label TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS works (
  work_id TEXT PRIMARY KEY,
  researcher_id TEXT NOT NULL REFERENCES researchers(researcher_id) ON DELETE CASCADE,
  doi TEXT,
  work_type TEXT NOT NULL,
  title TEXT NOT NULL,
  year INTEGER,
  venue TEXT,
  authors TEXT NOT NULL DEFAULT '[]',
  citation_count INTEGER,
  popularity_score REAL,
  influence_score REAL,
  access TEXT NOT NULL DEFAULT 'unknown',
  license TEXT
);
CREATE INDEX IF NOT EXISTS works_by_researcher ON works(researcher_id);
CREATE TABLE IF NOT EXISTS work_topics (
  work_id TEXT NOT NULL REFERENCES works(work_id) ON DELETE CASCADE,
  topic_id TEXT NOT NULL REFERENCES topics(topic_id),
  PRIMARY KEY (work_id, topic_id)
);
CREATE TABLE IF NOT EXISTS templates (
  template_id TEXT NOT NULL,
  version INTEGER NOT NULL,
  name TEXT NOT NULL,
  description TEXT NOT NULL DEFAULT '',
  state TEXT NOT NULL,
  PRIMARY KEY (template_id, version)
);
CREATE TABLE IF NOT EXISTS template_elements (
  template_id TEXT NOT NULL,
  version INTEGER NOT NULL,
  position INTEGER NOT NULL,
  element_id TEXT NOT NULL,
  kind TEXT NOT NULL,
  label TEXT NOT NULL,
  required INTEGER NOT NULL DEFAULT 0,
  config TEXT NOT NULL DEFAULT '{}',
  PRIMARY KEY (template_id, version, element_id),
  FOREIGN KEY (template_id, version)
    REFERENCES templates(template_id, version) ON DELETE CASCADE
);
CREATE TABLE IF NOT EXISTS template_grants (
  template_id TEXT NOT NULL,
  researcher_id TEXT NOT NULL REFERENCES researchers(researcher_id) ON DELETE CASCADE,
  PRIMARY KEY (template_id, researcher_id)
);
CREATE TABLE IF NOT EXISTS profiles (
  profile_id TEXT PRIMARY KEY,
  researcher_id TEXT NOT NULL REFERENCES researchers(researcher_id) ON DELETE CASCADE,
  template_id TEXT NOT NULL,
  template_version INTEGER NOT NULL,
  visibility TEXT NOT NULL DEFAULT 'private',
  revision INTEGER NOT NULL DEFAULT 1,
  created_at TEXT NOT NULL,
  updated_at TEXT NOT NULL,
  FOREIGN KEY (template_id, template_version)
    REFERENCES templates(template_id, version)
);
CREATE TABLE IF NOT EXISTS profile_contents (
  profile_id TEXT NOT NULL REFERENCES profiles(profile_id) ON DELETE CASCADE,
  element_id TEXT NOT NULL,
  content TEXT NOT NULL,
  PRIMARY KEY (profile_id, element_id)
);
CREATE TABLE IF NOT EXISTS role_assignments (
  profile_id TEXT NOT NULL REFERENCES profiles(profile_id) ON DELETE CASCADE,
  work_id TEXT NOT NULL REFERENCES works(work_id) ON DELETE CASCADE,
  role TEXT NOT NULL,
  PRIMARY KEY (profile_id, work_id, role)
);
CREATE TABLE IF NOT EXISTS feedback (
  feedback_id TEXT PRIMARY KEY,
  template_id TEXT NOT NULL,
  researcher_id TEXT NOT NULL REFERENCES researchers(researcher_id) ON DELETE CASCADE,
  rating INTEGER NOT NULL,
  comment TEXT NOT NULL DEFAULT '',
  submitted_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS tokens (
  token TEXT PRIMARY KEY,
  researcher_id TEXT NOT NULL REFERENCES researchers(researcher_id) ON DELETE CASCADE
);
"""


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


class Store:
    def __init__(self, path: str | Path, busy_timeout: float = 5.0):
        self.path = str(path)
        self.busy_timeout = busy_timeout
        with self._connect() as conn:
            conn.executescript(_SCHEMA)

    def _connect(self) -> sqlite3.Connection:
        conn = sqlite3.connect(self.path, timeout=self.busy_timeout)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA foreign_keys = ON")
        return conn

    @contextmanager
    def _write(self):
        conn = self._connect()
        try:
            conn.execute("BEGIN IMMEDIATE")
            yield conn
            conn.commit()
        except sqlite3.OperationalError as exc:
            conn.rollback()
            if "locked" in str(exc).lower():
                raise StoreLocked("another writer holds the store lock") from exc
            raise
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()

    @contextmanager
    def _read(self):
        conn = self._connect()
        try:
            yield conn
        finally:
            conn.close()

    # -- researchers & works ---------------------------------------------------

    def add_researcher(self, orcid: str, display_name: str) -> Researcher:
        researcher = Researcher(f"r-{uuid.uuid4().hex[:12]}", orcid, display_name)
        try:
            with self._write() as conn:
                conn.execute(
                    "INSERT INTO researchers VALUES (?, ?, ?)",
                    (researcher.researcher_id, orcid, display_name),
                )
        except sqlite3.IntegrityError as exc:
            raise DuplicateEntity(f"ORCID {orcid} is already registered") from exc
        return researcher

    def upsert_researcher(self, orcid: str, display_name: str) -> Researcher:
        existing = self.find_researcher(orcid=orcid)
        if existing is not None:
            return existing
        return self.add_researcher(orcid, display_name)

    def find_researcher(self, orcid: str | None = None,
                        researcher_id: str | None = None) -> Researcher | None:
        where, param = ("orcid", orcid) if orcid else ("researcher_id", researcher_id)
        with self._read() as conn:
            row = conn.execute(
                f"SELECT * FROM researchers WHERE {where} = ?", (param,)
            ).fetchone()
            if row is None:
                return None
            works = self._load_works(conn, row["researcher_id"])
        return Researcher(row["researcher_id"], row["orcid"], row["display_name"],
                          frozenset(works))

    def get_researcher(self, orcid: str | None = None,
                       researcher_id: str | None = None) -> Researcher:
        researcher = self.find_researcher(orcid, researcher_id)
        if researcher is None:
            raise UnknownResearcher(f"no researcher for {orcid or researcher_id!r}")
        return researcher

    def list_researchers(self) -> list[Researcher]:
        with self._read() as conn:
            ids = [r["researcher_id"] for r in conn.execute(
                "SELECT researcher_id FROM researchers ORDER BY researcher_id")]
        return [self.get_researcher(researcher_id=i) for i in ids]

    def _load_works(self, conn, researcher_id: str) -> list[Work]:
        topic_rows = conn.execute(
            """SELECT wt.work_id, t.topic_id, t.label FROM work_topics wt
               JOIN topics t ON t.topic_id = wt.topic_id
               JOIN works w ON w.work_id = wt.work_id
               WHERE w.researcher_id = ?""",
            (researcher_id,),
        ).fetchall()
        topics_by_work: dict[str, set[TopicRef]] = {}
        for row in topic_rows:
            topics_by_work.setdefault(row["work_id"], set()).add(
                TopicRef(row["topic_id"], row["label"])
            )
        works = []
        for row in conn.execute(
            "SELECT * FROM works WHERE researcher_id = ?", (researcher_id,)
        ):
            works.append(Work(
                work_id=row["work_id"],
                title=row["title"],
                work_type=WorkType(row["work_type"]),
                doi=row["doi"],
                year=row["year"],
                venue=row["venue"],
                authors=tuple(json.loads(row["authors"])),
                citation_count=row["citation_count"],
                popularity_score=row["popularity_score"],
                influence_score=row["influence_score"],
                access=Access(row["access"]),
                license=row["license"],
                topics=frozenset(topics_by_work.get(row["work_id"], ())),
            ))
        return works

    def sync_works(self, researcher_id: str, works) -> Researcher:
        """Replace the researcher's corpus; identical input is a no-op."""
        works = list(works)
        with self._write() as conn:
            keep = {w.work_id for w in works}
            existing = {r["work_id"] for r in conn.execute(
                "SELECT work_id FROM works WHERE researcher_id = ?", (researcher_id,))}
            stale = existing - keep
            if stale:
                conn.executemany("DELETE FROM works WHERE work_id = ?",
                                 [(i,) for i in stale])
            for work in works:
                for topic in work.topics:
                    conn.execute(
                        """INSERT INTO topics VALUES (?, ?)
                           ON CONFLICT(topic_id) DO UPDATE SET label = excluded.label""",
                        (topic.topic_id, topic.label),
                    )
                conn.execute(
                    """INSERT INTO works VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                       ON CONFLICT(work_id) DO UPDATE SET
                         doi=excluded.doi, work_type=excluded.work_type,
                         title=excluded.title, year=excluded.year,
                         venue=excluded.venue, authors=excluded.authors,
                         citation_count=excluded.citation_count,
                         popularity_score=excluded.popularity_score,
                         influence_score=excluded.influence_score,
                         access=excluded.access, license=excluded.license""",
                    (work.work_id, researcher_id, work.doi, work.work_type.value,
                     work.title, work.year, work.venue, json.dumps(list(work.authors)),
                     work.citation_count, work.popularity_score, work.influence_score,
                     work.access.value, work.license),
                )
                conn.execute("DELETE FROM work_topics WHERE work_id = ?", (work.work_id,))
                conn.executemany(
                    "INSERT INTO work_topics VALUES (?, ?)",
                    [(work.work_id, t.topic_id) for t in work.topics],
                )
        return self.get_researcher(researcher_id=researcher_id)

    # -- templates ---------------------------------------------------------------

    def save_template_version(self, template: Template) -> Template:
        """Insert one (template_id, version) row; an existing pair is a conflict."""
        try:
            with self._write() as conn:
                conn.execute(
                    "INSERT INTO templates VALUES (?, ?, ?, ?, ?)",
                    (template.template_id, template.version, template.name,
                     template.description, template.state.value),
                )
                conn.executemany(
                    "INSERT INTO template_elements VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                    [
                        (template.template_id, template.version, position,
                         el.element_id, el.kind.value, el.label, int(el.required),
                         json.dumps(_config_to_doc(el), sort_keys=True))
                        for position, el in enumerate(template.elements)
                    ],
                )
        except sqlite3.IntegrityError as exc:
            raise Conflict(
                f"template {template.template_id!r} version {template.version} "
                "already exists (stale base?)"
            ) from exc
        return template

    def set_template_state(self, template_id: str, version: int,
                           state: TemplateState) -> None:
        with self._write() as conn:
            updated = conn.execute(
                "UPDATE templates SET state = ? WHERE template_id = ? AND version = ?",
                (state.value, template_id, version),
            ).rowcount
        if updated == 0:
            raise Conflict(f"template {template_id!r} version {version} vanished")

    def find_template(self, template_id: str, version: int | None = None) -> Template | None:
        with self._read() as conn:
            if version is None:
                row = conn.execute(
                    """SELECT * FROM templates WHERE template_id = ?
                       ORDER BY version DESC LIMIT 1""", (template_id,)).fetchone()
            else:
                row = conn.execute(
                    "SELECT * FROM templates WHERE template_id = ? AND version = ?",
                    (template_id, version)).fetchone()
            if row is None:
                return None
            return self._template_from_rows(conn, row)

    def get_template(self, template_id: str, version: int | None = None) -> Template:
        template = self.find_template(template_id, version)
        if template is None:
            raise UnknownTemplate(f"no template {template_id!r}"
                                  + (f" version {version}" if version else ""))
        return template

    def _template_from_rows(self, conn, row) -> Template:
        elements = tuple(
            TemplateElement(
                element_id=el["element_id"],
                kind=ElementKind(el["kind"]),
                label=el["label"],
                required=bool(el["required"]),
                config=_config_from_doc(ElementKind(el["kind"]), json.loads(el["config"])),
            )
            for el in conn.execute(
                """SELECT * FROM template_elements
                   WHERE template_id = ? AND version = ? ORDER BY position""",
                (row["template_id"], row["version"]),
            )
        )
        return Template(
            template_id=row["template_id"],
            name=row["name"],
            description=row["description"],
            state=TemplateState(row["state"]),
            version=row["version"],
            elements=elements,
        )

    def list_templates(self) -> list[Template]:
        """Latest version of every template id."""
        with self._read() as conn:
            rows = conn.execute(
                """SELECT t.* FROM templates t
                   JOIN (SELECT template_id, MAX(version) AS v FROM templates
                         GROUP BY template_id) latest
                     ON latest.template_id = t.template_id AND latest.v = t.version
                   ORDER BY t.template_id"""
            ).fetchall()
            return [self._template_from_rows(conn, row) for row in rows]

    def add_grant(self, template_id: str, researcher_id: str) -> None:
        with self._write() as conn:
            conn.execute(
                "INSERT OR IGNORE INTO template_grants VALUES (?, ?)",
                (template_id, researcher_id),
            )

    def has_grant(self, template_id: str, researcher_id: str) -> bool:
        with self._read() as conn:
            row = conn.execute(
                "SELECT 1 FROM template_grants WHERE template_id = ? AND researcher_id = ?",
                (template_id, researcher_id),
            ).fetchone()
        return row is not None

    # -- profiles -----------------------------------------------------------------

    def insert_profile(self, researcher_id: str, template_id: str,
                       template_version: int) -> ProfileInstance:
        now = _now()
        profile = ProfileInstance(
            profile_id=f"p-{uuid.uuid4().hex[:12]}",
            researcher_id=researcher_id,
            template_id=template_id,
            template_version=template_version,
            created_at=now,
            updated_at=now,
        )
        with self._write() as conn:
            conn.execute(
                "INSERT INTO profiles VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                (profile.profile_id, researcher_id, template_id, template_version,
                 profile.visibility.value, profile.revision, now, now),
            )
        return profile

    def find_profile(self, profile_id: str) -> ProfileInstance | None:
        with self._read() as conn:
            row = conn.execute(
                "SELECT * FROM profiles WHERE profile_id = ?", (profile_id,)
            ).fetchone()
            if row is None:
                return None
            return self._profile_from_row(conn, row)

    def get_profile(self, profile_id: str) -> ProfileInstance:
        profile = self.find_profile(profile_id)
        if profile is None:
            raise UnknownProfile(f"no profile {profile_id!r}")
        return profile

    def _profile_from_row(self, conn, row) -> ProfileInstance:
        contents = {
            c["element_id"]: content_from_doc(json.loads(c["content"]))
            for c in conn.execute(
                "SELECT * FROM profile_contents WHERE profile_id = ?",
                (row["profile_id"],),
            )
        }
        roles: dict[str, frozenset] = {}
        for r in conn.execute(
            "SELECT work_id, role FROM role_assignments WHERE profile_id = ?",
            (row["profile_id"],),
        ):
            roles.setdefault(r["work_id"], frozenset())
            roles[r["work_id"]] |= {ContributorRole(r["role"])}
        return ProfileInstance(
            profile_id=row["profile_id"],
            researcher_id=row["researcher_id"],
            template_id=row["template_id"],
            template_version=row["template_version"],
            visibility=Visibility(row["visibility"]),
            contents=contents,
            role_assignments=roles,
            revision=row["revision"],
            created_at=row["created_at"],
            updated_at=row["updated_at"],
        )

    def update_profile(self, profile: ProfileInstance) -> ProfileInstance:
        """Write back with a revision check: a stale base raises Conflict."""
        now = _now()
        with self._write() as conn:
            updated = conn.execute(
                """UPDATE profiles SET visibility = ?, revision = ?, updated_at = ?
                   WHERE profile_id = ? AND revision = ?""",
                (profile.visibility.value, profile.revision + 1, now,
                 profile.profile_id, profile.revision),
            ).rowcount
            if updated == 0:
                raise Conflict(
                    f"profile {profile.profile_id!r} was modified concurrently"
                )
            conn.execute("DELETE FROM profile_contents WHERE profile_id = ?",
                         (profile.profile_id,))
            conn.executemany(
                "INSERT INTO profile_contents VALUES (?, ?, ?)",
                [
                    (profile.profile_id, element_id,
                     json.dumps(content_to_doc(content), sort_keys=True))
                    for element_id, content in profile.contents.items()
                ],
            )
            conn.execute("DELETE FROM role_assignments WHERE profile_id = ?",
                         (profile.profile_id,))
            conn.executemany(
                "INSERT INTO role_assignments VALUES (?, ?, ?)",
                [
                    (profile.profile_id, work_id, role.value)
                    for work_id, roles in profile.role_assignments.items()
                    for role in sorted(roles, key=lambda r: r.value)
                ],
            )
        return self.get_profile(profile.profile_id)

    def list_profiles_by_template(self, template_id: str) -> list[ProfileInstance]:
        with self._read() as conn:
            rows = conn.execute(
                "SELECT * FROM profiles WHERE template_id = ? ORDER BY profile_id",
                (template_id,),
            ).fetchall()
            return [self._profile_from_row(conn, row) for row in rows]

    def list_profiles_by_researcher(self, researcher_id: str) -> list[ProfileInstance]:
        with self._read() as conn:
            rows = conn.execute(
                "SELECT * FROM profiles WHERE researcher_id = ? ORDER BY profile_id",
                (researcher_id,),
            ).fetchall()
            return [self._profile_from_row(conn, row) for row in rows]

    def public_profile_ids(self, researcher_id: str) -> list[str]:
        with self._read() as conn:
            return [
                row["profile_id"]
                for row in conn.execute(
                    """SELECT profile_id FROM profiles
                       WHERE researcher_id = ? AND visibility = 'public'
                       ORDER BY profile_id""",
                    (researcher_id,),
                )
            ]

    # -- feedback & tokens ----------------------------------------------------------

    def add_feedback(self, template_id: str, researcher_id: str,
                     rating: int, comment: str) -> FeedbackEntry:
        entry = FeedbackEntry(
            feedback_id=f"f-{uuid.uuid4().hex[:12]}",
            template_id=template_id,
            researcher_id=researcher_id,
            rating=rating,
            comment=comment,
            submitted_at=_now(),
        )
        with self._write() as conn:
            conn.execute(
                "INSERT INTO feedback VALUES (?, ?, ?, ?, ?, ?)",
                (entry.feedback_id, template_id, researcher_id,
                 rating, comment, entry.submitted_at),
            )
        return entry

    def list_feedback(self, template_id: str) -> list[FeedbackEntry]:
        with self._read() as conn:
            return [
                FeedbackEntry(
                    feedback_id=row["feedback_id"],
                    template_id=row["template_id"],
                    researcher_id=row["researcher_id"],
                    rating=row["rating"],
                    comment=row["comment"],
                    submitted_at=row["submitted_at"],
                )
                for row in conn.execute(
                    """SELECT * FROM feedback WHERE template_id = ?
                       ORDER BY submitted_at, feedback_id""",
                    (template_id,),
                )
            ]

    def issue_token(self, researcher_id: str) -> str:
        token = secrets.token_urlsafe(24)
        with self._write() as conn:
            conn.execute("INSERT INTO tokens VALUES (?, ?)", (token, researcher_id))
        return token

    def researcher_id_for_token(self, token: str) -> str | None:
        with self._read() as conn:
            row = conn.execute(
                "SELECT researcher_id FROM tokens WHERE token = ?", (token,)
            ).fetchone()
        return row["researcher_id"] if row else None

    # -- diagnostics -------------------------------------------------------------------

    def dump(self) -> dict:
        """Whole-store snapshot keyed by table, for diff-style assertions."""
        tables = ("researchers", "topics", "works", "work_topics", "templates",
                  "template_elements", "template_grants", "profiles",
                  "profile_contents", "role_assignments", "feedback")
        out = {}
        with self._read() as conn:
            for table in tables:
                rows = [dict(r) for r in conn.execute(f"SELECT * FROM {table}")]
                for row in rows:
                    row.pop("created_at", None)
                    row.pop("updated_at", None)
                    row.pop("submitted_at", None)
                out[table] = sorted(rows, key=lambda r: json.dumps(r, sort_keys=True))
        return out
