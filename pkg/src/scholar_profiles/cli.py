"""Admin command line: serve, ingest, seed-templates, template import/export,
indicator reports, and token issuance.

All commands work directly against the store (no running service needed).
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import AppConfig
from .errors import DomainError
from .ingestion import FixtureEnrichmentSource, FixtureWorkSource, ingest_researcher
from .indicators import compute_indicators
from .model import validate_orcid
from .service import effective_reference_year, filter_from_params, install_seed_templates
from .store import Store
from .templates import require_valid, template_from_doc, template_to_doc


def canonical_json(payload) -> str:
    """Sorted keys, UTF-8, newline-terminated: diff-able and test-stable."""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n"


def _config(ctx) -> AppConfig:
    params = ctx.obj
    return AppConfig.load(
        params.get("config"),
        store_path=params.get("store"),
        fixtures_dir=params.get("fixtures_dir"),
    )


@click.group()
@click.option("--config", type=click.Path(exists=True, dir_okay=False),
              help="YAML config file.")
@click.option("--store", type=click.Path(dir_okay=False),
              help="Path to the SQLite store.")
@click.option("--fixtures-dir", type=click.Path(file_okay=False),
              help="Directory holding works.jsonl / enrichment.jsonl.")
@click.pass_context
def main(ctx, config, store, fixtures_dir):
    """Administer a scholar-profiles deployment."""
    ctx.obj = {"config": config, "store": store, "fixtures_dir": fixtures_dir}


def _fail(error: DomainError):
    click.echo(f"error [{error.code}]: {error.message}", err=True)
    sys.exit(1)


@main.command()
@click.pass_context
def serve(ctx):
    """Run the HTTP service."""
    from .api import serve as run_service

    try:
        run_service(_config(ctx))
    except DomainError as error:
        _fail(error)


@main.command()
@click.option("--orcid", required=True, help="ORCID iD to ingest.")
@click.option("--display-name", default=None,
              help="Display name when the researcher is not registered yet.")
@click.pass_context
def ingest(ctx, orcid, display_name):
    """Import, enrich, deduplicate, and persist one researcher's works."""
    config = _config(ctx)
    if not config.fixtures_dir:
        click.echo("error [validation_failed]: fixtures_dir is not configured", err=True)
        sys.exit(1)
    try:
        validate_orcid(orcid)
        store = Store(config.store_path)
        existing = store.find_researcher(orcid=orcid)
        name = display_name or (existing.display_name if existing else orcid)
        _, report = ingest_researcher(
            orcid, name,
            FixtureWorkSource(config.fixtures_dir),
            FixtureEnrichmentSource(config.fixtures_dir),
            store,
            reference_year=config.reference_year,
        )
    except DomainError as error:
        _fail(error)
    click.echo(report.summary_line)
    if report.unmatched_records:
        click.echo(f"unmatched enrichment records: {', '.join(report.unmatched_records)}")
    if report.dropped_future_works:
        click.echo(f"dropped future-dated works: {', '.join(report.dropped_future_works)}")


@main.command("seed-templates")
@click.pass_context
def seed_templates_cmd(ctx):
    """Install the default template collection (idempotent)."""
    config = _config(ctx)
    try:
        outcome = install_seed_templates(Store(config.store_path))
    except DomainError as error:
        _fail(error)
    click.echo(f"templates: {outcome['created']} created, {outcome['unchanged']} unchanged")


@main.command()
@click.option("--orcid", required=True)
@click.option("--topics", default=None, help="Comma-separated topic ids.")
@click.option("--types", default=None, help="Comma-separated work types.")
@click.option("--licenses", default=None, help="Comma-separated license ids.")
@click.option("--access", default=None, type=click.Choice(["open", "closed"]))
@click.option("--year-min", default=None, type=int)
@click.option("--year-max", default=None, type=int)
@click.option("--json", "as_json", is_flag=True, help="Emit canonical JSON.")
@click.pass_context
def indicators(ctx, orcid, topics, types, licenses, access, year_min, year_max, as_json):
    """Print the researcher-level indicator set over the filtered corpus."""
    config = _config(ctx)
    try:
        store = Store(config.store_path)
        researcher = store.get_researcher(orcid=orcid)
        flt = filter_from_params(topics, types, licenses, access, year_min, year_max)
        reference_year = effective_reference_year(config)
        payload = compute_indicators(researcher.works, reference_year, flt).as_dict()
    except DomainError as error:
        _fail(error)
    if as_json:
        click.echo(canonical_json(payload), nl=False)
        return
    width = max(len(k) for k in payload) + 2
    for key, value in payload.items():
        if key == "output_counts":
            for work_type, count in value.items():
                click.echo(f"{'output_count.' + work_type:<{width}} {count}")
        else:
            shown = "n/a" if value is None else value
            click.echo(f"{key:<{width}} {shown}")


@main.command("template-export")
@click.option("--id", "template_id", required=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="Write to a file instead of stdout.")
@click.pass_context
def template_export(ctx, template_id, output):
    """Write one template as its canonical interchange document."""
    config = _config(ctx)
    try:
        template = Store(config.store_path).get_template(template_id)
    except DomainError as error:
        _fail(error)
    text = canonical_json(template_to_doc(template))
    if output:
        Path(output).write_text(text, encoding="utf-8")
        click.echo(f"wrote {output}")
    else:
        click.echo(text, nl=False)


@main.command("template-import")
@click.option("--file", "path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def template_import(ctx, path):
    """Install a template from an interchange document."""
    config = _config(ctx)
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        template = require_valid(template_from_doc(doc))
        store = Store(config.store_path)
        if store.find_template(template.template_id) is not None:
            from .errors import DuplicateEntity

            raise DuplicateEntity(f"template {template.template_id!r} already exists")
        store.save_template_version(template)
    except json.JSONDecodeError as exc:
        click.echo(f"error [validation_failed]: bad JSON: {exc}", err=True)
        sys.exit(1)
    except DomainError as error:
        _fail(error)
    click.echo(f"imported template {template.template_id} (version {template.version})")


@main.command("issue-token")
@click.option("--orcid", required=True)
@click.pass_context
def issue_token(ctx, orcid):
    """Create and print a researcher bearer token."""
    config = _config(ctx)
    try:
        store = Store(config.store_path)
        researcher = store.get_researcher(orcid=orcid)
        token = store.issue_token(researcher.researcher_id)
    except DomainError as error:
        _fail(error)
    click.echo(token)


if __name__ == "__main__":
    main()
