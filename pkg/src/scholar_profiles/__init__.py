"""Template-driven researcher profiling platform.

Core engines (models, ingestion, indicators, templates, profiles,
discovery, assistant) are importable directly; the HTTP API lives in
``scholar_profiles.api`` and the admin CLI in ``scholar_profiles.cli``.
"""

from .config import AppConfig
from .errors import DomainError
from .indicators import IndicatorSet, compute_indicators, h_index, indicator_panel
from .model import (
    Access,
    ContributorRole,
    FilterSpec,
    Researcher,
    TopicRef,
    Work,
    WorkType,
    apply_filter,
    dedup_key,
    normalize_doi,
)
from .templates import Template, TemplateElement, TemplateState, validate_template

__version__ = "0.1.0"

__all__ = [
    "Access",
    "AppConfig",
    "ContributorRole",
    "DomainError",
    "FilterSpec",
    "IndicatorSet",
    "Researcher",
    "Template",
    "TemplateElement",
    "TemplateState",
    "TopicRef",
    "Work",
    "WorkType",
    "apply_filter",
    "compute_indicators",
    "dedup_key",
    "h_index",
    "indicator_panel",
    "normalize_doi",
    "validate_template",
    "__version__",
]
