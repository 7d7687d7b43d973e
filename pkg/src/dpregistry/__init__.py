"""Registry of differential-privacy deployments: deployment-card model,
tier validation, corpus store, HTTP API, and CLI."""

from .card_io import (
    CardParseError,
    CorpusLoadResult,
    load_corpus,
    parse_card,
    serialize_card,
)
from .index import (
    AggregateResult,
    Query,
    RegistryIndex,
    RowProjection,
    aggregate,
    aggregate_by_year,
    project_row,
    run_query,
)
from .manifest import CorpusManifest, corpus_manifest_check, load_manifest
from .model import (
    AccessType,
    AccountingSection,
    DataProductSection,
    DataSource,
    DeploymentCard,
    DeploymentModel,
    DeploymentModelSection,
    Flavor,
    FlavorSection,
    ImplementationSection,
    MoreInfoSection,
    ParameterScope,
    ParameterSymbol,
    PrivacyLossSection,
    PrivacyParameter,
    Severity,
    ValidationIssue,
    ValidationReport,
)
from .service import create_app
from .validation import infer_tier, is_admissible, structural_check, validate_at_tier

__version__ = "0.1.0"

__all__ = [
    "AccessType",
    "AccountingSection",
    "AggregateResult",
    "CardParseError",
    "CorpusLoadResult",
    "CorpusManifest",
    "DataProductSection",
    "DataSource",
    "DeploymentCard",
    "DeploymentModel",
    "DeploymentModelSection",
    "Flavor",
    "FlavorSection",
    "ImplementationSection",
    "MoreInfoSection",
    "ParameterScope",
    "ParameterSymbol",
    "PrivacyLossSection",
    "PrivacyParameter",
    "Query",
    "RegistryIndex",
    "RowProjection",
    "Severity",
    "ValidationIssue",
    "ValidationReport",
    "aggregate",
    "aggregate_by_year",
    "corpus_manifest_check",
    "create_app",
    "infer_tier",
    "is_admissible",
    "load_corpus",
    "load_manifest",
    "parse_card",
    "project_row",
    "run_query",
    "serialize_card",
    "structural_check",
    "validate_at_tier",
]
