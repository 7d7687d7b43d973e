"""Domain types for differential-privacy deployment cards."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from enum import Enum

SCHEMA_VERSION = "1.0"

TIERS = (1, 2, 3)

MIN_PUBLICATION_YEAR = 1990

# Closed sector vocabulary; anything else must be written as "other:<label>".
SECTORS = (
    "technology",
    "government",
    "healthcare",
    "education",
    "energy",
    "nonprofit",
    "finance",
)


class Flavor(str, Enum):
    PURE = "pure"
    APPROXIMATE = "approximate"
    ZERO_CONCENTRATED = "zero_concentrated"
    RENYI = "renyi"
    OTHER = "other"


class ParameterSymbol(str, Enum):
    EPSILON = "epsilon"
    DELTA = "delta"
    RHO = "rho"
    ALPHA = "alpha"
    OTHER = "other"


class ParameterScope(str, Enum):
    TOTAL = "total"
    PER_RELEASE = "per_release"
    PER_QUERY = "per_query"
    UNSPECIFIED = "unspecified"


class DeploymentModel(str, Enum):
    CENTRAL = "central"
    LOCAL = "local"
    SHUFFLE = "shuffle"
    OTHER = "other"


class ReleaseType(str, Enum):
    ONE_RELEASE = "one_release"
    MANY_RELEASES = "many_releases"


class DataSource(str, Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"


class AccessType(str, Enum):
    INTERACTIVE = "interactive"
    NON_INTERACTIVE = "non_interactive"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


GREEK_SYMBOLS = {
    ParameterSymbol.EPSILON: "ε",
    ParameterSymbol.DELTA: "δ",
    ParameterSymbol.RHO: "ρ",
    ParameterSymbol.ALPHA: "α",
}


def present(text: str | None) -> bool:
    """True when an optional text field carries content (empty counts as absent)."""
    return text is not None and text.strip() != ""


@dataclass(frozen=True)
class DataProductSection:
    """Basic information about the data product; the anchor section of a card."""

    name: str | None = None
    curator: str | None = None
    description: str | None = None
    intended_use: str | None = None
    publication_year: int | None = None
    region: str | None = None
    sector: str | None = None


@dataclass(frozen=True)
class FlavorSection:
    flavor_name: Flavor | None = None
    other_label: str | None = None
    data_domain: str | None = None
    unprotected_quantities: str | None = None

    def label(self) -> str | None:
        """Display label: the flavor literal, or the custom label for other."""
        if self.flavor_name is None:
            return None
        if self.flavor_name is Flavor.OTHER and present(self.other_label):
            return self.other_label
        return self.flavor_name.value


@dataclass(frozen=True)
class PrivacyParameter:
    symbol: ParameterSymbol
    value: Decimal
    scope: ParameterScope = ParameterScope.UNSPECIFIED
    other_symbol: str | None = None
    notes: str | None = None

    def symbol_label(self) -> str:
        if self.symbol is ParameterSymbol.OTHER and present(self.other_symbol):
            return str(self.other_symbol)
        return GREEK_SYMBOLS.get(self.symbol, self.symbol.value)


@dataclass(frozen=True)
class PrivacyLossSection:
    privacy_unit: str | None = None
    adjacency_specification: str | None = None
    parameters: tuple[PrivacyParameter, ...] = ()


@dataclass(frozen=True)
class DeploymentModelSection:
    model: DeploymentModel | None = None
    other_label: str | None = None
    trust_assumptions: str | None = None
    release_type: ReleaseType | None = None
    release_details: str | None = None
    data_source: DataSource | None = None
    access_type: AccessType | None = None
    access_details: str | None = None

    def label(self) -> str | None:
        if self.model is None:
            return None
        if self.model is DeploymentModel.OTHER and present(self.other_label):
            return self.other_label
        return self.model.value


@dataclass(frozen=True)
class AccountingSection:
    composition: str | None = None
    post_processing: str | None = None


@dataclass(frozen=True)
class ImplementationSection:
    pre_processing: str | None = None
    mechanisms: str | None = None
    justification: str | None = None
    code_link: str | None = None


@dataclass(frozen=True)
class MoreInfoSection:
    sources: tuple[str, ...] = ()
    data_product_link: str | None = None
    notes: str | None = None

    def has_content(self) -> bool:
        return bool(self.sources) or present(self.data_product_link) or present(self.notes)


@dataclass(frozen=True)
class DeploymentCard:
    """One DP deployment described across the seven card sections.

    Optional sections are None when nothing in them was disclosed; field-level
    absence inside a section is modelled with None (empty strings count as
    absent everywhere).
    """

    id: str
    schema_version: str
    declared_tier: int
    data_product: DataProductSection
    flavor: FlavorSection | None = None
    privacy_loss: PrivacyLossSection | None = None
    deployment_model: DeploymentModelSection | None = None
    accounting: AccountingSection | None = None
    implementation: ImplementationSection | None = None
    more_info: MoreInfoSection | None = None


@dataclass(frozen=True)
class ValidationIssue:
    rule_id: str
    severity: Severity
    field_path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating a card against one transparency tier."""

    passed: bool
    issues: tuple[ValidationIssue, ...]
    inferred_tier: int | None = None

    def errors(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity is Severity.ERROR)
