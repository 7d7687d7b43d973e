"""Tier-completeness rules and tier-independent structural checks."""

from __future__ import annotations

import datetime
import re
from urllib.parse import urlparse

from .model import (
    AccessType,
    DataSource,
    DeploymentCard,
    DeploymentModel,
    Flavor,
    MIN_PUBLICATION_YEAR,
    ParameterSymbol,
    ReleaseType,
    SECTORS,
    Severity,
    TIERS,
    ValidationIssue,
    ValidationReport,
    present,
)

SLUG_RE = re.compile(r"^[a-z0-9]+(-[a-z0-9]+)*$")


def slugify(name: str) -> str:
    """Collapse a display name to the lowercase slug used for uniqueness checks."""
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    return slug


def max_publication_year() -> int:
    return datetime.date.today().year + 1


def is_absolute_url(text: str) -> bool:
    parsed = urlparse(text)
    return parsed.scheme in ("http", "https") and bool(parsed.netloc)


def _error(rule_id: str, field_path: str, message: str) -> ValidationIssue:
    return ValidationIssue(rule_id, Severity.ERROR, field_path, message)


def structural_check(card: DeploymentCard) -> list[ValidationIssue]:
    """Tier-independent violations: slug grammar, year range, enum/other-label
    pairing, dynamic-implies-many, URL shape, sector vocabulary, and duplicate
    or negative privacy parameters."""
    issues: list[ValidationIssue] = []

    if not SLUG_RE.match(card.id or ""):
        issues.append(_error("id-slug", "id", f"id {card.id!r} is not a lowercase slug"))

    year = card.data_product.publication_year
    if year is not None and not (MIN_PUBLICATION_YEAR <= year <= max_publication_year()):
        issues.append(
            _error(
                "year-range",
                "data_product.publication_year",
                f"publication_year {year} outside [{MIN_PUBLICATION_YEAR}, {max_publication_year()}]",
            )
        )

    sector = card.data_product.sector
    if present(sector) and not _sector_in_vocabulary(str(sector)):
        issues.append(
            _error(
                "sector-vocabulary",
                "data_product.sector",
                f"sector {sector!r} not in {SECTORS} and not of the form 'other:<label>'",
            )
        )

    flavor = card.flavor
    if flavor is not None and flavor.flavor_name is Flavor.OTHER and not present(flavor.other_label):
        issues.append(
            _error("other-label-required", "flavor.other_label", "flavor 'other' requires other_label")
        )

    model = card.deployment_model
    if model is not None:
        if model.model is DeploymentModel.OTHER and not present(model.other_label):
            issues.append(
                _error(
                    "other-label-required",
                    "deployment_model.other_label",
                    "deployment model 'other' requires other_label",
                )
            )
        if model.data_source is DataSource.DYNAMIC and model.release_type is ReleaseType.ONE_RELEASE:
            issues.append(
                _error(
                    "dynamic-implies-many",
                    "deployment_model.release_type",
                    "dynamic data source requires release_type many_releases",
                )
            )

    loss = card.privacy_loss
    if loss is not None:
        seen: set[tuple[str, str]] = set()
        duplicated: set[tuple[str, str]] = set()
        for i, param in enumerate(loss.parameters):
            if param.symbol is ParameterSymbol.OTHER and not present(param.other_symbol):
                issues.append(
                    _error(
                        "other-label-required",
                        f"privacy_loss.parameters[{i}].other_symbol",
                        "parameter symbol 'other' requires other_symbol",
                    )
                )
            if param.value < 0:
                issues.append(
                    _error(
                        "negative-value",
                        f"privacy_loss.parameters[{i}].value",
                        f"parameter value {param.value} is negative",
                    )
                )
            key = (param.symbol.value, param.scope.value)
            if key in seen and key not in duplicated:
                duplicated.add(key)
                issues.append(
                    _error(
                        "duplicate-parameter",
                        "privacy_loss.parameters",
                        f"more than one parameter with symbol={key[0]} scope={key[1]}",
                    )
                )
            seen.add(key)

    impl = card.implementation
    if impl is not None and present(impl.code_link) and not is_absolute_url(str(impl.code_link)):
        issues.append(
            _error("url-shape", "implementation.code_link", f"not an absolute URL: {impl.code_link!r}")
        )

    info = card.more_info
    if info is not None:
        for i, source in enumerate(info.sources):
            if not is_absolute_url(source):
                issues.append(
                    _error("url-shape", f"more_info.sources[{i}]", f"not an absolute URL: {source!r}")
                )
        if present(info.data_product_link) and not is_absolute_url(str(info.data_product_link)):
            issues.append(
                _error(
                    "url-shape",
                    "more_info.data_product_link",
                    f"not an absolute URL: {info.data_product_link!r}",
                )
            )

    return sorted(issues, key=_issue_order)


def _sector_in_vocabulary(sector: str) -> bool:
    if sector in SECTORS:
        return True
    return sector.startswith("other:") and sector[len("other:") :].strip() != ""


def required_fields_at_tier(card: DeploymentCard, tier: int) -> list[tuple[str, bool]]:
    """(field_path, satisfied) for every field the given tier requires of this card.

    The requirement sets are nested: tier t includes everything below it.
    access_details is required only for interactive tier-3 entries.
    """
    product = card.data_product
    rows = [
        ("data_product.name", present(product.name)),
        ("data_product.curator", present(product.curator)),
        ("data_product.description", present(product.description)),
        ("data_product.intended_use", present(product.intended_use)),
        ("data_product.publication_year", product.publication_year is not None),
        ("data_product.region", present(product.region)),
        ("data_product.sector", present(product.sector)),
    ]
    if tier >= 2:
        flavor = card.flavor
        loss = card.privacy_loss
        model = card.deployment_model
        rows += [
            ("flavor.flavor_name", flavor is not None and flavor.flavor_name is not None),
            ("privacy_loss.privacy_unit", loss is not None and present(loss.privacy_unit)),
            ("privacy_loss.parameters", loss is not None and len(loss.parameters) > 0),
            ("deployment_model.model", model is not None and model.model is not None),
            ("deployment_model.release_type", model is not None and model.release_type is not None),
            ("deployment_model.data_source", model is not None and model.data_source is not None),
            ("deployment_model.access_type", model is not None and model.access_type is not None),
        ]
    if tier >= 3:
        flavor = card.flavor
        loss = card.privacy_loss
        model = card.deployment_model
        accounting = card.accounting
        impl = card.implementation
        rows += [
            ("flavor.data_domain", flavor is not None and present(flavor.data_domain)),
            (
                "flavor.unprotected_quantities",
                flavor is not None and present(flavor.unprotected_quantities),
            ),
            (
                "privacy_loss.adjacency_specification",
                loss is not None and present(loss.adjacency_specification),
            ),
            (
                "deployment_model.trust_assumptions",
                model is not None and present(model.trust_assumptions),
            ),
            (
                "deployment_model.release_details",
                model is not None and present(model.release_details),
            ),
            ("accounting.composition", accounting is not None and present(accounting.composition)),
            (
                "accounting.post_processing",
                accounting is not None and present(accounting.post_processing),
            ),
            ("implementation.pre_processing", impl is not None and present(impl.pre_processing)),
            ("implementation.mechanisms", impl is not None and present(impl.mechanisms)),
            ("implementation.justification", impl is not None and present(impl.justification)),
        ]
        if model is not None and model.access_type is AccessType.INTERACTIVE:
            rows.append(
                ("deployment_model.access_details", present(model.access_details))
            )
    return rows


def _issues_at_tier(card: DeploymentCard, tier: int) -> list[ValidationIssue]:
    issues = structural_check(card)
    for path, satisfied in required_fields_at_tier(card, tier):
        if not satisfied:
            issues.append(
                _error(f"tier{tier}-required", path, f"{path} is required at tier {tier}")
            )
    if card.more_info is None or not card.more_info.has_content():
        issues.append(
            ValidationIssue(
                "more-info-recommended",
                Severity.WARNING,
                "more_info",
                "sources and links are recommended at every tier",
            )
        )
    return sorted(issues, key=_issue_order)


def _issue_order(issue: ValidationIssue) -> tuple[str, str, str]:
    return (issue.field_path, issue.rule_id, issue.message)


def validate_at_tier(card: DeploymentCard, tier: int) -> ValidationReport:
    """Validate a card against one tier's rule set.

    Violations are reported inside the ValidationReport, never raised; the
    report also carries the card's inferred tier.
    """
    if tier not in TIERS:
        raise ValueError(f"tier must be one of {TIERS}, got {tier!r}")
    issues = _issues_at_tier(card, tier)
    passed = not any(i.severity is Severity.ERROR for i in issues)
    return ValidationReport(passed=passed, issues=tuple(issues), inferred_tier=infer_tier(card))


def infer_tier(card: DeploymentCard) -> int | None:
    """Highest tier whose rule set the card passes; None when even tier 1 fails."""
    for tier in (3, 2, 1):
        if not any(
            i.severity is Severity.ERROR for i in _issues_at_tier(card, tier)
        ):
            return tier
    return None


def is_admissible(card: DeploymentCard) -> bool:
    """Corpus admission: declared tier passes and no structural violation.

    A declared tier below the inferred one is allowed (understatement);
    overstating is caught because the declared-tier validation fails.
    """
    return not structural_check(card) and validate_at_tier(card, card.declared_tier).passed
