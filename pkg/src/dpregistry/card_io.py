"""Canonical on-disk card format: strict parsing, byte-deterministic serialization,
and corpus loading."""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path

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
    ReleaseType,
    SCHEMA_VERSION,
    Severity,
    TIERS,
    ValidationIssue,
    present,
)
from .validation import is_admissible, slugify, validate_at_tier


class CardParseError(ValueError):
    """Raised when a document cannot be parsed into a card; carries all issues found."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(f"{i.field_path}: {i.message}" for i in issues))


class CorpusDirectoryError(OSError):
    pass


@dataclass(frozen=True)
class CorpusLoadResult:
    cards: tuple[DeploymentCard, ...]
    load_errors: tuple[tuple[str, str], ...]


class _DuplicateKey(ValueError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(key)


def _pairs_hook(pairs):
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise _DuplicateKey(key)
        obj[key] = value
    return obj


def _reject_constant(name):
    raise ValueError(f"non-finite number {name}")


def _parse_issue(rule_id: str, path: str, message: str) -> ValidationIssue:
    return ValidationIssue(rule_id, Severity.ERROR, path, message)


class _Parser:
    def __init__(self) -> None:
        self.issues: list[ValidationIssue] = []

    def err(self, rule_id: str, path: str, message: str) -> None:
        self.issues.append(_parse_issue(rule_id, path, message))

    # -- field readers -----------------------------------------------------

    def text(self, obj: dict, key: str, path: str) -> str | None:
        if key not in obj:
            return None
        value = obj[key]
        if not isinstance(value, str):
            self.err("wrong-type", path, f"expected string, got {type(value).__name__}")
            return None
        return value if present(value) else None

    def integer(self, obj: dict, key: str, path: str) -> int | None:
        if key not in obj:
            return None
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, int):
            self.err("wrong-type", path, f"expected integer, got {type(value).__name__}")
            return None
        return value

    def enum(self, obj: dict, key: str, path: str, enum_cls) -> object | None:
        if key not in obj:
            return None
        value = obj[key]
        if not isinstance(value, str):
            self.err("wrong-type", path, f"expected string, got {type(value).__name__}")
            return None
        try:
            return enum_cls(value)
        except ValueError:
            allowed = ", ".join(m.value for m in enum_cls)
            self.err("enum-out-of-range", path, f"{value!r} not one of: {allowed}")
            return None

    def decimal(self, obj: dict, key: str, path: str) -> Decimal | None:
        if key not in obj:
            return None
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, (int, Decimal)):
            self.err("wrong-type", path, f"expected number, got {type(value).__name__}")
            return None
        return Decimal(value) if isinstance(value, int) else value

    def check_keys(self, obj: dict, allowed: tuple[str, ...], path: str) -> None:
        for key in obj:
            if key not in allowed:
                where = f"{path}.{key}" if path else key
                self.err("unknown-key", where, f"unknown key {key!r}")

    def section(self, obj: dict, key: str) -> dict | None:
        if key not in obj:
            return None
        value = obj[key]
        if not isinstance(value, dict):
            self.err("wrong-type", key, f"expected object, got {type(value).__name__}")
            return None
        return value


_TOP_KEYS = (
    "id",
    "schema_version",
    "declared_tier",
    "data_product",
    "flavor",
    "privacy_loss",
    "deployment_model",
    "accounting",
    "implementation",
    "more_info",
)


def _loads(document: str):
    try:
        return json.loads(
            document,
            parse_float=Decimal,
            parse_constant=_reject_constant,
            object_pairs_hook=_pairs_hook,
        )
    except _DuplicateKey as exc:
        raise CardParseError([_parse_issue("malformed-syntax", "", f"duplicate key {exc.key!r}")])
    except ValueError as exc:
        raise CardParseError([_parse_issue("malformed-syntax", "", str(exc))])


def parse_card(document: str) -> DeploymentCard:
    """Parse a JSON card document in strict mode.

    Unknown keys anywhere, wrong types, and out-of-range enum literals are
    all collected and raised together as a CardParseError.
    """
    return parse_card_object(_loads(document))


def parse_cards(document: str) -> list[DeploymentCard]:
    """Parse a document holding either one card object or an array of them."""
    raw = _loads(document)
    if isinstance(raw, list):
        cards = []
        for i, item in enumerate(raw):
            try:
                cards.append(parse_card_object(item))
            except CardParseError as exc:
                prefixed = [
                    ValidationIssue(
                        issue.rule_id,
                        issue.severity,
                        f"[{i}].{issue.field_path}" if issue.field_path else f"[{i}]",
                        issue.message,
                    )
                    for issue in exc.issues
                ]
                raise CardParseError(prefixed)
        return cards
    return [parse_card_object(raw)]


def parse_card_object(raw: object) -> DeploymentCard:
    """Parse an already-decoded JSON value (numbers must be int or Decimal)."""
    parser = _Parser()

    if not isinstance(raw, dict):
        raise CardParseError([_parse_issue("wrong-type", "", "top level must be an object")])

    parser.check_keys(raw, _TOP_KEYS, "")

    card_id = parser.text(raw, "id", "id")
    if "id" not in raw:
        parser.err("missing-key", "id", "id is required")

    schema_version = parser.text(raw, "schema_version", "schema_version")
    if "schema_version" not in raw:
        parser.err("missing-key", "schema_version", "schema_version is required")
    elif schema_version is not None and schema_version != SCHEMA_VERSION:
        parser.err(
            "enum-out-of-range",
            "schema_version",
            f"unsupported schema_version {schema_version!r}, expected {SCHEMA_VERSION!r}",
        )

    declared_tier = parser.integer(raw, "declared_tier", "declared_tier")
    if "declared_tier" not in raw:
        parser.err("missing-key", "declared_tier", "declared_tier is required")
    elif declared_tier is not None and declared_tier not in TIERS:
        parser.err("enum-out-of-range", "declared_tier", f"declared_tier must be in {TIERS}")
        declared_tier = None

    product_obj = parser.section(raw, "data_product")
    if "data_product" not in raw:
        parser.err("missing-key", "data_product", "data_product is required")
    data_product = _parse_data_product(parser, product_obj or {})

    flavor = _parse_flavor(parser, parser.section(raw, "flavor"))
    privacy_loss = _parse_privacy_loss(parser, parser.section(raw, "privacy_loss"))
    deployment_model = _parse_deployment_model(parser, parser.section(raw, "deployment_model"))
    accounting = _parse_accounting(parser, parser.section(raw, "accounting"))
    implementation = _parse_implementation(parser, parser.section(raw, "implementation"))
    more_info = _parse_more_info(parser, parser.section(raw, "more_info"))

    if parser.issues:
        raise CardParseError(parser.issues)

    return DeploymentCard(
        id=card_id or "",
        schema_version=schema_version or SCHEMA_VERSION,
        declared_tier=declared_tier or 1,
        data_product=data_product,
        flavor=flavor,
        privacy_loss=privacy_loss,
        deployment_model=deployment_model,
        accounting=accounting,
        implementation=implementation,
        more_info=more_info,
    )


def _parse_data_product(parser: _Parser, obj: dict) -> DataProductSection:
    keys = ("name", "curator", "description", "intended_use", "publication_year", "region", "sector")
    parser.check_keys(obj, keys, "data_product")
    return DataProductSection(
        name=parser.text(obj, "name", "data_product.name"),
        curator=parser.text(obj, "curator", "data_product.curator"),
        description=parser.text(obj, "description", "data_product.description"),
        intended_use=parser.text(obj, "intended_use", "data_product.intended_use"),
        publication_year=parser.integer(obj, "publication_year", "data_product.publication_year"),
        region=parser.text(obj, "region", "data_product.region"),
        sector=parser.text(obj, "sector", "data_product.sector"),
    )


def _parse_flavor(parser: _Parser, obj: dict | None) -> FlavorSection | None:
    if obj is None:
        return None
    keys = ("name", "other_label", "data_domain", "unprotected_quantities")
    parser.check_keys(obj, keys, "flavor")
    section = FlavorSection(
        flavor_name=parser.enum(obj, "name", "flavor.name", Flavor),
        other_label=parser.text(obj, "other_label", "flavor.other_label"),
        data_domain=parser.text(obj, "data_domain", "flavor.data_domain"),
        unprotected_quantities=parser.text(obj, "unprotected_quantities", "flavor.unprotected_quantities"),
    )
    return section if section != FlavorSection() else None


def _parse_privacy_loss(parser: _Parser, obj: dict | None) -> PrivacyLossSection | None:
    if obj is None:
        return None
    keys = ("privacy_unit", "adjacency_specification", "parameters")
    parser.check_keys(obj, keys, "privacy_loss")
    parameters: list[PrivacyParameter] = []
    if "parameters" in obj:
        raw_params = obj["parameters"]
        if not isinstance(raw_params, list):
            parser.err("wrong-type", "privacy_loss.parameters", "expected array")
        else:
            for i, item in enumerate(raw_params):
                path = f"privacy_loss.parameters[{i}]"
                if not isinstance(item, dict):
                    parser.err("wrong-type", path, "expected object")
                    continue
                parser.check_keys(item, ("symbol", "other_symbol", "value", "scope", "notes"), path)
                symbol = parser.enum(item, "symbol", f"{path}.symbol", ParameterSymbol)
                if "symbol" not in item:
                    parser.err("missing-key", f"{path}.symbol", "symbol is required")
                value = parser.decimal(item, "value", f"{path}.value")
                if "value" not in item:
                    parser.err("missing-key", f"{path}.value", "value is required")
                scope = parser.enum(item, "scope", f"{path}.scope", ParameterScope)
                if symbol is None or value is None:
                    continue
                parameters.append(
                    PrivacyParameter(
                        symbol=symbol,
                        value=value,
                        scope=scope or ParameterScope.UNSPECIFIED,
                        other_symbol=parser.text(item, "other_symbol", f"{path}.other_symbol"),
                        notes=parser.text(item, "notes", f"{path}.notes"),
                    )
                )
    section = PrivacyLossSection(
        privacy_unit=parser.text(obj, "privacy_unit", "privacy_loss.privacy_unit"),
        adjacency_specification=parser.text(
            obj, "adjacency_specification", "privacy_loss.adjacency_specification"
        ),
        parameters=tuple(parameters),
    )
    return section if section != PrivacyLossSection() else None


def _parse_deployment_model(parser: _Parser, obj: dict | None) -> DeploymentModelSection | None:
    if obj is None:
        return None
    keys = (
        "model",
        "other_label",
        "trust_assumptions",
        "release_type",
        "release_details",
        "data_source",
        "access_type",
        "access_details",
    )
    parser.check_keys(obj, keys, "deployment_model")
    section = DeploymentModelSection(
        model=parser.enum(obj, "model", "deployment_model.model", DeploymentModel),
        other_label=parser.text(obj, "other_label", "deployment_model.other_label"),
        trust_assumptions=parser.text(obj, "trust_assumptions", "deployment_model.trust_assumptions"),
        release_type=parser.enum(obj, "release_type", "deployment_model.release_type", ReleaseType),
        release_details=parser.text(obj, "release_details", "deployment_model.release_details"),
        data_source=parser.enum(obj, "data_source", "deployment_model.data_source", DataSource),
        access_type=parser.enum(obj, "access_type", "deployment_model.access_type", AccessType),
        access_details=parser.text(obj, "access_details", "deployment_model.access_details"),
    )
    return section if section != DeploymentModelSection() else None


def _parse_accounting(parser: _Parser, obj: dict | None) -> AccountingSection | None:
    if obj is None:
        return None
    parser.check_keys(obj, ("composition", "post_processing"), "accounting")
    section = AccountingSection(
        composition=parser.text(obj, "composition", "accounting.composition"),
        post_processing=parser.text(obj, "post_processing", "accounting.post_processing"),
    )
    return section if section != AccountingSection() else None


def _parse_implementation(parser: _Parser, obj: dict | None) -> ImplementationSection | None:
    if obj is None:
        return None
    keys = ("pre_processing", "mechanisms", "justification", "code_link")
    parser.check_keys(obj, keys, "implementation")
    section = ImplementationSection(
        pre_processing=parser.text(obj, "pre_processing", "implementation.pre_processing"),
        mechanisms=parser.text(obj, "mechanisms", "implementation.mechanisms"),
        justification=parser.text(obj, "justification", "implementation.justification"),
        code_link=parser.text(obj, "code_link", "implementation.code_link"),
    )
    return section if section != ImplementationSection() else None


def _parse_more_info(parser: _Parser, obj: dict | None) -> MoreInfoSection | None:
    if obj is None:
        return None
    parser.check_keys(obj, ("sources", "data_product_link", "notes"), "more_info")
    sources: list[str] = []
    if "sources" in obj:
        raw_sources = obj["sources"]
        if not isinstance(raw_sources, list):
            parser.err("wrong-type", "more_info.sources", "expected array")
        else:
            for i, item in enumerate(raw_sources):
                if not isinstance(item, str):
                    parser.err("wrong-type", f"more_info.sources[{i}]", "expected string")
                elif present(item):
                    sources.append(item)
    section = MoreInfoSection(
        sources=tuple(sources),
        data_product_link=parser.text(obj, "data_product_link", "more_info.data_product_link"),
        notes=parser.text(obj, "notes", "more_info.notes"),
    )
    return section if section != MoreInfoSection() else None


# -- serialization ---------------------------------------------------------


def format_decimal(value: Decimal) -> str:
    """Canonical decimal literal: fixed-point notation down to 1e-12, scientific
    below that, with equal values always producing identical text."""
    normalized = value.normalize()
    if normalized == 0:
        return "0"
    if abs(normalized) < Decimal("1e-12"):
        return str(normalized).lower()
    return format(normalized, "f")


def compact_decimal(value: Decimal) -> str:
    """Short display form for summaries (1e-9 rather than 0.000000001)."""
    return str(value.normalize()).lower()


def card_to_document(card: DeploymentCard) -> dict:
    """Nested dict in canonical key order with absent fields omitted."""
    doc: dict = {
        "id": card.id,
        "schema_version": card.schema_version,
        "declared_tier": card.declared_tier,
    }
    product = card.data_product
    doc["data_product"] = _prune(
        {
            "name": product.name,
            "curator": product.curator,
            "description": product.description,
            "intended_use": product.intended_use,
            "publication_year": product.publication_year,
            "region": product.region,
            "sector": product.sector,
        }
    )
    if card.flavor is not None:
        section = _prune(
            {
                "name": _enum_value(card.flavor.flavor_name),
                "other_label": card.flavor.other_label,
                "data_domain": card.flavor.data_domain,
                "unprotected_quantities": card.flavor.unprotected_quantities,
            }
        )
        if section:
            doc["flavor"] = section
    if card.privacy_loss is not None:
        section = _prune(
            {
                "privacy_unit": card.privacy_loss.privacy_unit,
                "adjacency_specification": card.privacy_loss.adjacency_specification,
            }
        )
        if card.privacy_loss.parameters:
            section["parameters"] = [
                _prune(
                    {
                        "symbol": param.symbol.value,
                        "other_symbol": param.other_symbol,
                        "value": param.value,
                        "scope": param.scope.value,
                        "notes": param.notes,
                    }
                )
                for param in card.privacy_loss.parameters
            ]
        if section:
            doc["privacy_loss"] = section
    if card.deployment_model is not None:
        model = card.deployment_model
        section = _prune(
            {
                "model": _enum_value(model.model),
                "other_label": model.other_label,
                "trust_assumptions": model.trust_assumptions,
                "release_type": _enum_value(model.release_type),
                "release_details": model.release_details,
                "data_source": _enum_value(model.data_source),
                "access_type": _enum_value(model.access_type),
                "access_details": model.access_details,
            }
        )
        if section:
            doc["deployment_model"] = section
    if card.accounting is not None:
        section = _prune(
            {
                "composition": card.accounting.composition,
                "post_processing": card.accounting.post_processing,
            }
        )
        if section:
            doc["accounting"] = section
    if card.implementation is not None:
        impl = card.implementation
        section = _prune(
            {
                "pre_processing": impl.pre_processing,
                "mechanisms": impl.mechanisms,
                "justification": impl.justification,
                "code_link": impl.code_link,
            }
        )
        if section:
            doc["implementation"] = section
    if card.more_info is not None:
        section: dict = {}
        if card.more_info.sources:
            section["sources"] = list(card.more_info.sources)
        section.update(
            _prune(
                {
                    "data_product_link": card.more_info.data_product_link,
                    "notes": card.more_info.notes,
                }
            )
        )
        if section:
            doc["more_info"] = section
    return doc


def _enum_value(member) -> str | None:
    return None if member is None else member.value


def _prune(fields: dict) -> dict:
    pruned = {}
    for key, value in fields.items():
        if value is None:
            continue
        if isinstance(value, str) and not present(value):
            continue
        pruned[key] = value
    return pruned


def _emit(value, indent: int) -> str:
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            f"{' ' * (indent + 2)}{json.dumps(key, ensure_ascii=False)}: {_emit(item, indent + 2)}"
            for key, item in value.items()
        )
        return "{\n" + inner + "\n" + " " * indent + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = ",\n".join(f"{' ' * (indent + 2)}{_emit(item, indent + 2)}" for item in value)
        return "[\n" + inner + "\n" + " " * indent + "]"
    if isinstance(value, Decimal):
        return format_decimal(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def serialize_card(card: DeploymentCard) -> str:
    """Canonical text form: fixed key order, two-space indent, trailing newline.

    Equal cards serialize to byte-identical output.
    """
    return _emit(card_to_document(card), 0) + "\n"


def dumps_canonical(value) -> str:
    """Canonical JSON text for arbitrary payloads (emits Decimal exactly)."""
    return _emit(value, 0)


# -- corpus loading ----------------------------------------------------------


def load_corpus(directory: Path | str) -> CorpusLoadResult:
    """Load every card file in a directory (sorted by filename).

    Admissible cards land in cards; parse failures, inadmissible cards,
    filename/id mismatches, and duplicate ids or name slugs become load_errors.
    manifest.json is reserved for the corpus manifest and skipped.
    """
    directory = Path(directory)
    try:
        entries = sorted(
            p for p in directory.iterdir() if p.is_file() and p.suffix == ".json"
        )
    except OSError as exc:
        raise CorpusDirectoryError(f"cannot read corpus directory {directory}: {exc}") from exc

    cards: list[DeploymentCard] = []
    load_errors: list[tuple[str, str]] = []
    seen_ids: set[str] = set()
    seen_name_slugs: set[str] = set()

    for path in entries:
        if path.name == "manifest.json":
            continue
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            load_errors.append((str(path), f"unreadable: {exc}"))
            continue
        try:
            card = parse_card(text)
        except CardParseError as exc:
            load_errors.append((str(path), f"parse error: {exc}"))
            continue
        if path.stem != card.id:
            load_errors.append((str(path), f"file name does not match card id {card.id!r}"))
            continue
        if not is_admissible(card):
            report = validate_at_tier(card, card.declared_tier)
            summary = "; ".join(f"{i.field_path}: {i.message}" for i in report.errors())
            load_errors.append((str(path), f"not admissible at declared tier: {summary}"))
            continue
        if card.id in seen_ids:
            load_errors.append((str(path), f"duplicate card id {card.id!r}"))
            continue
        name_slug = slugify(card.data_product.name or "")
        if name_slug in seen_name_slugs:
            load_errors.append(
                (str(path), f"duplicate data product name (slug {name_slug!r})")
            )
            continue
        seen_ids.add(card.id)
        seen_name_slugs.add(name_slug)
        cards.append(card)

    return CorpusLoadResult(cards=tuple(cards), load_errors=tuple(load_errors))
