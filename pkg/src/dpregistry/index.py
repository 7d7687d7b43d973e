"""In-memory corpus index: table projection, filter/search/sort, and trend counts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, fields as dataclass_fields
from typing import Iterable, Mapping

from .card_io import compact_decimal
from .model import DeploymentCard, present
from .validation import infer_tier

UNSPECIFIED = "unspecified"

ACCOUNTING_KEYWORDS = ("composition", "post-processing")
IMPLEMENTATION_KEYWORDS = ("pre-processing", "mechanisms", "justification")

AGGREGATE_VARIABLES = (
    "tier",
    "flavor",
    "deployment_model",
    "region",
    "sector",
    "release_type",
    "data_source",
    "access_type",
)

TEXT_COLUMNS = frozenset({"id", "name", "curator", "description", "privacy_unit", "parameters_summary"})
ENUM_COLUMNS = frozenset({"flavor_label", "model_label", "release_type", "data_source", "access_type"})
KEYWORD_COLUMNS = frozenset({"accounting_keywords", "implementation_keywords"})
BOOL_COLUMNS = frozenset({"has_more_info"})


class UnknownColumnError(ValueError):
    def __init__(self, column: str):
        self.column = column
        super().__init__(f"unknown column {column!r}")


class UnknownVariableError(ValueError):
    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"unknown aggregation variable {variable!r}")


@dataclass(frozen=True)
class RowProjection:
    """Flattened table row of one card, as shown in the interactive table."""

    id: str
    name: str | None
    curator: str | None
    description: str | None
    tier: int | None
    flavor_label: str
    privacy_unit: str | None
    parameters_summary: str
    model_label: str
    release_type: str
    data_source: str
    access_type: str
    accounting_keywords: tuple[str, ...]
    implementation_keywords: tuple[str, ...]
    has_more_info: bool

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "curator": self.curator,
            "description": self.description,
            "tier": self.tier,
            "flavor_label": self.flavor_label,
            "privacy_unit": self.privacy_unit,
            "parameters_summary": self.parameters_summary,
            "model_label": self.model_label,
            "release_type": self.release_type,
            "data_source": self.data_source,
            "access_type": self.access_type,
            "accounting_keywords": list(self.accounting_keywords),
            "implementation_keywords": list(self.implementation_keywords),
            "has_more_info": self.has_more_info,
        }


ROW_COLUMNS = tuple(f.name for f in dataclass_fields(RowProjection))
QUERY_COLUMNS = frozenset(ROW_COLUMNS) | {"publication_year", "tier"}


@dataclass(frozen=True)
class Query:
    """Filter/search/sort request against the table.

    column_filters values by column kind: text columns take a substring,
    enum columns a set of accepted values, keyword columns a set that must all
    be present, tier a set of levels, has_more_info a set of booleans, and
    publication_year an inclusive (min, max) pair (either side may be None).
    """

    global_search: str | None = None
    column_filters: Mapping[str, object] = field(default_factory=dict)
    sort: tuple[str, str] | None = None


@dataclass(frozen=True)
class AggregateResult:
    variable: str
    buckets: tuple[tuple[str, int], ...]
    per_year: tuple[tuple[int, tuple[tuple[str, int], ...]], ...] | None = None

    def as_dict(self) -> dict:
        body: dict = {
            "variable": self.variable,
            "buckets": [{"key": key, "count": count} for key, count in self.buckets],
        }
        if self.per_year is not None:
            body["per_year"] = [
                {"year": year, "buckets": [{"key": key, "count": count} for key, count in buckets]}
                for year, buckets in self.per_year
            ]
        return body


def project_row(card: DeploymentCard) -> RowProjection:
    """Deterministic flattening of a card into its table row."""
    flavor_label = card.flavor.label() if card.flavor is not None else None
    model = card.deployment_model
    parameters = card.privacy_loss.parameters if card.privacy_loss is not None else ()
    summary = ", ".join(
        f"{param.symbol_label()}={compact_decimal(param.value)} ({param.scope.value})"
        for param in parameters
    )
    accounting = card.accounting
    accounting_keywords = []
    if accounting is not None:
        if present(accounting.composition):
            accounting_keywords.append("composition")
        if present(accounting.post_processing):
            accounting_keywords.append("post-processing")
    impl = card.implementation
    implementation_keywords = []
    if impl is not None:
        if present(impl.pre_processing):
            implementation_keywords.append("pre-processing")
        if present(impl.mechanisms):
            implementation_keywords.append("mechanisms")
        if present(impl.justification):
            implementation_keywords.append("justification")
    return RowProjection(
        id=card.id,
        name=card.data_product.name,
        curator=card.data_product.curator,
        description=card.data_product.description,
        tier=infer_tier(card),
        flavor_label=flavor_label or UNSPECIFIED,
        privacy_unit=(card.privacy_loss.privacy_unit if card.privacy_loss is not None else None),
        parameters_summary=summary,
        model_label=(model.label() if model is not None else None) or UNSPECIFIED,
        release_type=(model.release_type.value if model is not None and model.release_type else UNSPECIFIED),
        data_source=(model.data_source.value if model is not None and model.data_source else UNSPECIFIED),
        access_type=(model.access_type.value if model is not None and model.access_type else UNSPECIFIED),
        accounting_keywords=tuple(accounting_keywords),
        implementation_keywords=tuple(implementation_keywords),
        has_more_info=card.more_info is not None and card.more_info.has_content(),
    )


def card_search_text(card: DeploymentCard, row: RowProjection | None = None) -> str:
    """Lowercased haystack for the global search: every text field of the row
    and of the full card."""
    row = row if row is not None else project_row(card)
    pieces: list[str | None] = [
        row.id,
        row.name,
        row.curator,
        row.description,
        row.flavor_label,
        row.privacy_unit,
        row.parameters_summary,
        row.model_label,
        row.release_type,
        row.data_source,
        row.access_type,
    ]
    product = card.data_product
    pieces += [
        product.intended_use,
        product.region,
        product.sector,
    ]
    if card.flavor is not None:
        pieces += [card.flavor.other_label, card.flavor.data_domain, card.flavor.unprotected_quantities]
    if card.privacy_loss is not None:
        pieces.append(card.privacy_loss.adjacency_specification)
        for param in card.privacy_loss.parameters:
            pieces += [param.other_symbol, param.notes]
    if card.deployment_model is not None:
        model = card.deployment_model
        pieces += [
            model.other_label,
            model.trust_assumptions,
            model.release_details,
            model.access_details,
        ]
    if card.accounting is not None:
        pieces += [card.accounting.composition, card.accounting.post_processing]
    if card.implementation is not None:
        impl = card.implementation
        pieces += [impl.pre_processing, impl.mechanisms, impl.justification, impl.code_link]
    if card.more_info is not None:
        pieces += list(card.more_info.sources)
        pieces += [card.more_info.data_product_link, card.more_info.notes]
    return "\n".join(p for p in pieces if p).lower()


def _variable_value(card: DeploymentCard, variable: str) -> str:
    if variable == "tier":
        tier = infer_tier(card)
        return str(tier) if tier is not None else UNSPECIFIED
    if variable == "flavor":
        label = card.flavor.label() if card.flavor is not None else None
        return label or UNSPECIFIED
    if variable == "deployment_model":
        label = card.deployment_model.label() if card.deployment_model is not None else None
        return label or UNSPECIFIED
    if variable == "region":
        return card.data_product.region if present(card.data_product.region) else UNSPECIFIED
    if variable == "sector":
        return card.data_product.sector if present(card.data_product.sector) else UNSPECIFIED
    if variable == "release_type":
        model = card.deployment_model
        return model.release_type.value if model is not None and model.release_type else UNSPECIFIED
    if variable == "data_source":
        model = card.deployment_model
        return model.data_source.value if model is not None and model.data_source else UNSPECIFIED
    if variable == "access_type":
        model = card.deployment_model
        return model.access_type.value if model is not None and model.access_type else UNSPECIFIED
    raise UnknownVariableError(variable)


def _sorted_buckets(counter: Counter) -> tuple[tuple[str, int], ...]:
    # count descending, key ascending on ties
    return tuple(sorted(counter.items(), key=lambda item: (-item[1], item[0])))


class RegistryIndex:
    """Immutable snapshot of a corpus; queries are read-only and freely concurrent."""

    def __init__(self, cards: Iterable[DeploymentCard]):
        self._cards = tuple(cards)
        self._rows = tuple(project_row(card) for card in self._cards)
        self._haystacks = tuple(
            card_search_text(card, row) for card, row in zip(self._cards, self._rows)
        )
        self._by_id = {card.id: card for card in self._cards}

    @property
    def cards(self) -> tuple[DeploymentCard, ...]:
        return self._cards

    @property
    def size(self) -> int:
        return len(self._cards)

    def get(self, card_id: str) -> DeploymentCard | None:
        return self._by_id.get(card_id)

    def year_span(self) -> tuple[int, int] | None:
        years = [
            c.data_product.publication_year
            for c in self._cards
            if c.data_product.publication_year is not None
        ]
        if not years:
            return None
        return (min(years), max(years))

    # -- querying ---------------------------------------------------------

    def run_query(self, query: Query) -> list[RowProjection]:
        for column in query.column_filters:
            if column not in QUERY_COLUMNS:
                raise UnknownColumnError(column)
        if query.sort is not None and query.sort[0] not in QUERY_COLUMNS:
            raise UnknownColumnError(query.sort[0])

        survivors: list[tuple[DeploymentCard, RowProjection]] = []
        needle = query.global_search.lower() if present(query.global_search) else None
        for card, row, haystack in zip(self._cards, self._rows, self._haystacks):
            if needle is not None and needle not in haystack:
                continue
            if all(
                _matches(card, row, column, criterion)
                for column, criterion in query.column_filters.items()
            ):
                survivors.append((card, row))
        return _order(survivors, query.sort)

    # -- aggregation --------------------------------------------------------

    def aggregate(self, variable: str, year_range: tuple[int | None, int | None] | None = None) -> AggregateResult:
        if variable not in AGGREGATE_VARIABLES:
            raise UnknownVariableError(variable)
        scope = self._cards
        if year_range is not None:
            low, high = year_range
            scope = tuple(
                card
                for card in scope
                if card.data_product.publication_year is not None
                and (low is None or card.data_product.publication_year >= low)
                and (high is None or card.data_product.publication_year <= high)
            )
        counts = Counter(_variable_value(card, variable) for card in scope)
        return AggregateResult(variable=variable, buckets=_sorted_buckets(counts))

    def aggregate_by_year(self, variable: str) -> AggregateResult:
        if variable not in AGGREGATE_VARIABLES:
            raise UnknownVariableError(variable)
        by_year: dict[int, Counter] = {}
        for card in self._cards:
            year = card.data_product.publication_year
            if year is None:
                continue
            by_year.setdefault(year, Counter())[_variable_value(card, variable)] += 1
        per_year = tuple(
            (year, _sorted_buckets(by_year[year])) for year in sorted(by_year)
        )
        overall = Counter(_variable_value(card, variable) for card in self._cards)
        return AggregateResult(variable=variable, buckets=_sorted_buckets(overall), per_year=per_year)


def _matches(card: DeploymentCard, row: RowProjection, column: str, criterion) -> bool:
    if column == "publication_year":
        year = card.data_product.publication_year
        if year is None:
            return False
        low, high = criterion
        return (low is None or year >= low) and (high is None or year <= high)
    if column == "tier":
        return row.tier in set(criterion)
    if column in TEXT_COLUMNS:
        value = getattr(row, column) or ""
        return str(criterion).lower() in value.lower()
    if column in ENUM_COLUMNS:
        return getattr(row, column) in set(criterion)
    if column in KEYWORD_COLUMNS:
        return set(criterion) <= set(getattr(row, column))
    if column in BOOL_COLUMNS:
        accepted = criterion if isinstance(criterion, (set, frozenset, list, tuple)) else {criterion}
        return getattr(row, column) in set(accepted)
    raise UnknownColumnError(column)


def _order(
    survivors: list[tuple[DeploymentCard, RowProjection]],
    sort: tuple[str, str] | None,
) -> list[RowProjection]:
    if sort is None:
        column, direction = "name", "asc"
    else:
        column, direction = sort

    def key_of(entry: tuple[DeploymentCard, RowProjection]):
        card, row = entry
        if column == "publication_year":
            return card.data_product.publication_year
        value = getattr(row, column)
        if column in KEYWORD_COLUMNS:
            return ", ".join(value)
        if column in BOOL_COLUMNS:
            return int(value)
        if isinstance(value, str):
            return value.casefold()
        return value

    present_rows = [e for e in survivors if key_of(e) is not None]
    absent_rows = [e for e in survivors if key_of(e) is None]
    present_rows.sort(key=lambda e: e[1].id)
    present_rows.sort(key=key_of, reverse=(direction == "desc"))
    absent_rows.sort(key=lambda e: e[1].id)
    return [row for _, row in present_rows + absent_rows]


# -- module-level forms of the index operations ------------------------------


def run_query(cards: Iterable[DeploymentCard], query: Query) -> list[RowProjection]:
    return RegistryIndex(cards).run_query(query)


def aggregate(
    cards: Iterable[DeploymentCard],
    variable: str,
    year_range: tuple[int | None, int | None] | None = None,
) -> AggregateResult:
    return RegistryIndex(cards).aggregate(variable, year_range)


def aggregate_by_year(cards: Iterable[DeploymentCard], variable: str) -> AggregateResult:
    return RegistryIndex(cards).aggregate_by_year(variable)
