"""Shared fixtures: canonical example cards and a seeded random card generator."""

from __future__ import annotations

import random
from dataclasses import replace
from decimal import Decimal
from pathlib import Path

import pytest

import dpregistry
from dpregistry.model import (
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
    SECTORS,
)

SEED_DIR = Path(dpregistry.__file__).parent / "seed"


def make_tier1_card(card_id: str = "example-release") -> DeploymentCard:
    return DeploymentCard(
        id=card_id,
        schema_version=SCHEMA_VERSION,
        declared_tier=1,
        data_product=DataProductSection(
            name=f"Example Release {card_id}",
            curator="Example Labs",
            description="Aggregate statistics released under differential privacy.",
            intended_use="Public research access.",
            publication_year=2021,
            region="Global",
            sector="technology",
        ),
        more_info=MoreInfoSection(sources=("https://example.org/writeup",)),
    )


def make_tier3_card(card_id: str = "example-full", interactive: bool = False) -> DeploymentCard:
    base = make_tier1_card(card_id)
    return replace(
        base,
        declared_tier=3,
        flavor=FlavorSection(
            flavor_name=Flavor.PURE,
            data_domain="Event records from opted-in users.",
            unprotected_quantities="None.",
        ),
        privacy_loss=PrivacyLossSection(
            privacy_unit="user-day",
            adjacency_specification="Datasets differing in one user's events in one day.",
            parameters=(
                PrivacyParameter(
                    symbol=ParameterSymbol.EPSILON,
                    value=Decimal("1"),
                    scope=ParameterScope.TOTAL,
                ),
            ),
        ),
        deployment_model=DeploymentModelSection(
            model=DeploymentModel.CENTRAL,
            trust_assumptions="Curator holds raw data; consumers see noised output only.",
            release_type=ReleaseType.ONE_RELEASE,
            release_details="Single annual publication.",
            data_source=DataSource.STATIC,
            access_type=AccessType.INTERACTIVE if interactive else AccessType.NON_INTERACTIVE,
            access_details="Analysts query under a shared budget." if interactive else None,
        ),
        accounting=AccountingSection(
            composition="Sequential composition over the released statistics.",
            post_processing="Negative counts clamped to zero.",
        ),
        implementation=ImplementationSection(
            pre_processing="Contribution bounding before aggregation.",
            mechanisms="Laplace noise on counts.",
            justification="Chosen to match the sensitivity of bounded contributions.",
            code_link="https://example.org/code",
        ),
    )


def delete_field(card: DeploymentCard, path: str) -> DeploymentCard:
    """Return a copy of the card with one dotted-path field made absent."""
    section_name, _, field_name = path.partition(".")
    section = getattr(card, section_name)
    if path == "privacy_loss.parameters":
        return replace(card, privacy_loss=replace(section, parameters=()))
    return replace(card, **{section_name: replace(section, **{field_name: None})})


_WORDS = (
    "mobility", "telemetry", "census", "health", "search", "keyboard", "traffic",
    "energy", "survey", "histogram", "microdata", "synthetic", "pageviews", "emoji",
)

_UNITS = ("person", "user-day", "device", "household", "record")

_REGIONS = ("United States", "Global", "Europe", "Israel", "Canada", "Japan")

_VALUES = ("0.1", "0.25", "0.5", "1", "1.5", "2", "2.64", "4", "8", "9.98", "34.9", "1e-9", "0.000001")


class CardGenerator:
    """Seeded generator of structurally valid cards for property tests."""

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)
        self.counter = 0

    def _slug(self) -> str:
        self.counter += 1
        return f"gen-{self.rng.choice(_WORDS)}-{self.counter}"

    def _text(self, stem: str) -> str:
        return f"{stem} {self.rng.choice(_WORDS)} {self.rng.randrange(1000)}"

    def _maybe(self, value, p: float = 0.5):
        return value if self.rng.random() < p else None

    def data_product(self, complete: bool) -> DataProductSection:
        keep = (lambda v: v) if complete else (lambda v: self._maybe(v, 0.8))
        return DataProductSection(
            name=keep(self._text("Product")),
            curator=keep(self._text("Curator")),
            description=keep(self._text("Statistics about")),
            intended_use=keep(self._text("Used for")),
            publication_year=keep(self.rng.randrange(1995, 2026)),
            region=keep(self.rng.choice(_REGIONS)),
            sector=keep(self.rng.choice(SECTORS + ("other:municipal services",))),
        )

    def parameters(self, count: int) -> tuple[PrivacyParameter, ...]:
        combos = [(s, sc) for s in ParameterSymbol for sc in ParameterScope]
        self.rng.shuffle(combos)
        params = []
        for symbol, scope in combos[:count]:
            params.append(
                PrivacyParameter(
                    symbol=symbol,
                    value=Decimal(self.rng.choice(_VALUES)),
                    scope=scope,
                    other_symbol="tau" if symbol is ParameterSymbol.OTHER else None,
                    notes=self._maybe(self._text("Scope notes")),
                )
            )
        return tuple(params)

    def deployment_model(self, complete: bool) -> DeploymentModelSection:
        model = self.rng.choice(list(DeploymentModel))
        data_source = self.rng.choice(list(DataSource))
        if data_source is DataSource.DYNAMIC:
            release = ReleaseType.MANY_RELEASES
        else:
            release = self.rng.choice(list(ReleaseType))
        access = self.rng.choice(list(AccessType))
        keep = (lambda v: v) if complete else (lambda v: self._maybe(v, 0.8))
        return DeploymentModelSection(
            model=keep(model),
            other_label="hybrid aggregation" if model is DeploymentModel.OTHER else None,
            trust_assumptions=self._maybe(self._text("Trust")),
            release_type=keep(release),
            release_details=self._maybe(self._text("Released")),
            data_source=keep(data_source),
            access_type=keep(access),
            access_details=self._maybe(self._text("Access")),
        )

    def more_info(self) -> MoreInfoSection | None:
        if self.rng.random() < 0.3:
            return None
        return MoreInfoSection(
            sources=tuple(
                f"https://example.org/{self.rng.choice(_WORDS)}/{self.rng.randrange(100)}"
                for _ in range(self.rng.randrange(1, 3))
            ),
            data_product_link=self._maybe("https://example.org/product"),
            notes=self._maybe(self._text("Notes")),
        )

    def card_at_tier(self, tier: int) -> DeploymentCard:
        """A card whose inferred tier is exactly the requested one."""
        card_id = self._slug()
        card = DeploymentCard(
            id=card_id,
            schema_version=SCHEMA_VERSION,
            declared_tier=tier,
            data_product=self.data_product(complete=True),
            more_info=self.more_info(),
        )
        if tier == 1:
            return card
        interactive = self.rng.random() < 0.3
        data_source = self.rng.choice(list(DataSource))
        release = (
            ReleaseType.MANY_RELEASES
            if data_source is DataSource.DYNAMIC
            else self.rng.choice(list(ReleaseType))
        )
        model = self.rng.choice(list(DeploymentModel))
        flavor_name = self.rng.choice(list(Flavor))
        card = replace(
            card,
            flavor=FlavorSection(
                flavor_name=flavor_name,
                other_label="custom relaxation" if flavor_name is Flavor.OTHER else None,
                data_domain=self._text("Domain") if tier >= 3 else None,
                unprotected_quantities=self._text("Invariants") if tier >= 3 else None,
            ),
            privacy_loss=PrivacyLossSection(
                privacy_unit=self.rng.choice(_UNITS),
                adjacency_specification=self._text("Adjacent when") if tier >= 3 else None,
                parameters=self.parameters(self.rng.randrange(1, 4)),
            ),
            deployment_model=DeploymentModelSection(
                model=model,
                other_label="hybrid aggregation" if model is DeploymentModel.OTHER else None,
                trust_assumptions=self._text("Trust") if tier >= 3 else None,
                release_type=release,
                release_details=self._text("Released") if tier >= 3 else None,
                data_source=data_source,
                access_type=AccessType.INTERACTIVE if interactive else AccessType.NON_INTERACTIVE,
                access_details=self._text("Access") if tier >= 3 and interactive else None,
            ),
        )
        if tier >= 3:
            card = replace(
                card,
                accounting=AccountingSection(
                    composition=self._text("Composes"),
                    post_processing=self._text("Post"),
                ),
                implementation=ImplementationSection(
                    pre_processing=self._text("Pre"),
                    mechanisms=self._text("Mechanism"),
                    justification=self._text("Because"),
                    code_link=self._maybe("https://example.org/code"),
                ),
            )
        return card

    def card(self) -> DeploymentCard:
        """A structurally valid card of arbitrary (possibly no) tier."""
        roll = self.rng.random()
        if roll < 0.6:
            return self.card_at_tier(self.rng.choice((1, 2, 3)))
        # partially filled cards that may fail even tier 1
        card = DeploymentCard(
            id=self._slug(),
            schema_version=SCHEMA_VERSION,
            declared_tier=self.rng.choice((1, 2, 3)),
            data_product=self.data_product(complete=False),
            more_info=self.more_info(),
        )
        if self.rng.random() < 0.5:
            loss = PrivacyLossSection(
                privacy_unit=self._maybe(self.rng.choice(_UNITS)),
                parameters=self.parameters(self.rng.randrange(0, 3)),
            )
            if loss != PrivacyLossSection():
                card = replace(card, privacy_loss=loss)
        if self.rng.random() < 0.5:
            section = self.deployment_model(complete=False)
            if section != DeploymentModelSection():
                card = replace(card, deployment_model=section)
        if self.rng.random() < 0.3:
            flavor_name = self.rng.choice(list(Flavor))
            card = replace(
                card,
                flavor=FlavorSection(
                    flavor_name=flavor_name,
                    other_label="custom relaxation" if flavor_name is Flavor.OTHER else None,
                ),
            )
        return card

    def corpus(self, size: int) -> list[DeploymentCard]:
        return [self.card() for _ in range(size)]


_SEARCH_POOL = _WORDS + ("product", "curator", "trust", "zzz-not-there", "https", "notes")

_ENUM_POOLS = {
    "flavor_label": ("pure", "approximate", "zero_concentrated", "renyi", "unspecified", "custom relaxation", "bogus"),
    "model_label": ("central", "local", "shuffle", "unspecified", "hybrid aggregation", "bogus"),
    "release_type": ("one_release", "many_releases", "unspecified"),
    "data_source": ("static", "dynamic", "unspecified"),
    "access_type": ("interactive", "non_interactive", "unspecified"),
}

_KEYWORD_POOLS = {
    "accounting_keywords": ("composition", "post-processing"),
    "implementation_keywords": ("pre-processing", "mechanisms", "justification"),
}

_TEXT_QUERY_COLUMNS = ("id", "name", "curator", "description", "privacy_unit", "parameters_summary")


def random_query(rng: random.Random):
    """A random but well-formed Query touching a mix of column kinds."""
    from dpregistry.index import Query

    filters: dict[str, object] = {}
    for _ in range(rng.randrange(0, 3)):
        kind = rng.choice(("text", "enum", "tier", "keywords", "bool", "year"))
        if kind == "text":
            filters[rng.choice(_TEXT_QUERY_COLUMNS)] = rng.choice(_SEARCH_POOL)
        elif kind == "enum":
            column = rng.choice(tuple(_ENUM_POOLS))
            pool = _ENUM_POOLS[column]
            filters[column] = frozenset(rng.sample(pool, rng.randrange(1, 3)))
        elif kind == "tier":
            filters["tier"] = frozenset(rng.sample((1, 2, 3), rng.randrange(1, 4)))
        elif kind == "keywords":
            column = rng.choice(tuple(_KEYWORD_POOLS))
            pool = _KEYWORD_POOLS[column]
            filters[column] = frozenset(rng.sample(pool, rng.randrange(1, len(pool) + 1)))
        elif kind == "bool":
            filters["has_more_info"] = frozenset(
                rng.sample((True, False), rng.randrange(1, 3))
            )
        else:
            low = rng.choice((None, rng.randrange(1990, 2027)))
            high = rng.choice((None, rng.randrange(1990, 2027)))
            if low is None and high is None:
                low = 2000
            filters["publication_year"] = (low, high)

    sort = None
    if rng.random() < 0.6:
        column = rng.choice(
            _TEXT_QUERY_COLUMNS
            + tuple(_ENUM_POOLS)
            + tuple(_KEYWORD_POOLS)
            + ("tier", "publication_year", "has_more_info")
        )
        sort = (column, rng.choice(("asc", "desc")))

    search = rng.choice(_SEARCH_POOL) if rng.random() < 0.4 else None
    return Query(global_search=search, column_filters=filters, sort=sort)


@pytest.fixture
def generator() -> CardGenerator:
    return CardGenerator(seed=20240801)


@pytest.fixture
def seed_corpus():
    from dpregistry.card_io import load_corpus

    result = load_corpus(SEED_DIR)
    assert not result.load_errors
    return result.cards
