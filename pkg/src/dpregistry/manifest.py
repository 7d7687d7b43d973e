"""Corpus manifest: expected size, tier mix, and must-have deployment ids."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .model import DeploymentCard, TIERS
from .validation import infer_tier


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusManifest:
    expected_total: int
    expected_tier_counts: Mapping[int, int]
    required_ids: tuple[str, ...]

    def __post_init__(self):
        if self.expected_total != sum(self.expected_tier_counts.values()):
            raise ManifestError("expected_total must equal the sum of expected_tier_counts")


def load_manifest(path: Path | str) -> CorpusManifest:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        tier_counts = {int(k): int(v) for k, v in raw["expected_tier_counts"].items()}
        manifest = CorpusManifest(
            expected_total=int(raw["expected_total"]),
            expected_tier_counts=tier_counts,
            required_ids=tuple(raw["required_ids"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ManifestError(f"malformed manifest {path}: {exc}") from exc
    if any(tier not in TIERS for tier in manifest.expected_tier_counts):
        raise ManifestError(f"manifest tier keys must be in {TIERS}")
    return manifest


def corpus_manifest_check(
    cards: Iterable[DeploymentCard], manifest: CorpusManifest
) -> list[str]:
    """Discrepancies between a loaded corpus and its manifest; empty means conformant.

    Tier counts compare against inferred tiers, not declared ones.
    """
    cards = list(cards)
    discrepancies: list[str] = []
    if len(cards) != manifest.expected_total:
        discrepancies.append(
            f"total count {len(cards)} != expected {manifest.expected_total}"
        )
    inferred = Counter(infer_tier(card) for card in cards)
    for tier in sorted(manifest.expected_tier_counts, reverse=True):
        expected = manifest.expected_tier_counts[tier]
        actual = inferred.get(tier, 0)
        if actual != expected:
            discrepancies.append(f"tier {tier} count {actual} != expected {expected}")
    ids = {card.id for card in cards}
    for required in manifest.required_ids:
        if required not in ids:
            discrepancies.append(f"required id missing: {required}")
    return discrepancies
