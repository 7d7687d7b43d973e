"""HTTP API contract: shapes, status codes, pending isolation, and snapshot swaps."""

from __future__ import annotations

import json
import random
import threading
from dataclasses import replace

import pytest
from fastapi.testclient import TestClient

from dpregistry.card_io import load_corpus, serialize_card
from dpregistry.guide import GUIDE_SECTION_IDS
from dpregistry.index import run_query
from dpregistry.service import create_app

from conftest import SEED_DIR, make_tier1_card, make_tier3_card


@pytest.fixture
def corpus_dir(tmp_path):
    target = tmp_path / "corpus"
    target.mkdir()
    for path in SEED_DIR.glob("*.json"):
        (target / path.name).write_text(path.read_text(encoding="utf-8"), encoding="utf-8")
    return target


@pytest.fixture
def pending_dir(tmp_path):
    target = tmp_path / "pending"
    target.mkdir()
    return target


@pytest.fixture
def client(corpus_dir, pending_dir):
    app = create_app(corpus_dir=corpus_dir, pending_dir=pending_dir)
    with TestClient(app) as test_client:
        yield test_client


def test_list_returns_all_seed_rows(client):
    body = client.get("/api/deployments").json()
    assert body["total"] == 21
    assert len(body["rows"]) == 21
    row = body["rows"][0]
    expected_keys = {
        "id", "name", "curator", "description", "tier", "flavor_label",
        "privacy_unit", "parameters_summary", "model_label", "release_type",
        "data_source", "access_type", "accounting_keywords",
        "implementation_keywords", "has_more_info",
    }
    assert set(row) == expected_keys


def test_list_filter_sort_matches_index_oracle(client, corpus_dir):
    from dpregistry.index import Query

    cards = load_corpus(corpus_dir).cards
    body = client.get(
        "/api/deployments?filter.flavor=pure&sort=publication_year&order=asc"
    ).json()
    expected = run_query(
        cards,
        Query(
            column_filters={"flavor_label": frozenset({"pure"})},
            sort=("publication_year", "asc"),
        ),
    )
    assert [row["id"] for row in body["rows"]] == [row.id for row in expected]


def test_list_search_and_year_params(client):
    body = client.get("/api/deployments?q=emoji").json()
    assert "apple-emoji-usage" in [row["id"] for row in body["rows"]]
    body = client.get("/api/deployments?year_from=2023&year_to=2024").json()
    assert {row["id"] for row in body["rows"]} == {"wikimedia-pageviews", "israel-live-births"}


def test_list_unknown_sort_column_400(client):
    response = client.get("/api/deployments?sort=nonexistent")
    assert response.status_code == 400
    assert response.json()["error"] == "unknown_column"


def test_list_unknown_filter_column_400(client):
    response = client.get("/api/deployments?filter.bogus=1")
    assert response.status_code == 400
    assert response.json()["error"] == "unknown_column"


def test_list_bad_order_400(client):
    response = client.get("/api/deployments?sort=name&order=sideways")
    assert response.status_code == 400
    assert response.json()["error"] == "invalid_order"


def test_get_known_card(client):
    body = client.get("/api/deployments/us-census-2020-redistricting").json()
    assert body["card"]["id"] == "us-census-2020-redistricting"
    assert body["inferred_tier"] == 3
    assert body["validation"]["passed"] is True
    assert body["card"]["privacy_loss"]["parameters"][0]["value"] == 2.63


def test_get_unknown_card_404(client):
    response = client.get("/api/deployments/zzz")
    assert response.status_code == 404
    assert response.json()["error"] == "not_found"


def test_aggregate_flavor_mode_is_pure(client):
    body = client.get("/api/aggregate?variable=flavor").json()
    assert body["buckets"][0]["key"] == "pure"
    total = sum(bucket["count"] for bucket in body["buckets"])
    assert total == 21


def test_aggregate_unknown_variable_400(client):
    response = client.get("/api/aggregate?variable=bogus")
    assert response.status_code == 400
    assert response.json()["error"] == "unknown_variable"
    response = client.get("/api/aggregate/by-year?variable=bogus")
    assert response.status_code == 400


def test_aggregate_year_window_matches_by_year_fold(client):
    by_year = client.get("/api/aggregate/by-year?variable=sector").json()
    windowed = client.get("/api/aggregate?variable=sector&year_from=2017&year_to=2020").json()
    folded: dict[str, int] = {}
    for entry in by_year["per_year"]:
        if 2017 <= entry["year"] <= 2020:
            for bucket in entry["buckets"]:
                folded[bucket["key"]] = folded.get(bucket["key"], 0) + bucket["count"]
    assert folded == {b["key"]: b["count"] for b in windowed["buckets"]}


def test_by_year_totals_match_list_total(client):
    total = client.get("/api/deployments").json()["total"]
    by_year = client.get("/api/aggregate/by-year?variable=tier").json()
    per_year_total = sum(
        bucket["count"] for entry in by_year["per_year"] for bucket in entry["buckets"]
    )
    assert per_year_total == total


def test_submit_valid_card_goes_pending_and_stays_out_of_list(client, pending_dir):
    card = make_tier1_card("submitted-card")
    response = client.post("/api/submissions", content=serialize_card(card))
    assert response.status_code == 201
    assert response.json() == {"submission_id": "submitted-card", "status": "pending"}
    assert (pending_dir / "submitted-card.json").is_file()
    listed = client.get("/api/deployments").json()
    assert "submitted-card" not in [row["id"] for row in listed["rows"]]
    assert client.get("/api/deployments/submitted-card").status_code == 404


def test_submit_invalid_tier3_card_422(client):
    card = replace(make_tier3_card("missing-accounting"), accounting=None)
    response = client.post("/api/submissions", content=serialize_card(card))
    assert response.status_code == 422
    issues = response.json()["issues"]
    assert any(issue["field_path"].startswith("accounting") for issue in issues)


def test_submit_parse_error_422(client):
    response = client.post("/api/submissions", content="{not json")
    assert response.status_code == 422
    assert response.json()["issues"][0]["rule_id"] == "malformed-syntax"


def test_submit_duplicate_id_409(client):
    seed_card_text = (SEED_DIR / "apple-emoji-usage.json").read_text(encoding="utf-8")
    response = client.post("/api/submissions", content=seed_card_text)
    assert response.status_code == 409
    assert response.json()["error"] == "conflict"


def test_submit_duplicate_pending_409(client):
    card = make_tier1_card("pending-twice")
    assert client.post("/api/submissions", content=serialize_card(card)).status_code == 201
    assert client.post("/api/submissions", content=serialize_card(card)).status_code == 409


def test_submit_rate_limited_after_ten(client):
    responses = []
    for i in range(11):
        card = make_tier1_card(f"rated-{i}")
        card = replace(
            card,
            data_product=replace(card.data_product, name=f"Rated Product {i}"),
        )
        responses.append(client.post("/api/submissions", content=serialize_card(card)))
    assert [r.status_code for r in responses[:10]] == [201] * 10
    assert responses[10].status_code == 429


def test_submissions_disabled_without_pending_dir(corpus_dir):
    app = create_app(corpus_dir=corpus_dir)
    with TestClient(app) as client:
        response = client.post(
            "/api/submissions", content=serialize_card(make_tier1_card("nope"))
        )
        assert response.status_code == 503


def test_guide_sections(client):
    body = client.get("/api/guide").json()
    assert [section["section_id"] for section in body] == list(GUIDE_SECTION_IDS)
    assert len(body) == 14
    assert len({section["section_id"] for section in body}) == 14
    for section in body:
        assert section["title"]
        assert section["body"]


def test_health(client):
    body = client.get("/api/health").json()
    assert body == {"status": "ok", "corpus_size": 21}


def test_generated_queries_yield_parseable_shapes(client):
    rng = random.Random(3)
    pools = {
        "q": ["emoji", "census", "zzz"],
        "sort": ["name", "tier", "publication_year", "flavor"],
        "order": ["asc", "desc"],
        "filter.flavor": ["pure", "approximate,pure"],
        "filter.tier": ["1", "2,3"],
        "filter.has_more_info": ["true"],
        "year_from": ["2015"],
        "year_to": ["2021"],
    }
    for _ in range(40):
        params = {
            key: rng.choice(values)
            for key, values in pools.items()
            if rng.random() < 0.4
        }
        response = client.get("/api/deployments", params=params)
        assert response.status_code == 200
        body = response.json()
        assert body["total"] == len(body["rows"])
        for row in body["rows"]:
            assert isinstance(row["id"], str)
            assert row["tier"] in (1, 2, 3)


def test_snapshot_swap_is_atomic(corpus_dir, pending_dir):
    app = create_app(corpus_dir=corpus_dir, pending_dir=pending_dir)
    state = app.state.registry
    extra = make_tier1_card("late-addition")
    (corpus_dir / "late-addition.json").write_text(serialize_card(extra), encoding="utf-8")

    observed: set[int] = set()
    stop = threading.Event()

    def reader():
        with TestClient(app) as local_client:
            while not stop.is_set():
                observed.add(local_client.get("/api/health").json()["corpus_size"])

    thread = threading.Thread(target=reader)
    thread.start()
    try:
        state.reload()
    finally:
        stop.set()
        thread.join()

    observed.add(TestClient(app).get("/api/health").json()["corpus_size"])
    assert observed <= {21, 22}
    assert 22 in observed


def test_pending_submissions_restored_on_boot(corpus_dir, pending_dir):
    card = make_tier1_card("restored-pending")
    (pending_dir / "restored-pending.json").write_text(serialize_card(card), encoding="utf-8")
    app = create_app(corpus_dir=corpus_dir, pending_dir=pending_dir)
    with TestClient(app) as client:
        response = client.post(
            "/api/submissions", content=serialize_card(card)
        )
        assert response.status_code == 409
