"""HTTP API over a corpus snapshot: listing, card retrieval, aggregation,
guide content, health, and moderated submission of new cards."""

from __future__ import annotations

import os
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .card_io import (
    CardParseError,
    card_to_document,
    dumps_canonical,
    load_corpus,
    parse_card,
    serialize_card,
)
from .guide import load_guide
from .index import (
    QUERY_COLUMNS,
    Query,
    RegistryIndex,
    UnknownColumnError,
    UnknownVariableError,
)
from .model import DeploymentCard, ValidationReport
from .validation import is_admissible, slugify, validate_at_tier

DEFAULT_PORT = 8080
SUBMISSIONS_PER_MINUTE = 10

ENV_CORPUS_DIR = "REGISTRY_CORPUS_DIR"
ENV_PENDING_DIR = "REGISTRY_PENDING_DIR"
ENV_PORT = "REGISTRY_PORT"
ENV_CORS_ORIGIN = "REGISTRY_CORS_ORIGIN"

# Friendly query-param aliases for row columns.
COLUMN_ALIASES = {
    "flavor": "flavor_label",
    "model": "model_label",
    "year": "publication_year",
}


@dataclass(frozen=True)
class PendingSubmission:
    submission_id: str
    card: DeploymentCard
    submitted_at: datetime
    status: str = "pending"


class BadParameter(ValueError):
    def __init__(self, code: str, detail: str):
        self.code = code
        self.detail = detail
        super().__init__(detail)


class RegistryState:
    """Mutable server state; the corpus index is an immutable snapshot swapped
    atomically so concurrent readers never observe a mix."""

    def __init__(
        self,
        corpus_dir: Path,
        pending_dir: Path | None,
        guide_dir: Path | None = None,
    ):
        self.corpus_dir = Path(corpus_dir)
        self.pending_dir = Path(pending_dir) if pending_dir is not None else None
        self.guide = load_guide(guide_dir)  # fail fast at boot on missing content
        self.write_lock = threading.Lock()
        self.pending: dict[str, PendingSubmission] = {}
        self.load_errors: tuple[tuple[str, str], ...] = ()
        self._rate: dict[str, list[float]] = {}
        self.index = self._build_index()
        if self.pending_dir is not None:
            self.pending_dir.mkdir(parents=True, exist_ok=True)
            self._restore_pending()

    def _build_index(self) -> RegistryIndex:
        result = load_corpus(self.corpus_dir)
        self.load_errors = result.load_errors
        return RegistryIndex(result.cards)

    def _restore_pending(self) -> None:
        for path in sorted(self.pending_dir.glob("*.json")):
            try:
                card = parse_card(path.read_text(encoding="utf-8"))
            except (OSError, CardParseError):
                continue
            submitted = datetime.fromtimestamp(path.stat().st_mtime, tz=timezone.utc)
            self.pending[card.id] = PendingSubmission(card.id, card, submitted)

    def reload(self) -> None:
        """Rebuild the corpus snapshot from disk and swap it in atomically."""
        with self.write_lock:
            self.index = self._build_index()

    def allow_submission(self, peer: str) -> bool:
        now = time.monotonic()
        window = [t for t in self._rate.get(peer, []) if now - t < 60.0]
        if len(window) >= SUBMISSIONS_PER_MINUTE:
            self._rate[peer] = window
            return False
        window.append(now)
        self._rate[peer] = window
        return True


def _json(payload, status_code: int = 200) -> Response:
    return Response(
        content=dumps_canonical(payload) + "\n",
        status_code=status_code,
        media_type="application/json",
    )


def _report_dict(report: ValidationReport) -> dict:
    return {
        "passed": report.passed,
        "issues": [
            {
                "rule_id": issue.rule_id,
                "severity": issue.severity.value,
                "field_path": issue.field_path,
                "message": issue.message,
            }
            for issue in report.issues
        ],
        "inferred_tier": report.inferred_tier,
    }


def _int_param(params, name: str) -> int | None:
    raw = params.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise BadParameter("invalid_year", f"{name} must be an integer, got {raw!r}")


def _query_from_params(params) -> Query:
    filters: dict[str, object] = {}
    for key in params:
        if not key.startswith("filter."):
            continue
        column = key[len("filter.") :]
        column = COLUMN_ALIASES.get(column, column)
        if column not in QUERY_COLUMNS:
            raise UnknownColumnError(column)
        raw_values: list[str] = []
        for raw in params.getlist(key):
            raw_values.extend(v for v in raw.split(",") if v != "")
        if column == "tier":
            try:
                filters[column] = frozenset(int(v) for v in raw_values)
            except ValueError:
                raise BadParameter("invalid_filter", "tier filter values must be integers")
        elif column == "publication_year":
            try:
                numbers = [int(v) for v in raw_values]
            except ValueError:
                raise BadParameter("invalid_filter", "publication_year filter values must be integers")
            if len(numbers) != 2:
                raise BadParameter("invalid_filter", "publication_year filter takes min,max")
            filters[column] = (numbers[0], numbers[1])
        elif column == "has_more_info":
            accepted = set()
            for v in raw_values:
                if v not in ("true", "false"):
                    raise BadParameter("invalid_filter", "has_more_info filter takes true/false")
                accepted.add(v == "true")
            filters[column] = frozenset(accepted)
        elif column in ("accounting_keywords", "implementation_keywords"):
            filters[column] = frozenset(raw_values)
        elif column in ("flavor_label", "model_label", "release_type", "data_source", "access_type"):
            filters[column] = frozenset(raw_values)
        else:
            # text columns: the raw value is a substring needle
            filters[column] = ",".join(raw_values)

    year_from = _int_param(params, "year_from")
    year_to = _int_param(params, "year_to")
    if year_from is not None or year_to is not None:
        filters["publication_year"] = (year_from, year_to)

    sort = None
    sort_column = params.get("sort")
    if sort_column:
        sort_column = COLUMN_ALIASES.get(sort_column, sort_column)
        if sort_column not in QUERY_COLUMNS:
            raise UnknownColumnError(sort_column)
        order = params.get("order", "asc")
        if order not in ("asc", "desc"):
            raise BadParameter("invalid_order", f"order must be asc or desc, got {order!r}")
        sort = (sort_column, order)

    search = params.get("q")
    return Query(global_search=search or None, column_filters=filters, sort=sort)


def create_app(
    corpus_dir: Path | str,
    pending_dir: Path | str | None = None,
    cors_origin: str | None = None,
    guide_dir: Path | str | None = None,
) -> FastAPI:
    state = RegistryState(
        corpus_dir=Path(corpus_dir),
        pending_dir=Path(pending_dir) if pending_dir is not None else None,
        guide_dir=Path(guide_dir) if guide_dir is not None else None,
    )
    app = FastAPI(title="DP deployment registry", openapi_url=None)
    app.state.registry = state

    if cors_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.get("/api/deployments")
    def handle_list(request: Request):
        try:
            query = _query_from_params(request.query_params)
            rows = state.index.run_query(query)
        except UnknownColumnError as exc:
            return _json({"error": "unknown_column", "detail": str(exc)}, 400)
        except BadParameter as exc:
            return _json({"error": exc.code, "detail": exc.detail}, 400)
        return _json({"total": len(rows), "rows": [row.as_dict() for row in rows]})

    @app.get("/api/deployments/{card_id}")
    def handle_get(card_id: str):
        card = state.index.get(card_id)
        if card is None:
            return _json({"error": "not_found"}, 404)
        report = validate_at_tier(card, card.declared_tier)
        return _json(
            {
                "card": card_to_document(card),
                "inferred_tier": report.inferred_tier,
                "validation": _report_dict(report),
            }
        )

    @app.get("/api/aggregate")
    def handle_aggregate(request: Request):
        variable = request.query_params.get("variable", "")
        try:
            year_from = _int_param(request.query_params, "year_from")
            year_to = _int_param(request.query_params, "year_to")
            year_range = (
                (year_from, year_to) if year_from is not None or year_to is not None else None
            )
            result = state.index.aggregate(variable, year_range)
        except UnknownVariableError as exc:
            return _json({"error": "unknown_variable", "detail": str(exc)}, 400)
        except BadParameter as exc:
            return _json({"error": exc.code, "detail": exc.detail}, 400)
        return _json(result.as_dict())

    @app.get("/api/aggregate/by-year")
    def handle_aggregate_by_year(request: Request):
        variable = request.query_params.get("variable", "")
        try:
            result = state.index.aggregate_by_year(variable)
        except UnknownVariableError as exc:
            return _json({"error": "unknown_variable", "detail": str(exc)}, 400)
        return _json(result.as_dict())

    @app.post("/api/submissions")
    async def handle_submit(request: Request):
        if state.pending_dir is None:
            return _json({"error": "submissions_disabled"}, 503)
        peer = request.client.host if request.client else "unknown"
        if not state.allow_submission(peer):
            return _json({"error": "rate_limited", "detail": "10 submissions per minute"}, 429)
        body = await request.body()
        try:
            card = parse_card(body.decode("utf-8"))
        except UnicodeDecodeError:
            return _json(
                {
                    "issues": [
                        {
                            "rule_id": "malformed-syntax",
                            "severity": "error",
                            "field_path": "",
                            "message": "body is not valid UTF-8",
                        }
                    ]
                },
                422,
            )
        except CardParseError as exc:
            issues = [
                {
                    "rule_id": i.rule_id,
                    "severity": i.severity.value,
                    "field_path": i.field_path,
                    "message": i.message,
                }
                for i in exc.issues
            ]
            return _json({"issues": issues}, 422)
        if not is_admissible(card):
            report = validate_at_tier(card, card.declared_tier)
            return _json({"issues": _report_dict(report)["issues"]}, 422)
        with state.write_lock:
            if state.index.get(card.id) is not None or card.id in state.pending:
                return _json(
                    {"error": "conflict", "detail": f"id {card.id!r} already exists"}, 409
                )
            name_slug = slugify(card.data_product.name or "")
            corpus_slugs = {
                slugify(c.data_product.name or "") for c in state.index.cards
            }
            if name_slug in corpus_slugs:
                return _json(
                    {"error": "conflict", "detail": f"data product name {card.data_product.name!r} already exists"},
                    409,
                )
            submission = PendingSubmission(
                submission_id=card.id,
                card=card,
                submitted_at=datetime.now(timezone.utc),
            )
            (state.pending_dir / f"{card.id}.json").write_text(
                serialize_card(card), encoding="utf-8"
            )
            state.pending[card.id] = submission
        return _json({"submission_id": submission.submission_id, "status": "pending"}, 201)

    @app.get("/api/guide")
    def handle_guide():
        return _json([section.as_dict() for section in state.guide])

    @app.get("/api/health")
    def handle_health():
        return _json({"status": "ok", "corpus_size": state.index.size})

    return app


def create_app_from_env() -> FastAPI:
    corpus_dir = os.environ.get(ENV_CORPUS_DIR)
    if not corpus_dir:
        raise RuntimeError(f"{ENV_CORPUS_DIR} is required")
    return create_app(
        corpus_dir=corpus_dir,
        pending_dir=os.environ.get(ENV_PENDING_DIR) or None,
        cors_origin=os.environ.get(ENV_CORS_ORIGIN) or None,
    )
