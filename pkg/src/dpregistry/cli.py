"""Command-line tool: validate cards, inspect tiers, manage a corpus,
promote pending submissions, and serve the HTTP API.

Exit codes: 0 success, 1 validation failure, 2 usage or IO error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .card_io import (
    CardParseError,
    CorpusDirectoryError,
    card_to_document,
    dumps_canonical,
    load_corpus,
    parse_card,
    parse_cards,
    serialize_card,
)
from .index import AGGREGATE_VARIABLES, RegistryIndex
from .model import Severity
from .service import DEFAULT_PORT, ENV_CORPUS_DIR, ENV_CORS_ORIGIN, ENV_PENDING_DIR, ENV_PORT
from .validation import infer_tier, is_admissible, slugify, validate_at_tier

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2


def _fail(message: str) -> None:
    print(message, file=sys.stderr)


def _print_issues(issues) -> None:
    for issue in issues:
        marker = "warning" if issue.severity is Severity.WARNING else "error"
        print(f"  - [{issue.rule_id}] {issue.field_path}: {issue.message} ({marker})")


def cmd_validate(args: argparse.Namespace) -> int:
    any_failed = False
    for file_name in args.files:
        path = Path(file_name)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            _fail(f"{path}: cannot read: {exc}")
            return EXIT_USAGE
        try:
            card = parse_card(text)
        except CardParseError as exc:
            any_failed = True
            print(f"{path}: FAIL (parse)")
            _print_issues(exc.issues)
            continue
        tier = args.tier if args.tier is not None else card.declared_tier
        report = validate_at_tier(card, tier)
        if report.passed:
            print(f"{path}: PASS (tier {tier})")
        else:
            any_failed = True
            print(f"{path}: FAIL (tier {tier})")
            _print_issues(report.issues)
    return EXIT_VALIDATION if any_failed else EXIT_OK


def cmd_tier(args: argparse.Namespace) -> int:
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        _fail(f"{path}: cannot read: {exc}")
        return EXIT_USAGE
    try:
        card = parse_card(text)
    except CardParseError:
        print("invalid")
        return EXIT_VALIDATION
    tier = infer_tier(card)
    if tier is None:
        print("invalid")
        return EXIT_VALIDATION
    print(tier)
    return EXIT_OK


def cmd_import(args: argparse.Namespace) -> int:
    corpus_dir = Path(args.corpus)
    if not corpus_dir.is_dir():
        _fail(f"corpus directory not found: {corpus_dir}")
        return EXIT_USAGE
    existing = load_corpus(corpus_dir)
    seen_ids = {card.id for card in existing.cards}
    seen_slugs = {slugify(card.data_product.name or "") for card in existing.cards}

    incoming = []
    ok = True
    for file_name in args.files:
        path = Path(file_name)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            _fail(f"{path}: cannot read: {exc}")
            return EXIT_USAGE
        try:
            cards = parse_cards(text)
        except CardParseError as exc:
            _fail(f"{path}: parse error")
            for issue in exc.issues:
                _fail(f"  - [{issue.rule_id}] {issue.field_path}: {issue.message}")
            ok = False
            continue
        for card in cards:
            if not is_admissible(card):
                report = validate_at_tier(card, card.declared_tier)
                _fail(f"{path}: card {card.id!r} not admissible at declared tier {card.declared_tier}")
                for issue in report.errors():
                    _fail(f"  - [{issue.rule_id}] {issue.field_path}: {issue.message}")
                ok = False
                continue
            if card.id in seen_ids:
                _fail(f"{path}: duplicate card id {card.id!r}")
                ok = False
                continue
            slug = slugify(card.data_product.name or "")
            if slug in seen_slugs:
                _fail(f"{path}: duplicate data product name (slug {slug!r})")
                ok = False
                continue
            seen_ids.add(card.id)
            seen_slugs.add(slug)
            incoming.append(card)
    if not ok:
        return EXIT_VALIDATION

    for card in incoming:
        (corpus_dir / f"{card.id}.json").write_text(serialize_card(card), encoding="utf-8")
        print(f"imported {card.id}")
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    try:
        result = load_corpus(args.corpus)
    except CorpusDirectoryError as exc:
        _fail(str(exc))
        return EXIT_USAGE
    if result.load_errors:
        for file_path, message in result.load_errors:
            _fail(f"{file_path}: {message}")
        return EXIT_VALIDATION
    cards = sorted(result.cards, key=lambda card: card.id)
    body = dumps_canonical([card_to_document(card) for card in cards]) + "\n"
    try:
        Path(args.out).write_text(body, encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot write {args.out}: {exc}")
        return EXIT_USAGE
    print(f"exported {len(cards)} cards to {args.out}")
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        result = load_corpus(args.corpus)
    except CorpusDirectoryError as exc:
        _fail(str(exc))
        return EXIT_USAGE
    if result.load_errors:
        for file_path, message in result.load_errors:
            _fail(f"{file_path}: {message}")
        return EXIT_VALIDATION
    index = RegistryIndex(result.cards)
    year_range = None
    if args.year_from is not None or args.year_to is not None:
        year_range = (args.year_from, args.year_to)
    aggregate = index.aggregate(args.by, year_range)
    if not aggregate.buckets:
        return EXIT_OK
    key_width = max(len(key) for key, _ in aggregate.buckets)
    count_width = max(len(str(count)) for _, count in aggregate.buckets)
    for key, count in aggregate.buckets:
        print(f"{key:<{key_width}}  {count:>{count_width}}")
    return EXIT_OK


def cmd_promote(args: argparse.Namespace) -> int:
    pending_dir = Path(args.pending)
    corpus_dir = Path(args.corpus)
    if not corpus_dir.is_dir():
        _fail(f"corpus directory not found: {corpus_dir}")
        return EXIT_USAGE
    pending_path = pending_dir / f"{args.submission_id}.json"
    if not pending_path.is_file():
        _fail(f"pending submission not found: {pending_path}")
        return EXIT_USAGE
    try:
        card = parse_card(pending_path.read_text(encoding="utf-8"))
    except OSError as exc:
        _fail(f"{pending_path}: cannot read: {exc}")
        return EXIT_USAGE
    except CardParseError as exc:
        _fail(f"{pending_path}: parse error")
        for issue in exc.issues:
            _fail(f"  - [{issue.rule_id}] {issue.field_path}: {issue.message}")
        return EXIT_VALIDATION
    if not is_admissible(card):
        report = validate_at_tier(card, card.declared_tier)
        _fail(f"{pending_path}: not admissible at declared tier {card.declared_tier}")
        for issue in report.errors():
            _fail(f"  - [{issue.rule_id}] {issue.field_path}: {issue.message}")
        return EXIT_VALIDATION
    existing = load_corpus(corpus_dir)
    if any(card.id == c.id for c in existing.cards):
        _fail(f"corpus already contains id {card.id!r}")
        return EXIT_VALIDATION
    slug = slugify(card.data_product.name or "")
    if any(slug == slugify(c.data_product.name or "") for c in existing.cards):
        _fail(f"corpus already contains data product name (slug {slug!r})")
        return EXIT_VALIDATION
    (corpus_dir / f"{card.id}.json").write_text(serialize_card(card), encoding="utf-8")
    pending_path.unlink()
    print(f"promoted {card.id}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    corpus = args.corpus or os.environ.get(ENV_CORPUS_DIR)
    if not corpus:
        _fail(f"--corpus or {ENV_CORPUS_DIR} is required")
        return EXIT_USAGE
    pending = args.pending or os.environ.get(ENV_PENDING_DIR) or None
    port = args.port if args.port is not None else int(os.environ.get(ENV_PORT, DEFAULT_PORT))
    cors = args.cors_origin or os.environ.get(ENV_CORS_ORIGIN) or None
    app = create_app(corpus_dir=corpus, pending_dir=pending, cors_origin=cors)
    uvicorn.run(app, host=args.host, port=port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpregistry",
        description="Manage and serve a registry of differential-privacy deployment cards.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate card files at a transparency tier")
    p_validate.add_argument("--tier", type=int, choices=(1, 2, 3), default=None)
    p_validate.add_argument("files", nargs="+", metavar="FILE")
    p_validate.set_defaults(func=cmd_validate)

    p_tier = sub.add_parser("tier", help="print the inferred transparency tier of a card file")
    p_tier.add_argument("file", metavar="FILE")
    p_tier.set_defaults(func=cmd_tier)

    p_import = sub.add_parser("import", help="validate and copy cards into a corpus directory")
    p_import.add_argument("--corpus", required=True, metavar="DIR")
    p_import.add_argument("files", nargs="+", metavar="FILE")
    p_import.set_defaults(func=cmd_import)

    p_export = sub.add_parser("export", help="write all corpus cards to one JSON array")
    p_export.add_argument("--corpus", required=True, metavar="DIR")
    p_export.add_argument("--out", required=True, metavar="FILE")
    p_export.set_defaults(func=cmd_export)

    p_stats = sub.add_parser("stats", help="bucket counts for one variable")
    p_stats.add_argument("--corpus", required=True, metavar="DIR")
    p_stats.add_argument("--by", required=True, choices=AGGREGATE_VARIABLES)
    p_stats.add_argument("--year-from", type=int, default=None)
    p_stats.add_argument("--year-to", type=int, default=None)
    p_stats.set_defaults(func=cmd_stats)

    p_promote = sub.add_parser("promote", help="move a pending submission into the corpus")
    p_promote.add_argument("--corpus", required=True, metavar="DIR")
    p_promote.add_argument("--pending", required=True, metavar="DIR")
    p_promote.add_argument("submission_id", metavar="SUBMISSION_ID")
    p_promote.set_defaults(func=cmd_promote)

    p_serve = sub.add_parser("serve", help="serve the registry HTTP API")
    p_serve.add_argument("--corpus", default=None, metavar="DIR")
    p_serve.add_argument("--pending", default=None, metavar="DIR")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--cors-origin", default=None)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CorpusDirectoryError as exc:
        _fail(str(exc))
        return EXIT_USAGE


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
