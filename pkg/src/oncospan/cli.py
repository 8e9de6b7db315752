"""Command-line interface.

    oncospan annotate --input <dir|file> --out <dir> [--lexicon <file>]
                      [--annotators <list>] [--sql <file>] [--jobs N]
    oncospan query    --store <dir> --filter <expr>
    oncospan check    --input <dir|file>

Exit codes: 0 success, 1 input error (missing files, malformed lexicon or
standoff data, bad flag values), 2 internal error.
"""

import argparse
import sys
from collections import Counter
from pathlib import Path
from typing import Sequence

from .document import Document
from .errors import OncospanError
from .pipeline import (
    AnnotatorKind,
    PipelineConfig,
    annotator_name,
    build_pipeline,
    process_corpus,
)
from .query import parse_filter, query_results
from .sqlexport import emit_sql
from .standoff import deserialize_result, serialize_result

_ANNOTATOR_BY_NAME = {kind.value.lower(): kind for kind in AnnotatorKind}


class _InputError(Exception):
    """User-side problem; message goes to stderr, exit code 1."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oncospan",
        description="Annotate Spanish clinical notes with lung-cancer concepts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    annotate = sub.add_parser("annotate", help="annotate documents to standoff files")
    annotate.add_argument("--input", required=True, help="input .txt file or directory")
    annotate.add_argument("--out", required=True, help="output directory for .ann files")
    annotate.add_argument("--lexicon", help="extra polarity cues (POS/NEG<TAB>phrase)")
    annotate.add_argument(
        "--annotators",
        help="comma-separated subset of: "
        + ", ".join(kind.value for kind in AnnotatorKind),
    )
    annotate.add_argument("--sql", help="also write a SQL export to this file")
    annotate.add_argument("--jobs", type=int, default=1, help="parallel workers")

    query = sub.add_parser("query", help="query a directory of standoff files")
    query.add_argument("--store", required=True, help="directory of .ann files")
    query.add_argument(
        "--filter",
        required=True,
        help="e.g. 'gene=EGFR,polarity=POS' or 'stage=IV' or 'ecog=0..2'",
    )

    check = sub.add_parser("check", help="report TNM/stage consistency")
    check.add_argument("--input", required=True, help="input .txt file or directory")
    return parser


def _load_documents(path_str: str) -> list[Document]:
    path = Path(path_str)
    if path.is_file():
        files = [path]
    elif path.is_dir():
        files = sorted(p for p in path.iterdir() if p.suffix == ".txt" and p.is_file())
    else:
        raise _InputError(f"input path does not exist: {path}")
    documents = []
    for file in files:
        try:
            text = file.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise _InputError(f"{file}: not valid UTF-8 ({exc})") from None
        try:
            documents.append(Document(file.stem, text))
        except ValueError as exc:
            raise _InputError(f"{file}: {exc}") from None
    return documents


def _parse_annotators(raw: str | None) -> frozenset[AnnotatorKind]:
    if raw is None:
        return frozenset(AnnotatorKind)
    kinds = set()
    for name in raw.split(","):
        name = name.strip()
        if not name:
            continue
        kind = _ANNOTATOR_BY_NAME.get(name.lower())
        if kind is None:
            raise _InputError(
                f"unknown annotator {name!r}; expected one of "
                + ", ".join(k.value for k in AnnotatorKind)
            )
        kinds.add(kind)
    if not kinds:
        raise _InputError("no annotators selected")
    return frozenset(kinds)


def _cmd_annotate(args: argparse.Namespace) -> int:
    if args.jobs < 1:
        raise _InputError("--jobs must be at least 1")
    documents = _load_documents(args.input)
    if args.lexicon is not None and not Path(args.lexicon).is_file():
        raise _InputError(f"lexicon file does not exist: {args.lexicon}")
    config = PipelineConfig(
        enabled_annotators=_parse_annotators(args.annotators),
        lexicon_path=args.lexicon,
    )
    pipeline = build_pipeline(config)
    results = process_corpus(pipeline, documents, jobs=args.jobs)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    counts: Counter[str] = Counter()
    for result in results:
        (out_dir / f"{result.document_id}.ann").write_bytes(serialize_result(result))
        counts.update(annotator_name(a) for a in result.annotations)
    if args.sql is not None:
        Path(args.sql).write_text(emit_sql(results), encoding="utf-8")
    print(f"documents processed: {len(results)}")
    for name in ("mutation", "tnm", "stage", "ps"):
        print(f"{name} annotations: {counts.get(name, 0)}")
    if args.sql is not None:
        print(f"sql export: {args.sql}")
    return 0


def _cmd_query(args: argparse.Namespace) -> int:
    store = Path(args.store)
    if not store.is_dir():
        raise _InputError(f"store directory does not exist: {store}")
    predicate = parse_filter(args.filter)
    results = []
    for file in sorted(store.glob("*.ann")):
        try:
            results.append(deserialize_result(file.read_bytes()))
        except OncospanError as exc:
            raise _InputError(f"{file}: {exc}") from None
    for document_id in query_results(results, predicate):
        print(document_id)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    documents = _load_documents(args.input)
    config = PipelineConfig(
        enabled_annotators=frozenset({AnnotatorKind.TNM, AnnotatorKind.STAGE})
    )
    pipeline = build_pipeline(config)
    results = process_corpus(pipeline, documents)
    total = 0
    for result in results:
        for report in result.consistency:
            total += 1
            tnm = report.tnm
            stage = report.stage
            where = (
                f"{tnm.raw!r} [{tnm.span.begin},{tnm.span.end}) vs "
                f"{stage.raw!r} [{stage.span.begin},{stage.span.end})"
            )
            if report.expected is not None and report.expected is not stage.stage:
                verdict = f"{report.verdict.value} (expected {report.expected.value})"
            else:
                verdict = report.verdict.value
            print(f"{result.document_id}: {where}: {verdict}")
    print(f"consistency reports: {total}")
    return 0


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; that is an input error here.
        return 0 if exc.code == 0 else 1
    handlers = {
        "annotate": _cmd_annotate,
        "query": _cmd_query,
        "check": _cmd_check,
    }
    try:
        return handlers[args.command](args)
    except (_InputError, OncospanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
