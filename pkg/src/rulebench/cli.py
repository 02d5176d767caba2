"""Command-line entry points.

serve    -- run the HTTP API (and optionally a built UI) for one session
report   -- emit the full per-entity metrics + checklist report headlessly
validate -- run corpus/highlight import checks only
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import Corpus, CorpusError, import_highlights
from .session import ProjectSession, SessionError, Workbench, load_session


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rulebench",
        description="Decision workbench for rule-based extraction feasibility",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--corpus", required=True, help="directory of UTF-8 .txt files")
    serve.add_argument("--highlights", required=True, help="JSONL highlight file")
    serve.add_argument("--session", required=True, help="session file to load/persist")
    serve.add_argument("--port", type=int, default=8642)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--ui", default=None, help="directory of built UI assets to serve")

    report = sub.add_parser("report", help="write the full report for a saved session")
    report.add_argument("--session", required=True)
    report.add_argument("--out", required=True, help="output file, or - for stdout")

    validate = sub.add_parser("validate", help="check corpus and highlight files")
    validate.add_argument("--corpus", required=True)
    validate.add_argument("--highlights", required=True)

    return parser


def cmd_validate(args) -> int:
    corpus = Corpus.load(args.corpus)
    result = import_highlights(args.highlights, corpus)
    print(f"documents: {len(corpus)}")
    print(f"highlights accepted: {len(result.highlights)}")
    print(f"entities: {len(result.catalog.entities)}")
    for entity in result.catalog.entities:
        print(f"  {entity}: {result.catalog.count(entity)}")
    if result.rejected:
        print(f"rejected records: {len(result.rejected)}", file=sys.stderr)
        for r in result.rejected:
            print(f"  line {r.line_no}: {r.reason}", file=sys.stderr)
        return 1
    return 0


def cmd_report(args) -> int:
    session = load_session(args.session)
    workbench = Workbench.open(session.corpus_path, session.highlights_path, session)
    payload = json.dumps(workbench.export_report(), ensure_ascii=False, indent=2, sort_keys=True)
    if args.out == "-":
        print(payload)
    else:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
        print(f"report written to {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    session_path = Path(args.session)
    if session_path.is_file():
        session = load_session(session_path)
        session.corpus_path = args.corpus
        session.highlights_path = args.highlights
    else:
        session = ProjectSession(args.corpus, args.highlights)

    workbench = Workbench.open(args.corpus, args.highlights, session, strict=True)
    workbench.save(session_path)
    app = create_app(workbench, session_path=session_path, static_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "report":
            return cmd_report(args)
        if args.command == "serve":
            return cmd_serve(args)
    except (CorpusError, SessionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
