"""Command-line front end: ingest corpora, run one-shot queries, render the
effectiveness table, or launch the HTTP service."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .corpus import (
    CorpusIndex,
    FixtureClient,
    IndexFormatError,
    RepoTier,
    ingest_directory,
    load_index,
    save_index,
)
from .filtering import ContextQuery
from .recommender import (
    evaluate,
    new_session,
    render_eval_csv,
    render_eval_table,
    run_pipeline,
    run_with_escalation,
    session_payload,
)

EX_OK = 0
EX_IOERR = 2
EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code remapped to 64."""

    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise SystemExit(EX_USAGE if status else EX_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="snap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="index a directory of snippet files")
    p_ingest.add_argument("directory")
    p_ingest.add_argument("--tier", choices=[t.name.lower() for t in RepoTier], default="olr")
    p_ingest.add_argument("--index", required=True, help="index file to create or extend")

    p_query = sub.add_parser("query", help="one-shot recommendation query")
    p_query.add_argument("--index", required=True)
    p_query.add_argument("--pattern", required=True)
    p_query.add_argument("--pre")
    p_query.add_argument("--post")
    p_query.add_argument("--k-pattern", type=int, default=None)
    p_query.add_argument("--k-context", type=int, default=None)
    p_query.add_argument("--window", type=int, default=None)
    p_query.add_argument("--min-support", type=int, default=None)
    p_query.add_argument("--top-k", type=int, default=10)
    p_query.add_argument("--format", choices=["text", "json"], default="text")
    p_query.add_argument("--snar-fixture", help="fixture file backing the SNAR tier")
    p_query.add_argument("--ossnr-fixture", help="fixture file backing the OSSNR tier")
    p_query.add_argument(
        "--auto-escalate",
        action="store_true",
        help="walk repository tiers automatically while results are empty",
    )

    p_eval = sub.add_parser("eval", help="baseline-vs-snap effectiveness table")
    p_eval.add_argument("--index", required=True)
    p_eval.add_argument("--queries", required=True, help="file with one query pattern per line")
    p_eval.add_argument("--format", choices=["table", "csv"], default="table")

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument("--index", required=True)
    p_serve.add_argument("--addr", help="host:port (default env SNAP_ADDR or 127.0.0.1:7077)")
    p_serve.add_argument("--snar-fixture")
    p_serve.add_argument("--ossnr-fixture")
    p_serve.add_argument("--ui", help="directory of static web UI files to serve at /")

    return parser


def _query_from_args(args) -> ContextQuery:
    kwargs = {"pattern": args.pattern}
    for attr, name in (
        ("pre", "pre"),
        ("post", "post"),
        ("k_pattern", "k_pattern"),
        ("k_context", "k_context"),
        ("window", "window"),
    ):
        value = getattr(args, attr)
        if value is not None:
            kwargs[name] = value
    return ContextQuery(**kwargs).validate()


def _clients_from_args(args) -> dict:
    clients = {}
    if getattr(args, "snar_fixture", None):
        clients[RepoTier.SNAR] = FixtureClient(RepoTier.SNAR, args.snar_fixture)
    if getattr(args, "ossnr_fixture", None):
        clients[RepoTier.OSSNR] = FixtureClient(RepoTier.OSSNR, args.ossnr_fixture)
    return clients


def _cmd_ingest(args) -> int:
    index = load_index(args.index) if os.path.exists(args.index) else CorpusIndex()
    report = ingest_directory(index, args.directory, RepoTier.from_name(args.tier))
    save_index(index, args.index)
    print(f"ingested: {report.ingested}")
    print(f"skipped: {report.skipped}")
    for path, reason in report.skip_reasons:
        print(f"  {path}: {reason}")
    return EX_OK


def _cmd_query(args) -> int:
    index = load_index(args.index)
    query = _query_from_args(args)
    clients = _clients_from_args(args)
    session = new_session(query)
    runner = run_with_escalation if args.auto_escalate else run_pipeline
    recommendations, trace = runner(
        index, clients, query, session, args.top_k, args.min_support
    )
    payload = session_payload(session, recommendations, trace)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
        return EX_OK
    print(f"tier: {payload['tier']}   status: {payload['status']}")
    t = payload["trace"]
    print(
        "trace: raw {raw} -> deduped {deduped} -> filtered {filtered} "
        "-> patterns {patterns} -> recommended {recommended}".format(**t)
    )
    for warning in t["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    for rec in payload["recommendations"]:
        print(
            f"\n[{rec['id']}] support {rec['support']}  "
            f"score {rec['score']:.2f}  {' '.join(rec['symbols'])}"
        )
        print(f"  exemplars: {', '.join(rec['exemplar_ids'])}")
        for line in rec["skeleton"].splitlines():
            print(f"  | {line}")
    if not payload["recommendations"]:
        print("no recommendations")
    return EX_OK


def _cmd_eval(args) -> int:
    index = load_index(args.index)
    with open(args.queries, encoding="utf-8") as fh:
        patterns = [line.strip() for line in fh if line.strip()]
    queries = [ContextQuery(pattern=p) for p in patterns]
    rows = evaluate(index, {}, queries)
    if args.format == "csv":
        sys.stdout.write(render_eval_csv(rows))
    else:
        print(render_eval_table(rows))
    return EX_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ADDR_ENV_VAR, DEFAULT_ADDR, create_app

    index = load_index(args.index)
    app = create_app(index, _clients_from_args(args), ui_dir=args.ui)
    addr = args.addr or os.environ.get(ADDR_ENV_VAR) or DEFAULT_ADDR
    host, _, port = addr.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"invalid address {addr!r}, expected host:port")
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return EX_OK


_COMMANDS = {
    "ingest": _cmd_ingest,
    "query": _cmd_query,
    "eval": _cmd_eval,
    "serve": _cmd_serve,
}


def run_cli(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (OSError, IndexFormatError) as exc:
        print(f"snap: {exc}", file=sys.stderr)
        return EX_IOERR
    except ValueError as exc:
        print(f"snap: {exc}", file=sys.stderr)
        return EX_USAGE


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
