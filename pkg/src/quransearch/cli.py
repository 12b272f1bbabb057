"""Command-line pipeline: ingest, train, index, search, eval, serve.

Exit codes: 0 ok, 1 usage error, 2 data error, 3 I/O error.
"""

import argparse
import sys
from pathlib import Path

from .config import build_configs, load_config_file
from .corpus import (
    align_tafsir_to_verses,
    export_alignment_table,
    load_quran_text,
    load_tafsir_corpus,
)
from .embedding import LocalCbowProvider, persist_model, restore_model, train_cbow
from .errors import QuranSearchError
from .evalharness import load_topic_prompts, render_report, run_eval
from .figures import render_report_figures
from .index import build_index, persist_index, search_top_k
from .service import IndexHolder, create_app, load_snapshot
from .textnorm import preprocess_document

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_provider_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", help="local CBOW model file for query embedding")
    group.add_argument("--endpoint", help="base URL of a remote embedding server")


def build_parser() -> _Parser:
    parser = _Parser(prog="quransearch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="align tafsir corpus to verses and export CSVs")
    p.add_argument("--corpus", required=True, help="tafsir corpus root directory")
    p.add_argument("--quran", required=True, help="pipe-delimited Qur'an text file")
    p.add_argument("--out", required=True, help="output directory (gets tafsir_csv/)")
    p.add_argument(
        "--validate-quran",
        action="store_true",
        help="require the canonical 114 surahs / 6,236 verses",
    )

    p = sub.add_parser("train", help="train the CBOW model on tafsir commentary")
    p.add_argument("--corpus", required=True, help="tafsir corpus root directory")
    p.add_argument("--config", help="key=value file of training/normalization settings")
    p.add_argument("--out", required=True, help="model output file")
    p.add_argument("--dim", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--negatives", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--initial-lr", type=float, dest="initial_lr")
    p.add_argument("--min-lr", type=float, dest="min_lr")
    p.add_argument("--subsample-t", type=float, dest="subsample_t")
    p.add_argument("--seed", type=int)
    p.add_argument("--min-count", type=int, dest="min_count")
    for flag in (
        "strip-diacritics",
        "normalize-alef",
        "normalize-yaa",
        "normalize-taa-marbuta",
        "remove-tatweel",
        "strip-punct",
    ):
        dest = flag.replace("-", "_")
        p.add_argument(
            f"--no-{flag}", dest=dest, action="store_const", const=False, default=None
        )

    p = sub.add_parser("index", help="embed aligned commentary into a vector index")
    p.add_argument("--model", required=True, help="trained CBOW model file")
    p.add_argument("--corpus", required=True, help="tafsir corpus root directory")
    p.add_argument("--quran", required=True, help="pipe-delimited Qur'an text file")
    p.add_argument("--out", required=True, help="index output file")
    p.add_argument("--provider-name", default="cbow", help="name recorded in the index")

    p = sub.add_parser("search", help="query an index from the command line")
    p.add_argument("--index", required=True)
    p.add_argument("--quran", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("-k", type=int, default=10)
    p.add_argument("--tafsir", action="append", help="restrict to this tafsir (repeatable)")
    _add_provider_args(p)

    p = sub.add_parser("eval", help="run labeled prompts and write the report")
    p.add_argument("--index", required=True)
    p.add_argument("--prompts", required=True, help="tab-separated prompt/gold file")
    p.add_argument("--out", required=True, help="report output file")
    p.add_argument("--quran", required=True)
    p.add_argument("--format", choices=["delimited", "text-table"], default="delimited")
    p.add_argument(
        "--no-figures",
        action="store_true",
        help="skip writing charts next to the report",
    )
    _add_provider_args(p)

    p = sub.add_parser("serve", help="serve the HTTP search API")
    p.add_argument("--index", required=True)
    p.add_argument("--quran", required=True)
    p.add_argument("--addr", default="127.0.0.1:8000", help="HOST:PORT to bind")
    _add_provider_args(p)

    return parser


def _cmd_ingest(args) -> int:
    quran = load_quran_text(args.quran, validate=args.validate_quran)
    corpus = load_tafsir_corpus(args.corpus)
    if not any(corpus.values()):
        print("no tafsir entries found", file=sys.stderr)
        return EXIT_DATA
    for tafsir_id, entries in corpus.items():
        if not entries:
            print(f"{tafsir_id}: no entries, skipped")
            continue
        rows = align_tafsir_to_verses(entries, quran)
        path = export_alignment_table(rows, args.out, tafsir_id)
        print(f"{tafsir_id}: {len(rows)} rows -> {path}")
    return EXIT_OK


def _train_overrides(args) -> dict:
    keys = [
        "dim", "window", "negatives", "epochs", "initial_lr", "min_lr",
        "subsample_t", "seed", "min_count", "strip_diacritics", "normalize_alef",
        "normalize_yaa", "normalize_taa_marbuta", "remove_tatweel", "strip_punct",
    ]
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _cmd_train(args) -> int:
    values = load_config_file(args.config) if args.config else {}
    cfg, norm_cfg = build_configs(values, _train_overrides(args))
    corpus = load_tafsir_corpus(args.corpus)
    docs = [
        preprocess_document(entry.commentary, norm_cfg)
        for tafsir_id in sorted(corpus)
        for entry in corpus[tafsir_id]
    ]
    model = train_cbow(
        docs,
        cfg,
        norm_cfg,
        on_epoch=lambda e, loss: print(f"epoch {e}: mean loss {loss:.4f}"),
    )
    persist_model(model, args.out)
    print(f"trained {len(model.vocab)} tokens, dim {model.dim} -> {args.out}")
    return EXIT_OK


def _cmd_index(args) -> int:
    model = restore_model(args.model)
    provider = LocalCbowProvider(model, name=args.provider_name)
    quran = load_quran_text(args.quran)
    corpus = load_tafsir_corpus(args.corpus)
    alignments = {
        tid: align_tafsir_to_verses(entries, quran)
        for tid, entries in corpus.items()
        if entries
    }
    index, report = build_index(alignments, provider)
    persist_index(index, args.out)
    print(
        f"indexed {report.indexed}/{report.total_rows} rows "
        f"({report.skipped} skipped) -> {args.out}"
    )
    return EXIT_OK


def _cmd_search(args) -> int:
    snapshot = load_snapshot(args.index, args.quran, args.model, args.endpoint)
    tafsir_filter = set(args.tafsir) if args.tafsir else None
    hits = search_top_k(
        snapshot.index,
        snapshot.provider,
        snapshot.verses,
        args.query,
        k=args.k,
        tafsir_filter=tafsir_filter,
    )
    for rank, hit in enumerate(hits, 1):
        print(f"{rank:2d}. {hit.score:.4f}  {hit.tafsir_id}  {hit.key}  {hit.ayah_text}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    snapshot = load_snapshot(args.index, args.quran, args.model, args.endpoint)
    prompts = load_topic_prompts(args.prompts)
    report = run_eval(prompts, snapshot.index, snapshot.provider, snapshot.verses)
    rendered = render_report(report, format=args.format)
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(rendered, encoding="utf-8")
    print(f"report -> {out_path}")
    if not args.no_figures:
        for fig_path in render_report_figures(report, out_path.parent):
            print(f"figure -> {fig_path}")
    for tid, tally in sorted(report.per_tafsir.items()):
        print(f"{tid}: accurate {tally.accurate_count}, acceptable {tally.acceptable_count}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    host, _, port_str = args.addr.rpartition(":")
    if not host or not port_str.isdigit():
        print(f"bad --addr {args.addr!r}, expected HOST:PORT", file=sys.stderr)
        return EXIT_USAGE
    snapshot = load_snapshot(args.index, args.quran, args.model, args.endpoint)
    app = create_app(IndexHolder(snapshot))
    uvicorn.run(app, host=host, port=int(port_str), log_level="info")
    return EXIT_OK


_COMMANDS = {
    "ingest": _cmd_ingest,
    "train": _cmd_train,
    "index": _cmd_index,
    "search": _cmd_search,
    "eval": _cmd_eval,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except QuranSearchError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
