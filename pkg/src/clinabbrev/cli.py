"""Command-line interface: ingest | train | detect | rank | expand | eval | run."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import fields
from pathlib import Path

from .config import ConfigError, PipelineConfig, load_config
from .corpus import Corpus, IngestError, SourceKind, ingest_corpus, ingest_manifest
from .detect import detect, format_mentions_tsv
from .embeddings import EmbeddingFormatError, EmbeddingMatrix, load_embeddings, save_embeddings, train_sgns
from .evaluation import (
    GoldFormatError,
    compare_modes,
    evaluate,
    format_mode_table,
    format_mode_tsv,
    load_gold,
)
from .kb import KBFormatError, load_kb
from .pipeline import expand_document
from .ranker import RankMode, format_ranked_tsv, rank_candidates

log = logging.getLogger("clinabbrev")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
DATA_ERRORS = (IngestError, KBFormatError, EmbeddingFormatError, GoldFormatError, ConfigError,
               OSError, ValueError)


class StageError(Exception):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except DATA_ERRORS as exc:
        raise StageError(name, exc) from exc


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value config file; flags override it")
    p.add_argument("--seed", type=int)
    p.add_argument("--kb", help="knowledge base TSV (default: bundled sample)")
    p.add_argument("--out", help="output directory")
    p.add_argument("-v", "--verbose", action="store_true")


def _corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--manifest", help="corpus manifest (path<TAB>source_kind); default: bundled sample")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--per-line", dest="per_line", action="store_true", default=None,
                      help="one document per non-blank line")
    mode.add_argument("--per-file", dest="per_line", action="store_false",
                      help="one document per file")


def _train_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--negatives", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--min-count", dest="min_count", type=int)
    p.add_argument("--subsample", type=float)
    p.add_argument("--workers", type=int)


def _rank_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--embeddings", action="append",
                   help="embedding file (word2vec text format); eval accepts label=path and repeats")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--mode", choices=[m.value for m in RankMode])


def _input_args(p: argparse.ArgumentParser, required=True) -> None:
    p.add_argument("--in", dest="inputs", action="append", required=required, metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clinabbrev", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", help="tokenize a corpus and report token counts")
    _common(p); _corpus_args(p)

    p = sub.add_parser("train", help="train SGNS embeddings on a corpus")
    _common(p); _corpus_args(p); _train_args(p)
    p.add_argument("--output", help="embedding file (default: OUT/embeddings.txt)")

    p = sub.add_parser("detect", help="list abbreviation mentions as TSV")
    _common(p); _input_args(p)
    p.add_argument("--per-line", dest="per_line", action="store_true", default=None)

    p = sub.add_parser("rank", help="rank the candidate expansions of one abbreviation")
    _common(p); _rank_args(p)
    p.add_argument("--abbrev", required=True)

    p = sub.add_parser("expand", help="rewrite notes with top-1 expansions")
    _common(p); _rank_args(p); _input_args(p)
    p.add_argument("--per-line", dest="per_line", action="store_true", default=None)

    p = sub.add_parser("eval", help="accuracy and error categories against a gold file")
    _common(p); _rank_args(p); _input_args(p)
    p.add_argument("--per-line", dest="per_line", action="store_true", default=None)
    p.add_argument("--gold", required=False)
    p.add_argument("--compare", action="store_true", help="report every ranking mode per embedding source")
    p.add_argument("--report-tsv", dest="report_tsv")

    p = sub.add_parser("run", help="ingest -> train -> detect -> rank -> expand -> eval")
    _common(p); _corpus_args(p); _train_args(p); _rank_args(p); _input_args(p, required=False)
    p.add_argument("--gold")
    return parser


def resolve_config(args: argparse.Namespace) -> PipelineConfig:
    values = load_config(args.config) if getattr(args, "config", None) else {}
    for f in fields(PipelineConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    cfg = PipelineConfig(**values)
    cfg.validate()
    return cfg


def _load_corpus(cfg: PipelineConfig) -> Corpus:
    manifest, per_line = cfg.resolved_manifest()
    return ingest_manifest(manifest, per_line=per_line, workers=cfg.workers)


def _load_inputs(cfg: PipelineConfig) -> Corpus:
    return ingest_corpus([(p, SourceKind.CLINICAL_NOTE) for p in cfg.inputs], per_line=bool(cfg.per_line))


def _embedding_sources(cfg: PipelineConfig) -> dict[str, str]:
    sources = {}
    for item in cfg.embeddings:
        label, sep, path = item.rpartition("=")
        label = label if sep else Path(item).stem
        sources[label] = path
    return sources


def _first_embeddings(cfg: PipelineConfig) -> EmbeddingMatrix | None:
    if not cfg.embeddings:
        return None
    return load_embeddings(next(iter(_embedding_sources(cfg).values())))


def cmd_ingest(cfg: PipelineConfig, args) -> int:
    corpus = _stage("ingest", _load_corpus, cfg)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "corpus.tsv", "w", encoding="utf-8") as fh:
        for doc in corpus:
            fh.write(f"{doc.id}\t{doc.source_kind.value}\t{' '.join(doc.words())}\n")
    print(f"documents\t{len(corpus)}")
    for kind, n in sorted(corpus.token_counts().items()):
        print(f"tokens[{kind}]\t{n}")
    return EXIT_OK


def cmd_train(cfg: PipelineConfig, args) -> int:
    corpus = _stage("ingest", _load_corpus, cfg)
    m = _stage("train", train_sgns, corpus, cfg.train_config())
    path = Path(args.output) if args.output else Path(cfg.out) / "embeddings.txt"
    path.parent.mkdir(parents=True, exist_ok=True)
    _stage("train", save_embeddings, m, path)
    print(f"wrote {path} ({len(m)} x {m.dim})")
    return EXIT_OK


def cmd_detect(cfg: PipelineConfig, args) -> int:
    kb = _stage("kb", load_kb, cfg.kb)
    corpus = _stage("ingest", _load_inputs, cfg)
    for doc in corpus:
        sys.stdout.write(format_mentions_tsv(detect(doc, kb, cfg.detector_config())))
    return EXIT_OK


def cmd_rank(cfg: PipelineConfig, args) -> int:
    kb = _stage("kb", load_kb, cfg.kb)
    m = _stage("embeddings", _first_embeddings, cfg)
    ranked = rank_candidates(args.abbrev, kb, m, cfg.ranker_config())
    if ranked is None:
        print(f"error [rank]: {args.abbrev!r} is not in the knowledge base", file=sys.stderr)
        return EXIT_DATA
    sys.stdout.write(format_ranked_tsv(args.abbrev, ranked))
    return EXIT_OK


def cmd_expand(cfg: PipelineConfig, args) -> int:
    kb = _stage("kb", load_kb, cfg.kb)
    m = _stage("embeddings", _first_embeddings, cfg)
    corpus = _stage("ingest", _load_inputs, cfg)
    for doc in corpus:
        sys.stdout.write(expand_document(doc, kb, m, cfg.ranker_config(), cfg.detector_config()).rstrip("\n") + "\n")
    return EXIT_OK


def cmd_eval(cfg: PipelineConfig, args) -> int:
    if not cfg.gold:
        raise StageError("eval", ValueError("--gold is required"))
    kb = _stage("kb", load_kb, cfg.kb)
    gold = _stage("gold", load_gold, cfg.gold)
    corpus = _stage("ingest", _load_inputs, cfg)
    if args.compare:
        rows = _stage("eval", compare_modes, corpus, kb, _embedding_sources(cfg), gold, cfg.lam,
                      cfg.detector_config())
        sys.stdout.write(format_mode_table(rows))
        if args.report_tsv:
            Path(args.report_tsv).write_text(format_mode_tsv(rows), encoding="utf-8")
        return EXIT_OK
    m = _stage("embeddings", _first_embeddings, cfg)
    report = _stage("eval", evaluate, corpus, kb, m, gold, cfg.ranker_config(), cfg.detector_config())
    print(report.summary())
    if args.report_tsv:
        Path(args.report_tsv).write_text(_report_tsv(report), encoding="utf-8")
    return EXIT_OK


def _report_tsv(report) -> str:
    lines = ["metric\tvalue", f"total\t{report.total}", f"correct\t{report.correct}",
             f"accuracy\t{report.accuracy:.6f}"]
    lines += [f"{cat.value}\t{n}" for cat, n in report.error_counts.items()]
    lines += [f"compound_components\t{report.compound_components}",
              f"compound_components_correct\t{report.compound_components_correct}"]
    return "\n".join(lines) + "\n"


def run_pipeline(cfg: PipelineConfig) -> int:
    """Full pipeline; artifacts land in ``cfg.out``.

    Writes embeddings.txt (unless embeddings were supplied), mentions.tsv,
    rankings.tsv, expanded.txt and, with a gold file, report.txt/report.tsv.
    """
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    kb = _stage("kb", load_kb, cfg.kb)
    if cfg.embeddings:
        m = _stage("embeddings", _first_embeddings, cfg)
    else:
        corpus = _stage("ingest", _load_corpus, cfg)
        m = _stage("train", train_sgns, corpus, cfg.train_config())
        _stage("train", save_embeddings, m, out / "embeddings.txt")
    if cfg.inputs:
        docs = _stage("ingest", _load_inputs, cfg)
    else:
        docs = Corpus([d for d in _stage("ingest", _load_corpus, cfg) if d.source_kind is SourceKind.CLINICAL_NOTE])
    rcfg, dcfg = cfg.ranker_config(), cfg.detector_config()

    mentions = [mn for doc in docs for mn in detect(doc, kb, dcfg)]
    (out / "mentions.tsv").write_text(format_mentions_tsv(mentions), encoding="utf-8")
    seen = []
    for mn in mentions:
        for comp in mn.components:
            key = comp.upper().rstrip(".")
            if key not in seen and comp in kb:
                seen.append(key)
    (out / "rankings.tsv").write_text(
        "".join(format_ranked_tsv(a, rank_candidates(a, kb, m, rcfg)) for a in seen), encoding="utf-8"
    )
    with open(out / "expanded.txt", "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(expand_document(doc, kb, m, rcfg, dcfg).rstrip("\n") + "\n")
    if cfg.gold:
        gold = _stage("gold", load_gold, cfg.gold)
        report = _stage("eval", evaluate, docs, kb, m, gold, rcfg, dcfg)
        (out / "report.txt").write_text(report.summary() + "\n", encoding="utf-8")
        (out / "report.tsv").write_text(_report_tsv(report), encoding="utf-8")
        print(report.summary())
    print(f"artifacts written to {out}")
    return EXIT_OK


COMMANDS = {
    "ingest": cmd_ingest, "train": cmd_train, "detect": cmd_detect, "rank": cmd_rank,
    "expand": cmd_expand, "eval": cmd_eval, "run": lambda cfg, args: run_pipeline(cfg),
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
    except DATA_ERRORS as exc:
        print(f"error [config]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](cfg, args)
    except StageError as exc:
        print(f"error [{exc.stage}]: {exc.cause}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"error [internal]: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
