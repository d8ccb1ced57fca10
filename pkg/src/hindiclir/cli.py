"""Command-line entry point: ``hindiclir index|search|translate|run|evaluate``.

Settings come from an optional flat ``key = value`` config file and are
overridden by flags.  Exit codes: 0 success, 1 usage or configuration
error, 2 data error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import __version__
from .corpus import load_hindi_stopwords, default_hindi_stopwords, parse_documents, parse_qrels, parse_topics
from .encoding import decode_iscii
from .errors import ClirError
from .evaluation import (MODES, RankerParams, evaluate_run, format_reports, reports_to_csv,
                         run_experiment)
from .index import (DEFAULT_B, DEFAULT_CUTOFF, DEFAULT_K1, build_index, format_run, load_index,
                    read_run, save_index, score_bm25, write_run)
from .lexicon import default_dictionary, default_stopwords, load_dictionary, load_stopwords
from .querypipe import DEFAULT_CAP, format_candidates, plan_query
from .translit import Transliterator

log = logging.getLogger("hindiclir")

INDEX_FILE = "index.bin"
EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class ConfigError(Exception):
    """Bad configuration: unknown key, bad value, or a missing path."""


class NoTopicsRun(ClirError):
    def __init__(self):
        super().__init__("every topic was skipped; nothing to report")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for data errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class ExperimentConfig:
    corpus: str | None = None
    corpus_encoding: str = "utf8"
    topics: str | None = None
    qrels: str | None = None
    dictionary: str | None = None
    dictionary_encoding: str = "utf8"
    stopwords_en: str | None = None
    stopwords_hi: str | None = None
    scheme: str | None = None
    respell: str | None = None
    index_dir: str | None = None
    output: str | None = None
    k1: float = DEFAULT_K1
    b: float = DEFAULT_B
    cutoff: int = DEFAULT_CUTOFF
    mode: str = "both"
    cap: int = DEFAULT_CAP
    policy: str = "oracle"
    workers: int = 1
    runtag: str = "hindiclir"

    def set(self, key, raw):
        key = key.strip().replace("-", "_")
        types = {f.name: f.type for f in fields(self)}
        if key not in types:
            raise ConfigError(f"unknown config key {key!r}")
        value = raw.strip() if isinstance(raw, str) else raw
        try:
            if types[key] == "float":
                value = float(value)
            elif types[key] == "int":
                value = int(value)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
        setattr(self, key, value)

    def validate(self, required=()):
        if self.k1 <= 0:
            raise ConfigError("k1 must be > 0")
        if not 0 <= self.b <= 1:
            raise ConfigError("b must be in [0, 1]")
        if self.cutoff < 1:
            raise ConfigError("cutoff must be >= 1")
        if self.cap < 1:
            raise ConfigError("cap must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.mode not in MODES + ("both",):
            raise ConfigError(f"mode must be EHT, EHRT or both, not {self.mode!r}")
        if self.policy not in ("oracle", "score-mass"):
            raise ConfigError(f"policy must be oracle or score-mass, not {self.policy!r}")
        for enc_key in ("corpus_encoding", "dictionary_encoding"):
            if getattr(self, enc_key) not in ("utf8", "utf-8", "iscii"):
                raise ConfigError(f"{enc_key} must be utf8 or iscii")
        for key in required:
            if getattr(self, key) is None:
                raise ConfigError(f"{key} is required (flag --{key.replace('_', '-')} or config file)")
        for key in ("corpus", "topics", "qrels", "dictionary", "stopwords_en", "stopwords_hi", "scheme", "respell"):
            path = getattr(self, key)
            if path is not None and not Path(path).exists():
                raise ConfigError(f"{key}: no such path {path}")
        return self


def read_config(path) -> ExperimentConfig:
    cfg = ExperimentConfig()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = line.split("=", 1)
        try:
            cfg.set(key, value)
        except ConfigError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from None
    return cfg


def _config_from_args(args) -> ExperimentConfig:
    cfg = read_config(args.config) if args.config else ExperimentConfig()
    for f in fields(ExperimentConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            cfg.set(f.name, value)
    return cfg


# ---------------------------------------------------------------------------
# resource loading

def _read_text(path, encoding="utf8"):
    data = Path(path).read_bytes()
    return decode_iscii(data) if encoding == "iscii" else data.decode("utf-8")


def _corpus_files(path):
    p = Path(path)
    if p.is_dir():
        return sorted(f for f in p.rglob("*") if f.is_file() and not f.name.startswith("."))
    return [p]


def _load_documents(cfg):
    docs = []
    for f in _corpus_files(cfg.corpus):
        try:
            docs.extend(parse_documents(_read_text(f, cfg.corpus_encoding)))
        except ClirError as exc:
            exc.source_file = str(f)
            raise
    return docs


def _dictionary(cfg):
    if cfg.dictionary is None:
        return default_dictionary()
    return load_dictionary(cfg.dictionary, "iscii" if cfg.dictionary_encoding == "iscii" else "utf8")


def _stopwords_en(cfg):
    return load_stopwords(cfg.stopwords_en) if cfg.stopwords_en else default_stopwords()


def _stopwords_hi(cfg):
    return load_hindi_stopwords(cfg.stopwords_hi) if cfg.stopwords_hi else default_hindi_stopwords()


def _transliterator(cfg):
    return Transliterator.from_files(cfg.scheme, cfg.respell)


def _index(cfg):
    """Load the persisted index from ``index_dir``, else build from ``corpus``."""
    if cfg.index_dir is not None and (Path(cfg.index_dir) / INDEX_FILE).exists():
        return load_index(Path(cfg.index_dir) / INDEX_FILE)
    if cfg.corpus is None:
        raise ConfigError("need an index_dir holding a built index, or a corpus")
    return build_index(_load_documents(cfg), _stopwords_hi(cfg))


# ---------------------------------------------------------------------------
# subcommands

def cmd_index(cfg, args, out):
    cfg.validate(required=("corpus",))
    index = build_index(_load_documents(cfg), _stopwords_hi(cfg))
    if cfg.index_dir is not None:
        d = Path(cfg.index_dir)
        d.mkdir(parents=True, exist_ok=True)
        save_index(index, d / INDEX_FILE)
    out.write(f"N={index.N} tokens={index.total_tokens} vocabulary={index.vocabulary_size}\n")


def cmd_search(cfg, args, out):
    cfg.validate()
    index = _index(cfg)
    terms = index.analyze_query(" ".join(args.query))
    ranked = score_bm25(index, terms, cfg.k1, cfg.b, cfg.cutoff, args.qid)
    out.write(format_run([ranked], cfg.runtag))


def cmd_translate(cfg, args, out):
    cfg.validate()
    plan = plan_query(args.qid, " ".join(args.query), _dictionary(cfg), _stopwords_en(cfg),
                      _transliterator(cfg), cfg.cap)
    # the baseline is also the first candidate; repeating it on stdout
    # would break the one-line-per-candidate dump
    print(f"baseline\t{plan.baseline.mask_bits}\t{plan.baseline.text}", file=sys.stderr)
    out.write(format_candidates(plan.candidates))


def cmd_run(cfg, args, out):
    required = ("topics", "qrels", "output")
    cfg.validate(required=required)
    if cfg.corpus is None and not (cfg.index_dir and (Path(cfg.index_dir) / INDEX_FILE).exists()):
        raise ConfigError("run needs a corpus or an index_dir containing a built index")
    topics = list(parse_topics(_read_text(cfg.topics)))
    qrels = parse_qrels(_read_text(cfg.qrels))
    dictionary, stop_en, translit = _dictionary(cfg), _stopwords_en(cfg), _transliterator(cfg)
    index = _index(cfg)
    result = run_experiment(topics, index, dictionary, stop_en, qrels, cfg.mode,
                            RankerParams(cfg.k1, cfg.b, cfg.cutoff), cfg.cap, cfg.policy,
                            translit, cfg.workers)
    for qid, reason in result.skipped:
        print(f"warning: topic {qid} skipped: {reason}", file=sys.stderr)
    if not any(result.runs[m] for m in result.runs):
        raise NoTopicsRun()
    outdir = Path(cfg.output)
    outdir.mkdir(parents=True, exist_ok=True)
    for mode, run in result.runs.items():
        ordered = [run[q] for q in sorted(run, key=_qid_key)]
        write_run(ordered, outdir / f"{mode.lower()}.run", f"{cfg.runtag}-{mode}")
    table = format_reports(result.reports)
    (outdir / "report.txt").write_text(table, encoding="utf-8")
    (outdir / "report.csv").write_text(reports_to_csv(result.reports), encoding="utf-8")
    out.write(table)


def _qid_key(qid):
    return (0, int(qid), qid) if qid.isdigit() else (1, 0, qid)


def cmd_evaluate(cfg, args, out):
    cfg.validate(required=("qrels",))
    run = read_run(args.run)
    qrels = parse_qrels(_read_text(cfg.qrels))
    report = evaluate_run(run, qrels)
    out.write(format_reports({Path(args.run).stem: report}))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("-v", "--verbose", action="store_true")
    res = common.add_argument_group("resources")
    for key in ("dictionary", "stopwords-en", "stopwords-hi", "scheme", "respell", "index-dir"):
        res.add_argument(f"--{key}")
    res.add_argument("--dictionary-encoding", choices=("utf8", "iscii"))
    rank = common.add_argument_group("ranking")
    rank.add_argument("--k1", type=float)
    rank.add_argument("--b", type=float)
    rank.add_argument("--cutoff", type=int)

    parser = _Parser(prog="hindiclir", description="English to Hindi cross-language retrieval experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("index", parents=[common], help="build and persist an inverted index")
    p.add_argument("--corpus", help="SGML corpus file or directory")
    p.add_argument("--corpus-encoding", choices=("utf8", "iscii"))
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("search", parents=[common], help="BM25 search with a Hindi query")
    p.add_argument("query", nargs="+")
    p.add_argument("--corpus")
    p.add_argument("--corpus-encoding", choices=("utf8", "iscii"))
    p.add_argument("--qid", default="0")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("translate", parents=[common], help="print the candidate queries for an English title")
    p.add_argument("query", nargs="+")
    p.add_argument("--qid", default="Q")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("run", parents=[common], help="run EHT and/or EHRT over a topic set")
    p.add_argument("--corpus")
    p.add_argument("--corpus-encoding", choices=("utf8", "iscii"))
    p.add_argument("--topics")
    p.add_argument("--qrels")
    p.add_argument("--output", "-o", help="directory for run files and reports")
    p.add_argument("--mode", choices=("EHT", "EHRT", "both"))
    p.add_argument("--cap", type=int)
    p.add_argument("--policy", choices=("oracle", "score-mass"))
    p.add_argument("--workers", type=int)
    p.add_argument("--runtag")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("evaluate", parents=[common], help="trec_eval-style metrics for a run file")
    p.add_argument("run")
    p.add_argument("--qrels")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = _config_from_args(args)
        args.func(cfg, args, out)
    except ConfigError as exc:
        print(f"hindiclir: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClirError as exc:
        where = getattr(exc, "source_file", None)
        suffix = f" ({where})" if where else ""
        print(f"hindiclir: {type(exc).__name__}: {exc}{suffix}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"hindiclir: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
