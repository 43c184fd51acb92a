"""Command-line entry point.

Exit status: 0 on success, 1 on usage/config errors, 2 on data errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .dump import DumpParseError, DumpStats, clean_page, parse_dump
from .lexicon import export_lexicon
from .pipeline import (
    LEXICON_FILE,
    ConfigError,
    DataError,
    PipelineConfig,
    open_dump,
    run_stage,
)

EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", required=True, help="pipeline configuration file (INI)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for align/baseline")
    p.add_argument("--stopwords-ja", type=Path, help="override the Japanese stopword file")
    p.add_argument("--stopwords-es", type=Path, help="override the Spanish stopword file")
    p.add_argument("--format", choices=("tsv", "tmx"), help="write only this alignment format")
    p.add_argument("--strategy", choices=("uniform", "topk"), help="annotation sampling strategy")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="corpusforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lexicon", help="build and export the merged ja-es lexicon")
    p.add_argument("action", nargs="?", choices=("build", "export"), default="build")
    p.add_argument("--output", type=Path, help="also export the lexicon to this path")
    _common(p)
    for name, text in (
        ("pairs", "select article pairs present in both languages"),
        ("align", "rule-based sentence alignment"),
        ("baseline", "hyperlink-overlap baseline alignment"),
        ("eval", "score alignments against gold and/or judgments"),
        ("all", "run every stage in order"),
    ):
        _common(sub.add_parser(name, help=text))

    d = sub.add_parser("dump", help="dump utilities")
    d.add_argument("action", choices=("inspect",))
    d.add_argument("path", type=Path, help="MediaWiki XML export (.xml, .xml.bz2, .xml.gz)")
    d.add_argument("--lang", choices=("ja", "es"), help="override the dump language")
    d.add_argument("--limit", type=int, default=0, help="stop after this many pages")
    d.add_argument("-v", "--verbose", action="store_true")
    return parser


def _inspect(args) -> int:
    stats = DumpStats()
    out = sys.stdout
    try:
        with open_dump(args.path) as f:
            for k, page in enumerate(parse_dump(f, lang=args.lang, stats=stats)):
                if args.limit and k >= args.limit:
                    break
                rec = clean_page(page).to_record()
                if page.redirect_target:
                    rec["redirect"] = page.redirect_target
                out.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
    except (DumpParseError, ValueError, OSError) as exc:
        print(f"corpusforge: {args.path}: {exc}", file=sys.stderr)
        return EXIT_DATA
    if stats.skipped:
        print(f"corpusforge: skipped {stats.skipped} page(s) without title", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command == "dump":
        return _inspect(args)
    try:
        cfg = PipelineConfig.load(args.config)
        if args.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        cfg.jobs = args.jobs
        if args.stopwords_ja:
            cfg.stopwords_ja = args.stopwords_ja
        if args.stopwords_es:
            cfg.stopwords_es = args.stopwords_es
        if args.format:
            cfg.formats = (args.format,)
        if args.strategy:
            cfg.strategy = args.strategy
        counts = run_stage(args.command, cfg)
        if args.command == "lexicon" and args.output:
            from .lexicon import read_lexicon

            export_lexicon(read_lexicon(cfg.out_dir / LEXICON_FILE), args.output)
    except ConfigError as exc:
        print(f"corpusforge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"corpusforge: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(json.dumps(counts, ensure_ascii=False, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
