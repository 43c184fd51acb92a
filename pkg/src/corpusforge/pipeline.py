"""End-to-end stages: lexicon -> pairs -> align/baseline -> eval.

Every stage reads its inputs from files (the dumps, or artifacts of earlier
stages in the output directory), writes its outputs there, and records a
manifest with input/output digests so reruns can be compared byte for byte.
"""

from __future__ import annotations

import bz2
import configparser
import gzip
import hashlib
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .aligner import (
    AlignConfig,
    AlignmentCandidate,
    Label,
    PreparedArticle,
    align_baseline,
    align_rule_based,
    read_alignments,
    write_alignments,
)
from .dump import (
    CleanArticle,
    DumpParseError,
    DumpStats,
    Hyperlink,
    RawPage,
    StripStats,
    clean_page,
    parse_dump,
    resolve_redirects,
)
from .evalkit import (
    EvalReport,
    JudgmentError,
    export_for_annotation,
    format_table,
    import_judgments,
    read_gold,
    score_against_gold,
    tabulate,
)
from .lexicon import (
    BilingualLexicon,
    LexiconStats,
    Source,
    build_link_lexicon,
    export_lexicon,
    load_dictionary,
    merge,
    read_lexicon,
)
from .rules import RuleConfig, RuleId
from .tagging import EsTagger, JaTagger, TaggedSentence, default_seed, load_seed
from .textprep import (
    DEFAULT_ABBREVIATIONS,
    StopwordList,
    load_abbreviations,
    split_sentences_es,
    split_sentences_ja,
)

logger = logging.getLogger(__name__)

STAGES = ("lexicon", "pairs", "align", "baseline", "eval")
SYSTEMS = {"align": "rule", "baseline": "baseline"}
FORMATS = ("tsv", "tmx")

LEXICON_FILE = "lexicon.tsv"
PAIRS_FILE = "pairs.tsv"
ARTICLES_FILE = "articles.jsonl"


class ConfigError(Exception):
    """Bad or incomplete configuration (usage error)."""


class DataError(Exception):
    """Unreadable input or missing upstream artifact."""


# ---------------------------------------------------------------------------
# Configuration


def _opt_path(base: Path, raw: str | None) -> Path | None:
    raw = (raw or "").strip()
    if not raw:
        return None
    p = Path(raw)
    return p if p.is_absolute() else base / p


def _bool(section, key, default):
    try:
        return section.getboolean(key, fallback=default)
    except ValueError:
        raise ConfigError(f"{section.name}.{key}: expected a boolean") from None


def _num(section, key, default, kind=float):
    raw = section.get(key, fallback="").strip()
    if not raw:
        return default
    try:
        return kind(raw)
    except ValueError:
        raise ConfigError(f"{section.name}.{key}: expected a number, got {raw!r}") from None


@dataclass
class PipelineConfig:
    base_dir: Path
    ja_dump: Path
    es_dump: Path
    dictionary: Path
    out_dir: Path
    stopwords_ja: Path | None = None
    stopwords_es: Path | None = None
    abbreviations_es: Path | None = None
    seed_ja: Path | None = None
    seed_es: Path | None = None
    align: AlignConfig = field(default_factory=AlignConfig)
    formats: tuple[str, ...] = FORMATS
    gold: Path | None = None
    judgments: dict[str, Path] = field(default_factory=dict)
    sample_size: int = 0
    sample_seed: int = 0
    strategy: str = "uniform"
    jobs: int = 1

    REQUIRED = (("input", "ja_dump"), ("input", "es_dump"), ("input", "dictionary"), ("output", "dir"))

    @classmethod
    def load(cls, path) -> "PipelineConfig":
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
        cp.optionxform = str
        try:
            cp.read(path, encoding="utf-8")
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from None
        for sec, key in cls.REQUIRED:
            if not cp.has_option(sec, key) or not cp.get(sec, key).strip():
                raise ConfigError(f"missing config key: {sec}.{key}")
        for sec in ("textprep", "tagging", "align", "rules", "output", "eval"):
            if not cp.has_section(sec):
                cp.add_section(sec)
        base = path.parent.resolve()
        inp, tp, tg, al, ru, out, ev = (
            cp["input"], cp["textprep"], cp["tagging"], cp["align"], cp["rules"], cp["output"], cp["eval"],
        )

        enabled = {}
        for rid in RuleId:
            enabled[rid] = _bool(ru, f"{rid.value}.enabled", True)
        rules = RuleConfig(
            enabled=enabled,
            cop_window=_num(ru, "cop_window", 3, int),
            ne_ngram_max=_num(ru, "ne_ngram_max", 4, int),
        )
        try:
            align = AlignConfig(
                alpha=_num(al, "alpha", 0.5),
                tau_accept=_num(al, "tau_accept", 0.6),
                tau_partial_noun=_bool(al, "tau_partial_noun", True),
                first_sentence_bonus=_num(al, "first_sentence_bonus", 0.1),
                max_candidates_per_sentence=_num(al, "max_candidates_per_sentence", None, int),
                rules=rules,
            )
        except ValueError as exc:
            raise ConfigError(f"align: {exc}") from None

        formats = tuple(
            f.strip() for f in out.get("formats", fallback="tsv, tmx").split(",") if f.strip()
        )
        bad = [f for f in formats if f not in FORMATS]
        if bad:
            raise ConfigError(f"output.formats: unknown format(s) {bad}")
        strategy = ev.get("strategy", fallback="uniform").strip() or "uniform"
        if strategy not in ("uniform", "topk"):
            raise ConfigError(f"eval.strategy: expected uniform or topk, got {strategy!r}")

        judgments = {}
        for system in SYSTEMS.values():
            p = _opt_path(base, ev.get(f"judgments_{system}"))
            if p is not None:
                judgments[system] = p

        return cls(
            base_dir=base,
            ja_dump=_opt_path(base, inp["ja_dump"]),
            es_dump=_opt_path(base, inp["es_dump"]),
            dictionary=_opt_path(base, inp["dictionary"]),
            out_dir=_opt_path(base, out["dir"]),
            stopwords_ja=_opt_path(base, tp.get("stopwords_ja")),
            stopwords_es=_opt_path(base, tp.get("stopwords_es")),
            abbreviations_es=_opt_path(base, tp.get("abbreviations_es")),
            seed_ja=_opt_path(base, tg.get("seed_ja")),
            seed_es=_opt_path(base, tg.get("seed_es")),
            align=align,
            formats=formats,
            gold=_opt_path(base, ev.get("gold")),
            judgments=judgments,
            sample_size=_num(ev, "sample_size", 0, int),
            sample_seed=_num(ev, "seed", 0, int),
            strategy=strategy,
        )

    def input_files(self) -> dict[str, Path]:
        files = {
            "input.ja_dump": self.ja_dump,
            "input.es_dump": self.es_dump,
            "input.dictionary": self.dictionary,
            "textprep.stopwords_ja": self.stopwords_ja,
            "textprep.stopwords_es": self.stopwords_es,
            "textprep.abbreviations_es": self.abbreviations_es,
            "tagging.seed_ja": self.seed_ja,
            "tagging.seed_es": self.seed_es,
            "eval.gold": self.gold,
            **{f"eval.judgments_{k}": v for k, v in self.judgments.items()},
        }
        return {k: v for k, v in files.items() if v is not None}

    def check_files(self) -> None:
        for key, p in self.input_files().items():
            if not p.is_file():
                raise DataError(f"{key}: file not found: {p}")

    def rel(self, p: Path) -> str:
        try:
            return p.resolve().relative_to(self.base_dir).as_posix()
        except ValueError:
            return p.as_posix()

    def digest(self) -> str:
        """Digest of every setting that can influence outputs (not the output dir or jobs)."""
        a = self.align
        payload = {
            "inputs": {k: self.rel(v) for k, v in sorted(self.input_files().items())},
            "align": {
                "alpha": a.alpha,
                "tau_accept": a.tau_accept,
                "tau_partial_noun": a.tau_partial_noun,
                "first_sentence_bonus": a.first_sentence_bonus,
                "max_candidates_per_sentence": a.max_candidates_per_sentence,
            },
            "rules": {
                "enabled": {r.value: a.rules.is_enabled(r) for r in RuleId},
                "cop_window": a.rules.cop_window,
                "ne_ngram_max": a.rules.ne_ngram_max,
            },
            "formats": list(self.formats),
            "eval": {"sample_size": self.sample_size, "seed": self.sample_seed, "strategy": self.strategy},
        }
        blob = json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# Helpers


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def open_dump(path: Path):
    if path.suffix == ".bz2":
        return bz2.open(path, "rb")
    if path.suffix == ".gz":
        return gzip.open(path, "rb")
    return open(path, "rb")


def read_pages(path: Path, lang: str) -> tuple[list[RawPage], DumpStats]:
    stats = DumpStats()
    try:
        with open_dump(path) as f:
            pages = list(parse_dump(f, lang=lang, stats=stats))
    except (DumpParseError, ValueError, OSError) as exc:
        raise DataError(f"{path}: {exc}") from None
    return pages, stats


def _need(cfg: PipelineConfig, name: str, stage: str) -> Path:
    p = cfg.out_dir / name
    if not p.is_file():
        raise DataError(f"stage '{stage}' needs {name} in {cfg.out_dir}; run the upstream stage first")
    return p


def write_manifest(cfg: PipelineConfig, stage: str, inputs: dict[str, Path], outputs: list[Path], counts: dict) -> Path:
    manifest = {
        "stage": stage,
        "config_digest": cfg.digest(),
        "inputs": {name: sha256_file(p) for name, p in sorted(inputs.items())},
        "outputs": {p.name: sha256_file(p) for p in sorted(outputs)},
        "counts": counts,
    }
    path = cfg.out_dir / f"manifest_{stage}.json"
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(manifest, sort_keys=True, ensure_ascii=False, indent=2) + "\n")
    return path


def load_stopwords(cfg: PipelineConfig) -> dict[str, StopwordList]:
    out = {}
    for lang, p in (("ja", cfg.stopwords_ja), ("es", cfg.stopwords_es)):
        out[lang] = StopwordList.load(p, lang) if p else StopwordList.default(lang)
    return out


# ---------------------------------------------------------------------------
# Stages


def run_lexicon(cfg: PipelineConfig) -> dict:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    ja_pages, ja_stats = read_pages(cfg.ja_dump, "ja")
    es_pages, es_stats = read_pages(cfg.es_dump, "es")
    red_ja, red_es = resolve_redirects(ja_pages), resolve_redirects(es_pages)
    lstats = LexiconStats()
    link = build_link_lexicon(ja_pages, es_pages, red_ja, red_es, lstats)
    dstats = LexiconStats()
    try:
        dictionary = load_dictionary(cfg.dictionary, dstats)
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"{cfg.dictionary}: {exc}") from None
    merged = merge(link, dictionary)
    out = cfg.out_dir / LEXICON_FILE
    export_lexicon(merged, out)
    counts = {
        "ja_pages": ja_stats.pages,
        "es_pages": es_stats.pages,
        "skipped_pages": ja_stats.skipped + es_stats.skipped,
        "redirect_cycle_members": len(red_ja.cycles) + len(red_es.cycles),
        "link_entries": len(link),
        "dict_entries": len(dictionary),
        "dict_lines_skipped": dstats.skipped,
        "langlinks_skipped": lstats.skipped,
        "merged_entries": len(merged),
    }
    inputs = {k: cfg.input_files()[k] for k in ("input.ja_dump", "input.es_dump", "input.dictionary")}
    write_manifest(cfg, "lexicon", {k: v for k, v in inputs.items()}, [out], counts)
    return counts


def _resolved_article(page: RawPage, redirects, sstats: StripStats) -> CleanArticle:
    art = clean_page(page, sstats)
    links = []
    for h in art.links:
        target = redirects.resolve(h.target) or h.target
        links.append(Hyperlink(target, h.anchor, h.start, h.end))
    art.links = links
    return art


def run_pairs(cfg: PipelineConfig) -> dict:
    lex_path = _need(cfg, LEXICON_FILE, "pairs")
    link = read_lexicon(lex_path).filter(Source.LINK)
    ja_pages, _ = read_pages(cfg.ja_dump, "ja")
    es_pages, _ = read_pages(cfg.es_dump, "es")
    red_ja, red_es = resolve_redirects(ja_pages), resolve_redirects(es_pages)
    ja_articles = {p.title: p for p in ja_pages if p.redirect_target is None}
    es_articles = {p.title: p for p in es_pages if p.redirect_target is None}

    pairs = []
    for ja_title in sorted(ja_articles):
        for es_title in sorted(link.translate_ja(ja_title)):
            if es_title in es_articles:
                pairs.append((ja_title, es_title))

    sstats = StripStats()
    cleaned: dict[tuple[str, str], CleanArticle] = {}
    for ja_title, es_title in pairs:
        if ("ja", ja_title) not in cleaned:
            cleaned["ja", ja_title] = _resolved_article(ja_articles[ja_title], red_ja, sstats)
        if ("es", es_title) not in cleaned:
            cleaned["es", es_title] = _resolved_article(es_articles[es_title], red_es, sstats)

    pairs_path = cfg.out_dir / PAIRS_FILE
    with open(pairs_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("ja_title\tes_title\n")
        for ja_title, es_title in pairs:
            f.write(f"{ja_title}\t{es_title}\n")
    art_path = cfg.out_dir / ARTICLES_FILE
    with open(art_path, "w", encoding="utf-8", newline="\n") as f:
        for key in sorted(cleaned):
            f.write(json.dumps(cleaned[key].to_record(), ensure_ascii=False, sort_keys=True) + "\n")
    counts = {
        "article_pairs": len(pairs),
        "ja_articles": len(ja_articles),
        "es_articles": len(es_articles),
        "unbalanced_regions": sstats.unbalanced,
    }
    inputs = {
        "input.ja_dump": cfg.ja_dump,
        "input.es_dump": cfg.es_dump,
        LEXICON_FILE: lex_path,
    }
    write_manifest(cfg, "pairs", inputs, [pairs_path, art_path], counts)
    return counts


def read_pairs(path: Path) -> list[tuple[str, str]]:
    with open(path, encoding="utf-8") as f:
        f.readline()
        return [tuple(line.rstrip("\n").split("\t")) for line in f if line.strip()]


def read_articles(path: Path) -> dict[tuple[str, str], CleanArticle]:
    out = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                art = CleanArticle.from_record(json.loads(line))
                out[art.lang, art.title] = art
    return out


# per-process state for the worker pool
_WORKER: dict = {}


def _init_worker(state: dict) -> None:
    _WORKER.clear()
    _WORKER.update(state)
    lexicon = state["lexicon"]
    _WORKER["ja_tagger"] = JaTagger(state["seed_ja"], lexicon)
    _WORKER["es_tagger"] = EsTagger(state["seed_es"], lexicon)


def prepare_article(art: CleanArticle, tagger=None, abbreviations=DEFAULT_ABBREVIATIONS) -> PreparedArticle:
    if art.lang == "ja":
        records = split_sentences_ja(art.text, art.links, art.title)
    else:
        records = split_sentences_es(art.text, art.links, art.title, abbreviations)
    sentences = [tagger.tag(r) if tagger else TaggedSentence(r, []) for r in records]
    return PreparedArticle(art.title, art.lang, sentences)


def _align_one(job: tuple[str, CleanArticle, CleanArticle]) -> list[AlignmentCandidate]:
    system, ja_art, es_art = job
    w = _WORKER
    cfg: AlignConfig = w["align"]
    if system == "rule":
        ja = prepare_article(ja_art, w["ja_tagger"])
        es = prepare_article(es_art, w["es_tagger"], w["abbreviations"])
        return align_rule_based(ja, es, w["lexicon"], cfg, w["stopwords"])
    ja = prepare_article(ja_art)
    es = prepare_article(es_art, None, w["abbreviations"])
    return align_baseline(ja, es, w["link_lexicon"], cfg)


def run_align(cfg: PipelineConfig, system: str = "rule") -> dict:
    stage = "align" if system == "rule" else "baseline"
    lex_path = _need(cfg, LEXICON_FILE, stage)
    pairs_path = _need(cfg, PAIRS_FILE, stage)
    art_path = _need(cfg, ARTICLES_FILE, stage)
    lexicon = read_lexicon(lex_path)
    articles = read_articles(art_path)
    pairs = read_pairs(pairs_path)
    state = {
        "lexicon": lexicon,
        "link_lexicon": lexicon.filter(Source.LINK),
        "stopwords": load_stopwords(cfg),
        "align": cfg.align,
        "abbreviations": load_abbreviations(cfg.abbreviations_es) if cfg.abbreviations_es else DEFAULT_ABBREVIATIONS,
        "seed_ja": load_seed(cfg.seed_ja) if cfg.seed_ja else default_seed("ja"),
        "seed_es": load_seed(cfg.seed_es) if cfg.seed_es else default_seed("es"),
    }
    jobs = []
    for ja_title, es_title in pairs:
        try:
            jobs.append((system, articles["ja", ja_title], articles["es", es_title]))
        except KeyError as exc:
            raise DataError(f"{art_path}: missing article {exc}") from None

    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs, initializer=_init_worker, initargs=(state,)) as ex:
            results = list(ex.map(_align_one, jobs, chunksize=1))
    else:
        _init_worker(state)
        results = [_align_one(j) for j in jobs]

    kept = [c for res in results for c in res if c.label is not Label.REJECTED]
    outputs = []
    for fmt in cfg.formats:
        p = cfg.out_dir / f"alignments_{system}.{fmt}"
        write_alignments(kept, p, fmt)
        outputs.append(p)
    counts = {
        "article_pairs": len(pairs),
        "candidates": sum(len(r) for r in results),
        "aligned": sum(c.label is Label.ALIGNED for c in kept),
        "partial": sum(c.label is Label.PARTIAL for c in kept),
    }
    inputs = {LEXICON_FILE: lex_path, PAIRS_FILE: pairs_path, ARTICLES_FILE: art_path}
    for key in ("textprep.stopwords_ja", "textprep.stopwords_es", "textprep.abbreviations_es",
                "tagging.seed_ja", "tagging.seed_es"):
        if key in cfg.input_files():
            inputs[key] = cfg.input_files()[key]
    write_manifest(cfg, stage, inputs, outputs, counts)
    return counts


def run_eval(cfg: PipelineConfig) -> dict:
    available = {}
    for system in SYSTEMS.values():
        p = cfg.out_dir / f"alignments_{system}.tsv"
        if p.is_file():
            available[system] = p
    if not available:
        raise DataError(
            f"stage 'eval' needs alignments_rule.tsv or alignments_baseline.tsv in {cfg.out_dir}; "
            "run 'align' or 'baseline' first (with tsv output)"
        )
    gold = read_gold(cfg.gold) if cfg.gold else None
    reports: list[EvalReport] = []
    outputs: list[Path] = []
    by_system = {}
    counts: dict = {}
    for system, path in available.items():
        cands = read_alignments(path, system)
        by_system[system] = cands
        report = EvalReport(system=system)
        if gold is not None:
            report = score_against_gold(cands, gold, system)
        if system in cfg.judgments:
            try:
                js = import_judgments(cfg.judgments[system])
            except JudgmentError as exc:
                raise DataError(str(exc)) from None
            tab = tabulate(js, system)
            report.counts, report.per100 = tab.counts, tab.per100
        if cfg.sample_size > 0:
            ap = cfg.out_dir / f"annotate_{system}.tsv"
            try:
                export_for_annotation(cands, cfg.sample_size, cfg.sample_seed, ap, cfg.strategy)
            except ValueError as exc:
                raise DataError(f"{system}: {exc}") from None
            outputs.append(ap)
        reports.append(report)
        counts[system] = report.to_dict()

    json_path = cfg.out_dir / "eval_report.json"
    with open(json_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps([r.to_dict() for r in reports], ensure_ascii=False, indent=2, sort_keys=True) + "\n")
    txt_path = cfg.out_dir / "eval_report.txt"
    with open(txt_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_table(reports))

    from .plots import plot_eval_reports, plot_score_distribution

    fig_path = cfg.out_dir / "eval_report.png"
    plot_eval_reports(reports, fig_path)
    dist_path = cfg.out_dir / "scores.png"
    plot_score_distribution(by_system, dist_path, cfg.align.tau_accept)
    outputs += [json_path, txt_path, fig_path, dist_path]

    inputs = {p.name: p for p in available.values()}
    for key in ["eval.gold"] + [f"eval.judgments_{s}" for s in cfg.judgments]:
        if key in cfg.input_files():
            inputs[key] = cfg.input_files()[key]
    write_manifest(cfg, "eval", inputs, outputs, counts)
    return counts


def run_stage(stage: str, cfg: PipelineConfig) -> dict:
    cfg.check_files()
    if stage == "lexicon":
        return run_lexicon(cfg)
    if stage == "pairs":
        return run_pairs(cfg)
    if stage in SYSTEMS:
        return run_align(cfg, SYSTEMS[stage])
    if stage == "eval":
        return run_eval(cfg)
    if stage == "all":
        return {s: run_stage(s, cfg) for s in STAGES}
    raise ConfigError(f"unknown stage {stage!r}")
