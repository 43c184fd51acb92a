"""Sentence-pair scoring and one-to-one selection for an article pair."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from xml.sax.saxutils import escape, quoteattr

from . import __version__
from .dump import normalize_title
from .lexicon import BilingualLexicon, strip_disambiguator
from .rules import RuleConfig, RuleOutcome, RuleScore, check_rules, rule_score
from .tagging import CONTENT_TAGS, ES_TOKEN_RE, Tag, TaggedSentence
from .textprep import StopwordList, remove_stopwords

NOUN_TAGS = frozenset({Tag.NOUN, Tag.PROPN})
MAX_NGRAM = 4


class Label(str, Enum):
    ALIGNED = "aligned"
    PARTIAL = "partial"
    REJECTED = "rejected"


@dataclass
class AlignConfig:
    alpha: float = 0.5
    tau_accept: float = 0.6
    tau_partial_noun: bool = True
    first_sentence_bonus: float = 0.1
    max_candidates_per_sentence: int | None = None
    rules: RuleConfig = field(default_factory=RuleConfig)

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0,1], got {self.alpha}")
        if not 0.0 <= self.tau_accept <= 1.0:
            raise ValueError(f"tau_accept must lie in [0,1], got {self.tau_accept}")
        if not 0.0 <= self.first_sentence_bonus <= 0.2:
            raise ValueError("first_sentence_bonus must lie in [0,0.2]")
        if self.max_candidates_per_sentence is not None and self.max_candidates_per_sentence < 1:
            raise ValueError("max_candidates_per_sentence must be positive")


@dataclass
class PreparedArticle:
    """A segmented, tagged article ready for alignment."""

    title: str
    lang: str
    sentences: list[TaggedSentence]


@dataclass
class AlignmentCandidate:
    ja_ref: tuple[str, int]
    es_ref: tuple[str, int]
    rule: RuleScore | None
    overlap: float
    matched_nouns: int
    total: float
    label: Label = Label.REJECTED
    system: str = "rule"
    ja_text: str = ""
    es_text: str = ""
    outcomes: tuple[RuleOutcome, ...] = ()

    @property
    def pair_id(self) -> str:
        return pair_id(self.ja_ref, self.es_ref)

    @property
    def hard_reject(self) -> bool:
        return self.rule is not None and self.rule.hard_reject


def pair_id(ja_ref: tuple[str, int], es_ref: tuple[str, int]) -> str:
    return f"{ja_ref[0]}#{ja_ref[1]}|{es_ref[0]}#{es_ref[1]}"


def jaccard(a: set, b: set) -> float:
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)


def _es_words(term: str, stop_es: StopwordList | None) -> list[str]:
    words = [w.lower() for w in ES_TOKEN_RE.findall(strip_disambiguator(term)) if w[0].isalnum()]
    if stop_es is not None:
        words = [w for w in words if w not in stop_es]
    return words


def translation_set(
    ja: TaggedSentence,
    lexicon: BilingualLexicon,
    stop_ja: StopwordList | None = None,
    stop_es: StopwordList | None = None,
) -> dict[str, bool]:
    """Spanish words reachable from the ja content tokens, flagged True when
    contributed by a noun."""
    out: dict[str, bool] = {}

    def add(term: str, noun: bool):
        for w in _es_words(term, stop_es):
            out[w] = out.get(w, False) or noun

    toks = ja.tokens if stop_ja is None else remove_stopwords(ja.tokens, stop_ja)
    for t in toks:
        if t.tag in CONTENT_TAGS:
            for tr in lexicon.translate_ja(t.surface):
                add(tr, t.tag in NOUN_TAGS)
    # multiword lexicon terms split across several tokens
    full = ja.tokens
    for i in range(len(full)):
        for n in range(2, MAX_NGRAM + 1):
            span = full[i : i + n]
            if len(span) < n or any(t.tag is Tag.PUNCT for t in span):
                break
            if not any(t.tag in CONTENT_TAGS for t in span):
                continue
            for tr in lexicon.translate_ja("".join(t.surface for t in span)):
                add(tr, True)
    return out


def surface_set(es: TaggedSentence, stop_es: StopwordList | None = None) -> set[str]:
    toks = es.tokens if stop_es is None else remove_stopwords(es.tokens, stop_es)
    return {t.surface.lower() for t in toks if t.tag in CONTENT_TAGS}


def lexical_overlap(
    ja: TaggedSentence,
    es: TaggedSentence,
    lexicon: BilingualLexicon,
    stopwords: Mapping[str, StopwordList] | None = None,
) -> tuple[float, int]:
    """Jaccard overlap of translated ja content words against es content words,
    plus the number of shared words that came from ja nouns."""
    stopwords = stopwords or {}
    stop_es = stopwords.get("es")
    trans = translation_set(ja, lexicon, stopwords.get("ja"), stop_es)
    surf = surface_set(es, stop_es)
    shared = trans.keys() & surf
    return jaccard(set(trans), surf), sum(trans[w] for w in shared)


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


def score_pair(
    ja: TaggedSentence,
    es: TaggedSentence,
    lexicon: BilingualLexicon,
    cfg: AlignConfig | None = None,
    stopwords: Mapping[str, StopwordList] | None = None,
) -> AlignmentCandidate:
    cfg = cfg or AlignConfig()
    outcomes = check_rules(ja, es, lexicon, cfg.rules)
    rs = rule_score(outcomes)
    overlap, nouns = lexical_overlap(ja, es, lexicon, stopwords)
    if rs.hard_reject:
        total = 0.0
    else:
        bonus = cfg.first_sentence_bonus if ja.record.index == 0 and es.record.index == 0 else 0.0
        total = _clamp(cfg.alpha * rs.score + (1.0 - cfg.alpha) * overlap + bonus)
    return AlignmentCandidate(
        ja_ref=(ja.record.article_title, ja.record.index),
        es_ref=(es.record.article_title, es.record.index),
        rule=rs,
        overlap=overlap,
        matched_nouns=nouns,
        total=total,
        system="rule",
        ja_text=ja.record.text,
        es_text=es.record.text,
        outcomes=tuple(outcomes),
    )


# ---------------------------------------------------------------------------
# Selection


def _order_key(c: AlignmentCandidate):
    return (-c.total, c.ja_ref[1], c.es_ref[1])


def greedy_select(scores: Mapping[tuple[int, int], float]) -> list[tuple[int, int]]:
    """Greedy one-to-one matching: best total first, ties to lower ja then es index."""
    used_ja: set[int] = set()
    used_es: set[int] = set()
    picked = []
    for (i, j), _ in sorted(scores.items(), key=lambda kv: (-kv[1], kv[0][0], kv[0][1])):
        if i in used_ja or j in used_es:
            continue
        used_ja.add(i)
        used_es.add(j)
        picked.append((i, j))
    return picked


def assign_labels(cands: list[AlignmentCandidate], cfg: AlignConfig) -> list[AlignmentCandidate]:
    eligible = [c for c in cands if not c.hard_reject]
    if cfg.max_candidates_per_sentence is not None:
        rows: dict[int, list[AlignmentCandidate]] = {}
        for c in eligible:
            rows.setdefault(c.ja_ref[1], []).append(c)
        eligible = [
            c
            for row in rows.values()
            for c in sorted(row, key=_order_key)[: cfg.max_candidates_per_sentence]
        ]
    by_ref = {(c.ja_ref[1], c.es_ref[1]): c for c in eligible}
    selected = set(greedy_select({k: c.total for k, c in by_ref.items()}))
    row_best: dict[int, tuple[int, int]] = {}
    for key, c in sorted(by_ref.items(), key=lambda kv: _order_key(kv[1])):
        row_best.setdefault(key[0], key)
    best_keys = set(row_best.values())

    for c in cands:
        key = (c.ja_ref[1], c.es_ref[1])
        c.label = Label.REJECTED
        if key not in by_ref:
            continue
        if key in selected and c.total >= cfg.tau_accept:
            c.label = Label.ALIGNED
        elif key in best_keys:
            evidence = c.matched_nouns >= 1 if cfg.tau_partial_noun else c.overlap > 0
            if evidence:
                c.label = Label.PARTIAL
    return sorted(cands, key=lambda c: (c.ja_ref[1], c.es_ref[1]))


def align_rule_based(
    ja_article: PreparedArticle,
    es_article: PreparedArticle,
    lexicon: BilingualLexicon,
    cfg: AlignConfig | None = None,
    stopwords: Mapping[str, StopwordList] | None = None,
) -> list[AlignmentCandidate]:
    cfg = cfg or AlignConfig()
    if not ja_article.sentences or not es_article.sentences:
        return []
    cands = [
        score_pair(ja, es, lexicon, cfg, stopwords)
        for ja in ja_article.sentences
        for es in es_article.sentences
    ]
    return assign_labels(cands, cfg)


# ---------------------------------------------------------------------------
# Hyperlink baseline


def _title_key(title: str) -> str:
    return strip_disambiguator(normalize_title(title)).casefold()


def _mentions(text: str, title: str, lang: str) -> bool:
    name = strip_disambiguator(title)
    if not name:
        return False
    if lang == "ja":
        return name in text
    return re.search(r"(?<!\w)" + re.escape(name.casefold()) + r"(?!\w)", text.casefold()) is not None


def baseline_link_sets(
    ja: TaggedSentence, es: TaggedSentence, link_lexicon: BilingualLexicon,
    ja_title: str, es_title: str,
) -> tuple[set[str], set[str]]:
    ja_targets = set(ja.record.link_targets)
    if _mentions(ja.record.text, ja_title, "ja"):
        ja_targets.add(ja_title)
    translated = {
        _title_key(tr) for tgt in ja_targets for tr in link_lexicon.translate_ja(tgt)
    }
    es_targets = {_title_key(t) for t in es.record.link_targets}
    if _mentions(es.record.text, es_title, "es"):
        es_targets.add(_title_key(es_title))
    return translated, es_targets


def align_baseline(
    ja_article: PreparedArticle,
    es_article: PreparedArticle,
    link_lexicon: BilingualLexicon,
    cfg: AlignConfig | None = None,
) -> list[AlignmentCandidate]:
    """Score pairs by Jaccard overlap of their (translated) hyperlink targets.

    A sentence that mentions its article title gets the title as an extra
    link, which is exactly what lets title repetition dominate the ranking.
    """
    cfg = cfg or AlignConfig()
    if not ja_article.sentences or not es_article.sentences:
        return []
    cands = []
    for ja in ja_article.sentences:
        for es in es_article.sentences:
            a, b = baseline_link_sets(ja, es, link_lexicon, ja_article.title, es_article.title)
            score = jaccard(a, b)
            cands.append(
                AlignmentCandidate(
                    ja_ref=(ja.record.article_title, ja.record.index),
                    es_ref=(es.record.article_title, es.record.index),
                    rule=None,
                    overlap=score,
                    matched_nouns=len(a & b),
                    total=score,
                    system="baseline",
                    ja_text=ja.record.text,
                    es_text=es.record.text,
                )
            )
    return assign_labels(cands, cfg)


# ---------------------------------------------------------------------------
# Output

TSV_COLUMNS = (
    "pair_id", "ja_title", "es_title", "ja_idx", "es_idx", "total", "label", "ja_text", "es_text",
)


def _clean_cell(s: str) -> str:
    return " ".join(s.split())


def _sorted(cands: Iterable[AlignmentCandidate]) -> list[AlignmentCandidate]:
    return sorted(cands, key=lambda c: (c.ja_ref, c.es_ref))


def write_alignments(candidates: Iterable[AlignmentCandidate], path, format: str = "tsv") -> None:
    cands = _sorted(candidates)
    if format == "tsv":
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("\t".join(TSV_COLUMNS) + "\n")
            for c in cands:
                row = (
                    c.pair_id, c.ja_ref[0], c.es_ref[0], str(c.ja_ref[1]), str(c.es_ref[1]),
                    f"{c.total:.6f}", c.label.value, _clean_cell(c.ja_text), _clean_cell(c.es_text),
                )
                f.write("\t".join(row) + "\n")
    elif format == "tmx":
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write('<?xml version="1.0" encoding="UTF-8"?>\n')
            f.write('<tmx version="1.4">\n')
            f.write(
                f'  <header creationtool="corpusforge" creationtoolversion="{__version__}" '
                'segtype="sentence" o-tmf="corpusforge" adminlang="en" srclang="ja" '
                'datatype="plaintext"/>\n'
            )
            f.write("  <body>\n")
            for c in cands:
                if c.label is not Label.ALIGNED:
                    continue
                f.write(f"    <tu tuid={quoteattr(c.pair_id)}>\n")
                f.write(f'      <prop type="x-score">{c.total:.6f}</prop>\n')
                f.write(f'      <prop type="x-system">{escape(c.system)}</prop>\n')
                for lang, text in (("ja", c.ja_text), ("es", c.es_text)):
                    f.write(f'      <tuv xml:lang="{lang}"><seg>{escape(_clean_cell(text))}</seg></tuv>\n')
                f.write("    </tu>\n")
            f.write("  </body>\n</tmx>\n")
    else:
        raise ValueError(f"unknown alignment format {format!r}")


def read_alignments(path, system: str = "") -> list[AlignmentCandidate]:
    """Load a TSV written by :func:`write_alignments`."""
    out = []
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n").split("\t")
        if tuple(header) != TSV_COLUMNS:
            raise ValueError(f"{path}: not an alignment TSV")
        for lineno, line in enumerate(f, 2):
            row = line.rstrip("\n").split("\t")
            if len(row) != len(TSV_COLUMNS):
                raise ValueError(f"{path}:{lineno}: expected {len(TSV_COLUMNS)} columns")
            _, ja_title, es_title, ja_idx, es_idx, total, label, ja_text, es_text = row
            total = float(total)
            out.append(
                AlignmentCandidate(
                    ja_ref=(ja_title, int(ja_idx)),
                    es_ref=(es_title, int(es_idx)),
                    rule=None,
                    overlap=0.0,
                    matched_nouns=0,
                    total=total,
                    label=Label(label),
                    system=system,
                    ja_text=ja_text,
                    es_text=es_text,
                )
            )
    return out
