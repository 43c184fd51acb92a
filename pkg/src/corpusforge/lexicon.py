"""Japanese-Spanish translation lexicon built from interlanguage links and a
general dictionary."""

from __future__ import annotations

import logging
import re
import unicodedata
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .dump import RawPage, RedirectMap, extract_langlinks

logger = logging.getLogger(__name__)

_PAREN_RE = re.compile(r"\s*[(（][^()（）]*[)）]\s*$")


class Source(str, Enum):
    LINK = "link"
    DICT = "dict"


def nfc(s: str) -> str:
    return unicodedata.normalize("NFC", s.strip())


def strip_disambiguator(title: str) -> str:
    """'Mercurio (planeta)' -> 'Mercurio'."""
    stripped = _PAREN_RE.sub("", title).strip()
    return stripped or title


@dataclass(frozen=True, order=True)
class LexEntry:
    ja_term: str
    es_term: str
    source: Source

    def __post_init__(self):
        if not self.ja_term or not self.es_term:
            raise ValueError("lexicon terms must be non-empty")
        if nfc(self.ja_term) != self.ja_term or nfc(self.es_term) != self.es_term:
            raise ValueError("lexicon terms must be NFC-normalized and trimmed")


@dataclass
class LexiconStats:
    skipped: int = 0


class BilingualLexicon:
    """Many-to-many ja<->es term mapping.

    Each (ja, es) pair is stored once; when a pair is known from both
    sources the link-derived provenance wins.
    """

    def __init__(self, entries: Iterable[LexEntry] = ()):
        self._pairs: dict[tuple[str, str], Source] = {}
        self.index_ja: dict[str, set[str]] = {}
        self.index_es: dict[str, set[str]] = {}
        self._es_lower: dict[str, set[str]] | None = None
        for e in entries:
            self.add(e)

    def add(self, entry: LexEntry) -> None:
        key = (entry.ja_term, entry.es_term)
        prev = self._pairs.get(key)
        if prev is Source.LINK:
            return
        self._pairs[key] = entry.source
        self.index_ja.setdefault(entry.ja_term, set()).add(entry.es_term)
        self.index_es.setdefault(entry.es_term, set()).add(entry.ja_term)
        self._es_lower = None

    def add_pair(self, ja: str, es: str, source: Source) -> None:
        ja, es = nfc(ja), nfc(es)
        if ja and es:
            self.add(LexEntry(ja, es, source))

    @property
    def entries(self) -> frozenset[LexEntry]:
        return frozenset(LexEntry(j, e, s) for (j, e), s in self._pairs.items())

    def sorted_entries(self) -> list[LexEntry]:
        return [LexEntry(j, e, self._pairs[j, e]) for j, e in sorted(self._pairs)]

    def __len__(self):
        return len(self._pairs)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self._pairs

    def __eq__(self, other):
        if not isinstance(other, BilingualLexicon):
            return NotImplemented
        return self._pairs == other._pairs

    def __repr__(self):
        return f"BilingualLexicon({len(self)} entries)"

    def source_of(self, ja: str, es: str) -> Source | None:
        return self._pairs.get((ja, es))

    def filter(self, source: Source) -> "BilingualLexicon":
        return BilingualLexicon(e for e in self.sorted_entries() if e.source is source)

    def translate_ja(self, term: str) -> set[str]:
        return set(self.index_ja.get(nfc(term), ()))

    def translate_es(self, term: str) -> set[str]:
        term = nfc(term)
        hit = self.index_es.get(term)
        if not hit:
            hit = self.index_es.get(term.lower())
        return set(hit or ())

    def has_es_lower(self, word: str) -> bool:
        """True when some es term equals ``word`` case-insensitively."""
        if self._es_lower is None:
            self._es_lower = {}
            for es in self.index_es:
                self._es_lower.setdefault(es.lower(), set()).add(es)
        return word.lower() in self._es_lower

    @property
    def ja_terms(self) -> set[str]:
        return set(self.index_ja)


def merge(a: BilingualLexicon, b: BilingualLexicon) -> BilingualLexicon:
    out = BilingualLexicon()
    # links first so their provenance is kept on overlap
    for lex in (a, b):
        for e in lex.sorted_entries():
            if e.source is Source.LINK:
                out.add(e)
    for lex in (a, b):
        for e in lex.sorted_entries():
            if e.source is Source.DICT:
                out.add(e)
    return out


def _link_terms(title: str) -> list[str]:
    base = strip_disambiguator(title)
    return [base] if base == title else [base, title]


def build_link_lexicon(
    ja_pages: Iterable[RawPage],
    es_pages: Iterable[RawPage],
    redirects_ja: RedirectMap,
    redirects_es: RedirectMap,
    stats: LexiconStats | None = None,
) -> BilingualLexicon:
    """Pair article titles connected by interlanguage links.

    Both endpoints are resolved through their redirect maps first, so a link
    to a redirect page yields the canonical article title.  Titles with a
    parenthetical disambiguator contribute the bare term plus the full title.
    """
    stats = stats if stats is not None else LexiconStats()
    resolvers = {"ja": redirects_ja, "es": redirects_es}
    pairs: set[tuple[str, str]] = set()
    for pages in (ja_pages, es_pages):
        for page in pages:
            for ll in extract_langlinks(page):
                if {ll.src_lang, ll.dst_lang} != {"ja", "es"}:
                    continue
                src = resolvers[ll.src_lang].resolve(ll.src_title)
                dst = resolvers[ll.dst_lang].resolve(ll.dst_title)
                if src is None or dst is None:
                    stats.skipped += 1
                    continue
                ja, es = (src, dst) if ll.src_lang == "ja" else (dst, src)
                pairs.add((ja, es))
    lex = BilingualLexicon()
    for ja, es in sorted(pairs):
        for j in _link_terms(ja):
            for e in _link_terms(es):
                lex.add_pair(j, e, Source.LINK)
    if stats.skipped:
        logger.warning("skipped %d interlanguage link(s) into unresolvable redirects", stats.skipped)
    return lex


def _data_lines(path: Path):
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def load_dictionary(tsv_path, stats: LexiconStats | None = None) -> BilingualLexicon:
    """Read a ``ja<TAB>es`` dictionary file; malformed lines are counted and skipped."""
    stats = stats if stats is not None else LexiconStats()
    lex = BilingualLexicon()
    for lineno, line in _data_lines(Path(tsv_path)):
        if line.count("\t") != 1:
            stats.skipped += 1
            logger.warning("%s:%d: expected exactly one TAB, skipping", tsv_path, lineno)
            continue
        ja, es = line.split("\t")
        if not nfc(ja) or not nfc(es):
            stats.skipped += 1
            continue
        lex.add_pair(ja, es, Source.DICT)
    return lex


def export_lexicon(lex: BilingualLexicon, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for e in lex.sorted_entries():
            f.write(f"{e.ja_term}\t{e.es_term}\t{e.source.value}\n")


def read_lexicon(path) -> BilingualLexicon:
    """Inverse of :func:`export_lexicon`."""
    lex = BilingualLexicon()
    for lineno, line in _data_lines(Path(path)):
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected ja<TAB>es<TAB>source")
        try:
            source = Source(parts[2])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: unknown source {parts[2]!r}") from None
        lex.add_pair(parts[0], parts[1], source)
    return lex
