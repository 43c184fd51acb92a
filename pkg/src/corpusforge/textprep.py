"""Sentence splitting and stopword handling."""

from __future__ import annotations

import re
import unicodedata
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .dump import Hyperlink

DEFAULT_ABBREVIATIONS = frozenset(
    "sr. sra. srta. sres. dr. dra. ud. uds. vd. vds. etc. núm. nº. pág. págs. "
    "art. cap. vol. ej. p. aprox. av. avda. dpto. prof. profa. ing. lic. st. sto. sta. "
    "a.c. d.c. a. c. d. s.a. ee. uu.".split()
)

_ES_BOUNDARY_RE = re.compile(r"[.!?]+")
_JA_TERMINATORS = "。！？"
_JA_CLOSERS = "」』）)】"


@dataclass(frozen=True)
class SentenceRecord:
    article_title: str
    lang: str
    index: int
    text: str
    link_targets: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("sentence text must be non-empty")


@dataclass(frozen=True)
class StopwordList:
    lang: str
    words: frozenset[str] = frozenset()

    def __post_init__(self):
        norm = frozenset(unicodedata.normalize("NFC", w).lower() for w in self.words)
        object.__setattr__(self, "words", norm)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    @classmethod
    def load(cls, path, lang: str) -> "StopwordList":
        words = []
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.split("#", 1)[0].strip()
                if line:
                    words.append(line)
        return cls(lang, frozenset(words))

    @classmethod
    def default(cls, lang: str) -> "StopwordList":
        ref = resources.files("corpusforge") / "data" / f"stopwords_{lang}.txt"
        with resources.as_file(ref) as p:
            return cls.load(p, lang)


def _records(
    spans: list[tuple[int, int]],
    text: str,
    links: Sequence[Hyperlink],
    title: str,
    lang: str,
) -> list[SentenceRecord]:
    out = []
    for start, end in spans:
        # trim whitespace so the span matches the stored text
        while start < end and text[start].isspace():
            start += 1
        while end > start and text[end - 1].isspace():
            end -= 1
        if start == end:
            continue
        targets = frozenset(
            h.target for h in links if h.start >= 0 and start <= h.start < end
        )
        out.append(SentenceRecord(title, lang, len(out), text[start:end], targets))
    return out


def _is_abbreviation(text: str, dot: int, abbreviations: frozenset[str]) -> bool:
    i = dot
    while i > 0 and not text[i - 1].isspace():
        i -= 1
    word = text[i : dot + 1]
    if word.lower() in abbreviations:
        return True
    # initials like "J." in "J. R. R. Tolkien"
    core = word.lstrip("¿¡(\"'")
    return len(core) == 2 and core[0].isupper()


def split_sentences_es(
    text: str,
    links: Sequence[Hyperlink] = (),
    article_title: str = "",
    abbreviations: Iterable[str] = DEFAULT_ABBREVIATIONS,
) -> list[SentenceRecord]:
    abbreviations = frozenset(a.lower() for a in abbreviations)
    spans = []
    start = 0
    for m in _ES_BOUNDARY_RE.finditer(text):
        end = m.end()
        rest = text[end:]
        if rest:
            if not rest[0].isspace():
                continue
            nxt = rest.lstrip()
            if nxt and not (nxt[0].isupper() or nxt[0] in "¿¡"):
                continue
        if m.group() == "." and _is_abbreviation(text, m.start(), abbreviations):
            continue
        spans.append((start, end))
        start = end
    spans.append((start, len(text)))
    return _records(spans, text, links, article_title, "es")


def split_sentences_ja(
    text: str, links: Sequence[Hyperlink] = (), article_title: str = ""
) -> list[SentenceRecord]:
    spans = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        cut = False
        if ch in _JA_TERMINATORS:
            cut = True
        elif ch == "." and i + 1 < n and text[i + 1].isspace():
            cut = True
        i += 1
        if cut:
            while i < n and (text[i] in _JA_TERMINATORS or text[i] in _JA_CLOSERS):
                i += 1
            spans.append((start, i))
            start = i
    spans.append((start, n))
    return _records(spans, text, links, article_title, "ja")


def split_sentences(text, links=(), article_title="", lang="es", **kw):
    if lang == "ja":
        return split_sentences_ja(text, links, article_title)
    return split_sentences_es(text, links, article_title, **kw)


def remove_stopwords(tokens: Iterable, stoplist: StopwordList | Iterable[str]) -> list:
    """Drop tokens (strings or objects with ``.surface``) whose lowercase form is listed."""
    words = stoplist.words if isinstance(stoplist, StopwordList) else {w.lower() for w in stoplist}
    return [t for t in tokens if getattr(t, "surface", t).lower() not in words]


def load_abbreviations(path: Path | str) -> frozenset[str]:
    with open(path, encoding="utf-8") as f:
        return frozenset(
            w for w in (line.split("#", 1)[0].strip().lower() for line in f) if w
        )
