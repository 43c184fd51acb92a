"""MediaWiki export parsing, redirect resolution and wikitext stripping."""

from __future__ import annotations

import logging
import re
import unicodedata
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import BinaryIO
from xml.parsers import expat

logger = logging.getLogger(__name__)

LANGS = ("ja", "es")
MAX_REDIRECT_HOPS = 16


class DumpParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def normalize_title(title: str) -> str:
    title = unicodedata.normalize("NFC", title).replace("_", " ")
    return " ".join(title.split())


def _ucfirst(title: str) -> str:
    return title[:1].upper() + title[1:]


@dataclass(frozen=True)
class RawPage:
    lang: str
    title: str
    wikitext: str
    redirect_target: str | None = None

    def __post_init__(self):
        if not self.title:
            raise ValueError("page title must be non-empty")
        if self.lang not in LANGS:
            raise ValueError(f"unsupported language {self.lang!r}")
        if self.redirect_target is not None and self.redirect_target == self.title:
            raise ValueError(f"page {self.title!r} redirects to itself")


@dataclass(frozen=True)
class Hyperlink:
    target: str
    anchor: str = ""
    # character span of the anchor in the stripped text, -1 when unknown
    start: int = -1
    end: int = -1

    def __post_init__(self):
        if not self.target:
            raise ValueError("hyperlink target must be non-empty")
        if not self.anchor:
            object.__setattr__(self, "anchor", self.target)


@dataclass(frozen=True)
class InterlangLink:
    src_lang: str
    src_title: str
    dst_lang: str
    dst_title: str

    def __post_init__(self):
        if self.src_lang == self.dst_lang:
            raise ValueError("interlanguage link must cross languages")


@dataclass
class CleanArticle:
    lang: str
    title: str
    text: str
    links: list[Hyperlink] = field(default_factory=list)
    langlinks: list[InterlangLink] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "lang": self.lang,
            "title": self.title,
            "text": self.text,
            "links": [
                {"target": h.target, "anchor": h.anchor, "start": h.start, "end": h.end}
                for h in self.links
            ],
            "langlinks": [
                {"lang": ll.dst_lang, "title": ll.dst_title} for ll in self.langlinks
            ],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "CleanArticle":
        return cls(
            lang=rec["lang"],
            title=rec["title"],
            text=rec["text"],
            links=[
                Hyperlink(d["target"], d["anchor"], d.get("start", -1), d.get("end", -1))
                for d in rec.get("links", [])
            ],
            langlinks=[
                InterlangLink(rec["lang"], rec["title"], d["lang"], d["title"])
                for d in rec.get("langlinks", [])
            ],
        )


@dataclass
class DumpStats:
    pages: int = 0
    skipped: int = 0


# ---------------------------------------------------------------------------
# XML export parsing


class _PageCollector:
    def __init__(self, lang: str | None, stats: DumpStats):
        self.lang = lang
        self.stats = stats
        self.path: list[str] = []
        self.ready: list[RawPage] = []
        self._reset()

    def _reset(self):
        self.title: str | None = None
        self.redirect: str | None = None
        self.text: list[str] | None = None
        self.buf: list[str] | None = None

    @staticmethod
    def _local(name: str) -> str:
        # expat namespace mode joins uri and local name with a space
        return name.rsplit(" ", 1)[-1]

    def start(self, name, attrs):
        name = self._local(name)
        self.path.append(name)
        if name == "mediawiki" and self.lang is None:
            lang = attrs.get("http://www.w3.org/XML/1998/namespace lang") or attrs.get("xml:lang")
            if lang:
                self.lang = lang
        elif name == "page":
            self._reset()
        elif name == "title" and self.path[-2:-1] == ["page"]:
            self.buf = []
        elif name == "redirect" and self.path[-2:-1] == ["page"]:
            self.redirect = attrs.get("title")
        elif name == "text" and self.path[-2:-1] == ["revision"]:
            self.text = []

    def end(self, name):
        name = self._local(name)
        self.path.pop()
        if name == "title" and self.buf is not None:
            self.title = "".join(self.buf)
            self.buf = None
        elif name == "page":
            self._finish()

    def chars(self, data):
        if self.buf is not None:
            self.buf.append(data)
        elif self.text is not None and self.path and self.path[-1] == "text":
            self.text.append(data)

    def _finish(self):
        title = normalize_title(self.title or "")
        if not title:
            self.stats.skipped += 1
            logger.warning("skipping page without <title>")
            return
        if self.lang not in LANGS:
            raise ValueError(f"dump language unknown or unsupported: {self.lang!r}")
        target = normalize_title(self.redirect) if self.redirect else None
        if target == title:
            target = None
        self.ready.append(
            RawPage(self.lang, title, "".join(self.text or []), target)
        )
        self.stats.pages += 1


def parse_dump(
    stream: BinaryIO,
    lang: str | None = None,
    stats: DumpStats | None = None,
    chunk_size: int = 1 << 16,
) -> Iterator[RawPage]:
    """Stream RawPages out of a MediaWiki XML export.

    ``lang`` defaults to the ``xml:lang`` attribute of the root element.
    Pages lacking a title are skipped and counted in ``stats.skipped``.
    """
    stats = stats if stats is not None else DumpStats()
    collector = _PageCollector(lang, stats)
    parser = expat.ParserCreate("UTF-8", namespace_separator=" ")
    parser.buffer_text = True
    parser.StartElementHandler = collector.start
    parser.EndElementHandler = collector.end
    parser.CharacterDataHandler = collector.chars
    while True:
        chunk = stream.read(chunk_size)
        try:
            parser.Parse(chunk, not chunk)
        except expat.ExpatError as exc:
            raise DumpParseError(
                f"malformed XML: {expat.ErrorString(exc.code)}", parser.ErrorByteIndex
            ) from None
        yield from collector.ready
        collector.ready.clear()
        if not chunk:
            break


# ---------------------------------------------------------------------------
# Redirects


class RedirectMap(Mapping):
    """Title -> canonical title, with cycle members excluded and listed."""

    def __init__(self, mapping: dict[str, str], cycles: list[str], broken: list[str]):
        self._map = mapping
        self.cycles = cycles
        # titles whose chain runs into a cycle without being on it
        self.broken = broken

    def __getitem__(self, key):
        return self._map[key]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def lookup(self, title: str) -> str | None:
        """Resolve with MediaWiki-style normalization; None for cycle titles."""
        title = normalize_title(title)
        if title in self._map:
            return self._map[title]
        alt = _ucfirst(title)
        if alt in self._map:
            return self._map[alt]
        return None

    def resolve(self, title: str) -> str | None:
        """Like lookup, but titles absent from the dump map to themselves."""
        hit = self.lookup(title)
        if hit is not None:
            return hit
        title = normalize_title(title)
        if title in self.cycles or title in self.broken:
            return None
        return title


def _match_title(title: str, known: Mapping[str, object]) -> str:
    if title in known:
        return title
    alt = _ucfirst(title)
    return alt if alt in known else title


def resolve_redirects(pages: Iterable[RawPage]) -> RedirectMap:
    """Follow redirect chains to their terminal title.

    Titles on a cycle are listed in ``cycles``; titles whose chain runs into a
    cycle, or needs more than ``MAX_REDIRECT_HOPS`` hops, are listed in
    ``broken``.  Neither appears in the mapping.  Non-redirect pages map to
    themselves, and a dangling target is treated as terminal.
    """
    pages = list(pages)
    langs = {p.lang for p in pages}
    if len(langs) > 1:
        raise ValueError(f"resolve_redirects expects one language, got {sorted(langs)}")
    by_title: dict[str, RawPage] = {p.title: p for p in pages}
    nxt = {
        t: _match_title(p.redirect_target, by_title)
        for t, p in by_title.items()
        if p.redirect_target is not None
    }

    # functional graph: every title has at most one successor, so each walk
    # ends at a terminal title or enters exactly one cycle
    cyclic: set[str] = set()
    terminal: dict[str, tuple[str, int]] = {}  # title -> (target, hops)
    into_cycle: set[str] = set()
    for start in sorted(by_title):
        if start in terminal or start in cyclic or start in into_cycle:
            continue
        path = [start]
        pos = {start: 0}
        cur = start
        while True:
            if cur not in nxt:
                end = (cur, 0)
                break
            cur = nxt[cur]
            if cur in terminal:
                end = terminal[cur]
                break
            if cur in cyclic or cur in into_cycle:
                end = None
                break
            if cur in pos:
                cyclic.update(path[pos[cur]:])
                path = path[: pos[cur]]
                end = None
                break
            pos[cur] = len(path)
            path.append(cur)
        if end is None:
            into_cycle.update(path)
            continue
        target, hops = end
        # path[-1] is cur when the walk ended at a terminal title
        if path[-1] == cur and cur not in terminal:
            path.pop()
            terminal[cur] = (cur, 0)
        for k, t in enumerate(reversed(path), 1):
            terminal[t] = (target, hops + k)

    mapping = {
        t: tgt for t, (tgt, hops) in terminal.items() if hops <= MAX_REDIRECT_HOPS and t in by_title
    }
    too_long = [t for t, (_, hops) in terminal.items() if hops > MAX_REDIRECT_HOPS]
    return RedirectMap(mapping, sorted(cyclic), sorted(into_cycle | set(too_long)))

# ---------------------------------------------------------------------------
# Interlanguage links

LANGLINK_RE = re.compile(r"\[\[([a-z]{2,3}):([^\[\]|:][^\[\]|]*)\]\]")


def extract_langlinks(page: RawPage) -> list[InterlangLink]:
    out = []
    seen = set()
    for m in LANGLINK_RE.finditer(page.wikitext):
        code, title = m.group(1), normalize_title(m.group(2))
        if code == page.lang or not title or (code, title) in seen:
            continue
        seen.add((code, title))
        out.append(InterlangLink(page.lang, page.title, code, title))
    return out


# ---------------------------------------------------------------------------
# Wikitext stripping

_MEDIA_NS = {
    "file", "image", "media", "category",
    "archivo", "imagen", "categoría", "categoria", "anexo",
    "ファイル", "画像", "カテゴリ", "メディア",
}

# private-use sentinels bracketing link anchors until offsets are fixed
_OPEN, _SEP, _CLOSE = "\ue000", "\ue001", "\ue002"

_COMMENT_RE = re.compile(r"<!--.*?(?:-->|\Z)", re.S)
_REF_RE = re.compile(r"<ref\b[^>]*/>|<ref\b[^>]*>.*?(?:</ref\s*>|\Z)", re.S | re.I)
_TAG_RE = re.compile(r"</?[A-Za-z][^<>]*>")
_HEADING_RE = re.compile(r"^[ \t]*(=+)[^\n]*?\1[ \t]*$", re.M)
_EXTLINK_RE = re.compile(r"\[(?:https?:)?//[^\s\]]+(?:\s+([^\]]*))?\]")
_URL_RE = re.compile(r"https?://\S+")
_EMPH_RE = re.compile(r"'{2,}")
_LIST_RE = re.compile(r"^[*#:;]+", re.M)
_NOISE_RE = re.compile(r'[()"*（）“”«»]')
_SPACE_PUNCT_RE = re.compile(r"\s+([.,;:!?。、])")
_EMPTY_PUNCT_RE = re.compile(r"([,;:])(?=[,;:.])")
_LEFTOVER_RE = re.compile(r"\[\[|\]\]|\{\{|\}\}|\{\||\|\}|<ref", re.I)


def _remove_balanced(text: str, opener: str, closer: str) -> tuple[str, int]:
    """Drop nested opener..closer regions; an unclosed region eats the rest."""
    out = []
    depth = 0
    i = 0
    n = len(text)
    unbalanced = 0
    while i < n:
        if text.startswith(opener, i):
            depth += 1
            i += len(opener)
        elif depth and text.startswith(closer, i):
            depth -= 1
            i += len(closer)
        else:
            if not depth:
                out.append(text[i])
            i += 1
    if depth:
        unbalanced = 1
    return "".join(out), unbalanced


def _remove_tables(text: str) -> tuple[str, int]:
    # tables open with "{|" at line start and close with "|}"
    out = []
    depth = 0
    i = 0
    n = len(text)
    while i < n:
        if text.startswith("{|", i):
            depth += 1
            i += 2
        elif depth and text.startswith("|}", i):
            depth -= 1
            i += 2
        else:
            if not depth:
                out.append(text[i])
            i += 1
    return "".join(out), int(depth > 0)


def _find_link_end(text: str, start: int) -> int:
    """Index just past the ']]' closing the link opened at ``start``, or -1."""
    depth = 0
    i = start
    n = len(text)
    while i < n:
        if text.startswith("[[", i):
            depth += 1
            i += 2
        elif text.startswith("]]", i):
            depth -= 1
            i += 2
            if depth == 0:
                return i
        else:
            i += 1
    return -1


def _replace_links(text: str, links: list[Hyperlink]) -> str:
    out = []
    i = 0
    while True:
        j = text.find("[[", i)
        if j < 0:
            out.append(text[i:])
            break
        out.append(text[i:j])
        end = _find_link_end(text, j)
        if end < 0:
            # unclosed link: keep its text, drop the brackets
            out.append(text[j + 2:])
            break
        inner = text[j + 2 : end - 2]
        i = end
        head, _, rest = inner.partition("|")
        target = head.strip()
        prefix, colon, _ = target.partition(":")
        if target.startswith(":"):
            target = target[1:].strip()
            prefix, colon, _ = target.partition(":")
        if colon and (prefix.strip().lower() in _MEDIA_NS or re.fullmatch(r"[a-z]{2,3}", prefix)):
            continue
        if "[[" in inner:
            inner_text = _replace_links(inner, links)
            out.append(inner_text)
            continue
        anchor = rest.strip() if rest else target
        target = normalize_title(target.split("#", 1)[0])
        anchor = " ".join(anchor.split())
        if not target or not anchor:
            out.append(anchor)
            continue
        out.append(f"{_OPEN}{len(links)}{_SEP}{anchor}{_CLOSE}")
        links.append(Hyperlink(target, anchor))
    return "".join(out)


def _resolve_spans(text: str, links: list[Hyperlink]) -> tuple[str, list[Hyperlink]]:
    out = []
    spans: dict[int, tuple[int, int]] = {}
    stack: list[tuple[int, int]] = []
    pos = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == _OPEN:
            j = text.index(_SEP, i)
            stack.append((int(text[i + 1 : j]), pos))
            i = j + 1
            continue
        if ch == _CLOSE:
            idx, start = stack.pop()
            spans[idx] = (start, pos)
            i += 1
            continue
        out.append(ch)
        pos += 1
        i += 1
    resolved = []
    for k, h in enumerate(links):
        if k not in spans:
            # anchor vanished (e.g. inside a removed construct)
            continue
        s, e = spans[k]
        resolved.append(Hyperlink(h.target, h.anchor, s, e))
    return "".join(out), resolved


@dataclass
class StripStats:
    unbalanced: int = 0


def _strip_once(text: str, links: list[Hyperlink], stats: StripStats) -> str:
    text = _COMMENT_RE.sub("", text)
    text = _REF_RE.sub("", text)
    text, bad = _remove_balanced(text, "{{", "}}")
    stats.unbalanced += bad
    text, bad = _remove_tables(text)
    stats.unbalanced += bad
    text = _HEADING_RE.sub("", text)
    text = _replace_links(text, links)
    text = _EXTLINK_RE.sub(lambda m: m.group(1) or "", text)
    text = _URL_RE.sub("", text)
    text = _TAG_RE.sub("", text)
    text = _EMPH_RE.sub("", text)
    text = _LIST_RE.sub("", text)
    text = _NOISE_RE.sub("", text)
    text = _LEFTOVER_RE.sub("", text)
    text = " ".join(text.split())
    text = _SPACE_PUNCT_RE.sub(r"\1", text)
    text = _EMPTY_PUNCT_RE.sub("", text)
    return text


def strip_wikitext(
    wikitext: str, stats: StripStats | None = None
) -> tuple[str, list[Hyperlink]]:
    """Reduce wikitext to plain text plus the internal links it carried.

    Link anchors replace the link markup; each returned Hyperlink records the
    character span of its anchor in the returned text.
    """
    stats = stats if stats is not None else StripStats()
    links: list[Hyperlink] = []
    text = wikitext.translate({ord(c): None for c in (_OPEN, _SEP, _CLOSE)})
    for _ in range(8):
        new = _strip_once(text, links, stats)
        if new == text:
            break
        text = new
    text, links = _resolve_spans(text, links)
    if stats.unbalanced:
        logger.warning("dropped %d unbalanced template/table region(s)", stats.unbalanced)
    return text, links


def clean_page(page: RawPage, stats: StripStats | None = None) -> CleanArticle:
    text, links = strip_wikitext(page.wikitext, stats)
    return CleanArticle(page.lang, page.title, text, links, extract_langlinks(page))
