"""Coarse POS tagging for Japanese and Spanish.

Two providers share one output type: deterministic built-in taggers driven by
seed lexicons, and :func:`import_tagged` for text tagged elsewhere.
"""

from __future__ import annotations

import logging
import re
import unicodedata
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from .lexicon import BilingualLexicon
from .textprep import SentenceRecord

logger = logging.getLogger(__name__)


class Tag(str, Enum):
    NOUN = "NOUN"
    PROPN = "PROPN"
    VERB = "VERB"
    ADJ = "ADJ"
    PRON = "PRON"
    PART = "PART"
    AUX = "AUX"
    ADV = "ADV"
    DET = "DET"
    NUM = "NUM"
    PUNCT = "PUNCT"
    OTHER = "OTHER"


CONTENT_TAGS = frozenset({Tag.NOUN, Tag.PROPN, Tag.VERB, Tag.ADJ, Tag.ADV, Tag.NUM})

FEATURE_VALUES = {
    "gender": {"m", "f"},
    "number": {"sg", "pl"},
    "adjclass": {"na", "i"},
    "copula": {"yes"},
}


class TaggedFormatError(ValueError):
    pass


@dataclass
class Token:
    surface: str
    tag: Tag
    feats: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        self.tag = Tag(self.tag)

    @property
    def gender(self) -> str | None:
        return self.feats.get("gender")

    @property
    def is_copula(self) -> bool:
        return self.tag is Tag.AUX and self.feats.get("copula") == "yes"

    def __str__(self):
        return f"{self.surface}/{self.tag.value}"


@dataclass
class TaggedSentence:
    record: SentenceRecord
    tokens: list[Token]

    @property
    def lang(self) -> str:
        return self.record.lang

    def tags(self) -> list[Tag]:
        return [t.tag for t in self.tokens]


def parse_feats(raw: str, where: str = "") -> dict[str, str]:
    feats = {}
    for item in raw.split(";"):
        item = item.strip()
        if not item:
            continue
        key, eq, value = item.partition("=")
        key, value = key.strip(), value.strip()
        if not eq:
            raise TaggedFormatError(f"{where}: malformed feature {item!r}")
        if key not in FEATURE_VALUES:
            logger.warning("%s: ignoring unknown feature %r", where, key)
            continue
        if value not in FEATURE_VALUES[key]:
            raise TaggedFormatError(f"{where}: invalid value {value!r} for feature {key!r}")
        feats[key] = value
    return feats


def format_feats(feats: Mapping[str, str]) -> str:
    return ";".join(f"{k}={feats[k]}" for k in sorted(feats))


def _parse_tag(raw: str, where: str) -> Tag:
    try:
        return Tag(raw.strip())
    except ValueError:
        raise TaggedFormatError(f"{where}: unknown tag {raw.strip()!r}") from None


# ---------------------------------------------------------------------------
# Seed lexicons

SeedLexicon = dict[str, tuple[Tag, dict[str, str]]]


def load_seed(path) -> SeedLexicon:
    """Read ``surface<TAB>tag<TAB>feats`` lines; the first entry for a surface wins."""
    seed: SeedLexicon = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            where = f"{path}:{lineno}"
            if len(parts) not in (2, 3):
                raise TaggedFormatError(f"{where}: expected surface<TAB>tag<TAB>feats")
            surface = unicodedata.normalize("NFC", parts[0].strip())
            tag = _parse_tag(parts[1], where)
            feats = parse_feats(parts[2], where) if len(parts) == 3 else {}
            seed.setdefault(surface, (tag, feats))
    return seed


def default_seed(lang: str) -> SeedLexicon:
    ref = resources.files("corpusforge") / "data" / f"seed_{lang}.tsv"
    with resources.as_file(ref) as p:
        return load_seed(p)


# ---------------------------------------------------------------------------
# Japanese

JA_CLOSED: dict[str, tuple[Tag, dict[str, str]]] = {
    **{p: (Tag.PART, {}) for p in ("は", "が", "を", "に", "の", "と", "も", "か")},
    "です": (Tag.AUX, {"copula": "yes"}),
    "でした": (Tag.AUX, {"copula": "yes"}),
    "だ": (Tag.AUX, {}),
}
JA_VERB_ENDINGS = ("ました", "ます", "る", "た")
JA_PUNCT = set("。、！？「」『』（）()・…：；〜ー―,.!?:;")
MAX_JA_WORD = 16


def _char_class(ch: str) -> str:
    if ch in "・ー" or "゠" <= ch <= "ヿ" or "ㇰ" <= ch <= "ㇿ":
        return "kata"
    if "぀" <= ch <= "ゟ":
        return "hira"
    if ch == "々" or "一" <= ch <= "鿿" or "㐀" <= ch <= "䶿":
        return "kanji"
    if ch.isdigit():
        return "digit"
    if ch in JA_PUNCT or unicodedata.category(ch).startswith("P"):
        return "punct"
    if ch.isalpha():
        return "latin"
    return "other"


def _is_katakana(s: str) -> bool:
    return bool(s) and all(_char_class(c) == "kata" for c in s)


_UNKNOWN_TAG = {
    "kanji": Tag.NOUN,
    "kata": Tag.PROPN,
    "hira": Tag.OTHER,
    "digit": Tag.NUM,
    "latin": Tag.PROPN,
    "other": Tag.OTHER,
}


class JaTagger:
    """Greedy longest-match segmenter and tagger.

    Vocabulary priority on equal surfaces: closed class, then seed lexicon,
    then bare lexicon terms.  Seed verbs are stems that may take one of the
    polite/plain endings.
    """

    def __init__(self, seed: SeedLexicon | None = None, lexicon: BilingualLexicon | None = None):
        self.seed = default_seed("ja") if seed is None else seed
        self.vocab: dict[str, tuple[Tag, dict[str, str]]] = {}
        if lexicon is not None:
            for term in lexicon.ja_terms:
                self.vocab[term] = (self._lexicon_tag(term, lexicon), {})
        self.vocab.update(self.seed)
        self.vocab.update(JA_CLOSED)
        self.verb_stems = {s for s, (tag, _) in self.seed.items() if tag is Tag.VERB}
        self.maxlen = min(max([len(s) for s in self.vocab] + [1]), MAX_JA_WORD)
        self.max_stem = max([len(s) for s in self.verb_stems] + [0])

    @staticmethod
    def _lexicon_tag(term: str, lexicon: BilingualLexicon) -> Tag:
        if _is_katakana(term):
            trans = lexicon.translate_ja(term)
            if not trans or any(t[:1].isupper() for t in trans):
                return Tag.PROPN
        return Tag.NOUN

    def _match(self, text: str, i: int) -> tuple[int, Tag, dict[str, str]] | None:
        best = None
        for length in range(min(self.maxlen, len(text) - i), 0, -1):
            piece = text[i : i + length]
            if piece in self.vocab:
                tag, feats = self.vocab[piece]
                best = (length, tag, dict(feats))
                break
        for stem in self._stems_at(text, i):
            for ending in JA_VERB_ENDINGS:
                if text.startswith(ending, i + len(stem)):
                    length = len(stem) + len(ending)
                    if best is None or length > best[0]:
                        tag, feats = self.seed[stem]
                        best = (length, tag, dict(feats))
                    break
        return best

    def _stems_at(self, text: str, i: int):
        for length in range(1, self.max_stem + 1):
            stem = text[i : i + length]
            if stem in self.verb_stems:
                yield stem

    def tokenize(self, text: str) -> list[Token]:
        text = "".join(text.split())
        tokens: list[Token] = []
        pending: list[str] = []
        pending_cls = None

        def flush():
            nonlocal pending, pending_cls
            if pending:
                tokens.append(Token("".join(pending), _UNKNOWN_TAG[pending_cls]))
            pending, pending_cls = [], None

        i = 0
        while i < len(text):
            hit = self._match(text, i)
            if hit is not None:
                flush()
                length, tag, feats = hit
                tokens.append(Token(text[i : i + length], tag, feats))
                i += length
                continue
            ch = text[i]
            cls = _char_class(ch)
            if cls == "punct":
                flush()
                tokens.append(Token(ch, Tag.PUNCT))
            else:
                if cls != pending_cls:
                    flush()
                    pending_cls = cls
                pending.append(ch)
            i += 1
        flush()
        return tokens

    def tag(self, record: SentenceRecord) -> TaggedSentence:
        return TaggedSentence(record, self.tokenize(record.text))


# ---------------------------------------------------------------------------
# Spanish

ES_DET = frozenset(
    "el la los las lo un una unos unas este esta estos estas ese esa esos esas "
    "aquel aquella aquellos aquellas su sus mi mis tu tus nuestro nuestra nuestros "
    "nuestras cada todo toda todos todas otro otra otros otras varios varias muchos "
    "muchas algunos algunas".split()
)
ES_PRON = frozenset(
    "yo tú él ella ello nosotros nosotras vosotros vosotras ellos ellas usted ustedes "
    "me te se nos os le les esto eso aquello quien quienes cual cuales qué quién "
    "cuál alguien nadie algo nada".split()
)
ES_PART = frozenset(
    "a al ante bajo con contra de del desde durante en entre hacia hasta mediante "
    "para por según sin sobre tras y e o u ni pero sino que como porque aunque si "
    "cuando donde mientras".split()
)
ES_ADV = frozenset(
    "no sí muy más menos también tampoco ya aún todavía siempre nunca hoy ayer "
    "mañana aquí allí ahí bien mal mucho poco bastante casi solo sólo luego "
    "después antes pronto tarde".split()
)
ES_COPULA = frozenset(
    "ser es son era eran fue fueron será serán sea sean sería soy eres somos sido "
    "siendo estar está están estaba estaban estuvo estuvieron estará estarán esté "
    "estén estoy estás estamos estado estando".split()
)
ES_TOKEN_RE = re.compile(r"\d+(?:[.,]\d+)*|\w+(?:[-']\w+)*|[^\w\s]")


def _es_gender_number(word: str) -> dict[str, str]:
    w = word.lower()
    feats = {}
    if w.endswith(("o", "os")):
        feats["gender"] = "m"
    elif w.endswith(("a", "as")):
        feats["gender"] = "f"
    if len(w) > 2 and w.endswith("s"):
        feats["number"] = "pl"
    else:
        feats["number"] = "sg"
    return feats


class EsTagger:
    """Closed-class lists, seed lexicon and suffix rules, in that order."""

    def __init__(self, seed: SeedLexicon | None = None, lexicon: BilingualLexicon | None = None):
        self.seed = default_seed("es") if seed is None else seed
        self.seed_lower = {k.lower(): v for k, v in self.seed.items()}
        self.lexicon = lexicon

    def _closed(self, w: str) -> tuple[Tag, dict[str, str]] | None:
        if w in ES_COPULA:
            return Tag.AUX, {"copula": "yes"}
        if w in ES_DET:
            return Tag.DET, {}
        if w in ES_PRON:
            return Tag.PRON, {}
        if w in ES_PART:
            return Tag.PART, {}
        if w in ES_ADV:
            return Tag.ADV, {}
        return None

    def _known(self, w: str) -> bool:
        if self._closed(w) or w in self.seed_lower:
            return True
        # only lowercase lexicon entries count; titles are capitalized anyway
        return self.lexicon is not None and w in self.lexicon.index_es

    def _open_class(self, w: str) -> tuple[Tag, dict[str, str]]:
        if w in self.seed_lower:
            tag, feats = self.seed_lower[w]
            feats = dict(feats)
            if tag in (Tag.NOUN, Tag.ADJ):
                for k, v in _es_gender_number(w).items():
                    feats.setdefault(k, v)
            return tag, feats
        if w.endswith("mente") and len(w) > 6:
            return Tag.ADV, {}
        if len(w) > 3 and w.endswith(("ar", "er", "ir")):
            return Tag.VERB, {}
        return Tag.NOUN, _es_gender_number(w)

    def tokenize(self, text: str) -> list[str]:
        return ES_TOKEN_RE.findall(text)

    def tag(self, record: SentenceRecord) -> TaggedSentence:
        words = self.tokenize(record.text)
        first = next(
            (k for k, w in enumerate(words) if not unicodedata.category(w[0]).startswith(("P", "S"))),
            None,
        )
        tokens = []
        for k, word in enumerate(words):
            cat = unicodedata.category(word[0])
            if cat.startswith(("P", "S")):
                tokens.append(Token(word, Tag.PUNCT))
                continue
            if word[0].isdigit():
                tokens.append(Token(word, Tag.NUM))
                continue
            lower = word.lower()
            if word[0].isupper() and (k != first or not self._known(lower)):
                tokens.append(Token(word, Tag.PROPN))
                continue
            hit = self._closed(lower) or self._open_class(lower)
            tokens.append(Token(word, hit[0], dict(hit[1])))
        return TaggedSentence(record, tokens)


# ---------------------------------------------------------------------------
# Convenience entry points

_DEFAULT: dict[type, tuple[object, object]] = {}


def _cached(cls, lexicon):
    hit = _DEFAULT.get(cls)
    if hit is None or hit[0] is not lexicon:
        _DEFAULT[cls] = hit = (lexicon, cls(lexicon=lexicon))
    return hit[1]


def tag_ja(sentence: SentenceRecord, lexicon: BilingualLexicon | None = None) -> TaggedSentence:
    return _cached(JaTagger, lexicon).tag(sentence)


def tag_es(sentence: SentenceRecord, lexicon: BilingualLexicon | None = None) -> TaggedSentence:
    return _cached(EsTagger, lexicon).tag(sentence)


# ---------------------------------------------------------------------------
# Tagged-text interchange


def _block_record(tokens: list[Token], lang: str, index: int, title: str, text: str | None):
    if text is None:
        text = "".join(t.surface for t in tokens) if lang == "ja" else " ".join(
            t.surface for t in tokens
        )
    return SentenceRecord(title, lang, index, text)


def import_tagged(path, lang: str = "es", title: str | None = None) -> list[TaggedSentence]:
    """Read blank-line separated ``surface<TAB>tag<TAB>feats`` blocks.

    A ``# text = ...`` comment inside a block sets the sentence text; other
    ``#`` lines are ignored.
    """
    path = Path(path)
    title = path.stem if title is None else title
    out: list[TaggedSentence] = []
    tokens: list[Token] = []
    text: str | None = None

    def close():
        nonlocal tokens, text
        if tokens:
            rec = _block_record(tokens, lang, len(out), title, text)
            out.append(TaggedSentence(rec, tokens))
        tokens, text = [], None

    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n").rstrip("\r")
            where = f"{path}:{lineno}"
            if not line.strip():
                close()
                continue
            if line.startswith("#"):
                key, eq, value = line[1:].partition("=")
                if eq and key.strip() == "text":
                    text = value.strip()
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3) or not parts[0]:
                raise TaggedFormatError(f"{where}: expected surface<TAB>tag<TAB>feats")
            tag = _parse_tag(parts[1], where)
            feats = parse_feats(parts[2], where) if len(parts) == 3 else {}
            tokens.append(Token(unicodedata.normalize("NFC", parts[0]), tag, feats))
    close()
    return out


def write_tagged(sentences: Iterable[TaggedSentence], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for k, sent in enumerate(sentences):
            if k:
                f.write("\n")
            f.write(f"# text = {sent.record.text}\n")
            for t in sent.tokens:
                f.write(f"{t.surface}\t{t.tag.value}\t{format_feats(t.feats)}\n")


def token_accuracy(gold: list[TaggedSentence], predicted: list[TaggedSentence]) -> tuple[int, int]:
    """(correct, total) over gold tokens; a token counts when span and tag match."""
    correct = total = 0
    for g, p in zip(gold, predicted, strict=True):
        pspans = {}
        pos = 0
        for t in p.tokens:
            pspans[(pos, pos + len(t.surface))] = t.tag
            pos += len(t.surface)
        pos = 0
        for t in g.tokens:
            span = (pos, pos + len(t.surface))
            pos += len(t.surface)
            total += 1
            if pspans.get(span) is t.tag:
                correct += 1
    return correct, total
