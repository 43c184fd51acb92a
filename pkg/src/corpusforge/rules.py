"""Japanese->Spanish structural correspondence rules.

Each rule looks at a tagged ja/es sentence pair and reports whether it
applies and, if so, whether the pair honours it.  The question rule acts as
a hard gate; the others feed a soft score.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum

from .lexicon import BilingualLexicon, strip_disambiguator
from .tagging import ES_TOKEN_RE, Tag, TaggedSentence, Token


class RuleId(str, Enum):
    R_COP = "R_COP"
    R_NE = "R_NE"
    R_ADJ = "R_ADJ"
    R_Q = "R_Q"
    R_PRON = "R_PRON"


@dataclass(frozen=True)
class RuleOutcome:
    rule: RuleId
    applicable: bool
    satisfied: bool
    detail: str = ""

    def __post_init__(self):
        if self.satisfied and not self.applicable:
            raise ValueError(f"{self.rule.value}: satisfied implies applicable")


@dataclass
class RuleConfig:
    enabled: dict[RuleId, bool] = field(default_factory=lambda: {r: True for r in RuleId})
    cop_window: int = 3
    ne_ngram_max: int = 4

    def is_enabled(self, rule: RuleId) -> bool:
        return self.enabled.get(rule, True)


@dataclass(frozen=True)
class RuleScore:
    score: float
    hard_reject: bool


def _strip_trailing_punct(tokens: Sequence[Token]) -> list[Token]:
    toks = list(tokens)
    while toks and toks[-1].tag is Tag.PUNCT:
        toks.pop()
    return toks


def _ja_is_question(ja: TaggedSentence) -> bool:
    toks = _strip_trailing_punct(ja.tokens)
    return bool(toks) and toks[-1].surface == "か" and toks[-1].tag is Tag.PART


def _es_is_question(es: TaggedSentence) -> bool:
    surfaces = [t.surface for t in es.tokens]
    return "¿" in surfaces and bool(surfaces) and surfaces[-1] == "?"


def check_copula(ja: TaggedSentence, es: TaggedSentence, window: int = 3) -> RuleOutcome:
    toks = _strip_trailing_punct(ja.tokens)
    if toks and toks[-1].surface == "か" and toks[-1].tag is Tag.PART:
        toks.pop()
    applicable = (
        len(toks) >= 2 and toks[-1].is_copula and toks[-2].tag is Tag.NOUN
    )
    if not applicable:
        return RuleOutcome(RuleId.R_COP, False, False, "no noun+copula ending")
    es_toks = es.tokens
    for k, t in enumerate(es_toks):
        if t.is_copula:
            for u in es_toks[k + 1 : k + 1 + window]:
                if u.tag is Tag.NOUN:
                    return RuleOutcome(
                        RuleId.R_COP, True, True, f"{t.surface} ... {u.surface}"
                    )
    return RuleOutcome(RuleId.R_COP, True, False, "no copula+noun in es")


def _contains_sequence(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    n = len(needle)
    return any(list(haystack[i : i + n]) == list(needle) for i in range(len(haystack) - n + 1))


def check_named_entities(
    ja: TaggedSentence,
    es: TaggedSentence,
    lexicon: BilingualLexicon | None,
    ngram_max: int = 4,
) -> RuleOutcome:
    if lexicon is None:
        return RuleOutcome(RuleId.R_NE, False, False, "no lexicon")
    names = []
    for t in ja.tokens:
        if t.tag is Tag.PROPN:
            trans = lexicon.translate_ja(t.surface)
            if trans:
                names.append((t.surface, trans))
    if not names:
        return RuleOutcome(RuleId.R_NE, False, False, "no translatable PROPN")
    es_surfaces = [t.surface for t in es.tokens]
    missing = []
    for surface, trans in names:
        found = False
        for tr in sorted(trans):
            # names may contain lowercase function words (Museo del Prado)
            words = ES_TOKEN_RE.findall(strip_disambiguator(tr))
            if not words or len(words) > ngram_max or not words[0][:1].isupper():
                continue
            if _contains_sequence(es_surfaces, words):
                found = True
                break
        if not found:
            missing.append(surface)
    if missing:
        return RuleOutcome(RuleId.R_NE, True, False, "missing " + ",".join(missing))
    return RuleOutcome(RuleId.R_NE, True, True, f"{len(names)} named entities matched")


def check_adjectives(ja: TaggedSentence, es: TaggedSentence) -> RuleOutcome:
    n_ja = sum(t.tag is Tag.ADJ for t in ja.tokens)
    n_es = sum(t.tag is Tag.ADJ for t in es.tokens)
    if not n_ja and not n_es:
        return RuleOutcome(RuleId.R_ADJ, False, False, "no adjectives")
    if abs(n_ja - n_es) > 1:
        return RuleOutcome(RuleId.R_ADJ, True, False, f"adjective counts {n_ja}/{n_es}")
    toks = es.tokens
    for k, t in enumerate(toks):
        if t.tag is not Tag.ADJ or t.gender is None:
            continue
        for nb in (toks[k - 1] if k else None, toks[k + 1] if k + 1 < len(toks) else None):
            if nb is not None and nb.tag is Tag.NOUN and nb.gender and nb.gender != t.gender:
                return RuleOutcome(
                    RuleId.R_ADJ, True, False, f"gender clash {nb.surface}/{t.surface}"
                )
    return RuleOutcome(RuleId.R_ADJ, True, True, f"adjective counts {n_ja}/{n_es}")


def check_question(ja: TaggedSentence, es: TaggedSentence) -> RuleOutcome:
    q_ja, q_es = _ja_is_question(ja), _es_is_question(es)
    return RuleOutcome(
        RuleId.R_Q, True, q_ja == q_es, f"ja question={q_ja} es question={q_es}"
    )


def check_pronouns(ja: TaggedSentence, es: TaggedSentence) -> RuleOutcome:
    # both languages drop pronouns freely, so a mismatch says nothing
    return RuleOutcome(RuleId.R_PRON, False, False, "pronouns may be omitted")


def check_rules(
    ja: TaggedSentence,
    es: TaggedSentence,
    lexicon: BilingualLexicon | None = None,
    config: RuleConfig | None = None,
) -> list[RuleOutcome]:
    cfg = config or RuleConfig()
    outcomes = [
        check_copula(ja, es, cfg.cop_window),
        check_named_entities(ja, es, lexicon, cfg.ne_ngram_max),
        check_adjectives(ja, es),
        check_question(ja, es),
        check_pronouns(ja, es),
    ]
    return [
        o if cfg.is_enabled(o.rule) else RuleOutcome(o.rule, False, False, "disabled")
        for o in outcomes
    ]


NEUTRAL_SCORE = 0.5


def rule_score(outcomes: Iterable[RuleOutcome]) -> RuleScore:
    outcomes = list(outcomes)
    hard_reject = any(
        o.rule is RuleId.R_Q and o.applicable and not o.satisfied for o in outcomes
    )
    soft = [o for o in outcomes if o.rule is not RuleId.R_Q and o.applicable]
    if not soft:
        return RuleScore(NEUTRAL_SCORE, hard_reject)
    return RuleScore(sum(o.satisfied for o in soft) / len(soft), hard_reject)
