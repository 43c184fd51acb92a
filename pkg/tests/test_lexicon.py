from __future__ import annotations

import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpusforge.dump import RawPage, parse_dump, resolve_redirects
from corpusforge.lexicon import (
    BilingualLexicon,
    LexEntry,
    LexiconStats,
    Source,
    build_link_lexicon,
    export_lexicon,
    load_dictionary,
    merge,
    read_lexicon,
    strip_disambiguator,
)

from .conftest import CORPUS


@pytest.fixture(scope="module")
def fixture_pages():
    ja = list(parse_dump(io.BytesIO((CORPUS / "ja.xml").read_bytes())))
    es = list(parse_dump(io.BytesIO((CORPUS / "es.xml").read_bytes())))
    return ja, es


@pytest.fixture(scope="module")
def link_lexicon(fixture_pages):
    ja, es = fixture_pages
    stats = LexiconStats()
    lex = build_link_lexicon(ja, es, resolve_redirects(ja), resolve_redirects(es), stats)
    return lex, stats


def test_langlink_pair_extracted(link_lexicon):
    lex, _ = link_lexicon
    assert ("経済学", "Economía") in lex
    assert lex.source_of("経済学", "Economía") is Source.LINK


def test_einstein_resolved_through_redirects(link_lexicon):
    lex, _ = link_lexicon
    # the ja article links [[es:Einstein]], a redirect; the es article links
    # [[ja:アインシュタイン]], also a redirect
    assert lex.translate_ja("アルベルト・アインシュタイン") == {"Albert Einstein"}
    assert "Einstein" not in lex.index_es
    assert "アインシュタイン" not in lex.index_ja


def test_links_into_cycles_are_skipped(link_lexicon):
    lex, stats = link_lexicon
    assert stats.skipped == 1
    assert not any(t.startswith("循環") for t in lex.ja_terms)


def test_disambiguator_adds_bare_term(link_lexicon):
    lex, _ = link_lexicon
    assert lex.translate_ja("米") == {"Arroz", "Arroz (alimento)"}
    assert strip_disambiguator("Mercurio (planeta)") == "Mercurio"
    assert strip_disambiguator("(solo)") == "(solo)"


def test_link_lexicon_independent_of_page_order(fixture_pages):
    ja, es = fixture_pages
    ref = build_link_lexicon(ja, es, resolve_redirects(ja), resolve_redirects(es))
    rng = random.Random(3)
    for _ in range(5):
        ja2, es2 = ja[:], es[:]
        rng.shuffle(ja2)
        rng.shuffle(es2)
        assert build_link_lexicon(ja2, es2, resolve_redirects(ja2), resolve_redirects(es2)) == ref


def test_export_import_round_trip_byte_identical(link_lexicon, tmp_path):
    lex, _ = link_lexicon
    merged = merge(lex, load_dictionary(CORPUS / "dictionary.tsv"))
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    export_lexicon(merged, a)
    back = read_lexicon(a)
    export_lexicon(back, b)
    assert back == merged
    assert a.read_bytes() == b.read_bytes()


def test_load_dictionary_skips_malformed(tmp_path):
    p = tmp_path / "d.tsv"
    p.write_text("# comment\n犬\tperro\nmalo\n三\tcampos\tde más\n猫\tgato\n\n犬\t \n", encoding="utf-8")
    stats = LexiconStats()
    lex = load_dictionary(p, stats)
    assert lex.translate_ja("犬") == {"perro"} and lex.translate_ja("猫") == {"gato"}
    assert stats.skipped == 3


def test_many_to_many_and_provenance():
    lex = BilingualLexicon()
    lex.add_pair("のむ", "beber", Source.DICT)
    lex.add_pair("のむ", "tomar", Source.DICT)
    lex.add_pair("取る", "tomar", Source.DICT)
    lex.add_pair("のむ", "beber", Source.LINK)
    lex.add_pair("のむ", "beber", Source.DICT)
    assert lex.translate_ja("のむ") == {"beber", "tomar"}
    assert lex.translate_es("tomar") == {"のむ", "取る"}
    assert lex.translate_es("Tomar") == {"のむ", "取る"}
    assert lex.source_of("のむ", "beber") is Source.LINK
    assert len(lex) == 3


def test_nfc_enforced():
    with pytest.raises(ValueError):
        LexEntry("é", "x", Source.DICT)
    lex = BilingualLexicon()
    lex.add_pair(" café ", "café", Source.DICT)
    assert lex.translate_ja("café") == {"café"}


def test_indices_mirror_entries(link_lexicon):
    lex, _ = link_lexicon
    pairs = {(e.ja_term, e.es_term) for e in lex.entries}
    assert pairs == {(j, e) for j, es in lex.index_ja.items() for e in es}
    assert pairs == {(j, e) for e, js in lex.index_es.items() for j in js}


entries = st.lists(
    st.tuples(st.sampled_from("あいう犬猫"), st.sampled_from(["perro", "gato", "agua", "sol"]), st.sampled_from(list(Source))),
    max_size=12,
).map(lambda xs: BilingualLexicon(LexEntry(j, e, s) for j, e, s in xs))


@settings(max_examples=200, deadline=None)
@given(entries, entries, entries)
def test_merge_associative_and_commutative(a, b, c):
    assert merge(merge(a, b), c) == merge(a, merge(b, c))
    assert merge(a, b) == merge(b, a)
    for e in merge(a, b).entries:
        if (e.ja_term, e.es_term) in a and a.source_of(e.ja_term, e.es_term) is Source.LINK:
            assert e.source is Source.LINK
