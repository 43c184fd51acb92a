from __future__ import annotations

import pytest

from corpusforge.dump import strip_wikitext
from corpusforge.textprep import (
    SentenceRecord,
    StopwordList,
    load_abbreviations,
    remove_stopwords,
    split_sentences,
    split_sentences_es,
    split_sentences_ja,
)


def texts(records):
    return [r.text for r in records]


def test_es_basic_split_and_indices():
    recs = split_sentences_es("El perro bebe agua. ¿Es esto un libro? ¡Sí! Fin")
    assert texts(recs) == ["El perro bebe agua.", "¿Es esto un libro?", "¡Sí!", "Fin"]
    assert [r.index for r in recs] == [0, 1, 2, 3]
    assert all(r.lang == "es" for r in recs)


def test_es_abbreviations_and_initials_do_not_split():
    recs = split_sentences_es("El Dr. Pérez vive en EE. UU. desde 1990. J. R. R. Tolkien escribió libros.")
    assert texts(recs) == ["El Dr. Pérez vive en EE. UU. desde 1990.", "J. R. R. Tolkien escribió libros."]


def test_es_lowercase_continuation_and_decimals():
    assert len(split_sentences_es("Mide 3.5 metros. etc. y más")) == 1


def test_es_custom_abbreviations(tmp_path):
    p = tmp_path / "abbr.txt"
    p.write_text("# extra\nfig.\n", encoding="utf-8")
    abbr = load_abbreviations(p)
    assert abbr == frozenset({"fig."})
    assert len(split_sentences_es("Ver Fig. Dos.", abbreviations=abbr)) == 1


def test_ja_split_with_closing_brackets():
    recs = split_sentences_ja("犬は水をのみます。「これは本ですか？」彼は言いました。最後")
    assert texts(recs) == ["犬は水をのみます。", "「これは本ですか？」", "彼は言いました。", "最後"]


def test_link_targets_attached_to_sentence():
    text, links = strip_wikitext("[[perro|El perro]] bebe [[agua]]. Vive con el [[Ser humano|hombre]].")
    recs = split_sentences_es(text, links, "Perro")
    assert recs[0].link_targets == {"perro", "agua"}
    assert recs[1].link_targets == {"Ser humano"}
    assert all(r.article_title == "Perro" for r in recs)


def test_split_dispatch_and_empty():
    assert split_sentences("", lang="ja") == []
    assert split_sentences("   ", lang="es") == []
    assert texts(split_sentences("猫。犬。", lang="ja")) == ["猫。", "犬。"]


def test_sentence_record_rejects_blank():
    with pytest.raises(ValueError):
        SentenceRecord("t", "es", 0, "  ")


def test_stopwords_default_and_removal():
    es = StopwordList.default("es")
    ja = StopwordList.default("ja")
    assert "de" in es and "La" in es and "perro" not in es
    assert "は" in ja and "犬" not in ja
    assert remove_stopwords(["El", "perro", "de", "Juan"], es) == ["perro", "Juan"]
    assert remove_stopwords(["a", "B"], ["b"]) == ["a"]


def test_stopwords_lowercase_nfc(tmp_path):
    p = tmp_path / "sw.txt"
    p.write_text("Café\n# comentario\n", encoding="utf-8")
    sw = StopwordList.load(p, "es")
    assert sw.words == frozenset({"café"})
