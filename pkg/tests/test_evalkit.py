from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpusforge.aligner import AlignmentCandidate, Label
from corpusforge.evalkit import (
    JudgmentError,
    Verdict,
    export_for_annotation,
    format_table,
    import_judgments,
    per_hundred,
    read_gold,
    score_against_gold,
    select_for_annotation,
    tabulate,
)

from .conftest import CORPUS, JUDGMENTS


def cand(a, i, b, j, total=0.7, label=Label.ALIGNED):
    return AlignmentCandidate((a, i), (b, j), None, 0.0, 1, total, label, ja_text=f"文{i}", es_text=f"f{j}")


def pool(n_articles=3, per=4):
    out = []
    for k in range(n_articles):
        for i in range(per):
            out.append(cand(f"記事{k}", i, f"Art{k}", i, total=(k * per + i) / 20,
                            label=Label.ALIGNED if i % 2 else Label.PARTIAL))
        out.append(cand(f"記事{k}", 9, f"Art{k}", 9, label=Label.REJECTED))
    return out


# -- criterion 10 -----------------------------------------------------------------


@pytest.mark.parametrize(
    "name, expected",
    [("baseline", {"correct": 13, "partial": 51, "incorrect": 36}),
     ("rule", {"correct": 42, "partial": 46, "incorrect": 12})],
)
def test_tabulation_reproduces_table(name, expected):
    report = tabulate(import_judgments(JUDGMENTS / f"judgments_{name}.tsv"), name)
    assert report.per100 == expected
    assert sum(report.per100.values()) == 100


def test_per_hundred_largest_remainder():
    assert per_hundred({"a": 1, "b": 1, "c": 1}) == {"a": 34, "b": 33, "c": 33}
    assert per_hundred({"a": 0, "b": 0}) == {"a": 0, "b": 0}
    assert per_hundred({"a": 2, "b": 1}) == {"a": 67, "b": 33}


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 500), min_size=1, max_size=5).filter(any))
def test_per_hundred_properties(values):
    counts = {f"k{i}": v for i, v in enumerate(values)}
    out = per_hundred(counts)
    assert sum(out.values()) == 100
    total = sum(values)
    for k, v in counts.items():
        assert abs(out[k] - 100 * v / total) < 1


def test_tabulate_empty():
    with pytest.raises(ValueError):
        tabulate([])


# -- judgment import ----------------------------------------------------------------


def write(tmp_path, text, name="j.tsv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_import_accepts_case_and_blank_lines(tmp_path):
    p = write(tmp_path, "pair_id\tverdict\na\tCorrect\n\nb\tpartial\n")
    assert [j.verdict for j in import_judgments(p)] == [Verdict.CORRECT, Verdict.PARTIAL]


def test_import_rejects_invalid_verdict(tmp_path):
    p = write(tmp_path, "pair_id\tverdict\na\tmaybe\n")
    with pytest.raises(JudgmentError, match=":2: invalid verdict"):
        import_judgments(p)


def test_import_lists_unjudged(tmp_path):
    p = write(tmp_path, "pair_id\tja_text\tes_text\tverdict\na\tx\ty\t\nb\tx\ty\tcorrect\nc\tx\ty\n")
    with pytest.raises(JudgmentError, match="unjudged pair_ids: a, c"):
        import_judgments(p)


def test_import_unknown_ids(tmp_path):
    p = write(tmp_path, "pair_id\tverdict\na\tcorrect\nz\tcorrect\n")
    with pytest.raises(JudgmentError, match="unknown pair_id 'z'"):
        import_judgments(p, known_ids={"a"})


def test_import_bad_header(tmp_path):
    with pytest.raises(JudgmentError):
        import_judgments(write(tmp_path, "id\tlabel\n"))


# -- sampling -------------------------------------------------------------------------


def test_uniform_sampling_is_seeded_and_excludes_rejected():
    a = select_for_annotation(pool(), 5, seed=3)
    b = select_for_annotation(list(reversed(pool())), 5, seed=3)
    assert [c.pair_id for c in a] == [c.pair_id for c in b]
    assert all(c.label is not Label.REJECTED for c in a)
    assert len({c.pair_id for c in a}) == 5


def test_sampling_too_many():
    with pytest.raises(ValueError, match="only 12"):
        select_for_annotation(pool(), 13)
    assert select_for_annotation(pool(), 0) == []


def test_topk_spreads_across_articles():
    picked = select_for_annotation(pool(), 3, strategy="topk")
    assert {c.ja_ref[0] for c in picked} == {"記事0", "記事1", "記事2"}
    assert all(c.ja_ref[1] == 3 for c in picked)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        select_for_annotation(pool(), 2, strategy="stratified")


def test_export_then_fill_then_import(tmp_path):
    p = tmp_path / "ann.tsv"
    picked = export_for_annotation(pool(), 4, 1, p)
    lines = p.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "pair_id\tja_text\tes_text\tverdict"
    with pytest.raises(JudgmentError):
        import_judgments(p)
    filled = [lines[0]] + [ln + "correct" for ln in lines[1:]]
    p.write_text("\n".join(filled) + "\n", encoding="utf-8")
    js = import_judgments(p, known_ids=[c.pair_id for c in picked])
    assert tabulate(js).counts == {"correct": 4, "partial": 0, "incorrect": 0}


# -- gold scoring ---------------------------------------------------------------------


def test_read_gold_fixture():
    gold = read_gold(CORPUS / "gold.tsv")
    assert (("経済学", 0), ("Economía", 0)) in gold
    assert len(gold) == 55


def test_read_gold_errors(tmp_path):
    with pytest.raises(ValueError, match="4 tab"):
        read_gold(write(tmp_path, "a\t0\tb\n"))
    with pytest.raises(ValueError, match="integers"):
        read_gold(write(tmp_path, "a\tx\tb\t0\n"))


def test_score_against_gold():
    cands = [cand("a", 0, "b", 0), cand("a", 1, "b", 2), cand("a", 2, "b", 2, label=Label.PARTIAL)]
    gold = {(("a", 0), ("b", 0)), (("a", 1), ("b", 1)), (("a", 2), ("b", 2))}
    r = score_against_gold(cands, gold, "rule")
    assert (r.hits, r.aligned, r.gold) == (1, 2, 3)
    assert r.precision == 0.5 and r.recall == pytest.approx(1 / 3)
    assert r.f1 == pytest.approx(0.4)


def test_precision_undefined_when_nothing_aligned():
    r = score_against_gold([], {(("a", 0), ("b", 0))})
    assert r.precision_undefined and r.precision == 0.0


def test_format_table():
    rep = tabulate(import_judgments(JUDGMENTS / "judgments_rule.tsv"), "rule")
    text = format_table([rep])
    assert "Correct identification" in text and "42" in text
    assert text.endswith("\n")
