from __future__ import annotations

from corpusforge.aligner import AlignmentCandidate, Label
from corpusforge.evalkit import EvalReport
from corpusforge.plots import plot_eval_reports, plot_score_distribution

PNG = b"\x89PNG\r\n\x1a\n"


def reports():
    return [
        EvalReport("baseline", {"correct": 26, "partial": 102, "incorrect": 72},
                   {"correct": 13, "partial": 51, "incorrect": 36}, 0.68, 0.69, 0.68),
        EvalReport("rule", {"correct": 63, "partial": 69, "incorrect": 18},
                   {"correct": 42, "partial": 46, "incorrect": 12}, 0.98, 0.87, 0.92),
    ]


def test_eval_figure_written_and_reproducible(tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    plot_eval_reports(reports(), a)
    plot_eval_reports(reports(), b)
    assert a.read_bytes().startswith(PNG)
    assert a.read_bytes() == b.read_bytes()
    assert b"matplotlib" not in a.read_bytes()


def test_eval_figure_partial_data(tmp_path):
    only_gold = [EvalReport("rule", precision=0.5, recall=0.5, f1=0.5)]
    plot_eval_reports(only_gold, tmp_path / "g.png")
    plot_eval_reports([EvalReport("rule")], tmp_path / "empty.png")
    assert (tmp_path / "g.png").read_bytes().startswith(PNG)
    assert (tmp_path / "empty.png").read_bytes().startswith(PNG)


def test_score_distribution(tmp_path):
    cands = [
        AlignmentCandidate(("a", i), ("b", i), None, 0.0, 0, i / 10, lab)
        for i, lab in enumerate([Label.ALIGNED, Label.PARTIAL, Label.REJECTED] * 3)
    ]
    p = tmp_path / "s.png"
    plot_score_distribution({"rule": cands, "baseline": cands[:3]}, p, tau=0.6)
    assert p.read_bytes().startswith(PNG)


def test_svg_output(tmp_path):
    p = tmp_path / "r.svg"
    plot_eval_reports(reports(), p)
    assert b"<svg" in p.read_bytes()


def test_score_distribution_empty_system(tmp_path):
    p = tmp_path / "e.png"
    plot_score_distribution({"rule": []}, p)
    assert p.read_bytes().startswith(PNG)
