"""Human-judgment export/import, per-100 tabulation and gold scoring."""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass, field
from enum import Enum

from .aligner import AlignmentCandidate, Label

ANNOTATION_COLUMNS = ("pair_id", "ja_text", "es_text", "verdict")


class Verdict(str, Enum):
    CORRECT = "correct"
    PARTIAL = "partial"
    INCORRECT = "incorrect"


class JudgmentError(ValueError):
    pass


@dataclass(frozen=True)
class Judgment:
    pair_id: str
    verdict: Verdict


@dataclass
class EvalReport:
    system: str
    counts: dict[str, int] = field(default_factory=dict)
    per100: dict[str, int] = field(default_factory=dict)
    precision: float | None = None
    recall: float | None = None
    f1: float | None = None
    precision_undefined: bool = False
    aligned: int | None = None
    gold: int | None = None
    hits: int | None = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True)


def _sample_pool(candidates: Iterable[AlignmentCandidate]) -> list[AlignmentCandidate]:
    pool = [c for c in candidates if c.label is not Label.REJECTED]
    return sorted(pool, key=lambda c: (c.ja_ref, c.es_ref))


def select_for_annotation(
    candidates: Iterable[AlignmentCandidate], n: int, seed: int = 0, strategy: str = "uniform"
) -> list[AlignmentCandidate]:
    pool = _sample_pool(candidates)
    if n > len(pool):
        raise ValueError(f"requested {n} pairs but only {len(pool)} non-rejected candidates exist")
    if n <= 0:
        return []
    if strategy == "uniform":
        picked = random.Random(seed).sample(pool, n)
    elif strategy == "topk":
        articles: dict[tuple[str, str], list[AlignmentCandidate]] = {}
        for c in pool:
            articles.setdefault((c.ja_ref[0], c.es_ref[0]), []).append(c)
        k = math.ceil(n / len(articles))
        top = [
            c
            for key in sorted(articles)
            for c in sorted(articles[key], key=lambda c: (-c.total, c.ja_ref[1], c.es_ref[1]))[:k]
        ]
        picked = sorted(top, key=lambda c: (-c.total, c.ja_ref, c.es_ref))[:n]
    else:
        raise ValueError(f"unknown sampling strategy {strategy!r}")
    return sorted(picked, key=lambda c: (c.ja_ref, c.es_ref))


def export_for_annotation(
    candidates: Iterable[AlignmentCandidate],
    n: int,
    seed: int,
    path,
    strategy: str = "uniform",
) -> list[AlignmentCandidate]:
    """Write ``n`` sampled non-rejected candidates with an empty verdict column."""
    picked = select_for_annotation(candidates, n, seed, strategy)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\t".join(ANNOTATION_COLUMNS) + "\n")
        for c in picked:
            f.write(f"{c.pair_id}\t{' '.join(c.ja_text.split())}\t{' '.join(c.es_text.split())}\t\n")
    return picked


def import_judgments(path, known_ids: Iterable[str] | None = None) -> list[Judgment]:
    known = set(known_ids) if known_ids is not None else None
    out = []
    unjudged = []
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n").split("\t")
        if "pair_id" not in header or "verdict" not in header:
            raise JudgmentError(f"{path}:1: header needs pair_id and verdict columns")
        id_col, v_col = header.index("pair_id"), header.index("verdict")
        for lineno, line in enumerate(f, 2):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cells = line.split("\t")
            if len(cells) <= max(id_col, v_col):
                cells += [""] * (max(id_col, v_col) + 1 - len(cells))
            pid, raw = cells[id_col], cells[v_col].strip()
            if known is not None and pid not in known:
                raise JudgmentError(f"{path}:{lineno}: unknown pair_id {pid!r}")
            if not raw:
                unjudged.append(pid)
                continue
            try:
                verdict = Verdict(raw.lower())
            except ValueError:
                raise JudgmentError(f"{path}:{lineno}: invalid verdict {raw!r}") from None
            out.append(Judgment(pid, verdict))
    if unjudged:
        raise JudgmentError(f"{path}: unjudged pair_ids: {', '.join(unjudged)}")
    return out


def per_hundred(counts: dict[str, int]) -> dict[str, int]:
    """Largest-remainder scaling of counts to integers summing to 100."""
    total = sum(counts.values())
    if not total:
        return {k: 0 for k in counts}
    exact = {k: 100 * v / total for k, v in counts.items()}
    floors = {k: math.floor(q) for k, q in exact.items()}
    left = 100 - sum(floors.values())
    order = sorted(counts, key=lambda k: (-(exact[k] - floors[k]), -counts[k], list(counts).index(k)))
    for k in order[:left]:
        floors[k] += 1
    return floors


def tabulate(judgments: Sequence[Judgment], system: str = "") -> EvalReport:
    if not judgments:
        raise ValueError("tabulate needs at least one judgment")
    tally = Counter(j.verdict for j in judgments)
    counts = {v.value: tally.get(v, 0) for v in Verdict}
    return EvalReport(system=system, counts=counts, per100=per_hundred(counts))


def read_gold(path) -> set[tuple[tuple[str, int], tuple[str, int]]]:
    """Gold TSV: ``ja_title<TAB>ja_idx<TAB>es_title<TAB>es_idx``; ``#`` comments allowed."""
    gold = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 tab-separated fields")
            try:
                gold.add(((parts[0], int(parts[1])), (parts[2], int(parts[3]))))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: sentence indices must be integers") from None
    return gold


def score_against_gold(
    candidates: Iterable[AlignmentCandidate],
    gold_pairs: Iterable[tuple[tuple[str, int], tuple[str, int]]],
    system: str = "",
) -> EvalReport:
    aligned = {(c.ja_ref, c.es_ref) for c in candidates if c.label is Label.ALIGNED}
    gold = set(gold_pairs)
    hits = len(aligned & gold)
    undefined = not aligned
    precision = hits / len(aligned) if aligned else 0.0
    recall = hits / len(gold) if gold else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return EvalReport(
        system=system,
        precision=precision,
        recall=recall,
        f1=f1,
        precision_undefined=undefined,
        aligned=len(aligned),
        gold=len(gold),
        hits=hits,
    )


def format_table(reports: Sequence[EvalReport]) -> str:
    """Plain-text table with one column per system."""
    names = [r.system or "-" for r in reports]
    rows: list[tuple[str, list[str]]] = []
    labels = {
        "correct": "Correct identification",
        "partial": "Partial matching",
        "incorrect": "Incorrect identification",
    }
    if any(r.counts for r in reports):
        for key, label in labels.items():
            rows.append((label, [str(r.per100.get(key, "")) if r.counts else "" for r in reports]))
        rows.append(("Total", [str(sum(r.per100.values())) if r.counts else "" for r in reports]))
        rows.append(("Judged pairs", [str(r.total) if r.counts else "" for r in reports]))
    if any(r.precision is not None for r in reports):
        for key in ("precision", "recall", "f1"):
            vals = []
            for r in reports:
                v = getattr(r, key)
                vals.append("" if v is None else f"{v:.3f}")
            rows.append((key.capitalize() if key != "f1" else "F1", vals))
        rows.append(("Aligned / gold / hits", [
            "" if r.aligned is None else f"{r.aligned} / {r.gold} / {r.hits}" for r in reports
        ]))
    width0 = max([len(label) for label, _ in rows] + [0])
    widths = [max([len(n)] + [len(v[k]) for _, v in rows]) for k, n in enumerate(names)]
    lines = [" " * width0 + "  " + "  ".join(n.rjust(w) for n, w in zip(names, widths))]
    for label, vals in rows:
        lines.append(label.ljust(width0) + "  " + "  ".join(v.rjust(w) for v, w in zip(vals, widths)))
    return "\n".join(lines) + "\n"
