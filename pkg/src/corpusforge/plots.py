"""Report figures rendered to files alongside the delimited outputs."""

from __future__ import annotations

from collections.abc import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

from matplotlib import rc_context  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from .aligner import AlignmentCandidate, Label  # noqa: E402
from .evalkit import EvalReport, Verdict  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "corpusforge",
}
COLORS = ("#4c72b0", "#dd8452", "#55a868", "#c44e52")

# default metadata embeds the matplotlib version and, for vector formats, a timestamp
_META = {"png": {"Software": None}, "svg": {"Creator": None, "Date": None}, "pdf": {"Creator": None, "Producer": None, "CreationDate": None}}


def _save(fig: Figure, path) -> None:
    fmt = str(path).rsplit(".", 1)[-1].lower()
    fig.savefig(path, dpi=120, metadata=_META.get(fmt))


def _bars(ax, groups: Sequence[str], series: Mapping[str, Sequence[float]], fmt: str):
    n = max(len(series), 1)
    width = 0.8 / n
    for k, (name, values) in enumerate(series.items()):
        xs = [g + (k - (n - 1) / 2) * width for g in range(len(groups))]
        bars = ax.bar(xs, values, width, label=name, color=COLORS[k % len(COLORS)])
        for b, v in zip(bars, values):
            ax.annotate(fmt.format(v), (b.get_x() + b.get_width() / 2, b.get_height()),
                        ha="center", va="bottom", fontsize=7, xytext=(0, 1),
                        textcoords="offset points")
    ax.set_xticks(range(len(groups)))
    ax.set_xticklabels(groups)
    ax.legend(frameon=False)


def plot_eval_reports(reports: Sequence[EvalReport], path) -> None:
    """Judgment breakdown (per 100 pairs) and gold precision/recall per system."""
    judged = [r for r in reports if r.counts]
    scored = [r for r in reports if r.precision is not None]
    panels = int(bool(judged)) + int(bool(scored))
    with rc_context(STYLE):
        fig = Figure(figsize=(4.0 * max(panels, 1), 3.2))
        if not panels:
            ax = fig.subplots()
            ax.text(0.5, 0.5, "no evaluation data", ha="center", va="center")
            ax.set_axis_off()
        else:
            axes = fig.subplots(1, panels, squeeze=False)[0]
            k = 0
            if judged:
                ax = axes[k]
                k += 1
                groups = [v.value for v in Verdict]
                _bars(ax, groups, {r.system: [r.per100[g] for g in groups] for r in judged}, "{:d}")
                ax.set_ylabel("pairs per 100")
                ax.set_ylim(0, 110)
                ax.set_title("Human judgments")
            if scored:
                ax = axes[k]
                groups = ["precision", "recall", "F1"]
                _bars(ax, groups, {r.system: [r.precision, r.recall, r.f1] for r in scored}, "{:.2f}")
                ax.set_ylim(0, 1.1)
                ax.set_title("Planted gold")
        fig.tight_layout()
        _save(fig, path)


def plot_score_distribution(
    systems: Mapping[str, Sequence[AlignmentCandidate]], path, tau: float | None = None
) -> None:
    """Histogram of candidate totals per system, split by label."""
    with rc_context(STYLE):
        fig = Figure(figsize=(4.0 * max(len(systems), 1), 3.0))
        axes = fig.subplots(1, max(len(systems), 1), squeeze=False)[0]
        bins = [i / 20 for i in range(21)]
        for ax, (name, cands) in zip(axes, systems.items()):
            present = [(k, lab) for k, lab in enumerate(Label) if any(c.label is lab for c in cands)]
            if present:
                ax.hist([[c.total for c in cands if c.label is lab] for _, lab in present], bins=bins,
                        stacked=True, label=[lab.value for _, lab in present],
                        color=[COLORS[k] for k, _ in present])
                ax.legend(frameon=False)
            if tau is not None:
                ax.axvline(tau, color="black", linewidth=0.8, linestyle="--")
            ax.set_title(name)
            ax.set_xlabel("total score")
            ax.set_xlim(0, 1)
        axes[0].set_ylabel("candidates")
        fig.tight_layout()
        _save(fig, path)
