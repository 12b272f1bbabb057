"""Matplotlib renderings of an evaluation report, written next to it."""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .evalharness import EvalReport, _topics_in_order


def render_report_figures(report: EvalReport, out_dir: str | Path) -> list[Path]:
    """Write the per-tafsir tally chart and the per-topic score chart.

    Returns the created file paths. Charts are skipped (not errors) when
    the report has nothing to draw.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    created: list[Path] = []

    tafsirs = sorted(report.per_tafsir)
    if tafsirs:
        accurate = [report.per_tafsir[t].accurate_count for t in tafsirs]
        acceptable = [report.per_tafsir[t].acceptable_count for t in tafsirs]
        x = np.arange(len(tafsirs))
        fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(tafsirs) + 2), 3.5))
        ax.bar(x - 0.2, accurate, width=0.4, label="accurate")
        ax.bar(x + 0.2, acceptable, width=0.4, label="acceptable")
        ax.set_xticks(x)
        ax.set_xticklabels(tafsirs, rotation=30, ha="right")
        ax.set_ylabel("prompts")
        ax.set_title(f"Top-1 outcome per tafsir ({report.model_name})")
        ax.legend()
        fig.tight_layout()
        path = out_dir / "tafsir_accuracy.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        created.append(path)

    topics = _topics_in_order(report)
    scored = [r for r in report.rows if r.score is not None]
    if topics and scored:
        fig, ax = plt.subplots(figsize=(max(4.0, 1.2 * len(topics) + 2), 3.5))
        for tid in sorted({r.tafsir_id for r in scored}):
            ys = []
            for topic in topics:
                match = [r.score for r in scored if r.topic == topic and r.tafsir_id == tid]
                ys.append(match[0] if match else np.nan)
            ax.plot(range(len(topics)), ys, marker="o", label=tid)
        ax.set_xticks(range(len(topics)))
        ax.set_xticklabels(topics, rotation=30, ha="right")
        ax.set_ylabel("cosine similarity")
        ax.set_ylim(-1.05, 1.05)
        ax.set_title("Best-hit score per topic")
        ax.legend(fontsize="small")
        fig.tight_layout()
        path = out_dir / "topic_scores.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        created.append(path)

    return created
