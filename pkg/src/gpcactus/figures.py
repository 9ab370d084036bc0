"""Matplotlib figures for audit reports, written next to the JSON-lines output."""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from gpcactus.audit import AuditRecord, Verdict  # noqa: E402

VERDICT_COLORS = {
    Verdict.CONFIRMED: "#2b8a3e",
    Verdict.COUNTEREXAMPLE: "#c92a2a",
    Verdict.AMBIGUOUS: "#e67700",
    Verdict.SKIPPED: "#868e96",
}

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _numeric(rec: AuditRecord) -> bool:
    return all(isinstance(x, int) and not isinstance(x, bool) for x in (rec.predicted, rec.actual))


def render_audit_figure(records: Sequence[AuditRecord], path: str | Path, title: str | None = None) -> Path:
    """Predicted-vs-actual scatter plus verdict counts; returns the written path."""
    path = Path(path)
    with plt.rc_context(STYLE):
        fig, (ax_val, ax_bar) = plt.subplots(1, 2, figsize=(8.0, 3.4), gridspec_kw={"width_ratios": [3, 2]})

        numeric = [r for r in records if _numeric(r)]
        if numeric:
            for verdict, color in VERDICT_COLORS.items():
                pts = [r for r in numeric if r.verdict is verdict]
                if pts:
                    ax_val.scatter([r.predicted for r in pts], [r.actual for r in pts],
                                   s=18, alpha=0.7, color=color, label=verdict.value, edgecolors="none")
            lo = min(min(r.predicted, r.actual) for r in numeric)
            hi = max(max(r.predicted, r.actual) for r in numeric)
            ax_val.plot([lo, hi], [lo, hi], color="black", lw=0.8, ls="--")
            ax_val.set_xlabel("predicted")
            ax_val.set_ylabel("gp (oracle)")
            ax_val.legend(frameon=False, loc="upper left")
        else:
            ax_val.text(0.5, 0.5, "predicate claim\n(no numeric prediction)", ha="center", va="center",
                        transform=ax_val.transAxes)
            ax_val.set_axis_off()

        counts = Counter(r.verdict for r in records)
        verdicts = list(VERDICT_COLORS)
        ax_bar.bar([v.value for v in verdicts], [counts.get(v, 0) for v in verdicts],
                   color=[VERDICT_COLORS[v] for v in verdicts])
        ax_bar.set_ylabel("instances")
        ax_bar.tick_params(axis="x", rotation=30)

        if title:
            fig.suptitle(title)
        fig.tight_layout()
        fig.savefig(path, dpi=120)
        plt.close(fig)
    return path
