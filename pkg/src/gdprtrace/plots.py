"""Figures written next to the CSV/JSON reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .survey import OBJECTIVES  # noqa: E402

RC = {
    "font.size": 8,
    "axes.titlesize": 9,
    "axes.labelsize": 8,
    "xtick.labelsize": 7,
    "ytick.labelsize": 7,
    "savefig.dpi": 150,
}
# fixed PNG metadata so repeated runs write identical bytes
METADATA = {"Software": None}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, metadata=METADATA)
    plt.close(fig)


def plot_score_table(rows, path):
    """Heatmap of per-participant rubric scores with A+ down the right side."""
    if not rows:
        raise ValueError("no score rows to plot")
    gold_ids = list(rows[0].report.per_gold)
    grid = np.array([[float(r.report.per_gold[g]) for g in gold_ids] for r in rows])
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(1.0 + 0.55 * len(gold_ids), 0.8 + 0.35 * len(rows)))
        im = ax.imshow(grid, cmap="Greens", vmin=0, vmax=1, aspect="auto")
        ax.set_xticks(range(len(gold_ids)), gold_ids, rotation=45, ha="right")
        ax.set_yticks(range(len(rows)), [f"{r.participant} (A+ {r.report.extras})" for r in rows])
        for i in range(grid.shape[0]):
            for j in range(grid.shape[1]):
                ax.text(j, i, f"{grid[i, j]:g}", ha="center", va="center", fontsize=6)
        ax.set_title("Annotation scores against the gold standard")
        fig.colorbar(im, ax=ax, fraction=0.04)
        _save(fig, path)


def plot_survey(ds, summary, path):
    """Rating and ranking medians per objective, with individual responses."""
    names = [o.value for o in OBJECTIVES]
    x = np.arange(len(names))
    with plt.rc_context(RC):
        fig, (left, right) = plt.subplots(1, 2, figsize=(7, 2.8))
        for ax, title, values, medians in (
            (
                left,
                "Rating (5 = high importance)",
                [[float(r.ratings[o].primary) for r in ds.records] for o in OBJECTIVES],
                [float(summary[o].rating_median) for o in OBJECTIVES],
            ),
            (
                right,
                "Ranking (1 = most important)",
                [[r.rankings[o] for r in ds.records] for o in OBJECTIVES],
                [float(summary[o].ranking_median) for o in OBJECTIVES],
            ),
        ):
            for i, vals in enumerate(values):
                ax.scatter(np.full(len(vals), x[i]), vals, s=10, alpha=0.4, color="0.4")
            ax.plot(x, medians, "o-", color="C3", label="median")
            ax.set_xticks(x, names)
            ax.set_ylim(0.5, 5.5)
            ax.set_title(title)
        left.legend(loc="lower left", frameon=False)
        _save(fig, path)


def plot_trace_matrix(matrix, path):
    grid = np.array(matrix.cells, dtype=float).reshape(len(matrix.rows), len(matrix.columns))
    with plt.rc_context(RC):
        fig, ax = plt.subplots(
            figsize=(1.5 + 0.25 * max(1, len(matrix.columns)), 1.0 + 0.18 * max(1, len(matrix.rows)))
        )
        ax.imshow(grid if grid.size else np.zeros((1, 1)), cmap="Blues", vmin=0, vmax=1, aspect="auto")
        ax.set_xticks(range(len(matrix.columns)), [c.id for c in matrix.columns], rotation=90)
        ax.set_yticks(range(len(matrix.rows)), [str(r) for r in matrix.rows], fontsize=5)
        ax.set_title("Provision to instance trace links")
        _save(fig, path)
