"""Figure rendering for the report path; PNGs land next to the delimited output."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from ..corpus import CorpusStats


def save_target_distribution(stats: CorpusStats, path: str | Path) -> None:
    names = [t.value for t in stats.per_target_counts]
    counts = list(stats.per_target_counts.values())
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(names, counts, color="#4878b0")
    ax.set_ylabel("posts")
    ax.set_title(f"Identity group distribution ({stats.total_posts} posts)")
    ax.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_per_target_f1(
    mean: Mapping[str, float],
    stdev: Mapping[str, float],
    path: str | Path,
    title: str = "hate-F1 by target",
) -> None:
    names = list(mean)
    values = [mean[n] for n in names]
    errors = [stdev.get(n, 0.0) for n in names]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(names, values, yerr=errors, capsize=3, color="#6aa66a")
    ax.set_ylim(0, 1)
    ax.set_ylabel("hate-F1")
    ax.set_title(title)
    ax.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_aso_matrix(
    systems: Sequence[str], eps_min: np.ndarray, path: str | Path
) -> None:
    """Heatmap of eps_min for row-system over column-system comparisons."""
    fig, ax = plt.subplots(figsize=(1.2 * len(systems) + 3, 1.0 * len(systems) + 2))
    im = ax.imshow(eps_min, vmin=0, vmax=1, cmap="RdYlGn_r")
    ax.set_xticks(range(len(systems)), systems, rotation=30, ha="right")
    ax.set_yticks(range(len(systems)), systems)
    for i in range(len(systems)):
        for j in range(len(systems)):
            if i == j:
                ax.text(j, i, "-", ha="center", va="center")
            else:
                ax.text(j, i, f"{eps_min[i, j]:.2f}", ha="center", va="center", fontsize=8)
    ax.set_title("ASO eps_min (row better than column)")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_hatecheck_rollup(
    mean: Mapping[str, float],
    stdev: Mapping[str, float],
    path: str | Path,
) -> None:
    save_per_target_f1(mean, stdev, path, title="functional suite hate-F1 by target")
