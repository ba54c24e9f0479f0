"""Figure output for Hasse graphs and pairing matrices."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bruhat import HasseGraph  # noqa: E402
from .qpoly import QPolynomial  # noqa: E402


def _ranks(graph: HasseGraph) -> dict:
    pred = {v: [] for v in graph.nodes}
    for a, b in graph.edges:
        pred[b].append(a)
    rank: dict = {}

    def depth(v):
        if v not in rank:
            rank[v] = max((depth(u) + 1 for u in pred[v]), default=0)
        return rank[v]

    for v in graph.nodes:
        depth(v)
    return rank


def plot_hasse(graph: HasseGraph, path: str | Path, title: str | None = None) -> Path:
    """Draw the graph bottom-up by longest-path rank and save it to ``path``."""
    rank = _ranks(graph)
    rows: dict[int, list] = {}
    for v in graph.nodes:
        rows.setdefault(rank[v], []).append(v)
    pos = {}
    for r, vs in rows.items():
        for k, v in enumerate(vs):
            pos[v] = (k - (len(vs) - 1) / 2, r)
    width = max((len(vs) for vs in rows.values()), default=1)
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * width), max(3, 1.1 * (len(rows) + 1))))
    for a, b in graph.edges:
        (x0, y0), (x1, y1) = pos[a], pos[b]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=0.8, zorder=1)
    for v, (x, y) in pos.items():
        ax.text(x, y, graph.label(v), ha="center", va="center", fontsize=8, zorder=2,
                bbox=dict(boxstyle="round,pad=0.2", fc="white", ec="0.3", lw=0.6))
    ax.set_title(title or f"n = {graph.n}")
    ax.set_axis_off()
    ax.margins(0.1)
    path = Path(path)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


def plot_gram(matrix: list[list[QPolynomial]], labels: list[str], path: str | Path) -> Path:
    """Heatmap of pairing exponents; vanishing entries are left blank."""
    import numpy as np

    size = len(matrix)
    data = np.full((size, size), np.nan)
    for i, row in enumerate(matrix):
        for j, c in enumerate(row):
            if c:
                data[i, j] = c.degree
    fig, ax = plt.subplots(figsize=(max(3, 0.35 * size + 2), max(3, 0.35 * size + 1.5)))
    im = ax.imshow(data, cmap="viridis", interpolation="nearest")
    if size <= 30:
        ax.set_xticks(range(size), labels, rotation=90, fontsize=7)
        ax.set_yticks(range(size), labels, fontsize=7)
    fig.colorbar(im, ax=ax, label="exponent of q")
    path = Path(path)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path
