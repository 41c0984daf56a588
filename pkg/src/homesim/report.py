"""Render evaluation results as CSV tables with companion figures.

Every `eval` subcommand writes a delimited table plus a PNG chart next to
it, so a run's metrics can be read by both machines and humans.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .metrics import ABC_PASS_THRESHOLD, ALF_PASS_THRESHOLD


def write_table(path: Path, header: list[str], rows: list[list]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def ir_figures(per_mode: dict[str, dict], ks: list[int], out_dir: Path) -> list[Path]:
    """Curves for P@K / R@K / nDCG@K plus MRR / MAP bars, one series per mode."""
    out = []
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.4))
    for metric, ax in zip(("precision", "recall", "ndcg"), axes):
        for mode, stats in per_mode.items():
            ax.plot(ks, [stats[f"{metric}@{k}"] for k in ks], marker="o", label=mode)
        ax.set_xlabel("K")
        ax.set_ylabel(metric)
        ax.set_ylim(0, 1.05)
        ax.grid(alpha=0.3)
    axes[0].legend(fontsize=8)
    out.append(_save(fig, Path(out_dir) / "ir_at_k.png"))

    fig, ax = plt.subplots(figsize=(6, 3.4))
    modes = list(per_mode)
    x = np.arange(len(modes))
    ax.bar(x - 0.2, [per_mode[m]["mrr"] for m in modes], width=0.4, label="MRR")
    ax.bar(x + 0.2, [per_mode[m]["map"] for m in modes], width=0.4, label="MAP")
    ax.set_xticks(x, modes)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("score")
    ax.legend()
    ax.grid(axis="y", alpha=0.3)
    out.append(_save(fig, Path(out_dir) / "ir_summary.png"))
    return out


def threat_figures(rows: list[dict], out_dir: Path) -> list[Path]:
    """ABC and ALF coverage bars with their pass thresholds."""
    out = []
    names = [r["threat_type"] for r in rows]
    fig, axes = plt.subplots(1, 2, figsize=(12, 3.8))
    for ax, key, threshold, title in (
            (axes[0], "abc_coverage", ABC_PASS_THRESHOLD, "indicator coverage"),
            (axes[1], "alf_coverage", ALF_PASS_THRESHOLD, "lifecycle phase coverage")):
        values = [r[key] for r in rows]
        passed = [r[key.split("_")[0] + "_pass"] for r in rows]
        colors = ["#2d8653" if p else "#b3412c" for p in passed]
        ax.barh(names, values, color=colors)
        ax.axvline(threshold, color="black", linestyle="--", linewidth=1,
                   label=f"pass >= {threshold:.0%}")
        ax.set_xlim(0, 1.05)
        ax.set_xlabel(title)
        ax.legend(fontsize=8)
        ax.grid(axis="x", alpha=0.3)
    out.append(_save(fig, Path(out_dir) / "threat_fidelity.png"))
    return out


def quality_heatmap(metric_names: list[str], dataset_names: list[str],
                    normalized: dict[str, list], raw: dict[str, list],
                    out_dir: Path) -> Path:
    """Min-max normalized quality heatmap with raw values annotated in cells."""
    grid = np.full((len(metric_names), len(dataset_names)), np.nan)
    for i, m in enumerate(metric_names):
        for j, v in enumerate(normalized[m]):
            if v is not None:
                grid[i, j] = v
    fig, ax = plt.subplots(figsize=(1.8 + 1.3 * len(dataset_names),
                                    0.8 + 0.5 * len(metric_names)))
    im = ax.imshow(grid, cmap="viridis", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(dataset_names)), dataset_names)
    ax.set_yticks(range(len(metric_names)), metric_names)
    for i in range(len(metric_names)):
        for j in range(len(dataset_names)):
            rv = raw[metric_names[i]][j]
            text = "n/a" if rv is None else (f"{rv:.2f}" if isinstance(rv, float) else str(rv))
            ax.text(j, i, text, ha="center", va="center", fontsize=8,
                    color="white" if not np.isnan(grid[i, j]) and grid[i, j] < 0.5 else "black")
    fig.colorbar(im, ax=ax, label="normalized")
    return _save(fig, Path(out_dir) / "quality_heatmap.png")


def diversity_figures(rows: list[dict], out_dir: Path) -> list[Path]:
    """Entropy and Gini bars across datasets plus event/type scaling."""
    out = []
    names = [r["name"] for r in rows]
    fig, axes = plt.subplots(1, 2, figsize=(10, 3.4))
    axes[0].bar(names, [r["type_entropy"] for r in rows], color="#3b6ea5",
                label="type entropy")
    axes[0].bar(names, [r["category_entropy"] for r in rows], color="#86b0d6",
                width=0.5, label="category entropy")
    axes[0].set_ylim(0, 1.05)
    axes[0].set_ylabel("normalized entropy")
    axes[0].legend(fontsize=8)
    axes[1].bar(names, [r["gini"] for r in rows], color="#a5513b")
    axes[1].set_ylim(0, 1.0)
    axes[1].set_ylabel("Gini coefficient")
    for ax in axes:
        ax.grid(axis="y", alpha=0.3)
        ax.tick_params(axis="x", rotation=20)
    out.append(_save(fig, Path(out_dir) / "diversity.png"))

    fig, axes = plt.subplots(1, 3, figsize=(12, 3.2))
    for ax, key, label in ((axes[0], "devices", "total devices"),
                           (axes[1], "events", "events"),
                           (axes[2], "unique_types", "unique device types")):
        if all(key in r for r in rows):
            ax.bar(names, [r[key] for r in rows], color="#4a7856")
        ax.set_ylabel(label)
        ax.grid(axis="y", alpha=0.3)
        ax.tick_params(axis="x", rotation=20)
    out.append(_save(fig, Path(out_dir) / "scaling.png"))
    return out
