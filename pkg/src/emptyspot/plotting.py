"""Static SVG figures for degree distributions and precision curves."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# fixed element ids and no timestamp, so reruns give identical SVG bytes
SVG_RC = {"svg.hashsalt": "emptyspot", "svg.fonttype": "none", "font.size": 9}
SVG_METADATA = {"Date": None, "Creator": None}

COLORS = {"a": "tab:red", "b": "tab:blue", "c": "tab:green"}


def degree_rows(histogram: dict[int, int]) -> list[tuple[int, int, float]]:
    total = sum(histogram.values())
    return [(d, c, c / total) for d, c in sorted(histogram.items())]


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata=SVG_METADATA)
    plt.close(fig)
    return path


def plot_degree_distribution(histogram: dict[int, int], path, *, loglog=False, title=None) -> Path:
    rows = degree_rows(histogram)
    d = np.array([r[0] for r in rows])
    p = np.array([r[2] for r in rows])
    mean = float((d * p).sum())
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(4.5, 3.2))
        ax.plot(d / mean, p, "o", ms=4, color="k")
        ax.set_yscale("log")
        if loglog:
            ax.set_xscale("log")
        ax.set_xlabel(r"$d/\mu(d)$")
        ax.set_ylabel(r"$P(d)$")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        return _save(fig, path)


def plot_precision(curves: dict, path, *, title=None) -> Path:
    """``curves`` maps a case label to ``(mean, lo, hi, baseline)``."""
    labels = sorted(curves)
    with plt.rc_context(SVG_RC):
        fig, axes = plt.subplots(len(labels), 1, figsize=(4.5, 2.0 * len(labels)), sharex=True, squeeze=False)
        for ax, label in zip(axes[:, 0], labels):
            mean, lo, hi, baseline = curves[label]
            m = np.arange(1, len(mean) + 1)
            color = COLORS.get(label, "k")
            ax.fill_between(m, lo, hi, step="post", color=color, alpha=0.2, lw=0)
            ax.step(m, mean, where="post", color=color, lw=1.0, label=f"[{label}]")
            ax.axhline(baseline, color="0.5", ls="--", lw=0.8, label="random")
            ax.set_ylim(0, 1.02)
            ax.set_xlim(1, len(mean))
            ax.set_ylabel("p")
            ax.legend(loc="upper right", frameon=False, fontsize=7)
        axes[-1, 0].set_xlabel(r"$m^{ret}$")
        if title:
            axes[0, 0].set_title(title)
        fig.tight_layout()
        return _save(fig, path)
