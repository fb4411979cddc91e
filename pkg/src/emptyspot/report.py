"""Write an experiment's files and manifest into one output directory."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import __version__, formats, plotting
from .evaluation import ExperimentResult
from .graphs import degree_summary


def _finite(x):
    return None if x is None or not math.isfinite(x) else x


def write_degree_table(histogram: dict[int, int], path) -> Path:
    lines = ["degree,count,probability\n"]
    lines += [f"{d},{c},{p!r}\n" for d, c, p in plotting.degree_rows(histogram)]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(lines), encoding="utf-8")
    return path


def write_curve_table(curves: dict, path) -> Path:
    """Wide CSV: one mean-precision and one baseline column per case."""
    labels = sorted(curves)
    header = ["m_ret"] + [f"mean_p_{lb}" for lb in labels] + [f"baseline_{lb}" for lb in labels]
    length = max(len(curves[lb][0]) for lb in labels)
    lines = [",".join(header) + "\n"]
    for i in range(length):
        row = [str(i + 1)]
        row += [repr(float(curves[lb][0][i])) for lb in labels]
        row += [repr(float(curves[lb][3])) for lb in labels]
        lines.append(",".join(row) + "\n")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(lines), encoding="utf-8")
    return path


def write_experiment(result: ExperimentResult, sources: dict, out_dir, plots: bool = True) -> dict:
    """Save every artifact plus ``manifest.json``; returns the manifest.

    Artifact paths in the manifest are relative to ``out_dir`` so that a
    rerun into a different directory yields an identical manifest.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    artifacts = []

    def keep(path):
        artifacts.append(Path(path).relative_to(out).as_posix())

    keep(formats.save_graph(result.graph, out / "graph.txt"))
    keep(formats.save_dataset(result.original, out / "baskets.txt"))
    summary = degree_summary(result.graph)
    keep(write_degree_table(summary.histogram, out / "degree_distribution.csv"))

    trials = {}
    curves = {}
    for t in result.trials:
        lb = t.label
        keep(formats.save_dataset(t.observed, out / f"observed_{lb}.txt"))
        keep(formats.save_truth(t.truth, out / f"truth_{lb}.txt"))
        first = t.repetitions[0]
        keep(formats.save_clustering(first.clustering, out / f"clustering_{lb}.txt"))
        keep(formats.save_ranking(first.ranked, out / f"ranking_{lb}.csv"))
        keep(formats.save_precision(out / f"precision_{lb}.csv", t.mean_curve, t.min_curve, t.max_curve))
        curves[lb] = (t.mean_curve, t.min_curve, t.max_curve, t.baseline)
        rhos = [_finite(r.spearman_eq11) for r in t.repetitions]
        valid = [r for r in rhos if r is not None]
        trials[lb] = {
            "center_node": t.center,
            "hidden_nodes": sorted(t.truth.hidden_nodes),
            "num_gateways": len(t.truth.gateway_nodes),
            "num_modified": t.num_modified,
            "num_baskets": len(t.observed),
            "random_baseline": t.baseline,
            "mean_precision_head": t.head_mean(),
            "precision_at_full": float(t.mean_curve[-1]),
            "spearman_eq11_vs_eq10": {
                "mean": float(np.mean(valid)) if valid else None,
                "per_seed": rhos,
            },
        }
    keep(write_curve_table(curves, out / "precision_curves.csv"))
    if plots:
        keep(plotting.plot_degree_distribution(
            summary.histogram, out / "degree_distribution.svg", loglog=result.config.model == "ba"
        ))
        keep(plotting.plot_precision(curves, out / "precision.svg"))

    cfg = result.config.as_dict()
    manifest = {
        "tool": "emptyspot",
        "version": __version__,
        "master_seed": result.config.seed,
        "config": {k: {"value": cfg[k], "source": sources.get(k, "default")} for k in cfg},
        "resolved": {
            "radius": result.radius,
            "coverage_fraction": result.coverage,
            "graph_nodes": result.graph.n,
            "graph_edges": result.graph.num_edges,
            "degree_mean": summary.mean,
            "degree_cv": summary.cv,
            "degree_gini": summary.gini,
            "targets": {"a": result.targets.a, "b": result.targets.b, "c": result.targets.c},
            "repetition_seeds": result.config.repetition_seeds(),
        },
        "trials": trials,
        "artifacts": sorted(artifacts + ["manifest.json"]),
    }
    formats.save_manifest(manifest, out / "manifest.json")
    return manifest
