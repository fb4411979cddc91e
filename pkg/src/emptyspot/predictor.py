"""Heuristic predictor: score baskets by rare nodes spread across clusters.

For each cluster the basket's term is the largest inverse frequency among
its nodes in that cluster (0 when it holds none); the score is the mean of
the terms over all clusters. High scores flag baskets whose rare members
bridge many clusters.

``EQ11_LITERAL`` reproduces the alternative closed form that takes the
minimum raw frequency per cluster instead. It is kept for comparison only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baskets import Dataset
from .clustering import Clustering
from .cooccurrence import FrequencyTable
from .errors import ParameterError, StructuralError

EQ10 = "eq10"
EQ11_LITERAL = "eq11-literal"
SCORE_VARIANTS = (EQ10, EQ11_LITERAL)


@dataclass(frozen=True)
class RankedBaskets:
    order: np.ndarray  # basket indices, best first
    scores: np.ndarray  # scores[i] = score of basket i

    def ranked_scores(self) -> np.ndarray:
        return self.scores[self.order]


def _check_variant(variant):
    if variant not in SCORE_VARIANTS:
        raise ParameterError(f"unknown score variant {variant!r}; expected one of {', '.join(SCORE_VARIANTS)}")


def basket_score(basket, freq: FrequencyTable, cl: Clustering, variant: str = EQ10) -> float:
    _check_variant(variant)
    cluster_of = cl.assignment
    terms = [0.0] * cl.num_clusters
    for v in sorted(basket):
        j = cluster_of.get(v)
        if j is None:
            continue
        f = freq[v]
        if f == 0:
            raise StructuralError(f"node {v} is clustered but has zero frequency")
        if variant == EQ10:
            terms[j] = max(terms[j], 1.0 / f)
        else:
            terms[j] = float(f) if terms[j] == 0 else min(terms[j], float(f))
    total = 0.0
    for t in terms:
        total += t
    return total / cl.num_clusters


def score_all(d: Dataset, freq: FrequencyTable, cl: Clustering, variant: str = EQ10) -> np.ndarray:
    _check_variant(variant)
    k = cl.num_clusters
    counts = freq.counts[cl.nodes]
    if (counts == 0).any():
        raise StructuralError("a clustered node has zero frequency")
    x = d.incidence()[:, cl.nodes]
    terms = np.zeros((len(d), k))
    if variant == EQ10:
        inv = 1.0 / counts
        for j in range(k):
            cols = cl.labels == j
            if cols.any():
                terms[:, j] = np.where(x[:, cols], inv[cols], 0.0).max(axis=1)
    else:
        for j in range(k):
            cols = cl.labels == j
            if cols.any():
                vals = np.where(x[:, cols], counts[cols].astype(float), np.inf).min(axis=1)
                terms[:, j] = np.where(np.isfinite(vals), vals, 0.0)
    # accumulate cluster by cluster, same order as basket_score
    total = np.zeros(len(d))
    for j in range(k):
        total += terms[:, j]
    return total / k


def rank_baskets(d: Dataset, freq: FrequencyTable, cl: Clustering, variant: str = EQ10) -> RankedBaskets:
    """Descending score; equal scores keep ascending basket index."""
    scores = score_all(d, freq, cl, variant)
    order = np.argsort(-scores, kind="stable")
    return RankedBaskets(order=order, scores=scores)
