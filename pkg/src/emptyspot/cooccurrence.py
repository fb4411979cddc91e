"""Occurrence frequency and Jaccard closeness over an observed dataset."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baskets import Dataset
from .errors import StructuralError


@dataclass(frozen=True)
class FrequencyTable:
    counts: np.ndarray  # counts[i] = number of baskets containing node i
    dataset_size: int

    def __getitem__(self, node: int) -> int:
        return int(self.counts[node])


@dataclass(frozen=True)
class ClosenessMatrix:
    nodes: np.ndarray  # sorted node ids; row r of ``entries`` is node nodes[r]
    entries: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.nodes)

    def index_of(self, node: int) -> int:
        r = int(np.searchsorted(self.nodes, node))
        if r >= len(self.nodes) or self.nodes[r] != node:
            raise KeyError(node)
        return r

    def __call__(self, i: int, j: int) -> float:
        return float(self.entries[self.index_of(i), self.index_of(j)])


def frequency(d: Dataset) -> FrequencyTable:
    counts = np.zeros(d.n_nodes, dtype=np.int64)
    for b in d.baskets:
        for v in b:
            counts[v] += 1
    return FrequencyTable(counts, len(d))


def jaccard(d: Dataset, i: int, j: int) -> float:
    both = either = 0
    for b in d.baskets:
        a, c = i in b, j in b
        both += a and c
        either += a or c
    return both / either if either else 0.0


def closeness_matrix(d: Dataset) -> ClosenessMatrix:
    """Jaccard matrix over every node that appears in at least one basket."""
    x = d.incidence()
    present = np.flatnonzero(x.any(axis=0))
    if len(present) == 0:
        raise StructuralError("every basket is empty; no closeness to compute")
    xs = x[:, present].astype(np.float64)
    # BLAS matmul on 0/1 floats is exact for counts below 2**53
    co = np.rint(xs.T @ xs).astype(np.int64)
    f = np.diag(co)
    union = f[:, None] + f[None, :] - co
    return ClosenessMatrix(present, co / union)
