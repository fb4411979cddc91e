"""k-medoid clustering over a Jaccard closeness matrix.

Closeness is a similarity, so both steps maximise: nodes join the medoid
they are closest to, and each cluster's medoid becomes the member with the
largest summed closeness to the rest of the cluster.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cooccurrence import ClosenessMatrix
from .errors import ParameterError, StructuralError

DEFAULT_CLUSTERS = 10
DEFAULT_RESTARTS = 5
DEFAULT_MAX_ITER = 100
_TIE_EPS = 1e-12


@dataclass
class Clustering:
    nodes: np.ndarray  # universe, sorted node ids
    medoids: list[int]  # node id of the medoid of cluster j
    labels: np.ndarray  # labels[r] = cluster of node nodes[r]
    iterations_run: int = 0
    history: list[float] = field(default_factory=list, compare=False)

    @property
    def num_clusters(self) -> int:
        return len(self.medoids)

    @property
    def assignment(self) -> dict[int, int]:
        return {int(v): int(c) for v, c in zip(self.nodes, self.labels)}

    def members(self, j: int) -> list[int]:
        return [int(v) for v in self.nodes[self.labels == j]]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Clustering)
            and np.array_equal(self.nodes, other.nodes)
            and list(self.medoids) == list(other.medoids)
            and np.array_equal(self.labels, other.labels)
            and self.iterations_run == other.iterations_run
        )


def _assign(J, med_rows):
    labels = np.argmax(J[:, med_rows], axis=1)
    labels[med_rows] = np.arange(len(med_rows))
    return labels


def _objective_rows(J, med_rows, labels) -> float:
    total = 0.0
    for j, m in enumerate(med_rows):
        members = np.flatnonzero(labels == j)
        total += J[m, members].sum() - J[m, m]
    return float(total)


def _update(J, med_rows, labels):
    new = list(med_rows)
    for j, m in enumerate(med_rows):
        members = np.flatnonzero(labels == j)
        scores = J[np.ix_(members, members)].sum(axis=1) - J[members, members]
        best = scores.max()
        incumbent = scores[np.searchsorted(members, m)]
        if incumbent >= best - _TIE_EPS * max(1.0, abs(best)):
            continue
        new[j] = int(members[np.argmax(scores)])
    return new


def _run_once(J, k, rng, max_iter):
    med = [int(r) for r in rng.choice(J.shape[0], size=k, replace=False)]
    history = []
    labels = _assign(J, med)
    history.append(_objective_rows(J, med, labels))
    it = 0
    for it in range(1, max_iter + 1):
        new = _update(J, med, labels)
        history.append(_objective_rows(J, new, labels))
        if new == med:
            break
        med = new
        labels = _assign(J, med)
        history.append(_objective_rows(J, med, labels))
    return med, labels, it, history


def kmedoid(
    m: ClosenessMatrix,
    num_clusters: int = DEFAULT_CLUSTERS,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
    restarts: int = DEFAULT_RESTARTS,
) -> Clustering:
    """Best of ``restarts`` independent runs, ranked by final objective.

    Restart ``r`` draws its initial medoids from ``default_rng([seed, r])``.
    ``history`` holds the objective after every assignment and update step
    of the winning run.
    """
    if not 1 <= num_clusters <= m.dimension:
        raise ParameterError(
            f"number of clusters must lie in 1..{m.dimension}, got {num_clusters}"
        )
    if max_iter < 1:
        raise ParameterError(f"max_iter must be >= 1, got {max_iter}")
    if restarts < 1:
        raise ParameterError(f"restarts must be >= 1, got {restarts}")
    J = m.entries
    best = None
    for r in range(restarts):
        med, labels, it, history = _run_once(J, num_clusters, np.random.default_rng([int(seed), r]), max_iter)
        if best is None or history[-1] > best[3][-1] + _TIE_EPS:
            best = (med, labels, it, history)
    med, labels, it, history = best
    return Clustering(
        nodes=m.nodes.copy(),
        medoids=[int(m.nodes[r]) for r in med],
        labels=labels.astype(np.int64),
        iterations_run=it,
        history=history,
    )


def objective(cl: Clustering, m: ClosenessMatrix) -> float:
    """Sum over clusters of the closeness between each member and its medoid."""
    if not np.array_equal(cl.nodes, m.nodes):
        raise StructuralError("clustering and closeness matrix cover different nodes")
    if len(cl.labels) != len(cl.nodes):
        raise StructuralError("clustering labels do not cover its node universe")
    try:
        med_rows = [m.index_of(v) for v in cl.medoids]
    except KeyError as e:
        raise StructuralError(f"medoid {e.args[0]} not in the closeness matrix") from None
    for j, r in enumerate(med_rows):
        if cl.labels[r] != j:
            raise StructuralError(f"medoid of cluster {j} is assigned elsewhere")
    return _objective_rows(m.entries, med_rows, cl.labels)


def unassigned_nodes(cl: Clustering, m: ClosenessMatrix) -> list[int]:
    """Non-medoid nodes with zero closeness to every medoid (parked in cluster 0)."""
    med_rows = [m.index_of(v) for v in cl.medoids]
    zero = ~(m.entries[:, med_rows] > 0).any(axis=1)
    zero[med_rows] = False
    return [int(v) for v in m.nodes[zero]]
