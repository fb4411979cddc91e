"""Network models: generators, degree statistics and hop-distance statistics.

Graphs are undirected and simple, with dense integer node ids ``0..n-1``.
Every generator is a pure function of its parameters and seed; each
generation attempt draws from its own substream ``default_rng([seed, attempt])``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import GenerationError, ParameterError, StructuralError

MAX_ATTEMPTS = 100
# degree-decay rate for the homogeneous model; see generate_homogeneous
DEFAULT_LAMBDA = 0.75


class Graph:
    """Undirected simple graph stored as one neighbour set per node."""

    def __init__(self, n: int):
        if n < 1:
            raise ParameterError(f"node count must be positive, got {n}")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        g = cls(n)
        for i, j in edges:
            g.add_edge(i, j)
        return g

    def add_edge(self, i: int, j: int) -> None:
        if i == j:
            raise StructuralError(f"self-loop on node {i}")
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise StructuralError(f"edge ({i}, {j}) out of range for {self.n} nodes")
        if j in self.adj[i]:
            raise StructuralError(f"duplicate edge ({i}, {j})")
        self.adj[i].add(j)
        self.adj[j].add(i)

    def remove_edge(self, i: int, j: int) -> None:
        self.adj[i].remove(j)
        self.adj[j].remove(i)

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def neighbors(self, i: int) -> list[int]:
        return sorted(self.adj[i])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` with ``i < j``, sorted lexicographically."""
        return [(i, j) for i in range(self.n) for j in sorted(self.adj[i]) if i < j]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adj], dtype=np.int64)

    def is_connected(self) -> bool:
        return len(_bfs_order(self, 0)) == self.n

    def csr(self) -> csr_matrix:
        rows, cols = [], []
        for i, nbrs in enumerate(self.adj):
            rows.extend([i] * len(nbrs))
            cols.extend(nbrs)
        data = np.ones(len(rows), dtype=np.int8)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges})"


@dataclass(frozen=True)
class DegreeSummary:
    histogram: dict[int, int]
    mean: float
    std: float
    cv: float
    gini: float


@dataclass(frozen=True)
class DistanceStats:
    node: int
    mean_dist: float
    std_dist: float


@dataclass(frozen=True)
class TargetNodes:
    a: int  # maximum degree
    b: int  # minimum std of hop distance
    c: int  # minimum mean hop distance

    def get(self, label: str) -> int:
        if label not in ("a", "b", "c"):
            raise ParameterError(f"unknown target label {label!r}; expected a, b or c")
        return getattr(self, label)


def _attempt_rng(seed, attempt: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), attempt])


def generate_ba(n: int, m_links: int, seed: int = 0) -> Graph:
    """Barabási–Albert preferential attachment.

    Growth starts from the complete graph on ``m_links + 1`` nodes; every new
    node links to ``m_links`` distinct existing nodes chosen with probability
    proportional to their current degree.
    """
    if m_links < 1:
        raise ParameterError(f"m_links must be >= 1, got {m_links}")
    if n < m_links + 1:
        raise ParameterError(f"n must be >= m_links + 1, got n={n}, m_links={m_links}")
    rng = _attempt_rng(seed, 0)
    g = Graph(n)
    for i, j in combinations(range(m_links + 1), 2):
        g.add_edge(i, j)
    # one entry per edge endpoint; uniform draws from it are degree-proportional
    endpoints = [v for v in range(m_links + 1) for _ in range(m_links)]
    for new in range(m_links + 1, n):
        targets: list[int] = []
        while len(targets) < m_links:
            t = endpoints[rng.integers(len(endpoints))]
            if t not in targets:
                targets.append(t)
        for t in targets:
            g.add_edge(new, t)
        endpoints.extend(targets)
        endpoints.extend([new] * m_links)
    return g


def truncated_exponential_pmf(d_min: int, d_max: int, lam: float) -> np.ndarray:
    """P(d) proportional to exp(-lam * (d - d_min)) on d_min..d_max."""
    d = np.arange(d_min, d_max + 1)
    w = np.exp(-lam * (d - d_min))
    return w / w.sum()


def _sample_degrees(n, d_min, d_max, lam, rng):
    # Systematic sampling of the inverse CDF followed by a shuffle: each node's
    # degree is still marginally distributed as the pmf, but the empirical
    # histogram tracks n * pmf to within one count per degree value.
    pmf = truncated_exponential_pmf(d_min, d_max, lam)
    cdf = np.cumsum(pmf)
    cdf[-1] = 1.0
    u = (np.arange(n) + rng.random()) / n
    seq = d_min + np.searchsorted(cdf, u, side="right")
    seq = np.minimum(seq, d_max)
    rng.shuffle(seq)
    if seq.sum() % 2:
        # resample one entry until the stub count is even
        k = int(rng.integers(n))
        old = seq[k]
        while True:
            seq[k] = d_min + rng.choice(len(pmf), p=pmf)
            if (seq[k] - old) % 2:
                break
    return seq


def _configuration_attempt(seq, rng, repair_tries=200):
    n = len(seq)
    stubs = np.repeat(np.arange(n), seq)
    rng.shuffle(stubs)
    g = Graph(n)
    bad = []
    for u, v in zip(stubs[0::2].tolist(), stubs[1::2].tolist()):
        if u == v or g.has_edge(u, v):
            bad.append((u, v))
        else:
            g.add_edge(u, v)
    for u, v in bad:
        # double-edge swap: drop (x, y), add (u, x) and (v, y); degrees preserved
        for _ in range(repair_tries):
            edges = g.edges()
            if not edges:
                return None
            x, y = edges[rng.integers(len(edges))]
            if rng.random() < 0.5:
                x, y = y, x
            if len({u, x}) < 2 or len({v, y}) < 2 or x == y:
                continue
            if g.has_edge(u, x) or g.has_edge(v, y):
                continue
            g.remove_edge(x, y)
            g.add_edge(u, x)
            g.add_edge(v, y)
            break
        else:
            return None
    return g


def generate_homogeneous(
    n: int,
    d_min: int = 3,
    d_max: int = 8,
    lam: float = DEFAULT_LAMBDA,
    seed: int = 0,
) -> Graph:
    """Configuration-model graph with a truncated exponential degree law.

    Self-loops and multi-edges produced by stub matching are repaired by
    degree-preserving edge swaps. Attempts that cannot be repaired or that
    come out disconnected are redrawn, up to ``MAX_ATTEMPTS`` times.
    """
    if not (2 <= d_min <= d_max < n):
        raise ParameterError(f"need 2 <= d_min <= d_max < n, got d_min={d_min}, d_max={d_max}, n={n}")
    if not lam > 0:
        raise ParameterError(f"lambda must be positive, got {lam}")
    if d_min == d_max and (n * d_min) % 2:
        raise GenerationError(f"no {d_min}-regular graph on {n} nodes: stub count is odd")
    for attempt in range(MAX_ATTEMPTS):
        rng = _attempt_rng(seed, attempt)
        seq = _sample_degrees(n, d_min, d_max, lam, rng)
        g = _configuration_attempt(seq, rng)
        if g is not None and g.is_connected():
            return g
    raise GenerationError(
        f"no connected simple graph realised within the retry budget of {MAX_ATTEMPTS} attempts"
    )


def generate_ws(n: int, ring_degree: int, rewire_prob: float, seed: int = 0) -> Graph:
    """Watts–Strogatz small world; rewiring keeps the edge count fixed."""
    if not 0 <= rewire_prob <= 1:
        raise ParameterError(f"rewire probability must lie in [0, 1], got {rewire_prob}")
    if ring_degree % 2 or not 2 <= ring_degree < n:
        raise ParameterError(f"ring degree must be even with 2 <= k < n, got k={ring_degree}, n={n}")
    half = ring_degree // 2
    for attempt in range(MAX_ATTEMPTS):
        rng = _attempt_rng(seed, attempt)
        g = Graph(n)
        for i in range(n):
            for j in range(1, half + 1):
                g.add_edge(i, (i + j) % n)
        for j in range(1, half + 1):
            for i in range(n):
                v = (i + j) % n
                if rng.random() >= rewire_prob or not g.has_edge(i, v):
                    continue
                if len(g.adj[i]) >= n - 1:
                    continue
                w = int(rng.integers(n))
                while w == i or g.has_edge(i, w):
                    w = int(rng.integers(n))
                g.remove_edge(i, v)
                g.add_edge(i, w)
        if g.is_connected():
            return g
    raise GenerationError(
        f"no connected graph realised within the retry budget of {MAX_ATTEMPTS} attempts"
    )


def gini(values) -> float:
    x = np.sort(np.asarray(values, dtype=float))
    n = len(x)
    if n == 0 or x.sum() == 0:
        return 0.0
    # sum_{i,j} |x_i - x_j| / (2 n^2 mean), via the sorted-rank identity
    ranks = np.arange(1, n + 1)
    return float((2 * ranks - n - 1) @ x / (n * x.sum()))


def degree_summary(g: Graph) -> DegreeSummary:
    if g.n < 2:
        raise ParameterError("degree summary needs at least two nodes")
    deg = g.degrees()
    values, counts = np.unique(deg, return_counts=True)
    mean = float(deg.mean())
    std = float(deg.std())
    return DegreeSummary(
        histogram={int(v): int(c) for v, c in zip(values, counts)},
        mean=mean,
        std=std,
        cv=std / mean if mean > 0 else 0.0,
        gini=gini(deg),
    )


def _bfs_order(g: Graph, source: int, dist=None) -> list[int]:
    seen = {source}
    order = [source]
    queue = deque([source])
    if dist is not None:
        dist[source] = 0
    while queue:
        u = queue.popleft()
        for v in sorted(g.adj[u]):
            if v not in seen:
                seen.add(v)
                order.append(v)
                queue.append(v)
                if dist is not None:
                    dist[v] = dist[u] + 1
    return order


def hop_distances(g: Graph, source: int) -> np.ndarray:
    """BFS hop counts from ``source``; -1 marks unreachable nodes."""
    if not 0 <= source < g.n:
        raise ParameterError(f"node {source} out of range")
    dist = np.full(g.n, -1, dtype=np.int64)
    _bfs_order(g, source, dist)
    return dist


def all_hop_distances(g: Graph) -> np.ndarray:
    """All-pairs hop-count matrix; raises on a disconnected graph."""
    d = shortest_path(g.csr(), method="D", directed=False, unweighted=True)
    if np.isinf(d).any():
        raise StructuralError("graph is disconnected")
    return d.astype(np.int64)


def _moment_keys(dist_rows: np.ndarray):
    # exact integer keys: ordering by S1 is ordering by mean, ordering by
    # N*S2 - S1^2 is ordering by variance; avoids float ties breaking wrongly
    N = dist_rows.shape[1] - 1
    s1 = dist_rows.sum(axis=1)
    s2 = (dist_rows * dist_rows).sum(axis=1)
    return N, s1, N * s2 - s1 * s1


def distance_stats(g: Graph, node: int) -> DistanceStats:
    if g.n < 2:
        raise ParameterError("distance statistics need at least two nodes")
    dist = hop_distances(g, node)
    if (dist < 0).any():
        raise StructuralError("graph is disconnected")
    others = np.delete(dist, node).astype(float)
    return DistanceStats(node=node, mean_dist=float(others.mean()), std_dist=float(others.std()))


def select_targets(g: Graph, distances: np.ndarray | None = None) -> TargetNodes:
    """Max-degree node, min distance-std node and min mean-distance node.

    Ties go to the smallest node id.
    """
    if g.n < 2:
        raise ParameterError("target selection needs at least two nodes")
    if distances is None:
        distances = all_hop_distances(g)
    _, s1, var_key = _moment_keys(distances)
    return TargetNodes(
        a=int(np.argmax(g.degrees())),
        b=int(np.argmin(var_key)),
        c=int(np.argmin(s1)),
    )
