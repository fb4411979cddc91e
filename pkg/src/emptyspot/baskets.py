"""Basket-shaped communication records and node hiding.

One basket per initiator node: every node within ``radius`` hops of the
initiator, the initiator included. Hiding removes a node set from every
basket while keeping basket indices (and emptied baskets) in place.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, StructuralError
from .graphs import Graph, _bfs_order, all_hop_distances

DEFAULT_COVERAGE_TARGET = 0.15


@dataclass(frozen=True)
class Dataset:
    """Ordered baskets of node ids; basket ``j`` is ``baskets[j]``."""

    baskets: tuple[frozenset[int], ...]
    n_nodes: int

    def __post_init__(self):
        object.__setattr__(self, "baskets", tuple(frozenset(b) for b in self.baskets))
        for j, b in enumerate(self.baskets):
            for v in b:
                if not 0 <= v < self.n_nodes:
                    raise StructuralError(f"basket {j} holds node {v} outside 0..{self.n_nodes - 1}")

    def __len__(self) -> int:
        return len(self.baskets)

    def incidence(self) -> np.ndarray:
        """Boolean matrix, rows = baskets, columns = node ids."""
        x = np.zeros((len(self.baskets), self.n_nodes), dtype=bool)
        for j, b in enumerate(self.baskets):
            if b:
                x[j, list(b)] = True
        return x


@dataclass(frozen=True)
class HidingSpec:
    center: int
    k_hidden: int = 10


@dataclass(frozen=True)
class HiddenTruth:
    hidden_nodes: frozenset[int]
    modified_baskets: frozenset[int]
    gateway_nodes: frozenset[int] = field(default_factory=frozenset)


def _check_radius(radius):
    if int(radius) != radius or radius < 1:
        raise ParameterError(f"basket radius must be an integer >= 1, got {radius}")


def simulate_baskets(g: Graph, radius: int, distances: np.ndarray | None = None) -> Dataset:
    _check_radius(radius)
    if distances is None:
        distances = all_hop_distances(g)
    within = distances <= radius
    return Dataset(tuple(frozenset(np.flatnonzero(row).tolist()) for row in within), g.n)


def coverage_fraction(g: Graph, radius: int, distances: np.ndarray | None = None) -> float:
    """Mean basket size over node count."""
    _check_radius(radius)
    if distances is None:
        distances = all_hop_distances(g)
    return float((distances <= radius).sum(axis=1).mean() / g.n)


def choose_radius(g: Graph, target: float = DEFAULT_COVERAGE_TARGET, distances=None) -> int:
    """Smallest radius whose coverage fraction reaches ``target``."""
    if not 0 < target <= 1:
        raise ParameterError(f"coverage target must lie in (0, 1], got {target}")
    if distances is None:
        distances = all_hop_distances(g)
    sizes = None
    radius = 1
    while True:
        sizes = (distances <= radius).sum(axis=1)
        if sizes.mean() / g.n >= target or sizes.min() == g.n:
            return radius
        radius += 1


def build_hidden_set(g: Graph, spec: HidingSpec) -> frozenset[int]:
    """First ``k_hidden`` nodes of a BFS from the center, neighbours visited in id order."""
    if spec.k_hidden < 1:
        raise ParameterError(f"k_hidden must be >= 1, got {spec.k_hidden}")
    if not 0 <= spec.center < g.n:
        raise ParameterError(f"center {spec.center} out of range")
    return frozenset(_bfs_order(g, spec.center)[: spec.k_hidden])


def hide_nodes(original: Dataset, hidden, g: Graph) -> tuple[Dataset, HiddenTruth]:
    hidden = frozenset(hidden)
    if not hidden:
        raise ParameterError("hidden node set is empty")
    if any(not 0 <= v < original.n_nodes for v in hidden):
        raise ParameterError("hidden node outside the node universe")
    if len(hidden) >= original.n_nodes:
        raise ParameterError("cannot hide every node")
    observed = Dataset(tuple(b - hidden for b in original.baskets), original.n_nodes)
    modified = frozenset(j for j, b in enumerate(original.baskets) if b & hidden)
    gateways = frozenset().union(*(g.adj[v] for v in hidden)) - hidden
    return observed, HiddenTruth(hidden, modified, gateways)
