"""Precision curves and the three-case hidden-node experiment."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.stats import spearmanr

from . import baskets, clustering, cooccurrence, graphs, predictor
from .errors import EmptySpotError, ParameterError, StageError, StructuralError

CENTER_LABELS = ("a", "b", "c")


@dataclass(frozen=True)
class PrecisionCurve:
    values: np.ndarray  # values[m - 1] = precision of the top m baskets
    num_modified: int
    hits: np.ndarray | None = None  # hits[m - 1] = modified baskets among the top m

    def head_mean(self) -> float:
        """Mean precision over m = 1..num_modified (0 when nothing was modified)."""
        if self.num_modified == 0:
            return 0.0
        return float(self.values[: self.num_modified].mean())


@dataclass
class ExperimentConfig:
    model: str = "homogeneous"
    n: int = 995
    m: int = 2
    d_min: int = 3
    d_max: int = 8
    lam: float = graphs.DEFAULT_LAMBDA
    ring_degree: int = 4
    rewire_prob: float = 0.1
    seed: int = 0
    graph_seed: int | None = None
    radius: int | None = None  # None: auto from coverage_target
    coverage_target: float = baskets.DEFAULT_COVERAGE_TARGET
    k_hidden: int = 10
    clusters: int = clustering.DEFAULT_CLUSTERS
    restarts: int = clustering.DEFAULT_RESTARTS
    max_iter: int = clustering.DEFAULT_MAX_ITER
    centers: tuple[str, ...] = CENTER_LABELS
    repetitions: int = 20
    score_variant: str = predictor.EQ10

    def __post_init__(self):
        self.centers = tuple(self.centers)
        if self.model not in ("ba", "homogeneous", "ws"):
            raise ParameterError(f"unknown graph model {self.model!r}")
        bad = [c for c in self.centers if c not in CENTER_LABELS]
        if bad or not self.centers:
            raise ParameterError(f"centers must be a non-empty subset of a, b, c; got {self.centers}")
        if self.repetitions < 1:
            raise ParameterError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.k_hidden < 1:
            raise ParameterError(f"k_hidden must be >= 1, got {self.k_hidden}")
        if self.score_variant not in predictor.SCORE_VARIANTS:
            raise ParameterError(f"unknown score variant {self.score_variant!r}")

    def repetition_seeds(self) -> list[int]:
        return [int(s) for s in np.random.SeedSequence(self.seed).generate_state(self.repetitions)]

    def build_graph(self) -> graphs.Graph:
        gseed = self.seed if self.graph_seed is None else self.graph_seed
        if self.model == "ba":
            return graphs.generate_ba(self.n, self.m, gseed)
        if self.model == "ws":
            return graphs.generate_ws(self.n, self.ring_degree, self.rewire_prob, gseed)
        return graphs.generate_homogeneous(self.n, self.d_min, self.d_max, self.lam, gseed)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["centers"] = list(self.centers)
        return d


@dataclass
class RepetitionResult:
    seed: int
    clustering: clustering.Clustering
    ranked: predictor.RankedBaskets
    curve: PrecisionCurve
    spearman_eq11: float


@dataclass
class TrialResult:
    label: str
    center: int
    targets: graphs.TargetNodes
    truth: baskets.HiddenTruth
    observed: baskets.Dataset
    repetitions: list[RepetitionResult]
    mean_curve: np.ndarray
    min_curve: np.ndarray
    max_curve: np.ndarray
    baseline: float

    @property
    def curves(self) -> list[PrecisionCurve]:
        return [r.curve for r in self.repetitions]

    @property
    def num_modified(self) -> int:
        return len(self.truth.modified_baskets)

    def head_mean(self) -> float:
        """Mean of the mean curve over m = 1..num_modified."""
        if self.num_modified == 0:
            return 0.0
        return float(self.mean_curve[: self.num_modified].mean())


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    graph: graphs.Graph
    radius: int
    coverage: float
    targets: graphs.TargetNodes
    original: baskets.Dataset
    trials: list[TrialResult] = field(default_factory=list)

    def baseline(self, label: str) -> float:
        return next(t.baseline for t in self.trials if t.label == label)


def precision_curve(ranked: predictor.RankedBaskets, truth: baskets.HiddenTruth, total: int) -> PrecisionCurve:
    order = np.asarray(ranked.order)
    if len(order) != total or not np.array_equal(np.sort(order), np.arange(total)):
        raise StructuralError(f"ranking is not a permutation of 0..{total - 1}")
    modified = np.zeros(total, dtype=bool)
    for i in truth.modified_baskets:
        if not 0 <= i < total:
            raise StructuralError(f"modified basket index {i} outside 0..{total - 1}")
        modified[i] = True
    hits = np.cumsum(modified[order])
    return PrecisionCurve(hits / np.arange(1, total + 1), int(modified.sum()), hits)


def random_baseline(num_modified: int, total: int) -> float:
    """Expected precision of a uniformly random ranking, identical for every m."""
    return num_modified / total


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except StageError:
        raise
    except EmptySpotError as e:
        raise StageError(name, e) from e


def run_trial(
    g: graphs.Graph,
    config: ExperimentConfig,
    label: str,
    *,
    radius: int | None = None,
    distances: np.ndarray | None = None,
    targets: graphs.TargetNodes | None = None,
    original: baskets.Dataset | None = None,
) -> TrialResult:
    """Hide the nodes around one target and score every repetition seed.

    The graph, hidden set and observed dataset are shared by all
    repetitions; only the clustering initialisation changes.
    """
    if label not in CENTER_LABELS:
        raise ParameterError(f"unknown center label {label!r}")
    if distances is None:
        distances = _stage("distances", graphs.all_hop_distances, g)
    if radius is None:
        radius = config.radius or _stage("radius", baskets.choose_radius, g, config.coverage_target, distances)
    if targets is None:
        targets = _stage("targets", graphs.select_targets, g, distances)
    if original is None:
        original = _stage("simulate", baskets.simulate_baskets, g, radius, distances)
    center = targets.get(label)
    hidden = _stage("hide", baskets.build_hidden_set, g, baskets.HidingSpec(center, config.k_hidden))
    observed, truth = _stage("hide", baskets.hide_nodes, original, hidden, g)
    freq = _stage("frequency", cooccurrence.frequency, observed)
    matrix = _stage("closeness", cooccurrence.closeness_matrix, observed)

    reps = []
    for s in config.repetition_seeds():
        cl = _stage(
            "cluster", clustering.kmedoid, matrix, config.clusters, s, config.max_iter, config.restarts
        )
        ranked = _stage("rank", predictor.rank_baskets, observed, freq, cl, config.score_variant)
        other = predictor.EQ11_LITERAL if config.score_variant == predictor.EQ10 else predictor.EQ10
        other_scores = _stage("rank", predictor.score_all, observed, freq, cl, other)
        rho = float(spearmanr(ranked.scores, other_scores).statistic)
        curve = _stage("evaluate", precision_curve, ranked, truth, len(observed))
        reps.append(RepetitionResult(s, cl, ranked, curve, rho))

    stack = np.vstack([r.curve.values for r in reps])
    # integer hit totals over R * m: one rounding, so identical runs average to themselves
    hit_total = np.sum([r.curve.hits for r in reps], axis=0)
    m = np.arange(1, stack.shape[1] + 1)
    return TrialResult(
        label=label,
        center=center,
        targets=targets,
        truth=truth,
        observed=observed,
        repetitions=reps,
        mean_curve=hit_total / (len(reps) * m),
        min_curve=stack.min(axis=0),
        max_curve=stack.max(axis=0),
        baseline=random_baseline(len(truth.modified_baskets), len(observed)),
    )


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    g = _stage("generate", config.build_graph)
    distances = _stage("distances", graphs.all_hop_distances, g)
    radius = config.radius or _stage("radius", baskets.choose_radius, g, config.coverage_target, distances)
    targets = _stage("targets", graphs.select_targets, g, distances)
    original = _stage("simulate", baskets.simulate_baskets, g, radius, distances)
    result = ExperimentResult(
        config=config,
        graph=g,
        radius=radius,
        coverage=baskets.coverage_fraction(g, radius, distances),
        targets=targets,
        original=original,
    )
    for label in config.centers:
        result.trials.append(
            run_trial(g, config, label, radius=radius, distances=distances, targets=targets, original=original)
        )
    return result
