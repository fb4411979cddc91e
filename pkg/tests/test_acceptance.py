"""Exit criteria for the whole toolkit, one test per criterion.

Each test records a verdict line before asserting; the lines are printed in
the pytest terminal summary under "acceptance criteria".
"""

import json
import time

import numpy as np
import pytest

from emptyspot import formats
from emptyspot.cli import main
from emptyspot.clustering import kmedoid, objective
from emptyspot.cooccurrence import ClosenessMatrix, closeness_matrix, frequency
from emptyspot.graphs import degree_summary
from emptyspot.predictor import score_all

from acceptance_log import record
from conftest import random_dataset
from oracles import exhaustive_single_medoid, jaccard_sets, literal_w, powerlaw_mle

SEEDS = range(10)


@pytest.fixture(scope="module")
def reference_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("reference")
    start = time.perf_counter()
    code = main(["experiment", "--config", "paper_homogeneous.cfg", "--out", str(out)])
    elapsed = time.perf_counter() - start
    assert code == 0
    return out, elapsed


def _generate(tmp_path, *args):
    graphs = []
    for s in SEEDS:
        out = tmp_path / f"s{s}"
        assert main(["generate", *map(str, args), "--seed", str(s), "--out", str(out)]) == 0
        graphs.append(formats.load_graph(out / "graph.txt"))
    return graphs


def test_1_scale_free_generator(tmp_path):
    start = time.perf_counter()
    graphs = _generate(tmp_path, "--model", "ba", "--n", 490, "--m", 2)
    elapsed = time.perf_counter() - start
    means = [degree_summary(g).mean for g in graphs]
    alphas = [powerlaw_mle(g.degrees(), d_min=2) for g in graphs]
    ok = (
        all(3.4 <= m <= 4.0 for m in means)
        and all(1.8 <= a <= 2.6 for a in alphas)
        and elapsed < 5.0
    )
    record(1, "BA generator fidelity", ok,
           f"mean degree {min(means):.3f}..{max(means):.3f} in [3.4, 4.0]; "
           f"MLE exponent {min(alphas):.3f}..{max(alphas):.3f} in [1.8, 2.6]; {elapsed:.2f}s < 5s")
    assert ok


def test_2_homogeneous_generator(tmp_path):
    graphs = _generate(tmp_path, "--model", "homogeneous", "--n", 995)
    sums = [degree_summary(g) for g in graphs]
    lo = min(min(s.histogram) for s in sums)
    hi = max(max(s.histogram) for s in sums)
    means = [s.mean for s in sums]
    cvs = [s.cv for s in sums]
    ok = lo >= 3 and hi <= 8 and all(3.7 <= m <= 4.1 for m in means) and all(c < 0.3 for c in cvs)
    record(2, "homogeneous generator fidelity", ok,
           f"degrees {lo}..{hi} in [3, 8]; mean {min(means):.3f}..{max(means):.3f} in [3.7, 4.1]; "
           f"max CV {max(cvs):.4f} < 0.3")
    assert ok


def test_3_three_case_ordering(reference_run):
    out, elapsed = reference_run
    trials = json.loads((out / "manifest.json").read_text())["trials"]
    p = {lb: trials[lb]["mean_precision_head"] for lb in "abc"}
    base = {lb: trials[lb]["random_baseline"] for lb in "abc"}
    # recompute the head means from the written curves rather than trusting the manifest
    for lb in "abc":
        curve = formats.load_precision(out / f"precision_{lb}.csv")["mean_p"]
        assert curve[: trials[lb]["num_modified"]].mean() == pytest.approx(p[lb], abs=1e-12)
    checks = {
        "c >= a + 0.05": p["c"] >= p["a"] + 0.05,
        "b >= a + 0.05": p["b"] >= p["a"] + 0.05,
        "b >= baseline_b + 0.2": p["b"] >= base["b"] + 0.2,
        "c >= baseline_c + 0.2": p["c"] >= base["c"] + 0.2,
        "runtime < 600s": elapsed < 600,
    }
    ok = all(checks.values())
    detail = ", ".join(f"p[{lb}]={p[lb]:.3f} (baseline {base[lb]:.3f})" for lb in "abc")
    failed = [k for k, v in checks.items() if not v]
    record(3, "three-case ordinal reproduction", ok,
           detail + f"; {elapsed:.1f}s" + (f"; failed: {'; '.join(failed)}" if failed else ""))
    assert ok, f"failed sub-checks: {failed}"


def test_4_oracle_equivalence():
    rng = np.random.default_rng(2024)
    w_mismatch = j_mismatch = 0
    for _ in range(500):
        d = random_dataset(rng, 10, 10)
        m = closeness_matrix(d)
        k = int(rng.integers(1, min(4, m.dimension) + 1))
        cl = kmedoid(m, k, seed=int(rng.integers(10**6)), restarts=1)
        groups = [cl.members(j) for j in range(k)]
        fast = score_all(d, frequency(d), cl)
        w_mismatch += sum(fast[i] != literal_w(b, d.baskets, groups) for i, b in enumerate(d.baskets))
    for _ in range(500):
        d = random_dataset(rng, 10, 10)
        m = closeness_matrix(d)
        nodes = m.nodes.tolist()
        j_mismatch += sum(
            m.entries[r, c] != jaccard_sets(d.baskets, i, j)
            for r, i in enumerate(nodes)
            for c, j in enumerate(nodes)
        )
    ok = w_mismatch == 0 and j_mismatch == 0
    record(4, "oracle equivalence", ok,
           f"predictor mismatches {w_mismatch}/500 instances, Jaccard mismatches {j_mismatch}/500 instances")
    assert ok


def test_5_kmedoid_soundness():
    rng = np.random.default_rng(99)
    decreases = 0
    for _ in range(100):
        n = int(rng.integers(3, 60))
        a = rng.random((n, n))
        s = (a + a.T) / 2
        np.fill_diagonal(s, 1.0)
        m = ClosenessMatrix(np.arange(n), s)
        cl = kmedoid(m, int(rng.integers(1, min(8, n) + 1)), seed=int(rng.integers(10**6)), restarts=1)
        decreases += int(np.any(np.diff(cl.history) < -1e-12))
    wrong = 0
    for _ in range(100):
        n = int(rng.integers(3, 21))
        a = rng.random((n, n))
        s = (a + a.T) / 2
        np.fill_diagonal(s, 1.0)
        m = ClosenessMatrix(np.arange(n), s)
        cl = kmedoid(m, 1, seed=int(rng.integers(10**6)))
        arg, best = exhaustive_single_medoid(s.tolist())
        wrong += int(cl.medoids != [arg] or abs(objective(cl, m) - best) > 1e-12)
    ok = decreases == 0 and wrong == 0
    record(5, "k-medoid soundness", ok,
           f"{decreases}/100 runs with a decreasing objective; {wrong}/100 single-cluster medoids off the exhaustive argmax")
    assert ok


def test_6_pipeline_invariants(reference_run, tmp_path):
    out, _ = reference_run
    original = formats.load_dataset(out / "baskets.txt")
    problems = []
    for lb in "abc":
        observed = formats.load_dataset(out / f"observed_{lb}.txt")
        truth = formats.load_truth(out / f"truth_{lb}.txt")
        for b, beta in zip(observed.baskets, original.baskets):
            if not b <= beta:
                problems.append(f"{lb}: observed basket not a subset")
            if b & truth.hidden_nodes:
                problems.append(f"{lb}: hidden node observed")
        brute = {i for i, beta in enumerate(original.baskets) if beta & truth.hidden_nodes}
        if brute != truth.modified_baskets:
            problems.append(f"{lb}: modified set differs from brute force")
        curve = formats.load_precision(out / f"precision_{lb}.csv")
        total = len(original)
        for key in ("mean_p", "min_p", "max_p"):
            if curve[key][-1] != len(truth.modified_baskets) / total:
                problems.append(f"{lb}: p(|b|) != num_modified/|b| in {key}")
    rerun = tmp_path / "rerun"
    assert main(["experiment", "--config", str(out / "manifest.json"), "--out", str(rerun)]) == 0
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    second = {p.name: p.read_bytes() for p in rerun.iterdir()}
    if first != second:
        problems.append("rerun from manifest is not byte-identical")
    ok = not problems
    record(6, "pipeline invariants", ok,
           f"3 cases x {len(original)} baskets checked; rerun byte-identical over {len(first)} files"
           if ok else "; ".join(problems[:5]))
    assert ok


def test_7_literal_variant_audit(reference_run):
    out, _ = reference_run
    trials = json.loads((out / "manifest.json").read_text())["trials"]
    rho = {lb: trials[lb]["spearman_eq11_vs_eq10"] for lb in "abc"}
    ok = all(r["mean"] is not None and len(r["per_seed"]) == 20 for r in rho.values())
    record(7, "literal-variant Spearman report", ok,
           ", ".join(f"[{lb}] mean rho {rho[lb]['mean']:.3f}" for lb in "abc") + " (reported, no threshold)")
    assert ok
