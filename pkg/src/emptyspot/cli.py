"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 pipeline error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, baskets, clustering, cooccurrence, formats, graphs, predictor, report
from .config import read_config, resolve
from .errors import EmptySpotError, ParameterError, ParseError
from .evaluation import CENTER_LABELS, precision_curve, run_experiment

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_PIPELINE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--seed", type=int, help="master RNG seed")
    p.add_argument("--config", help="key = value config file, or a manifest.json to rerun")
    p.add_argument("--out", default=".", help="output directory (default: current)")


def _graph_flags(p):
    p.add_argument("--model", choices=["ba", "homogeneous", "ws"])
    p.add_argument("--n", type=int, help="node count")
    p.add_argument("--m", type=int, help="links per new node (ba)")
    p.add_argument("--d-min", dest="d_min", type=int, help="minimum degree (homogeneous)")
    p.add_argument("--d-max", dest="d_max", type=int, help="maximum degree (homogeneous)")
    p.add_argument("--lam", type=float, help="degree decay rate (homogeneous)")
    p.add_argument("--ring-degree", dest="ring_degree", type=int, help="lattice degree (ws)")
    p.add_argument("--rewire-prob", dest="rewire_prob", type=float, help="rewiring probability (ws)")
    p.add_argument("--graph-seed", dest="graph_seed", type=int, help="graph seed (default: --seed)")


def _radius(text):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"radius must be an integer or 'auto', got {text!r}") from None


def _sim_flags(p):
    p.add_argument("--radius", type=_radius, help="basket radius in hops, or 'auto'")
    p.add_argument("--coverage-target", dest="coverage_target", type=float,
                   help="coverage fraction used by radius=auto")


def _cluster_flags(p):
    p.add_argument("--clusters", type=int, help="number of clusters")
    p.add_argument("--restarts", type=int, help="k-medoid restarts (best objective kept)")
    p.add_argument("--max-iter", dest="max_iter", type=int, help="k-medoid iteration cap")


def _variant_flag(p):
    p.add_argument("--score-variant", dest="score_variant", choices=list(predictor.SCORE_VARIANTS))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="emptyspot", description="Predict baskets that conceal hidden nodes.")
    parser.add_argument("--version", action="version", version=f"emptyspot {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="generate a network and write graph.txt")
    _common(p)
    _graph_flags(p)

    p = sub.add_parser("simulate", help="write one basket per node (baskets.txt)")
    _common(p)
    p.add_argument("--graph", required=True)
    _sim_flags(p)

    p = sub.add_parser("hide", help="hide nodes around a center; writes observed.txt and truth.txt")
    _common(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--center", required=True, help="a, b, c, or a node id")
    p.add_argument("--k-hidden", dest="k_hidden", type=int)

    p = sub.add_parser("cluster", help="k-medoid clustering of an observed dataset")
    _common(p)
    p.add_argument("--dataset", required=True)
    _cluster_flags(p)

    p = sub.add_parser("rank", help="rank baskets by predictor score (ranking.csv)")
    _common(p)
    p.add_argument("--dataset", required=True)
    p.add_argument("--clustering", required=True)
    _variant_flag(p)

    p = sub.add_parser("evaluate", help="precision curve of a ranking (precision.csv)")
    _common(p)
    p.add_argument("--ranking", required=True)
    p.add_argument("--truth", required=True)

    p = sub.add_parser("experiment", help="run the three-case experiment end to end")
    _common(p)
    _graph_flags(p)
    _sim_flags(p)
    p.add_argument("--k-hidden", dest="k_hidden", type=int)
    _cluster_flags(p)
    _variant_flag(p)
    p.add_argument("--centers", help="comma-separated subset of a,b,c")
    p.add_argument("--repetitions", type=int)
    p.add_argument("--no-plots", action="store_true", help="skip SVG rendering")

    p = sub.add_parser("plot", help="degree and precision plot data (CSV) and SVG figures")
    _common(p)
    p.add_argument("--graph", help="graph file for the degree distribution")
    p.add_argument("--experiment", help="experiment output directory for precision curves")
    return parser


def _config(args):
    flags = {k: v for k, v in vars(args).items() if v is not None}
    if flags.get("radius") == "auto":
        flags["radius"] = None
        auto_flag = True
    else:
        auto_flag = False
    if "centers" in flags:
        flags["centers"] = tuple(c.strip() for c in flags["centers"].split(",") if c.strip())
    file_values, file_sources = ({}, {})
    if args.config:
        file_values, file_sources = read_config(args.config)
    cfg, sources = resolve(flags, file_values, file_sources)
    if auto_flag:
        cfg.radius = None
        sources["radius"] = "flag"
    return cfg, sources


def _say(msg):
    print(msg)


def cmd_generate(args, cfg, sources):
    g = cfg.build_graph()
    path = formats.save_graph(g, Path(args.out) / "graph.txt")
    s = graphs.degree_summary(g)
    _say(f"{path}\tnodes={g.n}\tedges={g.num_edges}\tmean_degree={s.mean:.4f}\tcv={s.cv:.4f}\tgini={s.gini:.4f}")


def cmd_simulate(args, cfg, sources):
    g = formats.load_graph(args.graph)
    dist = graphs.all_hop_distances(g)
    radius = cfg.radius or baskets.choose_radius(g, cfg.coverage_target, dist)
    d = baskets.simulate_baskets(g, radius, dist)
    path = formats.save_dataset(d, Path(args.out) / "baskets.txt")
    _say(f"{path}\tbaskets={len(d)}\tradius={radius}\tcoverage={baskets.coverage_fraction(g, radius, dist):.4f}")


def cmd_hide(args, cfg, sources):
    g = formats.load_graph(args.graph)
    d = formats.load_dataset(args.dataset)
    if d.n_nodes != g.n:
        raise ParseError(f"dataset covers {d.n_nodes} nodes but the graph has {g.n}", args.dataset)
    if args.center in CENTER_LABELS:
        center = graphs.select_targets(g).get(args.center)
    else:
        try:
            center = int(args.center)
        except ValueError:
            raise UsageError(f"--center must be a, b, c or a node id, got {args.center!r}") from None
    hidden = baskets.build_hidden_set(g, baskets.HidingSpec(center, cfg.k_hidden))
    observed, truth = baskets.hide_nodes(d, hidden, g)
    out = Path(args.out)
    formats.save_dataset(observed, out / "observed.txt")
    formats.save_truth(truth, out / "truth.txt")
    _say(f"{out / 'observed.txt'}\tcenter={center}\thidden={len(hidden)}\tmodified={len(truth.modified_baskets)}")


def cmd_cluster(args, cfg, sources):
    d = formats.load_dataset(args.dataset)
    m = cooccurrence.closeness_matrix(d)
    seed = cfg.seed
    cl = clustering.kmedoid(m, cfg.clusters, seed, cfg.max_iter, cfg.restarts)
    path = formats.save_clustering(cl, Path(args.out) / "clustering.txt")
    parked = clustering.unassigned_nodes(cl, m)
    _say(f"{path}\tclusters={cl.num_clusters}\titerations={cl.iterations_run}"
         f"\tobjective={clustering.objective(cl, m):.6f}\tzero_closeness_nodes={len(parked)}")


def cmd_rank(args, cfg, sources):
    d = formats.load_dataset(args.dataset)
    cl = formats.load_clustering(args.clustering)
    if cl.nodes.size and cl.nodes.max() >= d.n_nodes:
        raise ParseError("clustering names nodes outside the dataset universe", args.clustering)
    r = predictor.rank_baskets(d, cooccurrence.frequency(d), cl, cfg.score_variant)
    path = formats.save_ranking(r, Path(args.out) / "ranking.csv")
    _say(f"{path}\tbaskets={len(r.order)}\ttop_score={r.scores[r.order[0]]:.6g}")


def cmd_evaluate(args, cfg, sources):
    r = formats.load_ranking(args.ranking)
    t = formats.load_truth(args.truth)
    curve = precision_curve(r, t, len(r.order))
    path = formats.save_precision(Path(args.out) / "precision.csv", curve.values)
    _say(f"{path}\tmodified={curve.num_modified}\tmean_precision_head={curve.head_mean():.4f}"
         f"\tbaseline={curve.num_modified / len(r.order):.4f}")


def cmd_experiment(args, cfg, sources):
    result = run_experiment(cfg)
    manifest = report.write_experiment(result, sources, args.out, plots=not args.no_plots)
    for lb, t in manifest["trials"].items():
        rho = t["spearman_eq11_vs_eq10"]["mean"]
        _say(f"[{lb}]\tcenter={t['center_node']}\tmodified={t['num_modified']}"
             f"\tmean_p_head={t['mean_precision_head']:.4f}\tbaseline={t['random_baseline']:.4f}"
             f"\tspearman_eq11={'nan' if rho is None else f'{rho:.4f}'}")
    _say(f"{Path(args.out) / 'manifest.json'}")


def cmd_plot(args, cfg, sources):
    from . import plotting

    if not args.graph and not args.experiment:
        raise UsageError("plot needs --graph and/or --experiment")
    out = Path(args.out)
    if args.graph:
        g = formats.load_graph(args.graph)
        hist = graphs.degree_summary(g).histogram
        report.write_degree_table(hist, out / "degree_distribution.csv")
        plotting.plot_degree_distribution(hist, out / "degree_distribution.svg")
        _say(f"{out / 'degree_distribution.svg'}")
    if args.experiment:
        exp = Path(args.experiment)
        manifest = formats.load_manifest(exp / "manifest.json")
        curves = {}
        for lb, info in sorted(manifest.get("trials", {}).items()):
            c = formats.load_precision(exp / f"precision_{lb}.csv")
            curves[lb] = (c["mean_p"], c["min_p"], c["max_p"], info["random_baseline"])
        if not curves:
            raise ParseError("manifest lists no trials", exp / "manifest.json")
        report.write_curve_table(curves, out / "precision_curves.csv")
        plotting.plot_precision(curves, out / "precision.svg")
        _say(f"{out / 'precision.svg'}")


COMMANDS = {
    "generate": cmd_generate,
    "simulate": cmd_simulate,
    "hide": cmd_hide,
    "cluster": cmd_cluster,
    "rank": cmd_rank,
    "evaluate": cmd_evaluate,
    "experiment": cmd_experiment,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg, sources = _config(args)
        COMMANDS[args.command](args, cfg, sources)
    except UsageError as e:
        print(f"emptyspot: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"emptyspot: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ParameterError as e:
        print(f"emptyspot: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EmptySpotError as e:
        print(f"emptyspot: pipeline error: {e}", file=sys.stderr)
        return EXIT_PIPELINE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
