"""Text codecs for graphs, datasets, truth, clusterings, rankings and curves.

Every ``dumps_*`` output is canonical (sorted, fixed float formatting), so
saving a loaded value reproduces the original bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .baskets import Dataset, HiddenTruth
from .clustering import Clustering
from .errors import EmptySpotError, ParseError
from .graphs import Graph
from .predictor import RankedBaskets


def _ids(values) -> str:
    return ",".join(str(v) for v in sorted(values))


def _parse_ids(text: str, line: int, path=None) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise ParseError(f"bad id list {text!r}", path, line) from None


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file ({e.strerror})", path) from None


def _write(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def _header(lines: list[str], key: str, path) -> int:
    if not lines or not lines[0].startswith(f"#{key} "):
        raise ParseError(f"missing '#{key} <count>' header", path, 1)
    try:
        return int(lines[0].split()[1])
    except (ValueError, IndexError):
        raise ParseError(f"malformed header {lines[0]!r}", path, 1) from None


# -- graph ------------------------------------------------------------------

def dumps_graph(g: Graph) -> str:
    return "".join([f"#nodes {g.n}\n"] + [f"{i}\t{j}\n" for i, j in g.edges()])


def loads_graph(text: str, path=None) -> Graph:
    lines = text.splitlines()
    n = _header(lines, "nodes", path)
    try:
        g = Graph(n)
    except EmptySpotError as e:
        raise ParseError(str(e), path, 1) from None
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        try:
            i, j = int(parts[0]), int(parts[1])
            if len(parts) != 2:
                raise ValueError
        except (ValueError, IndexError):
            raise ParseError(f"expected '<i>\\t<j>', got {line!r}", path, no) from None
        try:
            g.add_edge(i, j)
        except EmptySpotError as e:
            raise ParseError(str(e), path, no) from None
    return g


def save_graph(g: Graph, path) -> Path:
    return _write(path, dumps_graph(g))


def load_graph(path) -> Graph:
    return loads_graph(_read(path), path)


# -- dataset ----------------------------------------------------------------

def dumps_dataset(d: Dataset) -> str:
    out = [f"#nodes {d.n_nodes}\n"]
    out += [f"{j}:{_ids(b)}\n" for j, b in enumerate(d.baskets)]
    return "".join(out)


def loads_dataset(text: str, path=None) -> Dataset:
    lines = [ln for ln in text.splitlines()]
    n = _header(lines, "nodes", path)
    baskets = []
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        idx, sep, rest = line.partition(":")
        if not sep or not idx.strip().isdigit():
            raise ParseError(f"expected '<index>:<ids>', got {line!r}", path, no)
        if int(idx) != len(baskets):
            raise ParseError(f"basket index {idx} out of sequence (expected {len(baskets)})", path, no)
        ids = _parse_ids(rest, no, path)
        bad = [v for v in ids if not 0 <= v < n]
        if bad:
            raise ParseError(f"node id {bad[0]} outside 0..{n - 1}", path, no)
        baskets.append(frozenset(ids))
    if not baskets:
        raise ParseError("dataset holds no baskets", path)
    return Dataset(tuple(baskets), n)


def save_dataset(d: Dataset, path) -> Path:
    return _write(path, dumps_dataset(d))


def load_dataset(path) -> Dataset:
    return loads_dataset(_read(path), path)


# -- hidden truth -----------------------------------------------------------

def dumps_truth(t: HiddenTruth) -> str:
    return (
        f"hidden={_ids(t.hidden_nodes)}\n"
        f"modified={_ids(t.modified_baskets)}\n"
        f"gateways={_ids(t.gateway_nodes)}\n"
    )


def loads_truth(text: str, path=None) -> HiddenTruth:
    fields = {}
    for no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        key, sep, rest = line.partition("=")
        if not sep or key not in ("hidden", "modified", "gateways") or key in fields:
            raise ParseError(f"unexpected truth line {line!r}", path, no)
        fields[key] = frozenset(_parse_ids(rest, no, path))
    missing = {"hidden", "modified", "gateways"} - fields.keys()
    if missing:
        raise ParseError(f"truth file lacks {', '.join(sorted(missing))}", path)
    return HiddenTruth(fields["hidden"], fields["modified"], fields["gateways"])


def save_truth(t: HiddenTruth, path) -> Path:
    return _write(path, dumps_truth(t))


def load_truth(path) -> HiddenTruth:
    return loads_truth(_read(path), path)


# -- clustering -------------------------------------------------------------

def dumps_clustering(cl: Clustering) -> str:
    out = [f"#iterations {cl.iterations_run}\n"]
    for j, med in enumerate(cl.medoids):
        out.append(f"{j}:{med}|{_ids(cl.members(j))}\n")
    return "".join(out)


def loads_clustering(text: str, path=None) -> Clustering:
    lines = text.splitlines()
    iterations = _header(lines, "iterations", path)
    medoids, member_lists = [], []
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        idx, sep, rest = line.partition(":")
        med, bar, members = rest.partition("|")
        try:
            if not sep or not bar or int(idx) != len(medoids):
                raise ValueError
            medoids.append(int(med))
        except ValueError:
            raise ParseError(f"expected '<cluster>:<medoid>|<ids>', got {line!r}", path, no) from None
        ids = _parse_ids(members, no, path)
        if int(med) not in ids:
            raise ParseError(f"medoid {med} is not a member of its cluster", path, no)
        member_lists.append(ids)
    if not medoids:
        raise ParseError("clustering holds no clusters", path)
    assignment = {}
    for j, ids in enumerate(member_lists):
        for v in ids:
            if v in assignment:
                raise ParseError(f"node {v} assigned to clusters {assignment[v]} and {j}", path)
            assignment[v] = j
    nodes = np.array(sorted(assignment), dtype=np.int64)
    labels = np.array([assignment[v] for v in nodes.tolist()], dtype=np.int64)
    return Clustering(nodes=nodes, medoids=medoids, labels=labels, iterations_run=iterations)


def save_clustering(cl: Clustering, path) -> Path:
    return _write(path, dumps_clustering(cl))


def load_clustering(path) -> Clustering:
    return loads_clustering(_read(path), path)


# -- ranking ----------------------------------------------------------------

def dumps_ranking(r: RankedBaskets) -> str:
    out = ["rank,basket_index,score\n"]
    for k, i in enumerate(r.order.tolist(), start=1):
        out.append(f"{k},{i},{r.scores[i]:.12g}\n")
    return "".join(out)


def loads_ranking(text: str, path=None) -> RankedBaskets:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "rank,basket_index,score":
        raise ParseError("missing 'rank,basket_index,score' header", path, 1)
    order, scores = [], []
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            k, i, s = line.split(",")
            if int(k) != len(order) + 1:
                raise ValueError
            order.append(int(i))
            scores.append(float(s))
        except ValueError:
            raise ParseError(f"expected '<rank>,<basket>,<score>', got {line!r}", path, no) from None
    n = len(order)
    if sorted(order) != list(range(n)):
        raise ParseError(f"basket indices are not a permutation of 0..{n - 1}", path)
    by_index = np.zeros(n)
    by_index[order] = scores
    return RankedBaskets(order=np.array(order, dtype=np.int64), scores=by_index)


def save_ranking(r: RankedBaskets, path) -> Path:
    return _write(path, dumps_ranking(r))


def load_ranking(path) -> RankedBaskets:
    return loads_ranking(_read(path), path)


# -- precision curves -------------------------------------------------------

PRECISION_HEADER = "m_ret,mean_p,min_p,max_p"


def dumps_precision(mean, lo=None, hi=None) -> str:
    mean = np.asarray(mean, dtype=float)
    lo = mean if lo is None else np.asarray(lo, dtype=float)
    hi = mean if hi is None else np.asarray(hi, dtype=float)
    out = [PRECISION_HEADER + "\n"]
    for m, (a, b, c) in enumerate(zip(mean.tolist(), lo.tolist(), hi.tolist()), start=1):
        out.append(f"{m},{a!r},{b!r},{c!r}\n")
    return "".join(out)


def loads_precision(text: str, path=None) -> dict[str, np.ndarray]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != PRECISION_HEADER:
        raise ParseError(f"missing '{PRECISION_HEADER}' header", path, 1)
    rows = []
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            m, a, b, c = line.split(",")
            if int(m) != len(rows) + 1:
                raise ValueError
            rows.append((float(a), float(b), float(c)))
        except ValueError:
            raise ParseError(f"expected '<m>,<mean>,<min>,<max>', got {line!r}", path, no) from None
    arr = np.array(rows, dtype=float).reshape(-1, 3)
    return {"mean_p": arr[:, 0], "min_p": arr[:, 1], "max_p": arr[:, 2]}


def save_precision(path, mean, lo=None, hi=None) -> Path:
    return _write(path, dumps_precision(mean, lo, hi))


def load_precision(path) -> dict[str, np.ndarray]:
    return loads_precision(_read(path), path)


# -- manifest ---------------------------------------------------------------

def dumps_manifest(manifest: dict) -> str:
    return json.dumps(manifest, indent=2, sort_keys=True, allow_nan=False) + "\n"


def save_manifest(manifest: dict, path) -> Path:
    return _write(path, dumps_manifest(manifest))


def load_manifest(path) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", path, e.lineno) from None
