"""Independent brute-force references used by the tests.

Nothing here imports the code paths it is used to check.
"""

import math
from itertools import combinations

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import zeta


def floyd_warshall(n, edges):
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for i, j in edges:
        d[i][j] = d[j][i] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def jaccard_sets(baskets, i, j):
    """|B_i & B_j| / |B_i | B_j| with B_x the set of basket indices holding x."""
    bi = {k for k, b in enumerate(baskets) if i in b}
    bj = {k for k, b in enumerate(baskets) if j in b}
    union = bi | bj
    return len(bi & bj) / len(union) if union else 0.0


def literal_w(basket, baskets, clusters):
    """Direct transcription of the predictor: per-cluster max of B(n in b) / sum_l B(n in b_l)."""
    total = 0.0
    for members in clusters:
        best = 0.0
        for node in members:
            num = 1 if node in basket else 0
            den = sum(1 for other in baskets if node in other)
            if den:
                best = max(best, num / den)
        total += best
    return total / len(clusters)


def exhaustive_single_medoid(J):
    """argmax_v sum_{i != v} J[v, i], by explicit loops."""
    n = len(J)
    best, arg = -1.0, None
    for v in range(n):
        s = sum(J[v][i] for i in range(n) if i != v)
        if s > best:
            best, arg = s, v
    return arg, best


def powerlaw_mle(degrees, d_min=2):
    """Discrete power-law exponent by maximising the Hurwitz-zeta likelihood."""
    x = np.asarray([d for d in degrees if d >= d_min], dtype=float)
    s = np.log(x).sum()
    n = len(x)
    res = minimize_scalar(lambda a: a * s + n * math.log(zeta(a, d_min)), bounds=(1.01, 6.0), method="bounded")
    return float(res.x)


def truncated_exp_mean(d_min, d_max, lam):
    w = [math.exp(-lam * (d - d_min)) for d in range(d_min, d_max + 1)]
    return sum(d * wd for d, wd in zip(range(d_min, d_max + 1), w)) / sum(w)


def gini_pairs(values):
    n = len(values)
    mean = sum(values) / n
    return sum(abs(a - b) for a in values for b in values) / (2 * n * n * mean)


def ball(n, edges, source, radius):
    d = floyd_warshall(n, edges)
    return {j for j in range(n) if d[source][j] <= radius}


def all_pairs(nodes):
    return list(combinations(nodes, 2))
