"""Shared builders and independent mini-oracles for the test suite."""

import itertools
import random

from kroutecut import (INF, DemandSet, Flavor, Graph, Instance,
                       num_edge_disjoint_paths)
from kroutecut.graph import FlowNet


def make_instance(n, edges, pairs, k, flavor=Flavor.EDGE):
    return Instance(Graph(n, edges), DemandSet(pairs), k, flavor)


def random_graph(rng, n, m, wmin=1, wmax=6, inf_prob=0.0, unit=False):
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        if unit:
            w = 1
        elif inf_prob and rng.random() < inf_prob:
            w = INF
        else:
            w = rng.randint(wmin, wmax)
        edges.append((u, v, w))
    return Graph(n, edges)


def random_pairs(rng, n, r):
    pairs = []
    for _ in range(r):
        s = rng.randrange(n)
        t = rng.randrange(n - 1)
        if t >= s:
            t += 1
        pairs.append((s, t))
    return pairs


def random_instance(rng, n, m, r, k, flavor=Flavor.EDGE, no_adjacent=False,
                    **graph_kw):
    while True:
        g = random_graph(rng, n, m, **graph_kw)
        pairs = random_pairs(rng, n, r)
        if no_adjacent:
            pair_sets = [frozenset(p) for p in pairs]
            if any(frozenset((e.u, e.v)) in pair_sets for e in g.edges):
                continue
        return Instance(g, DemandSet(pairs), k, flavor)


def saturating_sum(values):
    total = 0
    for v in values:
        total = INF if (total >= INF or v >= INF) else total + v
    return total


def cut_weight(g, side):
    return saturating_sum(e.w for e in g.edges
                          if (e.u in side) != (e.v in side))


def brute_min_edge_cut_cardinality(g, s, t):
    """Smallest number of edges whose removal disconnects s from t."""
    m = g.edge_count
    for size in range(m + 1):
        for sub in itertools.combinations(range(m), size):
            if num_edge_disjoint_paths(g, s, t, exclude=frozenset(sub),
                                       limit=1) == 0:
                return size
    return m + 1


def brute_min_vertex_separator(g, s, t):
    """Smallest vertex set (excluding s, t) separating s from t, or None
    when s and t are adjacent."""
    if any({e.u, e.v} == {s, t} for e in g.edges):
        return None
    others = [v for v in range(g.vertex_count) if v not in (s, t)]
    for size in range(len(others) + 1):
        for sub in itertools.combinations(others, size):
            excl = frozenset(i for i, e in enumerate(g.edges)
                             if e.u in sub or e.v in sub)
            if num_edge_disjoint_paths(g, s, t, exclude=excl, limit=1) == 0:
                return set(sub)
    return set(others)


def brute_min_weight_side(g, s, t):
    """Minimum cut weight over all vertex sides containing s but not t."""
    n = g.vertex_count
    best = INF
    for mask in range(1 << n):
        if (mask >> s) & 1 and not ((mask >> t) & 1):
            side = {v for v in range(n) if (mask >> v) & 1}
            best = min(best, cut_weight(g, side))
    return best


def ssve_min_neighborhood(bip, alpha):
    """Smallest neighborhood over left sets of relative size >= alpha."""
    need = int(alpha * bip.left_count)
    return min(len(bip.neighborhood(sub))
               for sub in itertools.combinations(range(bip.left_count), need))


def ssve_image_opt(bip, alpha):
    """Exact optimum of the single-pair image instance.

    Clique nodes are interchangeable, so a solution is just a per-clique
    count of removed sink edges; by completeness of the left-to-clique
    connections, the route count of a counted solution equals the max flow
    of a tiny source/left/clique network whose sink capacities are the
    surviving exits (capped at k, beyond which they never bind).
    """
    m, n = bip.left_count, bip.right_count
    big_n = 2 * m * n + 1
    k = m - int(alpha * m) + 1
    masks = bip.neighbor_masks()
    best = None
    for capped in itertools.product(range(k + 1), repeat=n):
        net = FlowNet(2 + m + n)
        for u in range(m):
            net.add_arc(0, 2 + u, 1)
            for v in range(n):
                if (masks[u] >> v) & 1:
                    net.add_arc(2 + u, 2 + m + v, k)
        for v in range(n):
            net.add_arc(2 + m + v, 1, capped[v])
        if net.max_flow(0, 1, limit=k) < k:
            cost = sum(big_n - (e if e < k else big_n) for e in capped)
            if best is None or cost < best:
                best = cost
    return best


def all_bipartite_graphs(m, n):
    cells = [(l, r) for l in range(m) for r in range(n)]
    for bits in range(1 << len(cells)):
        yield [cells[i] for i in range(len(cells)) if (bits >> i) & 1]
