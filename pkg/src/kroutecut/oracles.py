"""Gomory-Hu trees, laminar minimum-cut families, and sparsest-cut oracles.

Sparsity values are exact rationals throughout; no floating point enters a
comparison. Exact oracle modes enumerate subsets and are therefore the
ground truth the solvers are tested against; sweep/greedy modes are seeded
heuristics for larger graphs and carry no stated approximation factor.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import (ExactCapExceeded, FreeSetBlowup, Infeasible,
                     NoCandidateCut, SeparatorBlowup)
from .graph import (INF, DemandSet, FlowNet, Graph, min_weight_edge_st_cut,
                    num_edge_disjoint_paths, wsum)


class CutKind(Enum):
    UNIFORM = "uniform"
    NONUNIFORM = "nonuniform"


@dataclass(frozen=True)
class OracleConfig:
    """Configuration for the pluggable sparsest-cut backends.

    mode "exact" enumerates every vertex subset (factor 1) and refuses graphs
    above exact_vertex_cap; mode "sweep" orders vertices by iterative
    neighbor averaging from seeded random starts and takes the best prefix
    cut. Enumeration budgets are hard errors, never silent truncation.
    """

    mode: str = "exact"
    exact_vertex_cap: int = 20
    reported_factor: Optional[Fraction] = None
    seed: int = 0
    sweep_restarts: int = 3
    sweep_rounds: int = 8
    free_set_budget: int = 200_000
    separator_budget: int = 200_000

    def __post_init__(self):
        if self.mode not in ("exact", "sweep"):
            raise ValueError(f"unknown oracle mode {self.mode!r}")
        if self.mode == "exact" and self.reported_factor is None:
            object.__setattr__(self, "reported_factor", Fraction(1))

    @property
    def multicut_mode(self) -> str:
        return "exact" if self.mode == "exact" else "greedy"


@dataclass(frozen=True)
class SparseCut:
    side: frozenset[int]
    kind: CutKind
    residual_weight: int
    denominator: int
    sparsity: Fraction
    free_edges: frozenset[int] = frozenset()
    separator: frozenset[int] = frozenset()


@dataclass(frozen=True)
class GomoryHuTree:
    """Spanning tree whose edges encode all pairwise minimum cuts.

    Capacities carry a deterministic perturbation (weight scaled by 2^m plus
    2^edge_id) so the minimum cut for every vertex pair is unique; `cap` is
    the true weight recovered from it.
    """

    vertex_count: int
    tree_edges: tuple[tuple[int, int, int, int], ...]  # (u, v, cap, perturbed)

    def _adj(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v, _, _) in enumerate(self.tree_edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return adj

    def path_edges(self, s: int, t: int) -> list[int]:
        adj = self._adj()
        parent = {s: (-1, -1)}
        queue = [s]
        for u in queue:
            if u == t:
                break
            for v, ei in adj[u]:
                if v not in parent:
                    parent[v] = (u, ei)
                    queue.append(v)
        path = []
        cur = t
        while cur != s:
            prev, ei = parent[cur]
            path.append(ei)
            cur = prev
        path.reverse()
        return path

    def min_edge_on_path(self, s: int, t: int) -> int:
        path = self.path_edges(s, t)
        return min(path, key=lambda ei: self.tree_edges[ei][3])

    def min_cut_value(self, s: int, t: int) -> int:
        return min(self.tree_edges[ei][2] for ei in self.path_edges(s, t))

    def bipartition(self, edge_index: int) -> frozenset[int]:
        """Vertices on the u-side once the given tree edge is removed."""
        u = self.tree_edges[edge_index][0]
        adj = self._adj()
        seen = {u}
        queue = [u]
        for x in queue:
            for y, ei in adj[x]:
                if ei != edge_index and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)


@dataclass(frozen=True)
class LaminarMinCutFamily:
    sets: tuple[frozenset[int], ...]


def perturbed_weights(g: Graph) -> list[int]:
    """w_e scaled by 2^m plus 2^e: sums are unique per edge subset."""
    m = g.edge_count
    return [(e.w << m) | (1 << i) for i, e in enumerate(g.edges)]


def _unperturb(value: int, m: int) -> int:
    return min(value >> m, INF)


def gomory_hu(g: Graph) -> GomoryHuTree:
    """Contraction-based Gomory-Hu tree (cut property, not just flow values)."""
    n = g.vertex_count
    if n < 2:
        raise ValueError("gomory_hu needs at least two vertices")
    m = g.edge_count
    pert = perturbed_weights(g)

    nodes: list[set[int]] = [set(range(n))]
    tree: list[list[int]] = []  # [node_i, node_j, perturbed value]

    while True:
        xi = next((i for i, ns in enumerate(nodes) if len(ns) >= 2), -1)
        if xi < 0:
            break
        members = sorted(nodes[xi])
        s, t = members[0], members[1]

        # Contract each subtree hanging off node xi into a single vertex.
        comp = {}  # node index -> component id (for nodes != xi)
        adj: dict[int, list[int]] = {}
        for a, b, _ in tree:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        next_comp = 0
        for start in range(len(nodes)):
            if start == xi or start in comp:
                continue
            cid = next_comp
            next_comp += 1
            stack = [start]
            comp[start] = cid
            while stack:
                a = stack.pop()
                for b in adj.get(a, []):
                    if b != xi and b not in comp:
                        comp[b] = cid
                        stack.append(b)

        cid_of_vertex: dict[int, int] = {}
        for ni, ns in enumerate(nodes):
            if ni == xi:
                continue
            for v in ns:
                cid_of_vertex[v] = comp[ni]

        local = {v: j for j, v in enumerate(members)}
        base = len(members)
        total = base + next_comp
        net = FlowNet(total)
        for i, e in enumerate(g.edges):
            a = local[e.u] if e.u in local else base + cid_of_vertex[e.u]
            b = local[e.v] if e.v in local else base + cid_of_vertex[e.v]
            if a != b:
                net.add_arc(a, b, pert[i], pert[i])

        value = net.max_flow(local[s], local[t])
        reach = net.residual_reachable(local[s])
        side_a = {v for v in members if local[v] in reach}
        side_b = set(members) - side_a

        bi = len(nodes)
        nodes[xi] = side_a
        nodes.append(side_b)
        for edge in tree:
            for pos in (0, 1):
                if edge[pos] == xi:
                    cnode = edge[1 - pos]
                    if base + comp[cnode] not in reach:
                        edge[pos] = bi
        tree.append([xi, bi, value])

    vertex_of = {i: next(iter(ns)) for i, ns in enumerate(nodes)}
    edges = tuple(
        (vertex_of[a], vertex_of[b], _unperturb(val, m), val) for a, b, val in tree
    )
    return GomoryHuTree(n, edges)


def laminar_min_cut_family(g: Graph, demands: DemandSet) -> LaminarMinCutFamily:
    """One minimum cut per demand pair, all nested or disjoint.

    Cuts come from a single Gomory-Hu tree; for each pair the side with the
    smaller terminal count is kept, ties resolved toward the side holding
    the first pair's source. D(S_i) <= r for every set.
    """
    if demands.r < 1:
        raise ValueError("need at least one demand pair")
    tree = gomory_hu(g)
    anchor = demands.pairs[0][0]
    two_r = 2 * demands.r
    sets = []
    for s, t in demands.pairs:
        ei = tree.min_edge_on_path(s, t)
        side = tree.bipartition(ei)
        if s not in side:
            side = frozenset(range(g.vertex_count)) - side
        d_side = demands.count_in(side)
        other = frozenset(range(g.vertex_count)) - side
        if d_side < two_r - d_side:
            chosen = side
        elif d_side > two_r - d_side:
            chosen = other
        else:
            chosen = side if anchor in side else other
        sets.append(chosen)
    return LaminarMinCutFamily(tuple(sets))


# ---------------------------------------------------------------------------
# Exact sparsest-cut enumeration.


@lru_cache(maxsize=64)
def _mask_tables(g: Graph, demands: DemandSet):
    """Per-vertex-subset cut weight and denominator tables."""
    n = g.vertex_count
    size = 1 << n
    fin = [0] * size
    infc = [0] * size
    for e in g.edges:
        u, v, w = e
        if w >= INF:
            for mask in range(size):
                if ((mask >> u) ^ (mask >> v)) & 1:
                    infc[mask] += 1
        else:
            for mask in range(size):
                if ((mask >> u) ^ (mask >> v)) & 1:
                    fin[mask] += w
    pv = demands.per_vertex
    d_of = [pv.get(v, 0) for v in range(n)]
    d_in = [0] * size
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        d_in[mask] = d_in[mask & (mask - 1)] + d_of[low]
    cross = [0] * size
    for s, t in demands.pairs:
        for mask in range(size):
            if ((mask >> s) ^ (mask >> t)) & 1:
                cross[mask] += 1
    return fin, infc, d_in, cross


def _exact_edge_best(g: Graph, demands: DemandSet, kind: CutKind,
                     free: tuple[int, ...] = ()):
    """Best (numerator, denominator, mask) over all sides, free edges waived."""
    fin, infc, d_in, cross = _mask_tables(g, demands)
    size = 1 << g.vertex_count
    two_r = 2 * demands.r
    free_edges = [(g.edges[e].u, g.edges[e].v, g.edges[e].w) for e in free]
    best = None  # (num, den, mask)
    for mask in range(1, size - 1):
        if kind is CutKind.UNIFORM:
            den = min(d_in[mask], two_r - d_in[mask])
        else:
            den = cross[mask]
        if den == 0:
            continue
        f = fin[mask]
        ic = infc[mask]
        for u, v, w in free_edges:
            if ((mask >> u) ^ (mask >> v)) & 1:
                if w >= INF:
                    ic -= 1
                else:
                    f -= w
        num = INF if ic > 0 else min(f, INF)
        if best is None or num * best[1] < best[0] * den:
            best = (num, den, mask)
    return best


def _sweep_orderings(g: Graph, cfg: OracleConfig,
                     exclude: frozenset[int]) -> list[tuple[int, ...]]:
    n = g.vertex_count
    max_fin = max((e.w for e in g.edges if e.w < INF), default=1)
    glue = max(2 * max_fin, 1)
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, e in enumerate(g.edges):
        if i in exclude:
            continue
        w = glue if e.w >= INF else e.w
        nbrs[e.u].append((e.v, w))
        nbrs[e.v].append((e.u, w))
    rng = random.Random(cfg.seed)
    seen = set()
    orderings = []
    for _ in range(max(1, cfg.sweep_restarts)):
        x = [rng.uniform(-1.0, 1.0) for _ in range(n)]
        for _ in range(max(1, cfg.sweep_rounds)):
            nxt = []
            for v in range(n):
                tot = sum(w for _, w in nbrs[v])
                if tot > 0:
                    avg = sum(w * x[u] for u, w in nbrs[v]) / tot
                    nxt.append(0.5 * x[v] + 0.5 * avg)
                else:
                    nxt.append(x[v])
            mean = sum(nxt) / n
            nxt = [val - mean for val in nxt]
            scale = max(abs(val) for val in nxt)
            x = [val / scale for val in nxt] if scale > 0 else nxt
        order = tuple(sorted(range(n), key=lambda v: (x[v], v)))
        if order not in seen:
            seen.add(order)
            orderings.append(order)
    return orderings


def _sweep_edge_best(g: Graph, demands: DemandSet, kind: CutKind,
                     cfg: OracleConfig, exclude: frozenset[int]):
    """Best prefix cut over neighbor-averaging orderings; exact arithmetic."""
    n = g.vertex_count
    two_r = 2 * demands.r
    pv = demands.per_vertex
    best = None  # (num, den, frozenset side)
    for order in _sweep_orderings(g, cfg, exclude):
        in_side = [False] * n
        fin = 0
        ic = 0
        d_in = 0
        crossing = 0
        for pos in range(n - 1):
            v = order[pos]
            in_side[v] = True
            d_in += pv.get(v, 0)
            for ei in g.incidence[v]:
                if ei in exclude:
                    continue
                e = g.edges[ei]
                other = e.v if e.u == v else e.u
                sign = -1 if in_side[other] else 1
                if e.w >= INF:
                    ic += sign
                else:
                    fin += sign * e.w
            for s, t in demands.pairs:
                if s == v or t == v:
                    other = t if s == v else s
                    crossing += -1 if in_side[other] else 1
            if kind is CutKind.UNIFORM:
                den = min(d_in, two_r - d_in)
            else:
                den = crossing
            if den == 0:
                continue
            num = INF if ic > 0 else min(fin, INF)
            if best is None or num * best[1] < best[0] * den:
                best = (num, den, frozenset(x for x in range(n) if in_side[x]))
    return best


def _best_to_cut(g: Graph, kind: CutKind, best, free: Iterable[int] = ()) -> SparseCut:
    num, den, side = best
    if not isinstance(side, frozenset):
        side = frozenset(v for v in range(g.vertex_count) if (side >> v) & 1)
    free_rec = frozenset(free) & set(g.cut_edges(side))
    return SparseCut(side=side, kind=kind, residual_weight=num, denominator=den,
                     sparsity=Fraction(num, den), free_edges=free_rec)


def sparsest_cut(g: Graph, demands: DemandSet, kind: CutKind,
                 cfg: OracleConfig,
                 exclude_edges: frozenset[int] = frozenset()) -> SparseCut:
    """Minimum-sparsity cut for the given kind (exact or sweep backend)."""
    if demands.r < 1:
        raise ValueError("need at least one demand pair")
    if cfg.mode == "exact":
        if g.vertex_count > cfg.exact_vertex_cap:
            raise ExactCapExceeded(
                f"{g.vertex_count} vertices exceeds exact cap {cfg.exact_vertex_cap}")
        # Excluded edges are waived from every cut weight, which is the same
        # as deleting them and keeps the cached tables valid.
        best = _exact_edge_best(g, demands, kind, tuple(sorted(exclude_edges)))
    else:
        best = _sweep_edge_best(g, demands, kind, cfg, exclude_edges)
    if best is None:
        raise NoCandidateCut("no cut with positive denominator")
    return _best_to_cut(g, kind, best, exclude_edges)


def k_route_sparsest_cut(g: Graph, demands: DemandSet, k: int, kind: CutKind,
                         cfg: OracleConfig) -> SparseCut:
    """Minimizer of residual sparsity with k-1 edges waived.

    Enumerates every free set F of size k-1 and runs the plain oracle on the
    graph with F excluded; with the exact backend this is the true k-route
    sparsest cut.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    fsize = min(k - 1, g.edge_count)
    count = math.comb(g.edge_count, fsize)
    if count > cfg.free_set_budget:
        raise FreeSetBlowup(
            f"{count} free sets exceed budget {cfg.free_set_budget}")
    best = None  # (num, den, side frozenset, F)
    for free in itertools.combinations(range(g.edge_count), fsize):
        try:
            cut = sparsest_cut(g, demands, kind, cfg, exclude_edges=frozenset(free))
        except NoCandidateCut:
            continue
        cand = (cut.residual_weight, cut.denominator, cut.side, free)
        if best is None or cand[0] * best[1] < best[0] * cand[1]:
            best = cand
    if best is None:
        raise NoCandidateCut("no candidate cut for any free set")
    num, den, side, free = best
    return _best_to_cut(g, kind, (num, den, side), free)


# ---------------------------------------------------------------------------
# Multicut backends and the polynomial-time bi-criteria oracle.


def _count_separated(g: Graph, demands: DemandSet,
                     removed: frozenset[int]) -> int:
    return sum(
        1 for s, t in demands.pairs
        if num_edge_disjoint_paths(g, s, t, exclude=removed, limit=1) == 0)


def _greedy_multicut(g: Graph, demands: DemandSet, ell: int) -> frozenset[int]:
    removed: set[int] = set()
    while _count_separated(g, demands, frozenset(removed)) < ell:
        best = None  # (value, pair index, cut ids)
        for i, (s, t) in enumerate(demands.pairs):
            if num_edge_disjoint_paths(g, s, t, exclude=frozenset(removed), limit=1) == 0:
                continue
            value, side = min_weight_edge_st_cut(g, s, t, exclude=frozenset(removed))
            if value >= INF:
                continue
            if best is None or value < best[0]:
                best = (value, i, g.cut_edges(side, exclude=frozenset(removed)))
        if best is None:
            raise Infeasible(f"cannot separate {ell} pairs with finite edges")
        removed.update(best[2])
    return frozenset(removed)


def _exact_multicut(g: Graph, demands: DemandSet, ell: int) -> frozenset[int]:
    """Minimum-weight edge set separating at least ell pairs (branch and bound)."""
    finite = sorted((i for i, e in enumerate(g.edges) if e.w < INF),
                    key=lambda i: (-g.edges[i].w, i))
    if _count_separated(g, demands, frozenset(finite)) < ell:
        raise Infeasible(f"cannot separate {ell} pairs with finite edges")
    seed = sorted(_greedy_multicut(g, demands, ell))
    best_cost = sum(g.edges[i].w for i in seed)
    best_set = tuple(seed)

    def dfs(idx: int, removed: list[int], cost: int) -> None:
        nonlocal best_cost, best_set
        if cost > best_cost:
            return
        if _count_separated(g, demands, frozenset(removed)) >= ell:
            key = (cost, tuple(sorted(removed)))
            if key < (best_cost, best_set):
                best_cost, best_set = key
            return
        if idx == len(finite):
            return
        e = finite[idx]
        w = g.edges[e].w
        if cost + w <= best_cost:
            removed.append(e)
            dfs(idx + 1, removed, cost + w)
            removed.pop()
        dfs(idx + 1, removed, cost)

    dfs(0, [], 0)
    return frozenset(best_set)


def l_multicut(g: Graph, demands: DemandSet, ell: int,
               cfg: OracleConfig) -> frozenset[int]:
    """Edge set separating at least ell demand pairs.

    Exact mode minimizes total weight; greedy mode repeatedly removes the
    cheapest single-pair minimum cut (no stated factor).
    """
    if ell < 0 or ell > demands.r:
        raise ValueError("ell must lie in [0, r]")
    if ell == 0:
        return frozenset()
    if cfg.multicut_mode == "exact":
        return _exact_multicut(g, demands, ell)
    return _greedy_multicut(g, demands, ell)


def _components(g: Graph, removed: frozenset[int]) -> list[list[int]]:
    seen = [False] * g.vertex_count
    comps = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = [start]
        for u in queue:
            for ei in g.incidence[u]:
                if ei in removed:
                    continue
                e = g.edges[ei]
                v = e.v if e.u == u else e.u
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def _flip_partition(comps: list[list[int]], demands: DemandSet) -> list[bool]:
    """Greedy component flips until no single flip separates more pairs."""
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    flags = [False] * len(comps)

    def crossing() -> int:
        return sum(1 for s, t in demands.pairs
                   if flags[comp_of[s]] != flags[comp_of[t]])

    current = crossing()
    improved = True
    while improved:
        improved = False
        for ci in range(len(comps)):
            flags[ci] = not flags[ci]
            cand = crossing()
            if cand > current:
                current = cand
                improved = True
            else:
                flags[ci] = not flags[ci]
    return flags


def k_route_sparsest_cut_bicriteria(g: Graph, demands: DemandSet, k: int,
                                    cfg: OracleConfig,
                                    free_scale: Fraction = Fraction(1)) -> SparseCut:
    """Polynomial-time relaxed k-route sparsest cut via multicut rounding.

    Sweeps a grid of separated-pair targets and weight-clipping thresholds,
    solves a multicut for each, flips whole components to maximize separated
    pairs, and waives the most expensive surviving cut edges. The realized
    free-set size is recorded so callers learn the achieved route count.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if demands.r < 1:
        raise ValueError("need at least one demand pair")
    factor = cfg.reported_factor if cfg.reported_factor is not None else Fraction(1)
    f_target = 2 * math.ceil(factor * free_scale) * (k - 1)

    finite_w = sorted({e.w for e in g.edges if e.w < INF and e.w > 0})
    if finite_w:
        cap = finite_w[-1] * (k - 1)
        thresholds = sorted({min(t * w, cap)
                             for w in finite_w
                             for t in range(1, g.edge_count + 1)})
    else:
        thresholds = [0]

    max_sep = _count_separated(
        g, demands, frozenset(i for i, e in enumerate(g.edges) if e.w < INF))

    best = None  # (num, den, side, free tuple)
    for r_target in range(1, min(demands.r, max_sep) + 1):
        for thr in thresholds:
            clipped = Graph(g.vertex_count,
                            [(e.u, e.v,
                              e.w if e.w >= INF else min(e.w * (k - 1), thr))
                             for e in g.edges])
            try:
                removed = l_multicut(clipped, demands, r_target, cfg)
            except Infeasible:
                continue
            comps = _components(g, removed)
            flags = _flip_partition(comps, demands)
            side = frozenset(v for ci, comp in enumerate(comps)
                             if flags[ci] for v in comp)
            cut_ids = g.cut_edges(side)
            if not cut_ids and not side:
                continue
            den = sum(1 for s, t in demands.pairs
                      if (s in side) != (t in side))
            if den == 0:
                continue
            ranked = sorted(cut_ids, key=lambda i: (-g.edges[i].w, i))
            free = tuple(sorted(ranked[:f_target]))
            num = wsum(g.edges[i].w for i in ranked[f_target:])
            cand = (num, den, side, free)
            if best is None or cand[0] * best[1] < best[0] * cand[1]:
                best = cand
    if best is None:
        raise NoCandidateCut("no multicut candidate produced a crossing cut")
    num, den, side, free = best
    return SparseCut(side=side, kind=CutKind.NONUNIFORM, residual_weight=num,
                     denominator=den, sparsity=Fraction(num, den),
                     free_edges=frozenset(free))


# ---------------------------------------------------------------------------
# Vertex-flavored k-route sparsest cuts.


def _separator_candidates(n: int, max_size: int, budget: int):
    count = sum(math.comb(n, j) for j in range(max_size + 1))
    if count > budget:
        raise SeparatorBlowup(f"{count} separators exceed budget {budget}")
    for size in range(max_size + 1):
        yield from itertools.combinations(range(n), size)


def vertex_k_route_sparsest_cut(g: Graph, demands: DemandSet, k: int,
                                kind: CutKind, cfg: OracleConfig) -> SparseCut:
    """Minimizer over (side S, separator D) with |D| <= k-1 of the sparsity
    of edges from S to the rest, with D removed from the graph.

    Pairs with an endpoint inside the separator never count toward the
    split-pair denominator; terminal-count denominators keep full counts.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if demands.r < 1:
        raise ValueError("need at least one demand pair")
    n = g.vertex_count
    if cfg.mode == "exact" and n > cfg.exact_vertex_cap:
        raise ExactCapExceeded(
            f"{n} vertices exceeds exact cap {cfg.exact_vertex_cap}")
    pv = demands.per_vertex
    two_r = 2 * demands.r
    best = None  # (num, den, side frozenset, delta frozenset)
    for delta in _separator_candidates(n, k - 1, cfg.separator_budget):
        dset = frozenset(delta)
        rest = [v for v in range(n) if v not in dset]
        if len(rest) < 2:
            continue
        pos = {v: i for i, v in enumerate(rest)}
        local_edges = [(pos[e.u], pos[e.v], e.w) for e in g.edges
                       if e.u not in dset and e.v not in dset]
        local_pairs = [(pos[s], pos[t]) for s, t in demands.pairs
                       if s not in dset and t not in dset]
        d_of = [pv.get(v, 0) for v in rest]
        d_rest = sum(d_of)

        if cfg.mode == "exact":
            nr = len(rest)
            size = 1 << nr
            fin_t = [0] * size
            inf_t = [0] * size
            for u, v, w in local_edges:
                if w >= INF:
                    for mask in range(size):
                        if ((mask >> u) ^ (mask >> v)) & 1:
                            inf_t[mask] += 1
                else:
                    for mask in range(size):
                        if ((mask >> u) ^ (mask >> v)) & 1:
                            fin_t[mask] += w
            d_t = [0] * size
            for mask in range(1, size):
                low = (mask & -mask).bit_length() - 1
                d_t[mask] = d_t[mask & (mask - 1)] + d_of[low]
            cross_t = [0] * size
            for s, t in local_pairs:
                for mask in range(size):
                    if ((mask >> s) ^ (mask >> t)) & 1:
                        cross_t[mask] += 1
            for mask in range(1, size - 1):
                if kind is CutKind.UNIFORM:
                    den = min(d_t[mask], d_rest - d_t[mask])
                else:
                    den = cross_t[mask]
                if den == 0:
                    continue
                num = INF if inf_t[mask] > 0 else min(fin_t[mask], INF)
                if best is None or num * best[1] < best[0] * den:
                    side = frozenset(rest[i] for i in range(nr) if (mask >> i) & 1)
                    best = (num, den, side, dset)
        else:
            sub = Graph(len(rest), local_edges)
            for order in _sweep_orderings(sub, cfg, frozenset()):
                in_side = [False] * len(rest)
                fin = ic = d_in = crossing = 0
                for posn in range(len(rest) - 1):
                    v = order[posn]
                    in_side[v] = True
                    d_in += d_of[v]
                    for u2, v2, w in local_edges:
                        if u2 == v or v2 == v:
                            other = v2 if u2 == v else u2
                            sign = -1 if in_side[other] else 1
                            if w >= INF:
                                ic += sign
                            else:
                                fin += sign * w
                    for s, t in local_pairs:
                        if s == v or t == v:
                            other = t if s == v else s
                            crossing += -1 if in_side[other] else 1
                    if kind is CutKind.UNIFORM:
                        den = min(d_in, d_rest - d_in)
                    else:
                        den = crossing
                    if den == 0:
                        continue
                    num = INF if ic > 0 else min(fin, INF)
                    if best is None or num * best[1] < best[0] * den:
                        side = frozenset(rest[i] for i in range(len(rest))
                                         if in_side[i])
                        best = (num, den, side, dset)
    if best is None:
        raise NoCandidateCut("no (side, separator) pair with positive denominator")
    num, den, side, dset = best
    return SparseCut(side=side, kind=kind, residual_weight=num, denominator=den,
                     sparsity=Fraction(num, den), separator=dset)
