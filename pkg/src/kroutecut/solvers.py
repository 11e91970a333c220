"""Multi-route cut solvers.

Every solver returns a SolveResult whose solution is feasible at the declared
guarantee: each demand pair is left with strictly fewer than `guarantee`
disjoint paths of the instance's flavor. Feasibility is re-checked before
returning, independent of the oracle quality, so heuristic oracle modes only
affect cost, never validity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import Infeasible, NoFeasibleGuess, NonUniformWeights
from .graph import (INF, CutSolution, DemandSet, Flavor, Graph, Instance,
                    connectivity, induced_subinstance, is_feasible,
                    min_weight_edge_st_cut, min_weight_vertex_st_cut,
                    num_vertex_disjoint_paths)
from .oracles import (CutKind, OracleConfig, k_route_sparsest_cut,
                      k_route_sparsest_cut_bicriteria, sparsest_cut,
                      vertex_k_route_sparsest_cut)


@dataclass(frozen=True)
class SolverParams:
    oracle: OracleConfig = OracleConfig()
    delta: Fraction = Fraction(0)            # connectivity slack, [0, 1)
    c: Fraction = Fraction(1)                # single-pair cost tradeoff, > 0
    free_scale: Fraction = Fraction(1)       # scales the bicriteria free set
    opt_grid_epsilon: Fraction = Fraction(1, 100)

    def __post_init__(self):
        if not (0 <= self.delta < 1):
            raise ValueError("delta must lie in [0, 1)")
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.opt_grid_epsilon <= 0:
            raise ValueError("opt_grid_epsilon must be positive")


@dataclass(frozen=True)
class SolveResult:
    solution: CutSolution
    guarantee: int
    trace: tuple[dict, ...]


def _live_pairs(g: Graph, pairs, flavor: Flavor, threshold: int):
    return [(s, t) for s, t in pairs
            if connectivity(g, s, t, flavor, limit=threshold) >= threshold]


def _guard_finite(g: Graph, edge_ids) -> None:
    for e in edge_ids:
        if g.weight(e) >= INF:
            raise Infeasible("separating the remaining pairs requires an "
                             "infinite-weight edge")


def _translate_trace(entries, vmap, emap):
    out = []
    for rec in entries:
        rec = dict(rec)
        for key in ("cut_side", "separator"):
            if key in rec:
                rec[key] = sorted(vmap[v] for v in rec[key])
        for key in ("free_edges", "removed_edges"):
            if key in rec:
                rec[key] = sorted(emap[e] for e in rec[key])
        if "dropped_pairs" in rec:
            rec["dropped_pairs"] = sorted(
                [vmap[s], vmap[t]] for s, t in rec["dropped_pairs"])
        out.append(rec)
    return out


def _finish(inst: Instance, removed, guarantee: int, trace) -> SolveResult:
    sol = CutSolution.from_edges(inst.graph, removed, guarantee)
    assert is_feasible(inst, sol, guarantee), "solver produced an infeasible cut"
    return SolveResult(sol, guarantee, tuple(trace))


# ---------------------------------------------------------------------------
# Uniform edge connectivity: divide and conquer on sparsest cuts.


def solve_uniform_ec(inst: Instance, params: SolverParams) -> SolveResult:
    """Recursive sparsest-cut partitioning for uniform edge weights.

    With delta > 0 pairs are only chased below ceil((1+delta)k) paths, which
    keeps the removed-edge budget independent of k.
    """
    if inst.flavor is not Flavor.EDGE:
        raise ValueError("solve_uniform_ec needs an edge-connectivity instance")
    weights = {e.w for e in inst.graph.edges}
    if len(weights) > 1:
        raise NonUniformWeights(f"distinct weights {sorted(weights)}")
    k_plus = math.ceil((1 + params.delta) * inst.k)
    removed, trace = _uniform_rec(inst.graph, list(inst.demands.pairs),
                                  k_plus, params)
    return _finish(inst, removed, k_plus, trace)


def _uniform_rec(g: Graph, pairs, k_plus: int, params: SolverParams):
    live = _live_pairs(g, pairs, Flavor.EDGE, k_plus)
    if not live:
        return set(), []
    dem = DemandSet(live)
    cut = sparsest_cut(g, dem, CutKind.UNIFORM, params.oracle)
    cut_ids = set(g.cut_edges(cut.side))
    _guard_finite(g, cut_ids)
    crossing = [(s, t) for s, t in live if (s in cut.side) != (t in cut.side)]
    trace = [{
        "cut_side": sorted(cut.side),
        "removed_edges": sorted(cut_ids),
        "sparsity": str(cut.sparsity),
        "dropped_pairs": sorted([s, t] for s, t in crossing),
    }]
    removed = set(cut_ids)
    inside = [(s, t) for s, t in live if (s in cut.side) == (t in cut.side)]
    for side in (cut.side, frozenset(range(g.vertex_count)) - cut.side):
        side_pairs = [(s, t) for s, t in inside if s in side]
        shell = Instance(g, DemandSet(side_pairs), 1, Flavor.EDGE)
        sub = induced_subinstance(shell, side)
        sub_removed, sub_trace = _uniform_rec(
            sub.instance.graph, list(sub.instance.demands.pairs), k_plus, params)
        removed.update(sub.orig_edge[e] for e in sub_removed)
        trace.extend(_translate_trace(sub_trace, sub.orig_vertex, sub.orig_edge))
    return removed, trace


# ---------------------------------------------------------------------------
# Non-uniform edge connectivity: iterative multi-route sparse cuts.


def solve_ec(inst: Instance, params: SolverParams) -> SolveResult:
    """Iterative (2k-1)-route sparsest-cut rounds; pairs end below 2k-1."""
    if inst.flavor is not Flavor.EDGE:
        raise ValueError("solve_ec needs an edge-connectivity instance")
    threshold = 2 * inst.k - 1
    g = inst.graph
    emap = list(range(g.edge_count))
    pairs = _live_pairs(g, inst.demands.pairs, Flavor.EDGE, threshold)
    removed: set[int] = set()
    trace = []
    while pairs:
        dem = DemandSet(pairs)
        cut = k_route_sparsest_cut(g, dem, threshold, CutKind.NONUNIFORM,
                                   params.oracle)
        cut_ids = sorted(g.cut_edges(cut.side), key=lambda i: (-g.edges[i].w, i))
        free = cut_ids[:2 * inst.k - 2]
        e0 = cut_ids[2 * inst.k - 2:]
        _guard_finite(g, e0)
        removed.update(emap[e] for e in e0)
        trace.append({
            "cut_side": sorted(cut.side),
            "free_edges": sorted(emap[e] for e in free),
            "removed_edges": sorted(emap[e] for e in e0),
            "sparsity": str(cut.sparsity),
        })
        g, idmap = g.without_edges(e0)
        emap = [emap[i] for i in idmap]
        survivors = _live_pairs(g, pairs, Flavor.EDGE, threshold)
        dropped = [p for p in pairs if p not in survivors]
        trace[-1]["dropped_pairs"] = sorted([s, t] for s, t in dropped)
        assert dropped, "an iteration must drop at least one pair"
        pairs = survivors
    return _finish(inst, removed, threshold, trace)


def solve_ec_polytime(inst: Instance, params: SolverParams) -> SolveResult:
    """Same loop as solve_ec with the polynomial-time relaxed-route oracle.

    The oracle's free set fixes both the removed edges and the realized route
    count k' = |F|+1 for each round; the reported guarantee is the largest
    threshold any pair was held to.
    """
    if inst.flavor is not Flavor.EDGE:
        raise ValueError("solve_ec_polytime needs an edge-connectivity instance")
    if inst.k == 1:
        # The relaxed oracle needs a route parameter of at least 2; with k=1
        # plain route enumeration is already a single empty free set.
        return solve_ec(inst, params)
    threshold = 2 * inst.k - 1
    g = inst.graph
    emap = list(range(g.edge_count))
    pairs = _live_pairs(g, inst.demands.pairs, Flavor.EDGE, threshold)
    removed: set[int] = set()
    trace = []
    guarantee = threshold
    while pairs:
        dem = DemandSet(pairs)
        cut = k_route_sparsest_cut_bicriteria(g, dem, threshold, params.oracle,
                                              free_scale=params.free_scale)
        k_prime = len(cut.free_edges) + 1
        guarantee = max(guarantee, k_prime)
        cut_ids = g.cut_edges(cut.side)
        e0 = sorted(set(cut_ids) - cut.free_edges)
        _guard_finite(g, e0)
        removed.update(emap[e] for e in e0)
        trace.append({
            "cut_side": sorted(cut.side),
            "free_edges": sorted(emap[e] for e in cut.free_edges),
            "removed_edges": sorted(emap[e] for e in e0),
            "sparsity": str(cut.sparsity),
            "realized_k": k_prime,
        })
        g, idmap = g.without_edges(e0)
        emap = [emap[i] for i in idmap]
        survivors = _live_pairs(g, pairs, Flavor.EDGE, k_prime)
        dropped = [p for p in pairs if p not in survivors]
        trace[-1]["dropped_pairs"] = sorted([s, t] for s, t in dropped)
        assert dropped, "an iteration must drop at least one pair"
        pairs = survivors
    return _finish(inst, removed, guarantee, trace)


# ---------------------------------------------------------------------------
# Vertex connectivity.


def solve_vc(inst: Instance, params: SolverParams) -> SolveResult:
    """Iterative vertex-flavored multi-route sparse cuts; pairs end below 2k-1."""
    if inst.flavor is not Flavor.VERTEX:
        raise ValueError("solve_vc needs a vertex-connectivity instance")
    threshold = 2 * inst.k - 1
    g = inst.graph
    emap = list(range(g.edge_count))
    pairs = _live_pairs(g, inst.demands.pairs, Flavor.VERTEX, threshold)
    removed: set[int] = set()
    trace = []
    while pairs:
        dem = DemandSet(pairs)
        cut = vertex_k_route_sparsest_cut(g, dem, threshold, CutKind.NONUNIFORM,
                                          params.oracle)
        outside = frozenset(range(g.vertex_count)) - cut.side - cut.separator
        e0 = [i for i, e in enumerate(g.edges)
              if (e.u in cut.side and e.v in outside)
              or (e.v in cut.side and e.u in outside)]
        _guard_finite(g, e0)
        removed.update(emap[e] for e in e0)
        trace.append({
            "cut_side": sorted(cut.side),
            "separator": sorted(cut.separator),
            "removed_edges": sorted(emap[e] for e in e0),
            "sparsity": str(cut.sparsity),
        })
        g, idmap = g.without_edges(e0)
        emap = [emap[i] for i in idmap]
        survivors = _live_pairs(g, pairs, Flavor.VERTEX, threshold)
        dropped = [p for p in pairs if p not in survivors]
        trace[-1]["dropped_pairs"] = sorted([s, t] for s, t in dropped)
        assert dropped, "an iteration must drop at least one pair"
        pairs = survivors
    return _finish(inst, removed, threshold, trace)


def solve_two_route(inst: Instance, params: SolverParams) -> SolveResult:
    """Exact-k algorithm for vertex connectivity at k=2.

    Splits on a one-vertex separator, removes the side-to-side edges, and
    recurses on both closed sides; no pair retains two vertex-disjoint paths.
    """
    if inst.flavor is not Flavor.VERTEX or inst.k != 2:
        raise ValueError("solve_two_route needs a vertex instance with k=2")
    removed, trace = _two_route_rec(inst.graph, list(inst.demands.pairs), params)
    return _finish(inst, removed, 2, trace)


def _two_route_rec(g: Graph, pairs, params: SolverParams):
    live = _live_pairs(g, pairs, Flavor.VERTEX, 2)
    if not live:
        return set(), []
    dem = DemandSet(live)
    cut = vertex_k_route_sparsest_cut(g, dem, 2, CutKind.UNIFORM, params.oracle)
    side, delta = cut.side, cut.separator
    outside = frozenset(range(g.vertex_count)) - side - delta
    e0 = [i for i, e in enumerate(g.edges)
          if (e.u in side and e.v in outside) or (e.v in side and e.u in outside)]
    _guard_finite(g, e0)
    crossing = [(s, t) for s, t in live
                if ((s in side and t in outside) or (t in side and s in outside))]
    trace = [{
        "cut_side": sorted(side),
        "separator": sorted(delta),
        "removed_edges": sorted(e0),
        "sparsity": str(cut.sparsity),
        "dropped_pairs": sorted([s, t] for s, t in crossing),
    }]
    removed = set(e0)
    n = g.vertex_count
    for part in (side | delta, outside | delta):
        assert len(part) < n, "recursion must shrink the vertex set"
        part_pairs = [(s, t) for s, t in live if s in part and t in part]
        shell = Instance(g, DemandSet(part_pairs), 2, Flavor.VERTEX)
        sub = induced_subinstance(shell, part)
        sub_removed, sub_trace = _two_route_rec(
            sub.instance.graph, list(sub.instance.demands.pairs), params)
        removed.update(sub.orig_edge[e] for e in sub_removed)
        trace.extend(_translate_trace(sub_trace, sub.orig_vertex, sub.orig_edge))
    return removed, trace


# ---------------------------------------------------------------------------
# Single source-sink pair.


def _guess_grid(total: int, weights, epsilon: Fraction) -> list[int]:
    grid = set(w for w in weights if 0 < w <= total)
    grid.add(total)
    value = Fraction(1)
    while True:
        point = math.ceil(value)
        if point >= total:
            break
        grid.add(point)
        value *= 1 + epsilon
    return sorted(grid)


def solve_st(inst: Instance, params: SolverParams) -> SolveResult:
    """Single-pair algorithm via vertex cuts in the edge-subdivision graph.

    Every edge is subdivided by a vertex carrying the edge weight; original
    vertices cost (c/(k-1)) times the current optimum guess. Candidates whose
    original-vertex witness stays below k(1+1/c) qualify; with c=k the witness
    stays below k and the returned cut is feasible at k itself.
    """
    if inst.flavor is not Flavor.VERTEX:
        raise ValueError("solve_st needs a vertex-connectivity instance")
    if inst.demands.r != 1:
        raise ValueError("solve_st needs exactly one demand pair")
    g = inst.graph
    s, t = inst.demands.pairs[0]
    k = inst.k

    if k == 1:
        value, side = min_weight_edge_st_cut(g, s, t)
        if value >= INF:
            raise Infeasible("the pair cannot be disconnected")
        e0 = g.cut_edges(side)
        return _finish(inst, e0, 1, [{"removed_edges": sorted(e0)}])

    if num_vertex_disjoint_paths(g, s, t, limit=k) < k:
        return _finish(inst, set(), k, [])

    n = g.vertex_count
    sub_edges = []
    for i, e in enumerate(g.edges):
        sub_edges.append((e.u, n + i))
        sub_edges.append((n + i, e.v))
    gsub = Graph(n + g.edge_count, [(u, v, 1) for u, v in sub_edges])

    total = g.total_finite_weight()
    if total == 0:
        # Only zero-weight edges are removable; take them all if that works.
        free = [i for i, e in enumerate(g.edges) if e.w < INF]
        if connectivity(g, s, t, Flavor.VERTEX, frozenset(free), limit=k) < k:
            return _finish(inst, free, k, [{"removed_edges": sorted(free)}])
        raise Infeasible("unremovable edges keep the pair connected")
    c = params.c
    scale = c.denominator * (k - 1)
    # The correct-guess cut always meets this witness bound, and it keeps the
    # c=k run strictly below k original vertices, hence genuinely k-route.
    witness_cap = (k - 1) * (1 + 1 / c)

    best = None  # (weight, sorted edge ids, witness size, guess)
    for guess in _guess_grid(total, (e.w for e in g.edges if e.w < INF),
                             params.opt_grid_epsilon):
        weights = {n + i: (e.w * scale if e.w < INF else INF)
                   for i, e in enumerate(g.edges)}
        for v in range(n):
            if v not in (s, t):
                weights[v] = c.numerator * guess
        separator, value = min_weight_vertex_st_cut(gsub, weights, s, t)
        if value >= INF:
            continue
        witness = sorted(v for v in separator if v < n)
        edge_ids = sorted(v - n for v in separator if v >= n)
        if Fraction(len(witness)) > witness_cap:
            continue
        cand = (sum(g.weight(e) for e in edge_ids), tuple(edge_ids),
                len(witness), guess)
        if best is None or cand[:2] < best[:2]:
            best = cand
    if best is None:
        raise NoFeasibleGuess("no guess produced a qualifying separator")
    weight, edge_ids, witness_size, guess = best
    trace = [{
        "removed_edges": list(edge_ids),
        "separator_witness": witness_size,
        "guess": guess,
    }]
    return _finish(inst, edge_ids, witness_size + 1, trace)


SOLVERS = {
    "uniform-ec": solve_uniform_ec,
    "ec": solve_ec,
    "ec-polytime": solve_ec_polytime,
    "vc": solve_vc,
    "two-route": solve_two_route,
    "st": solve_st,
}
