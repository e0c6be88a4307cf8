"""Direct-definition brute force, independent of the search kernel.

Distances come from per-vertex BFS rather than the cached distance matrix,
and feasible sets are listed outright instead of searched with bounds. Only
meant for graphs with a handful of vertices or edges.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .graph import Edge, Graph, WeightedGraph, bfs_distances


def bfs_distance_table(g: Graph) -> list[list[float]]:
    return [bfs_distances(g, v) for v in g.vertices()]


def _feasible_sets(n: int, ok: list[list[bool]]) -> list[tuple[int, ...]]:
    # every set of pairwise compatible items, grown in index order
    out: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    while frontier:
        nxt = []
        for s in frontier:
            start = s[-1] + 1 if s else 0
            for j in range(start, n):
                if all(ok[i][j] for i in s):
                    nxt.append(s + (j,))
        out.extend(nxt)
        frontier = nxt
    return out


def _maximal(n: int, ok: list[list[bool]], sets: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    return [s for s in sets if not any(j not in s and all(ok[i][j] for i in s) for j in range(n))]


def matching_compatibility(g: Graph, k: int) -> list[list[bool]]:
    d = bfs_distance_table(g)
    es = g.edges
    m = len(es)
    return [
        [i != j and min(d[a][b] for a in es[i] for b in es[j]) >= k for j in range(m)]
        for i in range(m)
    ]


def distance_matchings(g: Graph, k: int) -> list[tuple[Edge, ...]]:
    ok = matching_compatibility(g, k)
    return [tuple(g.edges[i] for i in s) for s in _feasible_sets(g.m, ok)]


def maximal_distance_matchings(g: Graph, k: int) -> list[tuple[Edge, ...]]:
    ok = matching_compatibility(g, k)
    sets = _maximal(g.m, ok, _feasible_sets(g.m, ok))
    return sorted((tuple(g.edges[i] for i in s) for s in sets), key=lambda t: (len(t), t))


def matching_extremes(g: Graph, k: int) -> tuple[int, int]:
    """(minimum maximal, maximum) distance-``k`` matching sizes."""
    sizes = [len(s) for s in maximal_distance_matchings(g, k)]
    return min(sizes), max(sizes)


def min_weight_maximal(g: WeightedGraph, k: int) -> Fraction:
    return min(g.total_weight(s) for s in maximal_distance_matchings(g, k))


def packing_compatibility(g: Graph, k: int) -> list[list[bool]]:
    d = bfs_distance_table(g)
    return [[u != v and d[u][v] > k for v in g.vertices()] for u in g.vertices()]


def packings(g: Graph, k: int) -> list[tuple[int, ...]]:
    return _feasible_sets(g.n, packing_compatibility(g, k))


def maximal_packings(g: Graph, k: int) -> list[tuple[int, ...]]:
    ok = packing_compatibility(g, k)
    return _maximal(g.n, ok, _feasible_sets(g.n, ok))


def is_dominating(d: Sequence[Sequence[float]], s: Sequence[int], k: int) -> bool:
    return all(any(d[v][u] <= k for u in s) for v in range(len(d)))


def packing_parameters(g: Graph, k: int) -> tuple[int, int, int]:
    """``(rho_k, gamma_k, i_k)`` straight from the definitions."""
    d = bfs_distance_table(g)
    packs = packings(g, k)
    rho = max(len(s) for s in packs)
    i = min(len(s) for s in packs if is_dominating(d, s, k))
    gamma = next(
        size
        for size in range(g.n + 1)
        if any(is_dominating(d, s, k) for s in itertools.combinations(range(g.n), size))
    )
    return rho, gamma, i


def rho(g: Graph, k: int) -> int:
    return max(len(s) for s in packings(g, k))


def independence_number(g: Graph) -> int:
    best = 0
    for size in range(g.n + 1):
        for s in itertools.combinations(range(g.n), size):
            if not any(g.has_edge(a, b) for a, b in itertools.combinations(s, 2)):
                best = size
                break
    return best
