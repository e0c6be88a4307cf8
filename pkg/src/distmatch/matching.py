"""Distance-k matchings: feasibility checks and exact extremal solvers.

A set of edges is a distance-``k`` matching when every two of its edges are
at edge distance at least ``k``. ``k = 1`` gives ordinary matchings and
``k = 2`` induced matchings. All solvers reduce to independent sets of the
conflict graph on edges (see :func:`distmatch.graph.conflict_masks`) and
return the lexicographically least optimal edge list.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Literal, Sequence

from . import _search
from .graph import Edge, Graph, GraphError, WeightedGraph, bits, conflict_masks, edge_distance_matrix, to_mask

Certificate = Literal["ExhaustiveOptimal", "BoundedOptimal"]


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


def _edge_positions(g: Graph, edges: Iterable[Sequence[int]]) -> list[int]:
    index = g.edge_index()
    out = set()
    for e in edges:
        out.add(index[g.check_edge(e)])
    return sorted(out)


@dataclass(frozen=True)
class Matching:
    """A verified distance-``k`` matching of ``graph``.

    Construction canonicalises the edge list and raises ``ValueError`` when
    two edges are closer than ``k``.
    """

    graph: Graph = field(repr=False, compare=False)
    edges: tuple[Edge, ...]
    k: int

    def __post_init__(self) -> None:
        _check_k(self.k)
        pos = _edge_positions(self.graph, self.edges)
        object.__setattr__(self, "edges", tuple(self.graph.edges[i] for i in pos))
        conflicts = conflict_masks(self.graph, self.k)
        mask = to_mask(pos)
        for i in pos:
            if conflicts[i] & mask:
                j = next(bits(conflicts[i] & mask))
                raise ValueError(
                    f"edges {self.graph.edges[i]} and {self.graph.edges[j]} are closer than k={self.k}"
                )

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


@dataclass(frozen=True)
class SolveResult:
    matching: Matching
    objective: int | Fraction
    certificate: Certificate
    nodes: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MatchingCheck:
    """Outcome of :func:`check_matching`.

    ``violation`` is set (and ``is_matching`` false) when two edges are closer
    than ``k``. Otherwise ``maximal`` tells whether no edge can be added, and
    ``extension`` names the first addable edge when one exists.
    """

    is_matching: bool
    violation: tuple[Edge, Edge] | None = None
    maximal: bool | None = None
    extension: Edge | None = None


@dataclass(frozen=True)
class EquimatchabilityVerdict:
    equimatchable: bool
    witness: tuple[Matching, Matching] | None = None


def check_matching(g: Graph, edges: Iterable[Sequence[int]], k: int) -> MatchingCheck:
    """Check feasibility and maximality of an edge set as a distance-``k`` matching."""
    _check_k(k)
    pos = _edge_positions(g, edges)
    ed = edge_distance_matrix(g)
    for a in range(len(pos)):
        for b in range(a + 1, len(pos)):
            if ed[pos[a], pos[b]] < k:
                return MatchingCheck(False, violation=(g.edges[pos[a]], g.edges[pos[b]]))
    chosen = set(pos)
    for j in range(g.m):
        if j in chosen:
            continue
        if all(ed[i, j] >= k for i in pos):
            return MatchingCheck(True, maximal=False, extension=g.edges[j])
    return MatchingCheck(True, maximal=True)


def greedy_maximal(g: Graph, k: int, order: Sequence[Sequence[int]] | None = None) -> Matching:
    """Scan edges in ``order`` (canonical by default) and keep each edge that
    is compatible with everything kept so far."""
    _check_k(k)
    index = g.edge_index()
    if order is None:
        seq = list(range(g.m))
    else:
        seq = [index.get(tuple(sorted((int(e[0]), int(e[1])))), -1) for e in order]  # type: ignore[arg-type]
        if sorted(seq) != list(range(g.m)):
            raise ValueError("order must be a permutation of the graph's edges")
    conflicts = conflict_masks(g, k)
    blocked = 0
    kept = []
    for i in seq:
        if not blocked >> i & 1:
            kept.append(i)
            blocked |= conflicts[i] | (1 << i)
    return Matching(g, tuple(g.edges[i] for i in kept), k)


def _as_matching(g: Graph, mask: int, k: int) -> Matching:
    return Matching(g, tuple(g.edges[i] for i in bits(mask)), k)


def _lex_key(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def all_maximal_matchings(g: Graph, k: int, budget: int | None = None) -> list[Matching]:
    """Every maximal distance-``k`` matching, sorted by size then edge list."""
    _check_k(k)
    masks = list(_search.maximal_independent_sets(conflict_masks(g, k), budget))
    masks.sort(key=lambda s: (s.bit_count(), _lex_key(s)))
    return [_as_matching(g, s, k) for s in masks]


def max_matching(g: Graph, k: int, budget: int | None = None) -> SolveResult:
    """Maximum-cardinality distance-``k`` matching (lexicographically least)."""
    _check_k(k)
    mask, nodes = _search.max_independent_set(conflict_masks(g, k), budget)
    return SolveResult(_as_matching(g, mask, k), mask.bit_count(), "BoundedOptimal", nodes)


def min_maximal_matching(
    g: Graph, k: int, budget: int | None = None, method: Literal["bnb", "exhaustive"] = "bnb"
) -> SolveResult:
    """Minimum-cardinality maximal distance-``k`` matching.

    ``method="bnb"`` runs the branch-and-bound search; ``"exhaustive"``
    enumerates every maximal matching and takes the canonical minimum.
    """
    _check_k(k)
    adj = conflict_masks(g, k)
    if method == "exhaustive":
        best = min(_search.maximal_independent_sets(adj, budget), key=lambda s: (s.bit_count(), _lex_key(s)))
        return SolveResult(_as_matching(g, best, k), best.bit_count(), "ExhaustiveOptimal")
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    seed = greedy_maximal(g, k)
    seed_mask = to_mask(g.edge_index()[e] for e in seed.edges)
    mask, weight, nodes = _search.min_maximal_independent_set(adj, None, budget, (len(seed), seed_mask))
    return SolveResult(_as_matching(g, mask, k), weight, "BoundedOptimal", nodes)


def min_weight_maximal_matching(
    g: WeightedGraph, k: int, budget: int | None = None
) -> SolveResult:
    """Minimum-weight maximal distance-``k`` matching with exact rational weights."""
    _check_k(k)
    if not isinstance(g, WeightedGraph):
        raise TypeError("min_weight_maximal_matching needs a WeightedGraph")
    ws = [g.weights[e] for e in g.edges]
    if any(w <= 0 for w in ws):
        raise GraphError("weights must be positive")
    scale = lcm(*(w.denominator for w in ws)) if ws else 1
    iw = [int(w * scale) for w in ws]
    adj = conflict_masks(g, k)
    # greedy seed: lightest edges first
    order = sorted(range(g.m), key=lambda i: (ws[i], i))
    seed = greedy_maximal(g, k, [g.edges[i] for i in order])
    seed_pos = [g.edge_index()[e] for e in seed.edges]
    upper = (sum(iw[i] for i in seed_pos), to_mask(seed_pos))
    mask, weight, nodes = _search.min_maximal_independent_set(adj, iw, budget, upper)
    return SolveResult(_as_matching(g, mask, k), Fraction(weight, scale), "BoundedOptimal", nodes)


def is_k_equimatchable(g: Graph, k: int, budget: int | None = None) -> EquimatchabilityVerdict:
    """Whether all maximal distance-``k`` matchings have the same size.

    A negative verdict carries a minimum and a maximum maximal matching.
    """
    small = min_maximal_matching(g, k, budget)
    large = max_matching(g, k, budget)
    if small.objective == large.objective:
        return EquimatchabilityVerdict(True)
    return EquimatchabilityVerdict(False, (small.matching, large.matching))
