"""Small-graph, formula and set-cover enumeration up to isomorphism.

Canonical labelling is individualisation-refinement: refine the degree
partition to an equitable one, branch on the first non-singleton cell, and
keep the largest adjacency code among the discrete
leaves. It is exact and fast enough up to a few dozen vertices.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator, Sequence

from .gadgets import CnfFormula, SetCoverInstance
from .graph import Graph

EXHAUSTIVE_LIMIT = 7

# number of unlabelled connected graphs on n vertices (OEIS A001349)
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def _refine(cells: list[list[int]], adj: Sequence[int]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            out.extend(groups[s] for s in sorted(groups))
        if len(out) == len(cells):
            return out
        cells = out


def _code(order: Sequence[int], adj: Sequence[int]) -> int:
    # bit string of the upper triangle in the new order
    code = 0
    n = len(order)
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (row >> order[j] & 1)
    return code


def canonical_order(g: Graph) -> list[int]:
    """Vertex order whose relabelling gives the canonical form.

    ``canonical_order(g)[i]`` is the old id of new vertex ``i``.
    """
    adj = g.bit_adjacency()
    n = g.n
    if n == 0:
        return []
    start = _refine([list(range(n))], adj)
    best: tuple[int, list[int]] | None = None

    def search(cells: list[list[int]]) -> None:
        nonlocal best
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _code(order, adj)
            if best is None or code > best[0]:
                best = (code, order)
            return
        for v in cells[target]:
            rest = [u for u in cells[target] if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1 :]
            search(_refine(split, adj))

    search(start)
    assert best is not None
    return best[1]


def canonical_form(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    return g.relabel(perm)


def certificate(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    c = canonical_form(g)
    return c.n, c.edges


@lru_cache(maxsize=None)
def _connected(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1),)
    found: dict[tuple, Graph] = {}
    # every connected graph has a vertex whose removal leaves it connected
    for base in _connected(n - 1):
        for r in range(1, n):
            for nbrs in itertools.combinations(range(n - 1), r):
                g = Graph(n, list(base.edges) + [(v, n - 1) for v in nbrs])
                c = canonical_form(g)
                found.setdefault(c.edges, c)
    return tuple(sorted(found.values(), key=lambda g: (g.m, g.edges)))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Every unlabelled connected graph on ``n`` vertices once, in canonical form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive enumeration stops at {EXHAUSTIVE_LIMIT} vertices; use sampling")
    yield from _connected(n)


def connected_graphs_up_to(n_max: int) -> Iterator[Graph]:
    for n in range(1, n_max + 1):
        yield from enumerate_connected_graphs(n)


@lru_cache(maxsize=None)
def _connected_chordal(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1),)
    found: dict[tuple, Graph] = {}
    # removing a simplicial vertex keeps a connected chordal graph connected and chordal
    for base in _connected_chordal(n - 1):
        adj = base.bit_adjacency()
        for clique in _cliques(adj):
            g = Graph(n, list(base.edges) + [(v, n - 1) for v in clique])
            c = canonical_form(g)
            found.setdefault(c.edges, c)
    return tuple(sorted(found.values(), key=lambda g: (g.m, g.edges)))


def _cliques(adj: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All nonempty cliques, each as a sorted tuple."""

    def grow(clique: tuple[int, ...], cand: int) -> Iterator[tuple[int, ...]]:
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            nxt = clique + (v,)
            yield nxt
            yield from grow(nxt, cand & adj[v])

    yield from grow((), (1 << len(adj)) - 1)


def enumerate_connected_chordal_graphs(n: int) -> Iterator[Graph]:
    """Every unlabelled connected chordal graph on ``n <= 9`` vertices once."""
    if not 1 <= n <= 9:
        raise ValueError("n must be in 1..9")
    yield from _connected_chordal(n)


def sample_connected_graphs(n: int, count: int, seed: int = 0, p: float = 0.4) -> list[Graph]:
    """Distinct (non-isomorphic) random connected graphs in canonical form.

    Each sample is a random spanning tree plus independent extra edges.
    Fewer than ``count`` graphs come back if duplicates keep recurring.
    """
    rng = random.Random(seed)
    found: dict[tuple, Graph] = {}
    attempts = 0
    while len(found) < count and attempts < 50 * count:
        attempts += 1
        order = list(range(n))
        rng.shuffle(order)
        es = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
        for u, v in itertools.combinations(range(n), 2):
            if (u, v) not in es and rng.random() < p:
                es.add((u, v))
        c = canonical_form(Graph(n, es))
        found.setdefault(c.edges, c)
    return sorted(found.values(), key=lambda g: (g.m, g.edges))


def sample_chordal_graphs(n: int, count: int, seed: int = 0) -> list[Graph]:
    """Distinct random connected chordal graphs.

    Vertices are added one at a time, each joined to a random nonempty clique
    of the current graph, so the reverse insertion order is a perfect
    elimination ordering.
    """
    rng = random.Random(seed)
    found: dict[tuple, Graph] = {}
    attempts = 0
    while len(found) < count and attempts < 50 * count:
        attempts += 1
        adj: list[set[int]] = [set()]
        es = []
        for v in range(1, n):
            # random maximal-ish clique grown from a random vertex, then a random subset of it
            u = rng.randrange(v)
            clique = [u]
            for w in rng.sample(range(v), v):
                if w not in clique and all(w in adj[x] for x in clique):
                    clique.append(w)
            keep = [x for x in clique if x == u or rng.random() < 0.6]
            adj.append(set())
            for x in keep:
                adj[v].add(x)
                adj[x].add(v)
                es.append((x, v))
        c = canonical_form(Graph(n, es))
        found.setdefault(c.edges, c)
    return sorted(found.values(), key=lambda g: (g.m, g.edges))


# -- formulas -------------------------------------------------------------------


def _all_clauses(n: int, max_width: int) -> list[tuple[int, ...]]:
    out = []
    for width in range(1, max_width + 1):
        for vs in itertools.combinations(range(1, n + 1), width):
            for signs in itertools.product((1, -1), repeat=width):
                out.append(tuple(s * v for s, v in zip(signs, vs)))
    return out


def _canonical_formula(n: int, clauses: Sequence[tuple[int, ...]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        renamed = sorted(
            tuple(sorted((perm[abs(x) - 1] * (1 if x > 0 else -1) for x in c), key=lambda x: (abs(x), x)))
            for c in clauses
        )
        key = tuple(renamed)
        if best is None or key < best:
            best = key
    return best  # type: ignore[return-value]


def enumerate_formulas(n: int, m: int, max_width: int = 3) -> list[CnfFormula]:
    """All formulas with ``m`` distinct clauses over ``n`` variables, up to
    renaming of variables. Clauses are sorted, literals ordered by variable."""
    seen: set[tuple] = set()
    out = []
    for combo in itertools.combinations(_all_clauses(n, max_width), m):
        key = _canonical_formula(n, combo)
        if key not in seen:
            seen.add(key)
            out.append(CnfFormula(n, key))
    return out


def formulas_up_to(n_max: int = 3, m_max: int = 3, max_width: int = 3) -> list[CnfFormula]:
    return [f for n in range(2, n_max + 1) for m in range(2, m_max + 1) for f in enumerate_formulas(n, m, max_width)]


# -- set cover instances -----------------------------------------------------------


def enumerate_set_cover_instances(universe: int, subsets: int) -> list[SetCoverInstance]:
    """Feasible instances with ``subsets`` distinct nonempty sets over a
    universe of size ``universe``, up to relabelling elements and reordering
    sets.

    An instance is described by the multiset of element types, the type of
    an element being the nonempty set of subset indices containing it.
    """
    types = [t for r in range(1, subsets + 1) for t in itertools.combinations(range(subsets), r)]
    perms = list(itertools.permutations(range(subsets)))
    seen: set[tuple] = set()
    out = []
    for elems in itertools.combinations_with_replacement(range(len(types)), universe):
        cols = [tuple(x for x, t in enumerate(elems) if j in types[t]) for j in range(subsets)]
        if any(not c for c in cols) or len(set(cols)) != subsets:
            continue
        key = min(
            tuple(sorted(tuple(sorted(p[j] for j in types[t])) for t in elems)) for p in perms
        )
        if key in seen:
            continue
        seen.add(key)
        sets = [tuple(x for x, t in enumerate(key) if j in t) for j in range(subsets)]
        out.append(SetCoverInstance(universe, tuple(sorted(sets))))
    return out


def set_cover_instances_up_to(max_universe: int = 6, max_subsets: int = 4) -> list[SetCoverInstance]:
    return [
        inst
        for u in range(1, max_universe + 1)
        for s in range(1, max_subsets + 1)
        for inst in enumerate_set_cover_instances(u, s)
    ]
