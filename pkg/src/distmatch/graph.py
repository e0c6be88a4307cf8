"""Simple undirected graphs, hop distances, powers and line graphs.

Vertices are the dense integers ``0..n-1``. Edges are canonical ``(u, v)``
tuples with ``u < v`` and every set-valued result is returned sorted, so two
runs over the same input produce identical output.

Distances between vertices in different components are :data:`UNREACHABLE`
(``math.inf``), which compares greater than every finite hop count.
"""
from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

Edge = tuple[int, int]

UNREACHABLE = math.inf


class GraphError(ValueError):
    """Raised for malformed graphs, edges or vertex arguments."""


def edge(u: int, v: int) -> Edge:
    """Return the canonical form ``(min, max)`` of the edge ``uv``."""
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Derived data (distance matrix, bit adjacency, edge index) is computed
    lazily and cached on the instance.
    """

    __slots__ = ("_n", "_adj", "_edges", "_cache", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        canon: list[Edge] = []
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            e = edge(u, v)
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge {e}")
            nbrs[u].add(v)
            nbrs[v].add(u)
            canon.append(e)
        self._n = n
        self._adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._edges = tuple(sorted(canon))
        self._cache: dict = {}
        self._hash = hash((n, self._edges))

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    vertex_count = n

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and v in self._adj[u] if u != v else False

    def vertices(self) -> range:
        return range(self._n)

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self._n):
            raise GraphError(f"vertex {v!r} out of range for n={self._n}")

    def check_edge(self, e: Sequence[int]) -> Edge:
        u, v = int(e[0]), int(e[1])
        c = edge(u, v)
        if not self.has_edge(*c):
            raise GraphError(f"edge {c} not in graph")
        return c

    def edge_index(self) -> dict[Edge, int]:
        """Position of every edge in the canonical edge order."""
        idx = self._cache.get("edge_index")
        if idx is None:
            idx = {e: i for i, e in enumerate(self._edges)}
            self._cache["edge_index"] = idx
        return idx

    def bit_adjacency(self) -> list[int]:
        """Open neighbourhoods as integer bitmasks."""
        bits = self._cache.get("bits")
        if bits is None:
            bits = [sum(1 << u for u in nb) for nb in self._adj]
            self._cache["bits"] = bits
        return bits

    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop distances as a float array, ``inf`` when unreachable."""
        d = self._cache.get("dist")
        if d is None:
            d = _all_pairs(self)
            d.setflags(write=False)
            self._cache["dist"] = d
        return d

    def distance(self, u: int, v: int) -> float:
        d = self.distance_matrix()[u, v]
        return int(d) if d != math.inf else UNREACHABLE

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled ``0..len-1``; also returns the old ids."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        es = [(pos[u], pos[v]) for u, v in self._edges if u in pos and v in pos]
        return Graph(len(keep), es), keep

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self._n, [(perm[u], perm[v]) for u, v in self._edges])

    def is_connected(self) -> bool:
        if self._n == 0:
            return True
        return all(d != UNREACHABLE for d in bfs_distances(self, 0))

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            type(other) is type(self)
            and self._n == other._n  # type: ignore[attr-defined]
            and self._edges == other._edges  # type: ignore[attr-defined]
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={list(self._edges)})"

    def __iter__(self) -> Iterator[int]:
        return iter(range(self._n))

    def __len__(self) -> int:
        return self._n


class WeightedGraph(Graph):
    """A :class:`Graph` with an exact positive rational weight per edge."""

    __slots__ = ("_weights",)

    def __init__(self, n: int, weighted_edges: Iterable[Sequence]):
        triples = [(int(u), int(v), Fraction(w)) for u, v, w in weighted_edges]
        super().__init__(n, [(u, v) for u, v, _ in triples])
        weights = {}
        for u, v, w in triples:
            if w <= 0:
                raise GraphError(f"weight of edge {edge(u, v)} must be positive, got {w}")
            weights[edge(u, v)] = w
        self._weights: Mapping[Edge, Fraction] = weights
        self._hash = hash((n, self._edges, tuple(weights[e] for e in self._edges)))

    @classmethod
    def lift(cls, g: Graph, weight: Fraction | int = 1) -> WeightedGraph:
        """Give every edge of ``g`` the same weight."""
        return cls(g.n, [(u, v, weight) for u, v in g.edges])

    @property
    def weights(self) -> Mapping[Edge, Fraction]:
        return self._weights

    def weight(self, u: int, v: int) -> Fraction:
        return self._weights[edge(u, v)]

    def total_weight(self, edges: Iterable[Sequence[int]]) -> Fraction:
        return sum((self._weights[edge(e[0], e[1])] for e in edges), Fraction(0))

    def unweighted(self) -> Graph:
        return Graph(self._n, self._edges)

    def __eq__(self, other: object) -> bool:
        return super().__eq__(other) and self._weights == other._weights  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"({u}, {v}, {self._weights[(u, v)]})" for u, v in self._edges)
        return f"WeightedGraph(n={self._n}, edges=[{body}])"


def _all_pairs(g: Graph) -> np.ndarray:
    n = g.n
    if n == 0:
        return np.zeros((0, 0))
    if g.m == 0:
        d = np.full((n, n), np.inf)
        np.fill_diagonal(d, 0.0)
        return d
    e = np.asarray(g.edges, dtype=np.int64)
    rows = np.concatenate([e[:, 0], e[:, 1]])
    cols = np.concatenate([e[:, 1], e[:, 0]])
    a = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    return shortest_path(a, method="D", directed=False, unweighted=True)


# -- operations ------------------------------------------------------------


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Hop distance from ``source`` to every vertex (``UNREACHABLE`` if none)."""
    g.check_vertex(source)
    dist: list[float] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def graph_power(g: Graph, k: int) -> Graph:
    """The ``k``-th power: same vertices, ``u ~ v`` iff ``0 < dist(u, v) <= k``."""
    if k < 1:
        raise GraphError("power k must be >= 1")
    if k == 1:
        return g
    key = ("power", k)
    cached = g._cache.get(key)
    if cached is not None:
        return cached
    d = g.distance_matrix()
    iu, ju = np.nonzero(np.triu((d > 0) & (d <= k)))
    p = Graph(g.n, zip(iu.tolist(), ju.tolist()))
    g._cache[key] = p
    return p


def line_graph(g: Graph) -> tuple[Graph, dict[Edge, int]]:
    """Line graph of ``g`` and the map from edges of ``g`` to its vertices.

    Vertex ``i`` of the line graph is the ``i``-th edge of ``g`` in canonical
    order.
    """
    index = g.edge_index()
    pairs = []
    for v in g.vertices():
        inc = sorted(index[edge(v, w)] for w in g.neighbors(v))
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                pairs.append((inc[a], inc[b]))
    return Graph(g.m, pairs), dict(index)


def vertex_edge_distance(g: Graph, v: int, e: Sequence[int]) -> float:
    """``min(dist(v, u), dist(v, w))`` for ``e = uw``."""
    g.check_vertex(v)
    u, w = g.check_edge(e)
    return min(g.distance(v, u), g.distance(v, w))


def edge_distance(g: Graph, e1: Sequence[int], e2: Sequence[int]) -> float:
    """Shortest hop distance between an endpoint of ``e1`` and one of ``e2``."""
    a, b = g.check_edge(e1)
    c, d = g.check_edge(e2)
    return min(g.distance(x, y) for x in (a, b) for y in (c, d))


def edge_distance_matrix(g: Graph) -> np.ndarray:
    """Pairwise edge distances, indexed by canonical edge position."""
    cached = g._cache.get("edge_dist")
    if cached is not None:
        return cached
    m = g.m
    if m == 0:
        out = np.zeros((0, 0))
    else:
        d = g.distance_matrix()
        e = np.asarray(g.edges, dtype=np.int64)
        u, v = e[:, 0], e[:, 1]
        out = np.minimum(
            np.minimum(d[np.ix_(u, u)], d[np.ix_(u, v)]),
            np.minimum(d[np.ix_(v, u)], d[np.ix_(v, v)]),
        )
    out.setflags(write=False)
    g._cache["edge_dist"] = out
    return out


def edge_neighborhood(g: Graph, sources: Iterable[int], t: int) -> list[Edge]:
    """Edges at vertex-edge distance less than ``t`` from some vertex of ``sources``."""
    if t < 1:
        raise GraphError("t must be >= 1")
    xs = sorted(set(sources))
    for v in xs:
        g.check_vertex(v)
    if not xs or g.m == 0:
        return []
    d = g.distance_matrix()[xs]
    near = d.min(axis=0) < t
    return [e for e in g.edges if near[e[0]] or near[e[1]]]


def conflict_masks(g: Graph, k: int) -> list[int]:
    """Bitmasks over edge positions: ``j`` is in mask ``i`` iff edges ``i != j``
    lie at distance less than ``k``.

    Independent sets of this conflict graph are exactly the distance-``k``
    matchings of ``g``.
    """
    if k < 1:
        raise GraphError("k must be >= 1")
    key = ("conflict", k)
    cached = g._cache.get(key)
    if cached is not None:
        return cached
    ed = edge_distance_matrix(g)
    c = ed < k
    if c.size:
        np.fill_diagonal(c, False)
    masks = bool_rows_to_masks(c)
    g._cache[key] = masks
    return masks


def power_masks(g: Graph, k: int) -> list[int]:
    """Open neighbourhood bitmasks of ``graph_power(g, k)``."""
    return graph_power(g, k).bit_adjacency()


def bool_rows_to_masks(rows: np.ndarray) -> list[int]:
    if rows.size == 0:
        return [0] * rows.shape[0]
    packed = np.packbits(rows.astype(np.uint8), axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out
