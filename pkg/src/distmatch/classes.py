"""Recognition of the graph classes around equal packing numbers.

``R_k`` is the class of graphs whose ``k``-packing and ``2k``-packing numbers
agree. A graph is in ``R_1`` exactly when the closed neighbourhoods of its
simplicial vertices partition the vertex set, and ``G`` is in ``R_k`` exactly
when ``G^k`` is in ``R_1``; both tests here are polynomial.

Also provided: chordality via maximum cardinality search with an explicit
re-check of the elimination ordering, and a bounded search for induced suns.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, bits, graph_power


@dataclass(frozen=True)
class SimplicialPartition:
    """Blocks ``(clique, center)``: the distinct simplicial cliques, each
    named by its smallest simplicial vertex."""

    blocks: tuple[tuple[tuple[int, ...], int], ...]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class PartitionFailure:
    """Why the simplicial cliques do not partition the vertex set.

    ``reason`` is ``"uncovered"`` (``vertex`` lies in no simplicial clique)
    or ``"overlap"`` (``vertex`` lies in both ``cliques``).
    """

    reason: str
    vertex: int
    cliques: tuple[tuple[int, ...], ...] = ()

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class RkCertificate:
    k: int
    blocks: tuple[tuple[tuple[int, ...], int], ...]


@dataclass(frozen=True)
class SunEmbedding:
    """Induced sun: ``X`` independent, ``Y`` a cycle, ``x_i`` adjacent to
    exactly ``y_i`` and ``y_{i+1}`` (indices mod ``n``)."""

    x: tuple[int, ...]
    y: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.x)


def _is_clique(adj: Sequence[int], mask: int) -> bool:
    for v in bits(mask):
        if mask & ~(1 << v) & ~adj[v]:
            return False
    return True


def simplicial_vertices(g: Graph) -> list[int]:
    """Vertices whose closed neighbourhood induces a complete subgraph."""
    adj = g.bit_adjacency()
    return [v for v in g.vertices() if _is_clique(adj, adj[v])]


def simplicial_clique_partition(g: Graph) -> SimplicialPartition | PartitionFailure:
    """Partition of ``V`` into simplicial cliques, or the vertex that breaks it.

    Simplicial vertices with the same closed neighbourhood contribute one
    clique.
    """
    adj = g.bit_adjacency()
    cliques: dict[int, int] = {}
    for v in simplicial_vertices(g):
        cliques.setdefault(adj[v] | (1 << v), v)
    owner: dict[int, int] = {}
    for mask in sorted(cliques, key=lambda c: cliques[c]):
        for u in bits(mask):
            if u in owner:
                first = tuple(bits(owner[u]))
                return PartitionFailure("overlap", u, (first, tuple(bits(mask))))
            owner[u] = mask
    for v in g.vertices():
        if v not in owner:
            return PartitionFailure("uncovered", v)
    blocks = tuple(sorted((tuple(bits(c)), center) for c, center in cliques.items()))
    return SimplicialPartition(tuple(sorted(blocks, key=lambda b: b[1])))


def is_in_Rk(g: Graph, k: int) -> tuple[bool, RkCertificate | None]:
    """Membership in ``R_k`` with a structural certificate on success.

    Raises ``AssertionError`` if a lifted certificate fails validation, which
    would indicate a bug rather than a property of the input.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    part = simplicial_clique_partition(graph_power(g, k))
    if not part:
        return False, None
    cert = RkCertificate(k, part.blocks)  # type: ignore[union-attr]
    problems = validate_rk_certificate(g, cert)
    assert not problems, problems
    return True, cert


def validate_rk_certificate(g: Graph, cert: RkCertificate) -> list[str]:
    """Check a certificate against ``g``; returns a list of problems.

    Conditions: the blocks partition ``V``; each block induces a subgraph of
    diameter at most ``k``; every block vertex with a neighbour outside the
    block is exactly ``k`` hops from the block's center.
    """
    problems = []
    k = cert.k
    seen: set[int] = set()
    for block, center in cert.blocks:
        if center not in block:
            problems.append(f"center {center} not in block {block}")
        if seen & set(block):
            problems.append(f"block {block} overlaps an earlier block")
        seen |= set(block)
        sub, _ = g.induced_subgraph(block)
        d = sub.distance_matrix()
        if d.size and d.max() > k:
            problems.append(f"block {block} induces diameter {d.max()} > {k}")
        inside = set(block)
        for v in block:
            if any(u not in inside for u in g.neighbors(v)) and g.distance(center, v) != k:
                problems.append(f"boundary vertex {v} of block {block} not at distance {k} from {center}")
    if seen != set(g.vertices()):
        problems.append("blocks do not cover every vertex")
    return problems


def maximum_cardinality_search(g: Graph) -> list[int]:
    """Visit order of maximum cardinality search (ties to the lowest id)."""
    n = g.n
    weight = [0] * n
    done = [False] * n
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        order.append(v)
        for w in g.neighbors(v):
            if not done[w]:
                weight[w] += 1
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    """True iff each vertex's neighbours that come later in ``order`` form a clique."""
    if sorted(order) != list(g.vertices()):
        return False
    adj = g.bit_adjacency()
    later = (1 << g.n) - 1
    for v in order:
        later &= ~(1 << v)
        if not _is_clique(adj, adj[v] & later):
            return False
    return True


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality with a verified perfect elimination ordering when true."""
    order = maximum_cardinality_search(g)[::-1]
    if is_perfect_elimination_ordering(g, order):
        return True, order
    return False, None


def verify_sun(g: Graph, sun: SunEmbedding) -> bool:
    """Independently re-check that ``sun`` is an induced sun of ``g``."""
    xs, ys = sun.x, sun.y
    n = len(xs)
    if n < 3 or len(ys) != n or len(set(xs) | set(ys)) != 2 * n:
        return False
    if any(g.has_edge(a, b) for i, a in enumerate(xs) for b in xs[i + 1 :]):
        return False
    if not all(g.has_edge(ys[i], ys[(i + 1) % n]) for i in range(n)):
        return False
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            if g.has_edge(x, y) != (j == i or j == (i + 1) % n):
                return False
    sub, _ = g.induced_subgraph(xs + ys)
    return is_chordal(sub)[0]


def find_induced_sun(g: Graph, max_n: int = 4) -> SunEmbedding | None:
    """Some induced sun with at most ``max_n`` pairs, or ``None``.

    ``None`` certifies only that no sun of size ``<= max_n`` exists.
    """
    if max_n < 3:
        raise ValueError("max_n must be >= 3")
    adj = g.bit_adjacency()
    nv = g.n
    for size in range(3, max_n + 1):
        if 2 * size > nv:
            break
        found = _sun_of_size(g, adj, size)
        if found is not None:
            return found
    return None


def _sun_of_size(g: Graph, adj: list[int], size: int) -> SunEmbedding | None:
    nv = g.n

    def pick_x(ys: list[int]) -> SunEmbedding | None:
        ymask = sum(1 << y for y in ys)
        options = []
        for i in range(size):
            pair = (1 << ys[i]) | (1 << ys[(i + 1) % size])
            cand = [x for x in range(nv) if not ymask >> x & 1 and adj[x] & ymask == pair]
            if not cand:
                return None
            options.append(cand)

        def rec(i: int, chosen: list[int], used: int) -> SunEmbedding | None:
            if i == size:
                sun = SunEmbedding(tuple(chosen), tuple(ys))
                return sun if verify_sun(g, sun) else None
            for x in options[i]:
                if used >> x & 1 or adj[x] & used:
                    continue
                hit = rec(i + 1, chosen + [x], used | (1 << x))
                if hit is not None:
                    return hit
            return None

        return rec(0, [], 0)

    def grow(ys: list[int]) -> SunEmbedding | None:
        if len(ys) == size:
            if not adj[ys[-1]] >> ys[0] & 1:
                return None
            return pick_x(ys)
        for y in bits(adj[ys[-1]]):
            # y_1 is the smallest cycle vertex; fixes the rotation
            if y > ys[0] and y not in ys:
                hit = grow(ys + [y])
                if hit is not None:
                    return hit
        return None

    for y0 in range(nv):
        hit = grow([y0])
        if hit is not None:
            return hit
    return None
