"""Constructors for the three hardness gadgets and their certificate maps.

* :func:`sat_to_graph` turns a CNF formula into a graph whose maximal
  distance-``k`` matchings have size ``n`` or ``n + 1``, with size ``n``
  reachable from satisfying assignments.
* :func:`setcover_to_wmmm` turns a set cover instance into a weighted chordal
  graph whose minimum-weight maximal distance-``2l`` matching encodes a
  minimum cover.
* :func:`t_transform` hangs pendant paths on every vertex so that the
  minimum maximal induced matching size is ``2n`` minus the independence
  number.

Every gadget vertex carries a role tuple. Indices inside roles follow the
input's own convention: variables and clauses are 1-based (DIMACS),
universe elements, subsets and original vertices are 0-based, and positions
along paths start at 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

from .graph import Edge, Graph, WeightedGraph, edge
from .matching import Matching, check_matching

Role = tuple


@dataclass(frozen=True)
class CnfFormula:
    """Clauses over variables ``1..n`` as tuples of signed literals."""

    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(int(x) for x in c) for c in self.clauses))
        if self.n < 2:
            raise ValueError("a formula needs at least 2 variables")
        if len(self.clauses) < 2:
            raise ValueError("a formula needs at least 2 clauses")
        for j, clause in enumerate(self.clauses, 1):
            if not clause:
                raise ValueError(f"clause {j} is empty")
            if len(set(clause)) != len(clause):
                raise ValueError(f"clause {j} repeats a literal")
            for lit in clause:
                if lit == 0 or abs(lit) > self.n:
                    raise ValueError(f"clause {j} has literal {lit} outside 1..{self.n}")
                if -lit in clause:
                    raise ValueError(f"clause {j} contains variable {abs(lit)} and its negation")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def unsatisfied(self, assignment: Sequence[bool]) -> list[int]:
        """1-based indices of clauses falsified by ``assignment``."""
        if len(assignment) != self.n:
            raise ValueError(f"assignment must give all {self.n} variables")
        return [
            j
            for j, clause in enumerate(self.clauses, 1)
            if not any(assignment[abs(lit) - 1] == (lit > 0) for lit in clause)
        ]

    def assignments(self) -> Iterable[tuple[bool, ...]]:
        return itertools.product((False, True), repeat=self.n)

    def is_satisfiable(self) -> bool:
        return any(not self.unsatisfied(a) for a in self.assignments())

    def min_unsatisfied(self) -> int:
        return min(len(self.unsatisfied(a)) for a in self.assignments())


@dataclass(frozen=True)
class SetCoverInstance:
    """Subsets of the universe ``0..universe_size-1`` whose union is everything."""

    universe_size: int
    subsets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "subsets", tuple(tuple(sorted(set(s))) for s in self.subsets))
        if self.universe_size < 1:
            raise ValueError("universe must be nonempty")
        if not self.subsets:
            raise ValueError("need at least one subset")
        covered: set[int] = set()
        for i, s in enumerate(self.subsets):
            if not s:
                raise ValueError(f"subset {i} is empty")
            if s[0] < 0 or s[-1] >= self.universe_size:
                raise ValueError(f"subset {i} leaves the universe")
            covered.update(s)
        if len(covered) != self.universe_size:
            missing = min(set(range(self.universe_size)) - covered)
            raise ValueError(f"infeasible instance: element {missing} is in no subset")

    def is_cover(self, indices: Iterable[int]) -> bool:
        covered: set[int] = set()
        for i in indices:
            covered.update(self.subsets[i])
        return len(covered) == self.universe_size

    def min_cover(self) -> tuple[int, ...]:
        """Brute-force minimum cover (lexicographically least among minima)."""
        idx = range(len(self.subsets))
        for size in range(1, len(self.subsets) + 1):
            for combo in itertools.combinations(idx, size):
                if self.is_cover(combo):
                    return combo
        raise AssertionError("instance is feasible by construction")


@dataclass(frozen=True)
class GadgetGraph:
    """A gadget graph with one role per vertex and its construction parameters."""

    kind: str
    graph: Graph
    roles: tuple[Role, ...]
    params: Mapping[str, Any] = field(default_factory=dict)
    source: Any = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.roles) != self.graph.n:
            raise ValueError("every vertex needs a role")
        if len(set(self.roles)) != len(self.roles):
            raise ValueError("roles must be distinct")

    def vertex(self, *role: Any) -> int:
        index = self.__dict__.get("_index")
        if index is None:
            index = {r: v for v, r in enumerate(self.roles)}
            object.__setattr__(self, "_index", index)
        return index[tuple(role)]

    def role(self, v: int) -> Role:
        return self.roles[v]


class _Builder:
    def __init__(self) -> None:
        self.roles: list[Role] = []
        self.edges: list[tuple] = []

    def add(self, *role: Any) -> int:
        self.roles.append(tuple(role))
        return len(self.roles) - 1

    def link(self, u: int, v: int, *weight: Any) -> None:
        self.edges.append((u, v, *weight))


# -- SAT to graph ------------------------------------------------------------


def sat_to_graph(k: int, formula: CnfFormula) -> GadgetGraph:
    """Build the equimatchability gadget for ``formula`` and distance ``k >= 2``.

    Vertex layout: clause vertices ``("clause", j)`` first, then each
    variable's block in index order, then the interiors of the literal
    occurrence paths in clause-major, literal-minor order. For even
    ``k = 2l`` a variable block is the path ``x_1 .. x_{l+1}, xbar_{l+1} ..
    xbar_1``. For odd ``k = 2l + 1`` the two halves meet at ``a`` (with a
    pendant ``b``) and every ``x_j``, ``xbar_j`` with ``j >= 2`` has a
    pendant prime vertex.
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError("k must be an integer >= 2")
    l, odd = divmod(k, 2)
    b = _Builder()
    clause_v = [b.add("clause", j) for j in range(1, formula.m + 1)]
    for p, q in itertools.combinations(clause_v, 2):
        b.link(p, q)
    heads = {}
    for i in range(1, formula.n + 1):
        sides = {}
        for side in ("pos", "neg"):
            path = []
            for j in range(1, l + 2):
                v = b.add("var", i, side, j)
                if path:
                    b.link(path[-1], v)
                path.append(v)
                if odd and j >= 2:
                    b.link(v, b.add("prime", i, side, j))
            sides[side] = path
        if odd:
            a = b.add("a", i)
            bb = b.add("b", i)
            b.link(sides["pos"][-1], a)
            b.link(a, sides["neg"][-1])
            b.link(a, bb)
        else:
            b.link(sides["pos"][-1], sides["neg"][-1])
        heads[i] = sides["pos"][0]
        heads[-i] = sides["neg"][0]
    occurrences = 0
    for j, clause in enumerate(formula.clauses, 1):
        for lit in clause:
            occurrences += 1
            prev = heads[lit]
            for step in range(1, l):
                v = b.add("occ", lit, j, step)
                b.link(prev, v)
                prev = v
            b.link(prev, clause_v[j - 1])
    g = Graph(len(b.roles), b.edges)
    params = {"k": k, "l": l, "parity": "odd" if odd else "even", "n": formula.n, "m": formula.m,
              "occurrences": occurrences}
    return GadgetGraph("sat", g, tuple(b.roles), params, formula)


def sat_vertex_count(k: int, n: int, m: int, occurrences: int) -> int:
    """Closed-form vertex count of :func:`sat_to_graph`."""
    l, odd = divmod(k, 2)
    per_var = 4 * l + 4 if odd else 2 * (l + 1)
    return m + per_var * n + (l - 1) * occurrences


def variable_block(gadget: GadgetGraph, i: int) -> list[int]:
    """Vertices of the block ``V_i`` of variable ``i``.

    For odd ``k`` this is both literal sides together with ``a^i`` and
    ``b^i``.
    """
    return sorted(v for v, r in enumerate(gadget.roles) if r[0] in ("var", "prime", "a", "b") and r[1] == i)


def _side(gadget: GadgetGraph, i: int, side: str) -> set[int]:
    return {v for v, r in enumerate(gadget.roles) if r[0] in ("var", "prime") and r[1] == i and r[2] == side}


def block_edges(gadget: GadgetGraph) -> set[Edge]:
    """Union over variables of the edges induced by each block ``V_i``."""
    out: set[Edge] = set()
    for i in range(1, gadget.params["n"] + 1):
        block = set(variable_block(gadget, i))
        out.update(e for e in gadget.graph.edges if e[0] in block and e[1] in block)
    return out


def sat_plus_one_matching(gadget: GadgetGraph) -> Matching:
    """The distance-``k`` matching of size ``n + 1``: one middle edge per
    variable plus the first clause edge."""
    p = gadget.params
    v = gadget.vertex
    l, n = p["l"], p["n"]
    if p["parity"] == "odd":
        es = [(v("a", i), v("b", i)) for i in range(1, n + 1)]
    else:
        es = [(v("var", i, "pos", l + 1), v("var", i, "neg", l + 1)) for i in range(1, n + 1)]
    es.append((v("clause", 1), v("clause", 2)))
    return Matching(gadget.graph, tuple(edge(*e) for e in es), p["k"])


def assignment_matching(gadget: GadgetGraph, assignment: Sequence[bool]) -> Matching:
    """The size-``n`` matching picking, per variable, the edge at the far end
    of the true literal's side. Maximal whenever ``assignment`` satisfies the
    formula."""
    p = gadget.params
    n = p["n"]
    if len(assignment) != n:
        raise ValueError(f"assignment must give all {n} variables")
    v = gadget.vertex
    es = []
    for i, value in enumerate(assignment, 1):
        side = "pos" if value else "neg"
        if p["parity"] == "odd":
            es.append(edge(v("var", i, side, 2), v("prime", i, side, 2)))
        else:
            es.append(edge(v("var", i, side, 1), v("var", i, side, 2)))
    return Matching(gadget.graph, tuple(es), p["k"])


def build_sat_witnesses(gadget: GadgetGraph) -> tuple[Matching, Callable[[Sequence[bool]], Matching]]:
    return sat_plus_one_matching(gadget), lambda a: assignment_matching(gadget, a)


def matching_to_assignment(gadget: GadgetGraph, edges: Iterable[Sequence[int]]) -> tuple[bool, ...]:
    """Read an assignment off a maximal matching of size ``n``.

    Variable ``i`` is true when some matching edge lies inside the positive
    side of its block (together with ``a^i`` for odd ``k``), false when one
    lies inside the negative side, and false when neither happens.
    """
    p = gadget.params
    es = list(edges)
    check = check_matching(gadget.graph, es, p["k"])
    if not check.is_matching or not check.maximal:
        raise ValueError("edges must form a maximal distance-k matching")
    if len(set(map(tuple, es))) != p["n"]:
        raise ValueError(f"matching must have exactly n={p['n']} edges")
    values = [False] * p["n"]
    for i in range(1, p["n"] + 1):
        extra = {gadget.vertex("a", i)} if p["parity"] == "odd" else set()
        pos = _side(gadget, i, "pos") | extra
        neg = _side(gadget, i, "neg") | extra
        for u, w in es:
            if u in pos and w in pos:
                values[i - 1] = True
            elif u in neg and w in neg:
                values[i - 1] = False
    return tuple(values)


# -- set cover to weighted matching ------------------------------------------


def setcover_to_wmmm(l: int, inst: SetCoverInstance, alpha: Fraction | int | None = None) -> GadgetGraph:
    """Weighted chordal graph for a set cover instance and distance ``2l``.

    The universe forms a clique; subset ``i`` gets a chain ``v_{i,1} ..
    v_{i,5l+1}`` whose first vertex is joined to the members of the subset.
    Weights: ``2 alpha^2 + 1`` on the clique, the universe-to-chain edges and
    the first ``l - 1`` chain edges; ``alpha`` on chain edges ``l .. 3l - 1``;
    ``1 / (2 alpha)`` on the rest. ``alpha`` defaults to the number of subsets
    and must exceed half of it.
    """
    if not isinstance(l, int) or l < 1:
        raise ValueError("l must be a positive integer")
    s = len(inst.subsets)
    a = Fraction(s if alpha is None else alpha)
    if not 2 * a > s:
        raise ValueError(f"alpha must satisfy 2*alpha > |S| = {s}")
    eps = 1 / (2 * a)
    heavy = 2 * a * a + 1
    length = 5 * l + 1
    b = _Builder()
    xs = [b.add("universe", x) for x in range(inst.universe_size)]
    for p, q in itertools.combinations(xs, 2):
        b.link(p, q, heavy)
    for i, subset in enumerate(inst.subsets):
        chain = [b.add("layer", i, j) for j in range(1, length + 1)]
        for x in subset:
            b.link(xs[x], chain[0], heavy)
        for j in range(1, length):
            w = heavy if j <= l - 1 else a if j <= 3 * l - 1 else eps
            b.link(chain[j - 1], chain[j], w)
    g = WeightedGraph(len(b.roles), b.edges)
    params = {"l": l, "k": 2 * l, "alpha": a, "epsilon": eps, "heavy": heavy,
              "universe": inst.universe_size, "subsets": s,
              "universe_large": inst.universe_size >= 5 * l + 2}
    return GadgetGraph("setcover", g, tuple(b.roles), params, inst)


def _chain_edge(gadget: GadgetGraph, i: int, j: int) -> Edge:
    return edge(gadget.vertex("layer", i, j), gadget.vertex("layer", i, j + 1))


def all_chains_matching(gadget: GadgetGraph) -> Matching:
    """Two edges on every chain; weight ``(alpha + eps) |S|``."""
    return cover_to_matching(gadget, range(gadget.params["subsets"]), require_cover=False)


def cover_to_matching(gadget: GadgetGraph, cover: Iterable[int], require_cover: bool = True) -> Matching:
    """Maximal distance-``2l`` matching of weight ``alpha |D| + eps |S|`` for a cover ``D``.

    Chains of chosen subsets contribute edges ``l`` and ``5l``; the others
    contribute their middle edge ``3l``.
    """
    p = gadget.params
    l, s = p["l"], p["subsets"]
    d = sorted(set(cover))
    if any(not 0 <= i < s for i in d):
        raise ValueError("cover index out of range")
    if require_cover and not gadget.source.is_cover(d):
        raise ValueError(f"{d} is not a cover")
    es = []
    for i in range(s):
        if i in d:
            es += [_chain_edge(gadget, i, l), _chain_edge(gadget, i, 5 * l)]
        else:
            es.append(_chain_edge(gadget, i, 3 * l))
    return Matching(gadget.graph, tuple(es), p["k"])


def matching_to_cover(gadget: GadgetGraph, edges: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """Subsets whose chains hold two edges of a maximal matching without heavy
    edges; raises if they fail to cover the universe."""
    p = gadget.params
    g: WeightedGraph = gadget.graph  # type: ignore[assignment]
    es = [edge(int(e[0]), int(e[1])) for e in edges]
    if any(g.weights[e] == p["heavy"] for e in es):
        raise ValueError("matching contains a heavy edge")
    check = check_matching(g, es, p["k"])
    if not check.is_matching or not check.maximal:
        raise ValueError("edges must form a maximal distance-2l matching")
    per_chain = [0] * p["subsets"]
    for u, w in es:
        r = gadget.roles[u]
        per_chain[r[1]] += 1
    d = tuple(i for i, c in enumerate(per_chain) if c == 2)
    if not gadget.source.is_cover(d):
        raise ValueError(f"chains with two edges {d} do not cover the universe")
    return d


# -- T(G) ----------------------------------------------------------------------


def t_transform(g: Graph) -> GadgetGraph:
    """Attach to every vertex ``v`` a path ``v a b`` and a hub ``c`` carrying
    ``2n + 1`` pendant paths ``c d_i e_i``.

    Original vertices keep ids ``0..n-1``; each vertex's attachments follow in
    the order ``a, b, c, d_1, e_1, ..., d_{2n+1}, e_{2n+1}``. The result has
    ``4n^2 + 6n`` vertices.
    """
    n = g.n
    b = _Builder()
    for v in g.vertices():
        b.add("original", v)
    for u, w in g.edges:
        b.link(u, w)
    for v in g.vertices():
        a = b.add("pendant", v, "a")
        bb = b.add("pendant", v, "b")
        c = b.add("pendant", v, "c")
        b.link(v, a)
        b.link(a, bb)
        b.link(v, c)
        for i in range(1, 2 * n + 2):
            d = b.add("pendant", v, "d", i)
            e = b.add("pendant", v, "e", i)
            b.link(c, d)
            b.link(d, e)
    out = Graph(len(b.roles), b.edges)
    return GadgetGraph("ttransform", out, tuple(b.roles), {"n": n, "k": 2}, g)


def independent_set_to_matching(gadget: GadgetGraph, independent: Iterable[int]) -> Matching:
    """Maximal induced matching of size ``2n - |I|`` for an independent set ``I``."""
    g: Graph = gadget.source
    chosen = sorted(set(independent))
    for u in chosen:
        g.check_vertex(u)
    for a, b in itertools.combinations(chosen, 2):
        if g.has_edge(a, b):
            raise ValueError(f"{chosen} is not independent: {a}{b} is an edge")
    v = gadget.vertex
    es = []
    for u in g.vertices():
        if u in chosen:
            es.append(edge(u, v("pendant", u, "c")))
        else:
            es.append(edge(v("pendant", u, "a"), v("pendant", u, "b")))
            es.append(edge(v("pendant", u, "c"), v("pendant", u, "d", 1)))
    return Matching(gadget.graph, tuple(es), 2)


def matching_to_independent_set(gadget: GadgetGraph, edges: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """Original vertices ``v`` whose edge ``v c^v`` is in the induced matching."""
    es = {edge(int(e[0]), int(e[1])) for e in edges}
    Matching(gadget.graph, tuple(es), 2)
    g: Graph = gadget.source
    out = tuple(u for u in g.vertices() if edge(u, gadget.vertex("pendant", u, "c")) in es)
    for a, b in itertools.combinations(out, 2):
        if g.has_edge(a, b):
            raise AssertionError(f"vertices {a} and {b} both picked but adjacent")
    return out
