"""Exact independence/domination search on bitmask graphs.

Every routine takes ``adj``, a list of open-neighbourhood bitmasks, and works
purely on Python ints. Witnesses are lexicographically least among optima
with respect to vertex index: the include-first depth-first search in index
order visits pairwise incomparable sets in lexicographic order, so the first
optimum it meets is the canonical one.
"""
from __future__ import annotations

import os
from typing import Iterator, Sequence

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "DISTMATCH_BUDGET"


class BudgetExceeded(RuntimeError):
    """The search visited more nodes than its configured ceiling."""

    def __init__(self, limit: int):
        super().__init__(f"search budget of {limit} nodes exceeded")
        self.limit = limit


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        if budget < 1:
            raise ValueError("budget must be positive")
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


class _Ticker:
    __slots__ = ("count", "limit")

    def __init__(self, budget: int | None):
        self.count = 0
        self.limit = resolve_budget(budget)

    def tick(self) -> None:
        self.count += 1
        if self.count > self.limit:
            raise BudgetExceeded(self.limit)


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _clique_cover(cand: int, adj: Sequence[int]) -> int:
    # greedy partition of cand into cliques; an independent set meets each once
    count = 0
    while cand:
        low = cand & -cand
        cand ^= low
        common = cand & adj[low.bit_length() - 1]
        while common:
            l2 = common & -common
            cand ^= l2
            common &= adj[l2.bit_length() - 1]
        count += 1
    return count


def max_independent_set(adj: Sequence[int], budget: int | None = None) -> tuple[int, int]:
    """Lexicographically least maximum independent set.

    Returns ``(mask, nodes_visited)``.
    """
    n = len(adj)
    ticker = _Ticker(budget)
    best_mask = 0
    best_size = -1

    def rec(cand: int, chosen: int, size: int) -> None:
        nonlocal best_mask, best_size
        ticker.tick()
        if not cand:
            if size > best_size:
                best_mask, best_size = chosen, size
            return
        if size + cand.bit_count() <= best_size:
            return
        if size + _clique_cover(cand, adj) <= best_size:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        rec(cand & ~adj[v] & ~low, chosen | low, size + 1)
        rec(cand & ~low, chosen, size)

    rec((1 << n) - 1, 0, 0)
    return best_mask, ticker.count


def min_maximal_independent_set(
    adj: Sequence[int],
    weights: Sequence[int] | None = None,
    budget: int | None = None,
    upper: tuple[int, int] | None = None,
) -> tuple[int, int, int]:
    """Lexicographically least minimum-weight maximal independent set.

    ``weights`` are positive integers (unit weights if omitted). ``upper`` is
    an optional ``(weight, mask)`` of a known maximal independent set used to
    seed pruning; subtrees are only discarded when strictly worse than a
    seed, so the canonical optimum is never lost.

    Returns ``(mask, weight, nodes_visited)``.
    """
    n = len(adj)
    full = (1 << n) - 1
    ticker = _Ticker(budget)
    unit = weights is None
    w = [1] * n if unit else list(weights)
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")
    # weight classes in increasing order: min weight of a mask is the first hit
    classes: list[tuple[int, int]] = []
    for value in sorted(set(w)):
        classes.append((value, sum(1 << v for v in range(n) if w[v] == value)))

    def min_weight(mask: int) -> int:
        for value, cm in classes:
            if mask & cm:
                return value
        raise AssertionError("empty mask")

    best_mask = 0
    best_weight = None
    seeded = False
    if upper is not None:
        best_weight, best_mask = upper
        seeded = True

    def rec(i: int, chosen: int, dom: int, weight: int) -> None:
        nonlocal best_mask, best_weight, seeded
        ticker.tick()
        undom = full & ~dom
        future = undom >> i << i
        pending = undom ^ future
        if not future:
            if pending:
                return
            if best_weight is None or weight < best_weight or (seeded and weight == best_weight):
                best_mask, best_weight, seeded = chosen, weight, False
            return
        # every excluded, undominated vertex needs a later neighbour
        lb = 0
        used = 0
        p = pending
        while p:
            low = p & -p
            p ^= low
            c = adj[low.bit_length() - 1] & future
            if not c:
                return
            if not c & used:
                used |= c
                lb += 1 if unit else min_weight(c)
        if best_weight is not None:
            # undominated future vertices with disjoint options also need one each
            f = future
            while f:
                low = f & -f
                f ^= low
                c = (adj[low.bit_length() - 1] | low) & future
                if not c & used:
                    used |= c
                    lb += 1 if unit else min_weight(c)
            bound = weight + lb
            if bound > best_weight or (bound == best_weight and not seeded):
                return
        low = future & -future
        v = low.bit_length() - 1
        rec(v + 1, chosen | low, dom | low | adj[v], weight + w[v])
        rec(v + 1, chosen, dom, weight)

    rec(0, 0, 0, 0)
    assert best_weight is not None
    return best_mask, best_weight, ticker.count


def maximal_independent_sets(adj: Sequence[int], budget: int | None = None) -> Iterator[int]:
    """Every maximal independent set exactly once (pivoted Bron-Kerbosch on
    the complement)."""
    n = len(adj)
    closed = [adj[v] | (1 << v) for v in range(n)]
    ticker = _Ticker(budget)

    def bk(r: int, p: int, x: int) -> Iterator[int]:
        ticker.tick()
        if not p:
            if not x:
                yield r
            return
        # some vertex of N[u] must join, for every u still undominated
        best_u, best_c = -1, n + 1
        q = p | x
        while q:
            low = q & -q
            q ^= low
            c = (p & closed[low.bit_length() - 1]).bit_count()
            if c < best_c:
                best_u, best_c = low.bit_length() - 1, c
                if c == 0:
                    return
        branch = p & closed[best_u]
        while branch:
            low = branch & -branch
            branch ^= low
            v = low.bit_length() - 1
            yield from bk(r | low, p & ~closed[v], x & ~closed[v])
            p &= ~low
            x |= low

    yield from bk(0, (1 << n) - 1, 0)


def min_dominating_set(adj: Sequence[int], budget: int | None = None) -> tuple[int, int]:
    """Lexicographically least minimum dominating set.

    The optimum size is found by branching on the lowest undominated vertex
    over its closed neighbourhood; the canonical witness of that size is then
    recovered by an include-first scan in index order.

    Returns ``(mask, nodes_visited)``.
    """
    n = len(adj)
    full = (1 << n) - 1
    if n == 0:
        return 0, 0
    closed = [adj[v] | (1 << v) for v in range(n)]
    ticker = _Ticker(budget)

    def packing_bound(undom: int, cand: int) -> int:
        used = 0
        lb = 0
        while undom:
            low = undom & -undom
            undom ^= low
            c = closed[low.bit_length() - 1] & cand
            if not c:
                return n + 1
            if not c & used:
                used |= c
                lb += 1
        return lb

    best = n + 1

    def rec(dom: int, size: int, cand: int) -> None:
        nonlocal best
        ticker.tick()
        undom = full & ~dom
        if not undom:
            best = min(best, size)
            return
        if size + packing_bound(undom, cand) >= best:
            return
        u = _low(undom)
        opts = closed[u] & cand
        while opts:
            low = opts & -opts
            opts ^= low
            rec(dom | closed[low.bit_length() - 1], size + 1, cand)
            cand &= ~low

    rec(0, 0, full)
    target = best

    def scan(i: int, dom: int, size: int, chosen: int) -> int | None:
        ticker.tick()
        undom = full & ~dom
        if not undom:
            return chosen
        if i == n:
            return None
        if size + packing_bound(undom, full >> i << i) > target:
            return None
        low = 1 << i
        found = scan(i + 1, dom | closed[i], size + 1, chosen | low)
        if found is not None:
            return found
        return scan(i + 1, dom, size, chosen)

    mask = scan(0, 0, 0, 0)
    assert mask is not None and mask.bit_count() == target
    return mask, ticker.count
