"""k-packings, k-domination and k-equipackability.

A ``k``-packing has pairwise distances greater than ``k``; a ``k``-dominating
set reaches every vertex within ``k`` hops. On ``G^k`` these become plain
independent and dominating sets, so all three parameters run on the power
graph through one search kernel.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import _search
from .graph import Graph, bits, power_masks


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


@dataclass(frozen=True)
class VertexSetCheck:
    """Flags for a vertex set against radius ``k``.

    ``packing_violation`` is a pair of chosen vertices at distance at most
    ``k``; ``undominated`` is a vertex farther than ``k`` from the set.
    ``packing_maximal`` is ``None`` unless the set is a packing, and then
    ``extension`` is an addable vertex if the packing is not maximal.
    """

    is_packing: bool
    is_dominating: bool
    packing_maximal: bool | None
    packing_violation: tuple[int, int] | None = None
    undominated: int | None = None
    extension: int | None = None


@dataclass(frozen=True)
class PackingParameters:
    k: int
    rho: int
    gamma: int
    i: int
    rho_witness: tuple[int, ...]
    gamma_witness: tuple[int, ...]
    i_witness: tuple[int, ...]


@dataclass(frozen=True)
class EquipackabilityVerdict:
    equipackable: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def check_vertex_set(g: Graph, s: Iterable[int], k: int) -> VertexSetCheck:
    _check_k(k)
    chosen = sorted(set(s))
    for v in chosen:
        g.check_vertex(v)
    d = g.distance_matrix()
    violation = None
    for a in range(len(chosen)):
        for b in range(a + 1, len(chosen)):
            if d[chosen[a], chosen[b]] <= k:
                violation = (chosen[a], chosen[b])
                break
        if violation:
            break
    undominated = None
    for v in g.vertices():
        if not any(d[v, u] <= k for u in chosen):
            undominated = v
            break
    is_packing = violation is None
    maximal = None
    if is_packing:
        # a packing is maximal iff every vertex outside it is within k
        maximal = undominated is None
    return VertexSetCheck(
        is_packing=is_packing,
        is_dominating=undominated is None,
        packing_maximal=maximal,
        packing_violation=violation,
        undominated=undominated,
        extension=undominated if is_packing else None,
    )


def packing_number(g: Graph, k: int, budget: int | None = None) -> tuple[int, tuple[int, ...]]:
    """``rho_k`` and a lexicographically least maximum ``k``-packing."""
    _check_k(k)
    mask, _ = _search.max_independent_set(power_masks(g, k), budget)
    return mask.bit_count(), tuple(bits(mask))


def domination_number(g: Graph, k: int, budget: int | None = None) -> tuple[int, tuple[int, ...]]:
    """``gamma_k`` and a lexicographically least minimum ``k``-dominating set."""
    _check_k(k)
    mask, _ = _search.min_dominating_set(power_masks(g, k), budget)
    return mask.bit_count(), tuple(bits(mask))


def independent_domination_number(g: Graph, k: int, budget: int | None = None) -> tuple[int, tuple[int, ...]]:
    """``i_k``: the smallest maximal ``k``-packing."""
    _check_k(k)
    mask, size, _ = _search.min_maximal_independent_set(power_masks(g, k), None, budget)
    return size, tuple(bits(mask))


def packing_parameters(g: Graph, k: int, budget: int | None = None) -> PackingParameters:
    rho, rw = packing_number(g, k, budget)
    gamma, gw = domination_number(g, k, budget)
    i, iw = independent_domination_number(g, k, budget)
    return PackingParameters(k, rho, gamma, i, rw, gw, iw)


def maximal_packings(g: Graph, k: int, budget: int | None = None) -> list[tuple[int, ...]]:
    """All maximal ``k``-packings, sorted by size then vertex list."""
    _check_k(k)
    out = [tuple(bits(s)) for s in _search.maximal_independent_sets(power_masks(g, k), budget)]
    return sorted(out, key=lambda t: (len(t), t))


def is_k_equipackable(g: Graph, k: int, budget: int | None = None) -> EquipackabilityVerdict:
    """Whether every maximal ``k``-packing has size ``rho_k``, i.e. ``G^k`` is
    well-covered. The witness is a smallest and a largest maximal packing."""
    rho, rw = packing_number(g, k, budget)
    i, iw = independent_domination_number(g, k, budget)
    if i == rho:
        return EquipackabilityVerdict(True)
    return EquipackabilityVerdict(False, (iw, rw))
