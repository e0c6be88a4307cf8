"""Exhaustive desk-scale verification suites.

Each suite runs a per-case check over an enumerated family of inputs and
collects a :class:`Report`. Failures embed the full case so that
:func:`replay` can rerun the exact check standalone. A case that exceeds its
search budget is reported as inconclusive, never as passing.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

from . import oracles
from ._search import BudgetExceeded
from .classes import find_induced_sun, is_chordal, is_in_Rk, simplicial_clique_partition
from .enumeration import (
    connected_graphs_up_to,
    enumerate_connected_chordal_graphs,
    formulas_up_to,
    sample_chordal_graphs,
    set_cover_instances_up_to,
)
from .gadgets import (
    CnfFormula,
    GadgetGraph,
    SetCoverInstance,
    all_chains_matching,
    assignment_matching,
    block_edges,
    cover_to_matching,
    independent_set_to_matching,
    matching_to_assignment,
    matching_to_cover,
    matching_to_independent_set,
    sat_plus_one_matching,
    sat_to_graph,
    setcover_to_wmmm,
    t_transform,
)
from .graph import Graph, line_graph
from .matching import (
    all_maximal_matchings,
    check_matching,
    max_matching,
    min_maximal_matching,
    min_weight_maximal_matching,
)
from .packing import is_k_equipackable, packing_number, packing_parameters

DEFAULT_CASE_BUDGET = 10**7
DEFAULT_SEED = 20160101


@dataclass
class Report:
    suite: str
    params: dict[str, Any]
    cases_run: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    inconclusive: list[dict[str, Any]] = field(default_factory=list)
    findings: list[dict[str, Any]] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.inconclusive:
            return "inconclusive"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, with_time: bool = True) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "params": self.params,
            "status": self.status,
            "cases_run": self.cases_run,
            "failures": sorted(self.failures, key=_sort_key),
            "inconclusive": sorted(self.inconclusive, key=_sort_key),
            "findings": sorted(self.findings, key=_sort_key),
        }
        if with_time:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def to_json(self, with_time: bool = True) -> str:
        return json.dumps(self.to_dict(with_time), default=_json_default, sort_keys=True, indent=2)


def _json_default(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _sort_key(rec: dict[str, Any]) -> str:
    return json.dumps(rec, default=_json_default, sort_keys=True)


# -- case encoding ---------------------------------------------------------------


def _graph_case(g: Graph) -> dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def _graph_from(case: dict[str, Any]) -> Graph:
    return Graph(case["n"], case["edges"])


def _formula_case(f: CnfFormula) -> dict[str, Any]:
    return {"variables": f.n, "clauses": [list(c) for c in f.clauses]}


def _formula_from(case: dict[str, Any]) -> CnfFormula:
    return CnfFormula(case["variables"], tuple(tuple(c) for c in case["clauses"]))


def _cover_case(inst: SetCoverInstance) -> dict[str, Any]:
    return {"universe": inst.universe_size, "subsets": [list(s) for s in inst.subsets]}


def _cover_from(case: dict[str, Any]) -> SetCoverInstance:
    return SetCoverInstance(case["universe"], tuple(tuple(s) for s in case["subsets"]))


# -- per-case checks -------------------------------------------------------------
# Each returns a list of problem strings; empty means the case passes.


def _sat_gadget(k: int, f: CnfFormula, delete_edge: list[int] | None) -> GadgetGraph:
    gadget = sat_to_graph(k, f)
    if delete_edge is None:
        return gadget
    u, v = sorted(delete_edge)
    g = Graph(gadget.graph.n, [e for e in gadget.graph.edges if e != (u, v)])
    return GadgetGraph(gadget.kind, g, gadget.roles, gadget.params, gadget.source)


def check_two_sizes(case: dict[str, Any], budget: int | None = None) -> list[str]:
    """Every maximal matching of the SAT gadget has size n or n+1, and size-n
    ones lie inside the variable blocks."""
    k = case["k"]
    f = _formula_from(case)
    gadget = _sat_gadget(k, f, case.get("delete_edge"))
    inside = block_edges(gadget)
    problems = []
    for m in all_maximal_matchings(gadget.graph, k, budget):
        if len(m) not in (f.n, f.n + 1):
            problems.append(f"maximal matching {list(m.edges)} has size {len(m)}")
        elif len(m) == f.n and not set(m.edges) <= inside:
            problems.append(f"size-n matching {list(m.edges)} leaves the variable blocks")
    return problems


def check_sat_equivalence(case: dict[str, Any], budget: int | None = None) -> list[str]:
    """The size-(n+1) witness verifies; satisfying assignments give maximal
    size-n matchings; every maximal size-n matching decodes to an assignment
    missing at most one clause."""
    k = case["k"]
    f = _formula_from(case)
    gadget = sat_to_graph(k, f)
    g = gadget.graph
    problems = []
    plus = sat_plus_one_matching(gadget)
    if len(plus) != f.n + 1 or not check_matching(g, plus.edges, k).is_matching:
        problems.append("size-(n+1) witness does not verify")
    satisfiable = False
    for a in f.assignments():
        if f.unsatisfied(a):
            continue
        satisfiable = True
        m = assignment_matching(gadget, a)
        if not check_matching(g, m.edges, k).maximal:
            problems.append(f"satisfying assignment {a} gives a non-maximal matching")
    size_n = [m for m in all_maximal_matchings(g, k, budget) if len(m) == f.n]
    if satisfiable and not size_n:
        problems.append("formula is satisfiable but no maximal matching of size n exists")
    for m in size_n:
        a = matching_to_assignment(gadget, m.edges)
        missed = f.unsatisfied(a)
        if len(missed) > 1:
            problems.append(f"matching {list(m.edges)} decodes to {a} missing clauses {missed}")
    if size_n and f.min_unsatisfied() >= 2:
        problems.append("every assignment misses >= 2 clauses yet a size-n maximal matching exists")
    return problems


def check_wmmm_identity(case: dict[str, Any], budget: int | None = None) -> list[str]:
    """Minimum weight maximal distance-2l matching equals alpha|D*| + eps|S|."""
    l = case["l"]
    inst = _cover_from(case)
    alpha = Fraction(case["alpha"]) if case.get("alpha") is not None else None
    gadget = setcover_to_wmmm(l, inst, alpha)
    p = gadget.params
    g = gadget.graph
    s = len(inst.subsets)
    problems = []
    if g.n != inst.universe_size + (5 * l + 1) * s:
        problems.append(f"vertex count {g.n} off the closed form")
    if not is_chordal(g)[0]:
        problems.append("gadget is not chordal")
    d_star = inst.min_cover()
    expected = p["alpha"] * len(d_star) + p["epsilon"] * s
    result = min_weight_maximal_matching(g, 2 * l, budget)  # type: ignore[arg-type]
    if result.objective != expected:
        problems.append(f"optimum {result.objective} != alpha|D*| + eps|S| = {expected}")
    if any(g.weights[e] == p["heavy"] for e in result.matching.edges):  # type: ignore[attr-defined]
        problems.append("optimum uses a heavy edge")
    w0 = (p["alpha"] + p["epsilon"]) * s
    base = all_chains_matching(gadget)
    if g.total_weight(base.edges) != w0 or not check_matching(g, base.edges, 2 * l).maximal:  # type: ignore[attr-defined]
        problems.append("all-chains matching is not a maximal matching of weight (alpha+eps)|S|")
    if result.objective > w0:
        problems.append(f"optimum {result.objective} exceeds w0 = {w0}")
    fwd = cover_to_matching(gadget, d_star)
    if g.total_weight(fwd.edges) != expected or not check_matching(g, fwd.edges, 2 * l).maximal:  # type: ignore[attr-defined]
        problems.append("minimum cover does not map to a maximal matching of the expected weight")
    try:
        back = matching_to_cover(gadget, result.matching.edges)
    except ValueError as exc:
        problems.append(f"optimum does not decode to a cover: {exc}")
    else:
        if len(back) != len(d_star):
            problems.append(f"optimum decodes to a cover of size {len(back)}, not {len(d_star)}")
    return problems


def check_sigma_alpha(case: dict[str, Any], budget: int | None = None) -> list[str]:
    """sigma(T(g)) = 2n - alpha(g)."""
    g = _graph_from(case)
    gadget = t_transform(g)
    alpha = oracles.independence_number(g)
    sigma = min_maximal_matching(gadget.graph, 2, budget)
    problems = []
    if sigma.objective != 2 * g.n - alpha:
        problems.append(f"sigma(T) = {sigma.objective} but 2n - alpha = {2 * g.n - alpha}")
    mis = packing_number(g, 1)[1]
    m = independent_set_to_matching(gadget, mis)
    if len(m) != 2 * g.n - alpha or not check_matching(gadget.graph, m.edges, 2).maximal:
        problems.append("maximum independent set does not map to a maximal matching of size 2n - alpha")
    back = matching_to_independent_set(gadget, sigma.matching.edges)
    if len(back) < 2 * g.n - sigma.objective:
        problems.append(f"optimum decodes to an independent set of size {len(back)}")
    return problems


def check_class_theorems(case: dict[str, Any], budget: int | None = None) -> list[str]:
    """R_k recognition agrees with packing numbers; R_k graphs are
    equipackable; on sun-free chordal graphs gamma_k = rho_k iff R_k."""
    g = _graph_from(case)
    k = case["k"]
    problems = []
    in_rk, _ = is_in_Rk(g, k)
    rho_k = packing_number(g, k, budget)[0]
    rho_2k = packing_number(g, 2 * k, budget)[0]
    if in_rk != (rho_k == rho_2k):
        problems.append(f"simplicial partition says {in_rk} but rho_k={rho_k}, rho_2k={rho_2k}")
    if k == 1:
        part = bool(simplicial_clique_partition(g))
        if part != (rho_k == rho_2k):
            problems.append("simplicial clique partition disagrees with rho_1 = rho_2")
    if in_rk and not is_k_equipackable(g, k, budget).equipackable:
        problems.append("graph in R_k is not k-equipackable")
    if case.get("sun_free_chordal"):
        params = packing_parameters(g, k, budget)
        if (params.gamma == params.rho) != in_rk:
            problems.append(f"sun-free chordal: gamma={params.gamma}, rho={params.rho}, in R_k={in_rk}")
    return problems


def check_cross_oracles(case: dict[str, Any], budget: int | None = None) -> list[str]:
    """Search kernel against brute force, and matchings against packings of
    the line graph."""
    g = _graph_from(case)
    k = case["k"]
    problems = []
    params = packing_parameters(g, k, budget)
    if not params.gamma <= params.i <= params.rho:
        problems.append(f"gamma={params.gamma} <= i={params.i} <= rho={params.rho} fails")
    brute = oracles.packing_parameters(g, k)
    if (params.rho, params.gamma, params.i) != brute:
        problems.append(f"packing search {(params.rho, params.gamma, params.i)} != brute force {brute}")
    if g.m:
        low = min_maximal_matching(g, k, budget).objective
        high = max_matching(g, k, budget).objective
        exh = min_maximal_matching(g, k, budget, method="exhaustive").objective
        b_low, b_high = oracles.matching_extremes(g, k)
        if (low, high) != (b_low, b_high) or exh != b_low:
            problems.append(f"matching search {(low, high, exh)} != brute force {(b_low, b_high)}")
        lg, _ = line_graph(g)
        rho_l = packing_number(lg, k, budget)[0]
        i_l = packing_parameters(lg, k, budget).i
        if (rho_l, i_l) != (high, low):
            problems.append(f"line graph packings (rho={rho_l}, i={i_l}) != matchings ({high}, {low})")
    return problems


CHECKS: dict[str, Callable[[dict[str, Any], int | None], list[str]]] = {
    "two-sizes": check_two_sizes,
    "sat-equivalence": check_sat_equivalence,
    "wmmm-identity": check_wmmm_identity,
    "sigma-alpha": check_sigma_alpha,
    "class-theorems": check_class_theorems,
    "cross-oracles": check_cross_oracles,
}


def replay(failure: dict[str, Any], budget: int | None = None) -> bool:
    """Rerun a reported failure; True if it still fails."""
    return bool(CHECKS[failure["check"]](failure["case"], budget))


def _run(suite: str, check: str, params: dict[str, Any], cases: Iterable[dict[str, Any]],
         budget: int | None, findings: Callable[[dict[str, Any]], dict | None] | None = None) -> Report:
    report = Report(suite, params)
    fn = CHECKS[check]
    start = time.perf_counter()
    for case in cases:
        report.cases_run += 1
        try:
            problems = fn(case, budget)
        except BudgetExceeded as exc:
            report.inconclusive.append({"check": check, "case": case, "reason": str(exc)})
            continue
        if problems:
            report.failures.append({"check": check, "case": case, "problems": problems})
        if findings is not None:
            note = findings(case)
            if note:
                report.findings.append(note)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


# -- suites ------------------------------------------------------------------------


def verify_two_sizes(
    k: int,
    n_max: int = 3,
    m_max: int = 3,
    formulas: Iterable[CnfFormula] | None = None,
    mutation: Callable[[GadgetGraph], tuple[int, int]] | None = None,
    budget: int | None = DEFAULT_CASE_BUDGET,
) -> Report:
    """Maximal matchings of every SAT gadget have size n or n+1.

    ``mutation`` picks an edge to delete from each gadget before checking,
    which is how the harness tests its own failure reporting.
    """
    if not 2 <= k <= 5 or n_max > 3 or m_max > 3:
        raise ValueError("two-sizes runs for 2 <= k <= 5 and n, m <= 3")
    fs = list(formulas) if formulas is not None else formulas_up_to(n_max, m_max)

    def cases():
        for f in fs:
            case = {"k": k, **_formula_case(f)}
            if mutation is not None:
                case["delete_edge"] = list(mutation(sat_to_graph(k, f)))
            yield case

    params = {"k": k, "n_max": n_max, "m_max": m_max, "budget": budget, "mutated": mutation is not None}
    return _run("two-sizes", "two-sizes", params, cases(), budget)


def verify_sat_equivalence(
    k: int,
    n_max: int = 3,
    m_max: int = 3,
    formulas: Iterable[CnfFormula] | None = None,
    budget: int | None = DEFAULT_CASE_BUDGET,
) -> Report:
    if not 2 <= k <= 5 or n_max > 3 or m_max > 3:
        raise ValueError("sat-equivalence runs for 2 <= k <= 5 and n, m <= 3")
    fs = list(formulas) if formulas is not None else formulas_up_to(n_max, m_max)
    params = {"k": k, "n_max": n_max, "m_max": m_max, "budget": budget}
    return _run("sat-equivalence", "sat-equivalence", params,
                ({"k": k, **_formula_case(f)} for f in fs), budget)


def verify_wmmm_identity(
    l: int,
    instances: Iterable[SetCoverInstance] | None = None,
    alpha: Fraction | int | None = None,
    budget: int | None = DEFAULT_CASE_BUDGET,
) -> Report:
    if l not in (1, 2):
        raise ValueError("wmmm-identity runs for l in {1, 2}")
    insts = list(instances) if instances is not None else set_cover_instances_up_to(6, 4)
    for inst in insts:
        if inst.universe_size > 6 or len(inst.subsets) > 4:
            raise ValueError("instances are limited to |X| <= 6 and |S| <= 4")
    a = None if alpha is None else str(Fraction(alpha))
    params = {"l": l, "instances": len(insts), "alpha": a or "|S|", "budget": budget}
    return _run("wmmm-identity", "wmmm-identity", params,
                ({"l": l, "alpha": a, **_cover_case(i)} for i in insts), budget)


def verify_sigma_alpha(n_max: int = 3, budget: int | None = DEFAULT_CASE_BUDGET) -> Report:
    if not 1 <= n_max <= 4:
        raise ValueError("sigma-alpha runs for 1 <= n_max <= 4")
    params = {"n_max": n_max, "budget": budget}
    return _run("sigma-alpha", "sigma-alpha", params,
                (_graph_case(g) for g in connected_graphs_up_to(n_max)), budget)


def verify_class_theorems(
    n_max: int = 6,
    k_set: Iterable[int] = (1,),
    budget: int | None = DEFAULT_CASE_BUDGET,
) -> Report:
    """Characterisation, equipackability and sun-free chordal duality on all
    connected graphs up to ``n_max`` vertices."""
    ks = sorted(set(k_set))
    if n_max > 7 or not set(ks) <= {1, 2, 3}:
        raise ValueError("class-theorems runs for n_max <= 7 and k in {1, 2, 3}")
    graphs = list(connected_graphs_up_to(n_max))
    sfc = {g: is_chordal(g)[0] and find_induced_sun(g, 4) is None for g in graphs}

    def cases():
        for g in graphs:
            for k in ks:
                yield {"k": k, "sun_free_chordal": sfc[g], **_graph_case(g)}

    params = {"n_max": n_max, "k_set": ks, "budget": budget}
    return _run("class-theorems", "class-theorems", params, cases(), budget, _equipackable_outside_rk)


def verify_sun_free_chordal(
    n_max: int = 8,
    k_set: Iterable[int] = (1, 2),
    sample: int | None = None,
    seed: int = DEFAULT_SEED,
    budget: int | None = DEFAULT_CASE_BUDGET,
) -> Report:
    """gamma_k = rho_k iff R_k over connected chordal graphs without an
    induced sun (no sun of any size fits in 8 vertices beyond the 3- and
    4-suns). Graphs up to ``n_max`` are exhaustive; with ``sample`` set the
    largest size is sampled instead."""
    ks = sorted(set(k_set))
    if n_max > 9 or not set(ks) <= {1, 2, 3}:
        raise ValueError("sun-free-chordal runs for n_max <= 9 and k in {1, 2, 3}")
    graphs: list[Graph] = []
    for n in range(1, n_max + 1):
        if sample is not None and n == n_max:
            graphs += sample_chordal_graphs(n, sample, seed)
        else:
            graphs += enumerate_connected_chordal_graphs(n)
    max_sun = max(3, n_max // 2)
    chosen = [g for g in graphs if find_induced_sun(g, max_sun) is None]

    def cases():
        for g in chosen:
            for k in ks:
                yield {"k": k, "sun_free_chordal": True, **_graph_case(g)}

    params = {"n_max": n_max, "k_set": ks, "sample": sample, "seed": seed if sample else None,
              "graphs": len(chosen), "budget": budget}
    return _run("sun-free-chordal", "class-theorems", params, cases(), budget, _equipackable_outside_rk)


def verify_cross_oracles(
    n_max: int = 6,
    k_set: Iterable[int] = (1, 2, 3),
    budget: int | None = DEFAULT_CASE_BUDGET,
) -> Report:
    ks = sorted(set(k_set))
    if n_max > 6:
        raise ValueError("cross-oracles brute force is limited to n_max <= 6")
    params = {"n_max": n_max, "k_set": ks, "budget": budget}
    cases = ({"k": k, **_graph_case(g)} for g in connected_graphs_up_to(n_max) for k in ks)
    return _run("cross-oracles", "cross-oracles", params, cases, budget)


def _equipackable_outside_rk(case: dict[str, Any]) -> dict | None:
    # open question: k-equipackable sun-free chordal graphs outside R_k
    if not case.get("sun_free_chordal"):
        return None
    g = _graph_from(case)
    k = case["k"]
    if is_in_Rk(g, k)[0] or not is_k_equipackable(g, k).equipackable:
        return None
    return {"kind": "equipackable-sun-free-chordal-outside-Rk", "case": case}


SUITES: dict[str, Callable[..., Report]] = {
    "two-sizes": verify_two_sizes,
    "sat-equivalence": verify_sat_equivalence,
    "wmmm-identity": verify_wmmm_identity,
    "sigma-alpha": verify_sigma_alpha,
    "class-theorems": verify_class_theorems,
    "sun-free-chordal": verify_sun_free_chordal,
    "cross-oracles": verify_cross_oracles,
}


def drop_middle_edge(gadget: GadgetGraph) -> tuple[int, int]:
    """Mutation for harness self-tests: cut variable 1's block in the middle."""
    l = gadget.params["l"]
    v = gadget.vertex
    if gadget.params["parity"] == "odd":
        return v("var", 1, "pos", l + 1), v("a", 1)
    return v("var", 1, "pos", l + 1), v("var", 1, "neg", l + 1)


__all__ = [name for name in dir() if name.startswith(("verify_", "check_"))] + [
    "Report", "replay", "SUITES", "CHECKS", "drop_middle_edge",
]
