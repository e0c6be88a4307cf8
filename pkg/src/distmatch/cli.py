"""``distmatch`` command line.

Exit codes: 0 success or passing suite, 1 failed assertion, 2 usage or
parse error, 3 search budget exceeded (including inconclusive suites).
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import enumeration, verify
from ._search import BUDGET_ENV, BudgetExceeded
from .classes import find_induced_sun, is_chordal, is_in_Rk
from .formats import (
    FormatError,
    dumps,
    format_dimacs,
    format_graph,
    format_set_cover,
    gadget_sidecar,
    parse_dimacs,
    parse_graph,
    parse_graph_file,
    parse_rational,
    parse_set_cover,
    write_atomic,
)
from .gadgets import sat_to_graph, setcover_to_wmmm, t_transform
from .graph import WeightedGraph
from .matching import is_k_equimatchable, max_matching, min_maximal_matching, min_weight_maximal_matching
from .packing import is_k_equipackable, packing_parameters

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# what each suite asserts; shown by `verify <suite> --help`
SUITE_CLAIMS = {
    "two-sizes": (
        "For the SAT gadget built with distance k from every CNF formula with n, m <= 3 "
        "(clause widths 1..3, no variable with its negation, up to renaming), every maximal "
        "distance-k matching has size n or n+1, and every size-n one uses only edges inside "
        "the variable blocks G(V_i)."
    ),
    "sat-equivalence": (
        "On the same formulas: the explicit size-(n+1) matching is a maximal distance-k matching; "
        "every satisfying assignment yields a maximal distance-k matching of size n; every maximal "
        "matching of size n decodes to an assignment leaving at most one clause unsatisfied. "
        "The converse directions are not asserted."
    ),
    "wmmm-identity": (
        "For every feasible set-cover instance with |X| <= 6 and |S| <= 4: the minimum weight of a "
        "maximal distance-2l matching of the weighted gadget equals alpha*|D*| + eps*|S| exactly, "
        "where D* is a minimum cover and eps = 1/(2 alpha); the gadget is chordal, the optimum has "
        "no edge of weight 2 alpha^2 + 1, and the all-chains matching of weight (alpha+eps)|S| is "
        "maximal and bounds the optimum from above."
    ),
    "sigma-alpha": (
        "For every connected graph G with at most n-max vertices, the minimum size of a maximal "
        "distance-2 matching of T(G) equals 2|V(G)| - alpha(G)."
    ),
    "class-theorems": (
        "For every connected graph up to n-max vertices and each k: the simplicial cliques of G^k "
        "partition V exactly when rho_k = rho_2k; every graph in R_k is k-equipackable; on sun-free "
        "chordal graphs gamma_k = rho_k exactly when G is in R_k. Equipackable sun-free chordal "
        "graphs outside R_k are listed as findings without being asserted."
    ),
    "sun-free-chordal": (
        "For every connected chordal graph up to n-max vertices with no induced sun: gamma_k = rho_k "
        "exactly when G is in R_k, plus the two assertions of class-theorems."
    ),
    "cross-oracles": (
        "For every connected graph up to n-max vertices and each k: gamma_k <= i_k <= rho_k; the "
        "matching optima of G equal the packing optima on its line graph; the branch-and-bound "
        "solvers agree with plain enumeration."
    ),
}


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    """Validated command: ``command`` path plus its options."""

    command: tuple[str, ...]
    options: dict[str, Any] = field(default_factory=dict)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return sorted({_positive(t) for t in text.split(",") if t})
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"expected comma-separated positive integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="distmatch", description="Distance-k matchings, packings and gadgets.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--budget", type=_positive, help=f"search node ceiling (default: ${BUDGET_ENV} or built-in)")
        sp.add_argument("--output", "-o", help="write JSON here instead of stdout")

    a = sub.add_parser("analyze", help="solve every parameter of one graph at one k")
    a.add_argument("graph", help="graph text file (weighted or not)")
    a.add_argument("--k", type=_positive, required=True, help="distance parameter")
    a.add_argument("--sun-max", type=int, default=4, help="largest sun searched for (default 4)")
    common(a)

    g = sub.add_parser("gadget", help="build a reduction gadget")
    gsub = g.add_subparsers(dest="kind", required=True)
    gs = gsub.add_parser("sat", help="SAT gadget for distance-k matchings from a DIMACS CNF file")
    gs.add_argument("input")
    gs.add_argument("--k", type=_positive, required=True, help="distance parameter, k >= 2")
    gc = gsub.add_parser("setcover", help="weighted set-cover gadget from a JSON instance")
    gc.add_argument("input")
    gc.add_argument("--l", type=_positive, required=True, help="matching distance is 2l")
    gc.add_argument("--alpha", type=_rational, help="weight alpha as p/q (default |S|)")
    gt = gsub.add_parser("ttransform", help="T(G) from a graph file")
    gt.add_argument("input")
    for sp in (gs, gc, gt):
        sp.add_argument("--output", "-o", required=True, help="graph file to write")
        sp.add_argument("--sidecar", help="role/parameter JSON (default: <output>.roles.json)")

    v = sub.add_parser("verify", help="run a verification suite")
    vsub = v.add_subparsers(dest="suite", required=True)
    for name, claim in SUITE_CLAIMS.items():
        sp = vsub.add_parser(name, help=claim.split(";")[0].split(":")[0], description=claim)
        if name in ("two-sizes", "sat-equivalence"):
            sp.add_argument("--k", type=_positive, required=True)
            sp.add_argument("--n-max", type=int, default=3)
            sp.add_argument("--m-max", type=int, default=3)
        if name == "two-sizes":
            sp.add_argument("--mutate", action="store_true", help="delete one block edge (harness self-test)")
        if name == "wmmm-identity":
            sp.add_argument("--l", type=_positive, required=True)
            sp.add_argument("--alpha", type=_rational)
        if name == "sigma-alpha":
            sp.add_argument("--n-max", type=int, default=3)
        if name in ("class-theorems", "sun-free-chordal", "cross-oracles"):
            sp.add_argument("--n-max", type=int, required=True)
            sp.add_argument("--k-set", type=_int_list, required=True, help="e.g. 1,2,3")
        if name == "sun-free-chordal":
            sp.add_argument("--sample", type=_positive, help="sample this many graphs at n-max")
            sp.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
        sp.add_argument("--no-time", action="store_true", help="omit elapsed_ms for byte-stable output")
        common(sp)

    e = sub.add_parser("enumerate", help="list small graphs, formulas or set-cover instances")
    esub = e.add_subparsers(dest="family", required=True)
    ec = esub.add_parser("connected", help="connected graphs on n vertices, up to isomorphism")
    ec.add_argument("--n", type=_positive, required=True)
    eh = esub.add_parser("chordal", help="connected chordal graphs on n vertices")
    eh.add_argument("--n", type=_positive, required=True)
    ef = esub.add_parser("formulas", help="CNF formulas, up to variable renaming")
    ef.add_argument("--n", type=int, required=True)
    ef.add_argument("--m", type=int, required=True)
    ef.add_argument("--max-width", type=_positive, default=3)
    es = esub.add_parser("setcover", help="feasible set-cover instances, up to isomorphism")
    es.add_argument("--universe", type=_positive, required=True)
    es.add_argument("--subsets", type=_positive, required=True)
    for sp in (ec, eh, ef, es):
        sp.add_argument("--output", "-o")
    return p


def parse_config(argv: Sequence[str] | None = None) -> CliConfig:
    """Parse and validate; argparse exits with status 2 on bad usage."""
    ns = vars(build_parser().parse_args(argv))
    command = tuple(ns.pop(key) for key in ("command", "kind", "suite", "family") if ns.get(key))
    for key in ("kind", "suite", "family"):
        ns.pop(key, None)
    return CliConfig(command, ns)


def _emit(text: str, output: str | None) -> None:
    if output:
        write_atomic(output, text)
    else:
        sys.stdout.write(text)


def _analyze(o: dict[str, Any]) -> int:
    g = parse_graph_file(o["graph"])
    k, budget = o["k"], o.get("budget")
    low = min_maximal_matching(g, k, budget)
    high = max_matching(g, k, budget)
    eq = is_k_equimatchable(g, k, budget)
    pp = packing_parameters(g, k, budget)
    ep = is_k_equipackable(g, k, budget)
    in_rk, cert = is_in_Rk(g, k)
    chordal = is_chordal(g)[0]
    out: dict[str, Any] = {
        "graph": {"n": g.n, "m": g.m, "weighted": isinstance(g, WeightedGraph)},
        "k": k,
        "matching": {
            "min_maximal": low.objective,
            "min_maximal_witness": low.matching.edges,
            "max": high.objective,
            "max_witness": high.matching.edges,
            "equimatchable": eq.equimatchable,
            "equimatchable_witness": [m.edges for m in eq.witness] if eq.witness else None,
        },
        "packing": {
            "rho": pp.rho,
            "gamma": pp.gamma,
            "i": pp.i,
            "rho_witness": pp.rho_witness,
            "gamma_witness": pp.gamma_witness,
            "i_witness": pp.i_witness,
            "equipackable": ep.equipackable,
            "equipackable_witness": ep.witness,
        },
        "classes": {
            "in_Rk": in_rk,
            "Rk_blocks": [{"clique": c, "center": z} for c, z in cert.blocks] if cert else None,
            "chordal": chordal,
        },
    }
    if chordal:
        sun = find_induced_sun(g, o["sun_max"]) if o["sun_max"] >= 3 else None
        out["classes"]["sun"] = {"x": sun.x, "y": sun.y} if sun else None
        out["classes"]["sun_search_max"] = o["sun_max"]
    if isinstance(g, WeightedGraph):
        w = min_weight_maximal_matching(g, k, budget)
        out["matching"]["min_weight_maximal"] = w.objective
        out["matching"]["min_weight_maximal_witness"] = w.matching.edges
    _emit(dumps(out), o.get("output"))
    return EXIT_OK


def _gadget(kind: str, o: dict[str, Any]) -> int:
    path = o["input"]
    with open(path) as fh:
        text = fh.read()
    if kind == "sat":
        if o["k"] < 2:
            raise UsageError("the SAT gadget needs k >= 2")
        gadget = sat_to_graph(o["k"], parse_dimacs(text, path))
    elif kind == "setcover":
        inst = parse_set_cover(text, path)
        try:
            gadget = setcover_to_wmmm(o["l"], inst, o.get("alpha"))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        gadget = t_transform(parse_graph(text, path))
    sidecar = o.get("sidecar") or o["output"] + ".roles.json"
    graph_text = format_graph(gadget.graph)
    side_text = dumps(gadget_sidecar(gadget))
    # both files are prepared before either is renamed into place
    write_atomic(o["output"], graph_text)
    write_atomic(sidecar, side_text)
    return EXIT_OK


def _suite_budget(o: dict[str, Any]) -> int:
    if o.get("budget") is not None:
        return o["budget"]
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else verify.DEFAULT_CASE_BUDGET


def _verify(suite: str, o: dict[str, Any]) -> int:
    budget = _suite_budget(o)
    try:
        if suite == "two-sizes":
            mutation = verify.drop_middle_edge if o["mutate"] else None
            report = verify.verify_two_sizes(o["k"], o["n_max"], o["m_max"], mutation=mutation, budget=budget)
        elif suite == "sat-equivalence":
            report = verify.verify_sat_equivalence(o["k"], o["n_max"], o["m_max"], budget=budget)
        elif suite == "wmmm-identity":
            report = verify.verify_wmmm_identity(o["l"], alpha=o.get("alpha"), budget=budget)
        elif suite == "sigma-alpha":
            report = verify.verify_sigma_alpha(o["n_max"], budget=budget)
        elif suite == "sun-free-chordal":
            report = verify.verify_sun_free_chordal(o["n_max"], o["k_set"], o.get("sample"), o["seed"], budget=budget)
        else:
            report = verify.SUITES[suite](o["n_max"], o["k_set"], budget=budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(report.to_json(with_time=not o["no_time"]) + "\n", o.get("output"))
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_BUDGET}[report.status]


def _enumerate(family: str, o: dict[str, Any]) -> int:
    try:
        if family == "connected":
            items: list[Any] = [{"n": g.n, "edges": g.edges} for g in enumeration.enumerate_connected_graphs(o["n"])]
        elif family == "chordal":
            items = [{"n": g.n, "edges": g.edges} for g in enumeration.enumerate_connected_chordal_graphs(o["n"])]
        elif family == "formulas":
            items = [format_dimacs(f) for f in enumeration.enumerate_formulas(o["n"], o["m"], o["max_width"])]
        else:
            items = [
                format_set_cover(i).strip()
                for i in enumeration.enumerate_set_cover_instances(o["universe"], o["subsets"])
            ]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    params = {k: v for k, v in o.items() if k != "output"}
    _emit(dumps({"family": family, "params": params, "count": len(items), "items": items}), o.get("output"))
    return EXIT_OK


def run(config: CliConfig) -> int:
    head, *rest = config.command
    o = config.options
    try:
        if head == "analyze":
            return _analyze(o)
        if head == "gadget":
            return _gadget(rest[0], o)
        if head == "verify":
            return _verify(rest[0], o)
        if head == "enumerate":
            return _enumerate(rest[0], o)
        raise UsageError(f"unknown command {head!r}")
    except (FormatError, UsageError) as exc:
        print(f"distmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"distmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"distmatch: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except AssertionError as exc:
        print(f"distmatch: internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
