"""Text and JSON formats: graphs, DIMACS CNF, set cover, gadget sidecars.

Graph files look like::

    c optional comments
    p 3 2
    e 0 1 1
    e 1 2 3/2

The weight column is all-or-nothing. Writers emit edges in sorted order and
weights as ``num/den`` in lowest terms, so ``write(parse(x)) == x`` for any
file produced by a writer.
"""
from __future__ import annotations

import json
import os
import re
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any

from .gadgets import CnfFormula, GadgetGraph, SetCoverInstance
from .graph import Graph, GraphError, WeightedGraph

_RATIONAL = re.compile(r"^(\d+)(?:/(\d+))?$")


class FormatError(ValueError):
    """Malformed input; ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = "" if line is None else f"line {line}: "
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{where}{message}")
        self.line = line


def parse_rational(text: str) -> Fraction:
    """Strictly positive ``p/q`` or integer literal."""
    m = _RATIONAL.match(text.strip())
    if not m:
        raise ValueError(f"not a rational number: {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(num, den)
    if value <= 0:
        raise ValueError(f"weight must be positive, got {text!r}")
    return value


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield no, line.split()


# -- graphs ------------------------------------------------------------------------


def parse_graph(text: str, source: str | None = None) -> Graph | WeightedGraph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    weighted: bool | None = None
    seen: dict[tuple[int, int], int] = {}
    for no, tok in _content_lines(text):
        if tok[0] == "p":
            if header is not None:
                raise FormatError("second header line", no, source)
            if len(tok) != 3 or not all(t.isdigit() for t in tok[1:]):
                raise FormatError("header must read 'p <n> <m>'", no, source)
            header = (int(tok[1]), int(tok[2]))
            continue
        if header is None:
            raise FormatError("edge line before the 'p <n> <m>' header", no, source)
        if tok[0] != "e" or len(tok) not in (3, 4):
            raise FormatError(f"expected 'e <u> <v> [weight]', got {' '.join(tok)!r}", no, source)
        if not (tok[1].isdigit() and tok[2].isdigit()):
            raise FormatError("vertex ids must be non-negative integers", no, source)
        u, v = int(tok[1]), int(tok[2])
        if u == v:
            raise FormatError(f"loop at vertex {u}", no, source)
        if u >= header[0] or v >= header[0]:
            raise FormatError(f"vertex out of range 0..{header[0] - 1}", no, source)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {key} (first on line {seen[key]})", no, source)
        seen[key] = no
        has_weight = len(tok) == 4
        if weighted is None:
            weighted = has_weight
        elif weighted != has_weight:
            raise FormatError("either every edge carries a weight or none does", no, source)
        if has_weight:
            try:
                weights.append(parse_rational(tok[3]))
            except ValueError as exc:
                raise FormatError(str(exc), no, source) from None
        edges.append(key)
    if header is None:
        raise FormatError("missing 'p <n> <m>' header", None, source)
    if len(edges) != header[1]:
        raise FormatError(f"header announces {header[1]} edges, found {len(edges)}", None, source)
    try:
        if weighted:
            return WeightedGraph(header[0], [(u, v, w) for (u, v), w in zip(edges, weights)])
        return Graph(header[0], edges)
    except GraphError as exc:
        raise FormatError(str(exc), None, source) from None


def format_graph(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    if isinstance(g, WeightedGraph):
        lines += [f"e {u} {v} {format_rational(g.weight(u, v))}" for u, v in g.edges]
    else:
        lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph_file(path: str | os.PathLike) -> Graph | WeightedGraph:
    return parse_graph(Path(path).read_text(), str(path))


# -- DIMACS CNF ------------------------------------------------------------------------


def parse_dimacs(text: str, source: str | None = None) -> CnfFormula:
    """``p cnf <n> <m>`` then clauses terminated by ``0`` (may span lines)."""
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for no, tok in _content_lines(text):
        if tok[0] == "%":  # SATLIB trailer
            break
        if tok[0] == "p":
            if header is not None or len(tok) != 4 or tok[1] != "cnf" or not (tok[2].isdigit() and tok[3].isdigit()):
                raise FormatError("header must read 'p cnf <n> <m>'", no, source)
            header = (int(tok[2]), int(tok[3]))
            continue
        if header is None:
            raise FormatError("clause before the 'p cnf' header", no, source)
        for t in tok:
            try:
                lit = int(t)
            except ValueError:
                raise FormatError(f"bad literal {t!r}", no, source) from None
            if abs(lit) > header[0]:
                raise FormatError(f"literal {lit} outside 1..{header[0]}", no, source)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if header is None:
        raise FormatError("missing 'p cnf <n> <m>' header", None, source)
    if current:
        raise FormatError("last clause is not terminated by 0", None, source)
    if len(clauses) != header[1]:
        raise FormatError(f"header announces {header[1]} clauses, found {len(clauses)}", None, source)
    try:
        return CnfFormula(header[0], tuple(clauses))
    except ValueError as exc:
        raise FormatError(str(exc), None, source) from None


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.n} {f.m}"] + [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


# -- set cover ---------------------------------------------------------------------------


def parse_set_cover(text: str, source: str | None = None) -> SetCoverInstance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, source) from None
    if not isinstance(data, dict) or set(data) != {"universe", "subsets"}:
        raise FormatError('expected {"universe": n, "subsets": [[...], ...]}', None, source)
    n, subsets = data["universe"], data["subsets"]
    if not isinstance(n, int) or not isinstance(subsets, list) or not all(
        isinstance(s, list) and all(isinstance(x, int) for x in s) for s in subsets
    ):
        raise FormatError("universe must be an integer and subsets lists of integers", None, source)
    try:
        return SetCoverInstance(n, tuple(tuple(s) for s in subsets))
    except ValueError as exc:
        raise FormatError(str(exc), None, source) from None


def format_set_cover(inst: SetCoverInstance) -> str:
    return json.dumps({"universe": inst.universe_size, "subsets": [list(s) for s in inst.subsets]}) + "\n"


# -- gadget sidecar --------------------------------------------------------------------


def to_jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(to_jsonable(v) for v in x)
    return x


def gadget_sidecar(gadget: GadgetGraph) -> dict[str, Any]:
    """Role map (vertex id -> role list) plus the construction parameters."""
    src = gadget.source
    if isinstance(src, CnfFormula):
        source: Any = {"n": src.n, "clauses": src.clauses}
    elif isinstance(src, SetCoverInstance):
        source = {"universe": src.universe_size, "subsets": src.subsets}
    elif isinstance(src, Graph):
        source = {"n": src.n, "edges": src.edges}
    else:
        source = None
    return to_jsonable({"kind": gadget.kind, "params": dict(gadget.params), "roles": gadget.roles, "source": source})


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write to a temporary file beside ``path``, then rename over it."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
