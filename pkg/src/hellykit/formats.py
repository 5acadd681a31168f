"""Text/JSON formats for graphs, families, automorphisms and cliques.

Graph text format::

    # comment
    graph 4
    e 0 1
    e 1 2

JSON form: ``{"n": 4, "edges": [[0, 1], [1, 2]]}``.
"""

import json
from fractions import Fraction

from .errors import InvalidInput
from .graph import AffineMap, FiniteGraph, KingGrid, Permutation, complete_graph, cycle_graph, path_graph


def _int_token(tok, line, col):
    try:
        return int(tok)
    except ValueError:
        raise InvalidInput(f"expected an integer, got {tok!r}", line, col) from None


def _tokens(text):
    """Yield ``(line, [(col, token), ...])`` for every non-blank, non-comment line."""
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in body.split():
            col = body.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield ln, toks


def parse_graph_text(text):
    header = None
    edges = []
    for ln, toks in _tokens(text):
        col, head = toks[0]
        if header is None:
            if head != "graph" or len(toks) != 2:
                raise InvalidInput("expected header 'graph <n>'", ln, col)
            header = _int_token(toks[1][1], ln, toks[1][0])
            if header < 1:
                raise InvalidInput("vertex count must be positive", ln, toks[1][0])
            continue
        if head != "e":
            raise InvalidInput(f"unknown directive {head!r} (expected 'e')", ln, col)
        if len(toks) != 3:
            raise InvalidInput("edge line needs exactly two vertices", ln, col)
        u = _int_token(toks[1][1], ln, toks[1][0])
        v = _int_token(toks[2][1], ln, toks[2][0])
        for (c, _), w in zip(toks[1:], (u, v)):
            if not 0 <= w < header:
                raise InvalidInput(f"vertex {w} out of range 0..{header - 1}", ln, c)
        if u == v:
            raise InvalidInput(f"self-loop at {u}", ln, toks[1][0])
        edges.append((u, v))
    if header is None:
        raise InvalidInput("empty graph file: missing 'graph <n>' header", 1, 1)
    return FiniteGraph(header, edges)


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(exc.msg, exc.lineno, exc.colno) from None


def graph_from_json(obj):
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise InvalidInput('graph JSON needs keys "n" and "edges"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidInput('"n" must be an integer')
    edges = obj["edges"]
    if not isinstance(edges, list) or any(
            not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)) for e in edges):
        raise InvalidInput('"edges" must be a list of [u, v] integer pairs')
    return FiniteGraph(n, [tuple(e) for e in edges])


def parse_graph(text):
    """Graph from either the text or the JSON format (detected by the first character)."""
    if text.lstrip().startswith("{"):
        return graph_from_json(_load_json(text))
    return parse_graph_text(text)


def load_graph(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except InvalidInput as exc:
        if exc.line is None:
            raise
        err = InvalidInput(f"{path}:{exc}")
        err.line, err.column = exc.line, exc.column
        raise err from None


def graph_to_json(g):
    out = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.edge_length != 1:
        out["edge_length"] = frac_str(g.edge_length)
    return out


def graph_to_text(g):
    return "\n".join([f"graph {g.n}"] + [f"e {u} {v}" for u, v in g.edges]) + "\n"


def family_view(spec):
    """View from a family spec dict such as ``{"family": "king", "dim": 2, "box": [3, 3]}``."""
    if isinstance(spec, str):
        spec = _load_json(spec)
    if not isinstance(spec, dict) or "family" not in spec:
        raise InvalidInput('family spec needs a "family" key')
    fam = spec["family"]
    if fam == "king":
        dim = spec.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise InvalidInput('king family needs a positive integer "dim"')
        box = spec.get("box")
        if box is not None and (not isinstance(box, list) or not all(isinstance(k, int) for k in box)):
            raise InvalidInput('"box" must be a list of integers')
        return KingGrid(dim, box)
    makers = {"path": path_graph, "cycle": cycle_graph, "complete": complete_graph}
    if fam in makers:
        n = spec.get("n")
        if not isinstance(n, int) or n < 1:
            raise InvalidInput(f'{fam} family needs a positive integer "n"')
        return makers[fam](n)
    raise InvalidInput(f"unknown family {fam!r}")


def parse_automorphism(spec):
    """``{"perm": [...]}`` or ``{"affine": {"M": [[...]], "b": [...]}}``."""
    if isinstance(spec, str):
        spec = _load_json(spec)
    if not isinstance(spec, dict):
        raise InvalidInput("automorphism spec must be a JSON object")
    if "perm" in spec:
        perm = spec["perm"]
        if not isinstance(perm, list) or not all(isinstance(p, int) for p in perm):
            raise InvalidInput('"perm" must be a list of integers')
        return Permutation(perm)
    if "affine" in spec:
        aff = spec["affine"]
        if not isinstance(aff, dict) or "M" not in aff or "b" not in aff:
            raise InvalidInput('"affine" needs "M" and "b"')
        return AffineMap(aff["M"], aff["b"])
    raise InvalidInput('automorphism spec needs "perm" or "affine"')


def automorphism_to_json(aut):
    if isinstance(aut, Permutation):
        return {"perm": list(aut.perm)}
    return {"affine": {"M": [list(r) for r in aut.M], "b": [int(c) for c in aut.b]}}


def parse_vertex(obj, view):
    v = tuple(obj) if isinstance(obj, list) else obj
    if isinstance(view, KingGrid) and isinstance(v, int) and view.dim == 1:
        v = (v,)
    if not view.contains(v):
        raise InvalidInput(f"{obj!r} is not a vertex of {view!r}")
    return v


def parse_vertices(spec, view):
    if isinstance(spec, str):
        spec = _load_json(spec)
    if not isinstance(spec, list) or not spec:
        raise InvalidInput("expected a nonempty JSON list of vertices")
    return [parse_vertex(v, view) for v in spec]


def frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"{text!r} is not a rational number") from None


def vertex_json(v):
    return list(v) if isinstance(v, tuple) else v


def clique_json(c):
    return sorted(vertex_json(v) for v in c)
