"""Command-line front end.

Exit codes: 0 definite result, 2 invalid input, 3 unknown / budget exhausted.
"""

import argparse
import json
import random
import sys

from .action import decide_action
from .cliquepath import build_clique_path, invariant_clique_path
from .errors import (Budget, BudgetExceeded, DisconnectedGraph, EmptyIntersection, InvalidInput,
                     NotHelly, NotTransverse, SearchExhausted, SubdivisionInsufficient)
from .formats import (clique_json, family_view, frac_str, graph_to_json, load_graph, parse_automorphism,
                      parse_fraction, parse_vertices)
from .graph import FiniteGraph, KingGrid, check_automorphism, finite_model
from .hull import combinatorial_dimension, enumerate_extremal, helly_hull, helly_subdivision, is_helly
from .isometry import classify, translation_length
from .systolic import is_k_large

EXIT_OK, EXIT_INVALID, EXIT_UNKNOWN = 0, 2, 3


class Unknown(Exception):
    """Raised by a command to report an indefinite result together with its payload."""

    def __init__(self, payload):
        super().__init__(payload.get("reason", "unknown"))
        self.payload = payload


# -- input handling ------------------------------------------------------------------

def _view(args):
    sources = [args.file is not None, args.family is not None, args.family_json is not None]
    if sum(sources) != 1:
        raise InvalidInput("give exactly one of --file, --family, --family-json")
    if args.file is not None:
        return load_graph(args.file)
    if args.family_json is not None:
        return family_view(args.family_json)
    spec = {"family": args.family}
    if args.dim is not None:
        spec["dim"] = args.dim
    if args.box is not None:
        try:
            spec["box"] = [int(k) for k in args.box.split(",")]
        except ValueError:
            raise InvalidInput(f"--box expects comma-separated integers, got {args.box!r}") from None
    if args.n is not None:
        spec["n"] = args.n
    return family_view(spec)


def _finite(view):
    if isinstance(view, FiniteGraph):
        return view, None
    if isinstance(view, KingGrid) and view.box is not None:
        return finite_model(view)
    raise InvalidInput("this command needs a finite graph (a file or a bounded family)")


def _budget(args):
    kw = {}
    for name in ("max_vertices", "max_nodes", "max_word_len", "window"):
        val = getattr(args, name)
        if val is not None:
            if val < 1:
                raise InvalidInput(f"--{name.replace('_', '-')} must be positive")
            kw[name] = val
    return Budget(**kw)


def _automorphisms(args, view):
    auts = [parse_automorphism(a) for a in args.aut or []]
    if not auts:
        raise InvalidInput("at least one --aut is required")
    for a in auts:
        if not check_automorphism(a, view):
            raise InvalidInput(f"{a!r} is not an automorphism of {view!r}")
    return auts


# -- commands ------------------------------------------------------------------------

def cmd_check(args, budget):
    g, _ = _finite(_view(args))
    res = is_helly(g, budget)
    return {"helly": res}, f"The graph is {'' if res else 'not '}Helly."


def _counts(g, budget):
    return {"int": len(enumerate_extremal(g, 1, budget)), "half": len(enumerate_extremal(g, 2, budget))}


def cmd_hull(args, budget):
    g, _ = _finite(_view(args))
    hull = helly_hull(g, budget)
    out = {"helly": is_helly(g, budget), "hull": graph_to_json(hull.graph), "embedding": hull.embedding,
           "extremal_count": _counts(g, budget)}
    return out, f"Helly hull has {hull.graph.n} vertices ({g.n} in the input)."


def cmd_dim(args, budget):
    g, _ = _finite(_view(args))
    dim = combinatorial_dimension(g, budget)
    out = {"helly": is_helly(g, budget), "dimension": dim, "extremal_count": _counts(g, budget)}
    return out, f"Combinatorial dimension {dim}."


def cmd_subdivide(args, budget):
    g, _ = _finite(_view(args))
    sub = helly_subdivision(g, budget)
    out = {"subdivision": graph_to_json(sub.graph), "embedding": sub.embedding,
           "points": [p.to_json() for p in sub.points]}
    return out, f"Helly subdivision has {sub.graph.n} vertices with edges of length 1/2."


def _classification_json(res):
    out = {"verdict": res.verdict}
    if res.clique is not None:
        out["clique"] = clique_json(res.clique)
    fp = res.fixed_point
    if fp is not None:
        out["fixed_point"] = fp.to_json() if hasattr(fp, "to_json") else [frac_str(c) for c in fp]
    if res.certificate is not None:
        c = res.certificate
        out.update({"a": c.a, "L": frac_str(c.L), "translation_length": frac_str(res.translation_length),
                    "certificate_window": c.window, "certificate": c.to_json()})
    if res.diagnostics:
        out["diagnostics"] = res.diagnostics
    return out


def cmd_classify(args, budget):
    view = _view(args)
    g, = _automorphisms(args, view)[:1]
    res = classify(g, view, budget)
    out = _classification_json(res)
    if res.verdict == "unknown":
        raise Unknown(out)
    if res.verdict == "elliptic":
        return out, f"Elliptic: stabilizes the clique {out['clique']}."
    return out, f"Hyperbolic: translation length {out['translation_length']} (power {res.a}, step {out['L']})."


def cmd_tlen(args, budget):
    view = _view(args)
    g, = _automorphisms(args, view)[:1]
    if args.points is None:
        raise InvalidInput("--points is required")
    pts = parse_vertices(args.points, view)
    tl = translation_length(g, pts, view)
    return {"translation_length": frac_str(tl)}, f"Minimum mean displacement cycle: {frac_str(tl)}."


def cmd_cliquepath(args, budget):
    view = _view(args)
    if args.aut:
        g, = _automorphisms(args, view)[:1]
        try:
            cert = invariant_clique_path(g, view, budget)
        except BudgetExceeded as exc:
            raise Unknown({"reason": str(exc)}) from None
        return cert.to_json(), f"Invariant {frac_str(cert.L)}-clique-path for g^{cert.a}, period {cert.period}."
    if args.sigma is None or args.tau is None or args.L is None:
        raise InvalidInput("give --sigma, --tau and -L (or --aut for an invariant path)")
    sigma = parse_vertices(args.sigma, view)
    tau = parse_vertices(args.tau, view)
    path = build_clique_path(sigma, tau, parse_fraction(args.L), view)
    return path.to_json(), f"{frac_str(path.L)}-clique-path with {len(path)} cliques."


def cmd_decide(args, budget):
    view = _view(args)
    auts = _automorphisms(args, view)
    v = decide_action(auts, view, budget)
    out = v.to_json()
    if v.verdict == "unknown":
        raise Unknown(out)
    if v.verdict == "elliptic":
        return out, f"Elliptic: every generator stabilizes the clique {out['clique']}."
    return out, f"Hyperbolic element found, translation length {out['translation_length']}."


def cmd_klarge(args, budget):
    g, _ = _finite(_view(args))
    if args.k is None:
        raise InvalidInput("-k is required")
    rep = is_k_large(g, args.k, budget)
    if rep.verdict:
        text = f"The flag complex is {args.k}-large."
    else:
        text = f"Not {args.k}-large: induced cycle {list(rep.witness)}."
    return rep.to_json(), text


COMMANDS = {
    "check": (cmd_check, "decide whether a finite graph is Helly"),
    "hull": (cmd_hull, "Helly hull of a finite graph"),
    "dim": (cmd_dim, "combinatorial dimension of a finite graph"),
    "subdivide": (cmd_subdivide, "half-integer Helly subdivision"),
    "classify": (cmd_classify, "elliptic/hyperbolic classification of an automorphism"),
    "tlen": (cmd_tlen, "minimum mean displacement over given points"),
    "cliquepath": (cmd_cliquepath, "build a clique-path or an invariant one"),
    "decide": (cmd_decide, "elliptic or hyperbolic action of a generated group"),
    "klarge": (cmd_klarge, "k-largeness of the flag complex"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--file", help="graph file (text or JSON)")
    src.add_argument("--family", choices=["king", "path", "cycle", "complete"])
    src.add_argument("--family-json", help='family spec, e.g. \'{"family":"king","dim":2}\'')
    src.add_argument("--dim", type=int)
    src.add_argument("--box", help="box side lengths, comma separated")
    src.add_argument("--n", type=int, help="size for path/cycle/complete families")
    opt = common.add_argument_group("options")
    opt.add_argument("--aut", action="append", help="automorphism JSON (repeatable)")
    opt.add_argument("--points", help="JSON list of vertices")
    opt.add_argument("--sigma", help="JSON list of vertices")
    opt.add_argument("--tau", help="JSON list of vertices")
    opt.add_argument("-L", help="step length (integer or p/q)")
    opt.add_argument("-k", type=int)
    opt.add_argument("--output", help="also write the JSON result to this file")
    opt.add_argument("--format", choices=["json", "human"], default="json")
    opt.add_argument("--human", action="store_true", help="same as --format human")
    bud = common.add_argument_group("budgets")
    bud.add_argument("--max-vertices", type=int)
    bud.add_argument("--max-nodes", type=int)
    bud.add_argument("--max-word-len", type=int)
    bud.add_argument("--window", type=int)
    bud.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="hellykit", description="Helly graph toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=helptext, description=helptext)
    return parser


def _emit(payload, summary, args):
    text = json.dumps(payload, sort_keys=True)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.human or args.format == "human":
        print(summary)
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    func = COMMANDS[args.command][0]
    try:
        budget = _budget(args)
        payload, summary = func(args, budget)
    except Unknown as exc:
        payload = dict(exc.payload)
        payload.setdefault("verdict", "unknown")
        _emit(payload, f"Unknown: {exc}", args)
        return EXIT_UNKNOWN
    except (BudgetExceeded, SearchExhausted, SubdivisionInsufficient) as exc:
        payload = {"verdict": "unknown", "reason": str(exc)}
        if isinstance(exc, BudgetExceeded) and exc.partial is not None:
            payload["partial"] = exc.partial
        print(f"hellykit: {exc}", file=sys.stderr)
        _emit(payload, f"Unknown: {exc}", args)
        return EXIT_UNKNOWN
    except (InvalidInput, DisconnectedGraph, NotHelly, NotTransverse, EmptyIntersection) as exc:
        print(f"hellykit: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(payload, summary, args)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
