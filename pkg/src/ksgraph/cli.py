"""Command-line front end; every command prints deterministic JSON.

Exit codes: 0 success, 1 the checked property fails (the output carries a
witness), 2 input error, 3 resource bound exceeded.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import gclie, holieb, homology, mcsolver, ncgb, tpoly
from .graphcore import Graph, GraphError, GraphSeries, GraphVector, dumps, enumerate_basis
from .linalg import Inconsistent

OK, FAILS, INPUT_ERROR, RESOURCE = 0, 1, 2, 3


class InputError(Exception):
    pass


class Result:
    def __init__(self, payload, code=OK):
        self.payload = payload
        self.code = code


def _load(path):
    if path is None:
        raise InputError("missing --in file")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from exc
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (path, exc)) from exc


def _graph_vector(obj):
    """A GraphVector from either its own JSON or a single graph object."""
    if isinstance(obj, dict) and "vertices" in obj:
        return GraphVector.from_graph(Graph.from_json(obj))
    if not isinstance(obj, list):
        raise InputError("expected a graph or a list of {graph, coeff} terms")
    return GraphVector.from_json(obj)


def _series(obj):
    if not isinstance(obj, list):
        raise InputError("expected a list of {hbar, terms} blocks")
    return GraphSeries.from_json(obj)


def _ks(args, order):
    """The graph series to ``order``: from --series, else built."""
    if getattr(args, "series", None):
        s = _series(_load(args.series))
        if s.max_order() < order:
            raise InputError("series file reaches hbar^%d, need hbar^%d" % (s.max_order(), order))
        return s.truncate(order)
    return mcsolver.ks_series(order, args.threads)


# gc

def gc_enumerate(args):
    basis = enumerate_basis(args.vertices, args.edges)
    return Result({"vertices": args.vertices, "edges": args.edges, "count": len(basis),
                   "graphs": [g.to_json() for g in basis]})


def gc_diff(args):
    return Result(gclie.differential(_graph_vector(_load(args.input))).to_json())


def gc_bracket(args):
    a = _graph_vector(_load(args.a))
    b = _graph_vector(_load(args.b))
    return Result(gclie.bracket(a, b).to_json())


def gc_cohomology(args):
    return Result(homology.cohomology(args.vertices, args.edges, args.threads).to_json())


# mc

def _input_series(args):
    return _series(_load(args.input)) if args.input else mcsolver.ks_seed()


def mc_verify(args):
    s = _input_series(args)
    res = gclie.mc_residual(s, args.order)
    orders = [{"hbar": k, "zero": not res[k], "residual": res[k].to_json()}
              for k in range(args.order + 1)]
    ok = all(o["zero"] for o in orders)
    return Result({"ok": ok, "orders": orders}, OK if ok else FAILS)


def mc_extend(args):
    s = _input_series(args)
    try:
        out = mcsolver.extend_mc(s, args.order, args.threads)
    except mcsolver.MCError as exc:
        raise InputError(str(exc)) from exc
    if isinstance(out, mcsolver.ObstructionClass):
        return Result({"ok": False, "obstruction": out.to_json()}, FAILS)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(out.to_json()) + "\n")
    return Result({"ok": True, "order": args.order, "series": out.to_json()})


# holieb

def _graded(vec, a):
    return [{"hbar": k, "terms": v.to_json()} for k, v in vec.by_weight_loss(a).items()]


def holieb_delta(args):
    try:
        c = holieb.Corolla(args.m, args.n, args.a)
    except holieb.PropadError as exc:
        raise InputError(str(exc)) from exc
    vec = holieb.delta_diamond(c, _ks(args, args.trunc), args.trunc)
    return Result({"corolla": c.to_json(), "trunc": args.trunc, "by_order": _graded(vec, c.a)})


def holieb_d2_check(args):
    s = _ks(args, args.trunc)
    rows = []
    witness = None
    for total in range(2, args.max_arity + 1):
        for m in range(1, total):
            for a in range(args.max_weight + 1):
                if not holieb.is_generator(m, total - m, a):
                    continue
                c = holieb.Corolla(m, total - m, a)
                d2 = holieb.delta_squared(c, s, args.trunc)
                rows.append({"corolla": c.to_json(), "zero": not d2, "terms": len(d2)})
                if d2 and witness is None:
                    witness = {"corolla": c.to_json(), "by_order": _graded(d2, c.a)}
    ok = witness is None
    out = {"ok": ok, "trunc": args.trunc, "modulo_hbar_power": args.trunc + 1, "corollas": rows}
    if not ok:
        out["witness"] = witness
    return Result(out, OK if ok else FAILS)


# ncgb

def _need_n(args):
    if args.n is None or args.n < 3:
        raise InputError("--n must be at least 3")


def ncgb_relations(args):
    _need_n(args)
    order = ncgb.MonomialOrder.multiples_of_three_high(args.n)
    rels = ncgb.cubic_relations(args.n)
    return Result([{"index": i + 1, "relation": r.to_json(),
                    "leading_word": ncgb.word_str(ncgb.leading_monomial(r, order))}
                   for i, r in enumerate(rels)])


def ncgb_strongly_free(args):
    _need_n(args)
    ok, cert = ncgb.strongly_free_check(args.n, ncgb.cubic_relations(args.n),
                                        ncgb.MonomialOrder.multiples_of_three_high(args.n))
    return Result(dict(cert, ok=ok), OK if ok else FAILS)


def ncgb_hilbert(args):
    _need_n(args)
    return Result(ncgb.hilbert(args.n, args.max_degree))


def ncgb_dg_cohomology(args):
    _need_n(args)
    table = ncgb.dg_cohomology(args.n, args.max_degree, args.max_basis)
    hil = ncgb.hilbert(args.n, args.max_degree)
    groups = [{"weight": w, "degree": k, "dim": d} for (w, k), d in sorted(table.items())]
    off = [g for g in groups if g["degree"] != 0 and g["dim"]]
    deg0 = [table.get((w, 0), 0) for w in range(args.max_degree + 1)]
    ok = not off and deg0 == hil
    out = {"n": args.n, "max_degree": args.max_degree, "groups": groups,
           "degree_zero": deg0, "hilbert": hil, "concentrated_in_degree_zero": not off, "ok": ok}
    if not ok:
        out["witness"] = off or {"degree_zero": deg0, "hilbert": hil}
    return Result(out, OK if ok else FAILS)


# tpoly

def _poly(obj, key):
    try:
        return tpoly.PolyVector.from_json(obj[key])
    except (KeyError, TypeError) as exc:
        raise InputError("input needs a %r polyvector" % key) from exc


def tpoly_schouten(args):
    obj = _load(args.input)
    return Result(tpoly.schouten(_poly(obj, "a"), _poly(obj, "b")).to_json())


def tpoly_graph_act(args):
    obj = _load(args.input)
    try:
        g = obj["graph"]
        graph = (int(g["vertices"]), [tuple(e) for e in g["edges"]])
        inputs = [tpoly.PolyVector.from_json(p) for p in obj["inputs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("graph-act input needs 'graph' and 'inputs'") from exc
    if not inputs:
        raise InputError("no inputs")
    return Result(tpoly.graph_act(graph, inputs).to_json())


def tpoly_residual(args):
    obj = _load(args.input)
    try:
        p = tpoly.PolySeries.from_json(obj["series"])
        K = int(obj.get("order", args.order if args.order is not None else 1))
        pref = obj.get("prefactors")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("residual input needs 'series'") from exc
    prefactor = tpoly.default_prefactor
    if pref is not None:
        table = {int(k): Fraction(v) for k, v in pref.items()}
        prefactor = lambda n: table.get(n, tpoly.default_prefactor(n))
    res = tpoly.quantizable_residual(p, K, _ks(args, max(K, 1)), prefactor)
    orders = [{"hbar": k, "zero": not res[k], "poly": res[k].to_json()} for k in range(K + 1)]
    return Result({"order": K, "orders": orders, "zero": res.is_zero()})


def _xi_phi(args):
    obj = _load(args.input)
    return _poly(obj, "xi"), _poly(obj, "phi")


def tpoly_check_bialgebra(args):
    xi, phi = _xi_phi(args)
    rep = tpoly.check_odd_bialgebra(xi, phi)
    out = {"ok": rep["ok"], "failing": rep["failing"], "square": rep["square"].to_json(),
           "components": {k: v.to_json() for k, v in rep["components"].items()}}
    return Result(out, OK if rep["ok"] else FAILS)


def tpoly_check_quantizable(args):
    xi, phi = _xi_phi(args)
    value, ok = tpoly.check_quantizable(xi, phi)
    return Result({"ok": ok, "composite": value.to_json(),
                   "involutivity": tpoly.involutivity_value(xi, phi).to_json()},
                  OK if ok else FAILS)


COMMANDS = {
    "gc": {
        "enumerate": (gc_enumerate, ["vertices", "edges"]),
        "diff": (gc_diff, ["input"]),
        "bracket": (gc_bracket, ["a", "b"]),
        "cohomology": (gc_cohomology, ["vertices", "edges"]),
    },
    "mc": {
        "verify": (mc_verify, ["order", "input"]),
        "extend": (mc_extend, ["order", "input", "out"]),
    },
    "holieb": {
        "delta": (holieb_delta, ["m", "n", "a", "trunc", "series"]),
        "d2-check": (holieb_d2_check, ["max_arity", "max_weight", "trunc", "series"]),
    },
    "ncgb": {
        "relations": (ncgb_relations, ["n"]),
        "strongly-free": (ncgb_strongly_free, ["n"]),
        "hilbert": (ncgb_hilbert, ["n", "max_degree"]),
        "dg-cohomology": (ncgb_dg_cohomology, ["n", "max_degree", "max_basis"]),
    },
    "tpoly": {
        "schouten": (tpoly_schouten, ["input"]),
        "graph-act": (tpoly_graph_act, ["input"]),
        "residual": (tpoly_residual, ["input", "order", "series"]),
        "check-bialgebra": (tpoly_check_bialgebra, ["input"]),
        "check-quantizable": (tpoly_check_quantizable, ["input"]),
    },
}

OPTIONS = {
    "vertices": (("--vertices",), dict(type=int)),
    "edges": (("--edges",), dict(type=int)),
    "input": (("--in",), dict(dest="input", metavar="FILE")),
    "a": (("--a",), dict(type=None)),
    "b": (("--b",), dict()),
    "order": (("--order",), dict(type=int)),
    "out": (("--out",), dict(metavar="FILE")),
    "m": (("--m",), dict(type=int)),
    "n": (("--n",), dict(type=int)),
    "trunc": (("--trunc",), dict(type=int)),
    "series": (("--series",), dict(metavar="FILE", help="graph series JSON instead of building it")),
    "max_arity": (("--max-arity",), dict(type=int)),
    "max_weight": (("--max-weight",), dict(type=int)),
    "max_degree": (("--max-degree",), dict(type=int)),
    "max_basis": (("--max-basis",), dict(type=int)),
}

DEFAULTS = {"threads": 1, "pretty": False, "trunc": 1, "max_arity": 5, "max_weight": 2,
            "max_degree": 10, "max_basis": 250000}

REQUIRED = {"vertices", "edges", "order", "m", "n", "a", "b"}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=None,
                        help="human-readable text instead of JSON")
    common.add_argument("--threads", type=int, default=None, help="worker processes")
    common.add_argument("--config", metavar="FILE", help="JSON file with default flag values")
    parser = argparse.ArgumentParser(prog="ksgraph", parents=[common],
                                     description="Exact computations with oriented graphs.")
    groups = parser.add_subparsers(dest="group", required=True)
    for group, cmds in COMMANDS.items():
        gp = groups.add_parser(group).add_subparsers(dest="command", required=True)
        for name, (_, opts) in cmds.items():
            sp = gp.add_parser(name, parents=[common])
            for key in opts:
                flags, kw = OPTIONS[key]
                kw = dict(kw)
                if key == "a" and group == "holieb":
                    kw["type"] = int
                sp.add_argument(*flags, default=None, **kw)
    return parser


def _apply_defaults(args, parser):
    config = {}
    if args.config:
        config = _load(args.config)
        if not isinstance(config, dict):
            raise InputError("config file must hold a JSON object")
        config = {k.replace("-", "_"): v for k, v in config.items()}
    for key, value in vars(args).items():
        if value is None:
            if key in config:
                setattr(args, key, config[key])
            elif key in DEFAULTS:
                setattr(args, key, DEFAULTS[key])
    opts = COMMANDS[args.group][args.command][1]
    missing = [k for k in opts if k in REQUIRED and getattr(args, k, None) is None]
    if args.group == "holieb" and args.command == "delta" and args.a is None:
        args.a = 0
        missing = [k for k in missing if k != "a"]
    if args.command == "residual":
        # the input file may carry the order
        missing = [k for k in missing if k != "order"]
    if missing:
        parser.error("missing required options: %s" % ", ".join("--" + k.replace("_", "-")
                                                                   for k in missing))
    if args.threads < 1:
        raise InputError("--threads must be positive")


def render_pretty(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append("%s%s:" % (pad, k))
                lines.append(render_pretty(v, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, k, json.dumps(v)))
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            lines.append(pad + " ".join(str(v) for v in obj))
        else:
            for i, v in enumerate(obj):
                lines.append("%s[%d]" % (pad, i))
                lines.append(render_pretty(v, indent + 1))
    else:
        lines.append(pad + str(obj))
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_defaults(args, parser)
        result = COMMANDS[args.group][args.command][0](args)
    except ncgb.ResourceBoundExceeded as exc:
        print(dumps({"error": "resource bound exceeded", "detail": str(exc)}))
        return RESOURCE
    except (InputError, GraphError, holieb.PropadError, tpoly.PolyError,
            Inconsistent, ValueError, KeyError) as exc:
        print(dumps({"error": "input error", "detail": str(exc)}), file=sys.stderr)
        return INPUT_ERROR
    print(render_pretty(result.payload) if args.pretty else dumps(result.payload))
    return result.code


if __name__ == "__main__":
    sys.exit(main())
