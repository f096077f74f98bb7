"""Command line entry point: ``rainbowtile <verb> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import harness
from . import io as rtio
from .closedness import closedness_report, connectors, weak_closure
from .constructions import (build_prop15, build_prop16, build_proper_bipartite,
                            build_rainbow_complete, random_coloured)
from .convert import AmbiguousBranch, convert, count_bad_triples, sample_reduced_digraph, verify_conversion
from .graph import Digraph, EdgeColouredGraph
from .lp import (build_copy_hypergraph, desk_check_thresholds, farkas_certificate,
                 solve_fractional_matching, verify_certificate)
from .rainbow import find_rainbow_clique, theorem13_verdict
from .tiling import (DEFAULT_BUDGET, abhp_bound, eg_bound, has_perfect_rainbow_tiling,
                     max_family_tiling, max_rainbow_tiling, perfect_family_tiling)


def _load(path, cls):
    obj = rtio.load(path)
    if not isinstance(obj, cls):
        raise rtio.ParseError(f"{path}: expected {cls.__name__}, found {type(obj).__name__}")
    return obj


def _frac(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


# ---------------------------------------------------------------- verbs

def cmd_construct(a):
    if a.kind == "prop15":
        g = build_prop15(a.n, a.k)
    elif a.kind == "prop16":
        g = build_prop16(a.r, a.m)
    elif a.kind == "bipartite":
        g = build_proper_bipartite(a.n)
    elif a.kind == "rainbow":
        g = build_rainbow_complete(a.n)
    else:
        g = random_coloured(a.n, a.p, a.q, a.seed)
    return g


def cmd_rainbow(a):
    g = _load(a.graph, EdgeColouredGraph)
    if a.action == "find":
        s = find_rainbow_clique(g, a.r)
        return {"r": a.r, "found": s is not None, "clique": list(s) if s else None}
    return theorem13_verdict(g).to_dict()


def cmd_convert(a):
    g = _load(a.graph, EdgeColouredGraph)
    res = convert(g)
    if not a.verify:
        return res.digraph
    rep = verify_conversion(g, res)
    return {"n": g.n, "arcs": [list(x) for x in sorted(res.digraph.arcs)],
            "min_out_degree": res.digraph.min_out_degree(),
            "report": {**rep.as_flags(), "ok": rep.ok, "violations": rep.violations,
                       "min_colour_degree": rep.min_colour_degree},
            "bad_triples": count_bad_triples(g, res.digraph)}


def cmd_sample(a):
    m = rtio.load(a.matrix)
    return sample_reduced_digraph(m, a.seed, strict=a.strict)


def cmd_tiling(a):
    if a.action == "family":
        d = _load(a.graph, Digraph)
        if a.perfect:
            return perfect_family_tiling(d, a.r, a.s, a.star, a.budget).to_dict()
        return max_family_tiling(d, a.r, a.s, a.star, a.budget).to_dict()
    g = _load(a.graph, EdgeColouredGraph)
    if a.action == "max":
        return max_rainbow_tiling(g, a.r, a.budget).to_dict()
    return has_perfect_rainbow_tiling(g, a.r, a.budget).to_dict()


def cmd_bound(a):
    if a.kind == "eg":
        return {"n": a.n, "e": a.e, "eg_bound": eg_bound(a.n, a.e)}
    return {"n": a.n, "alpha": str(a.alpha), "gamma": str(a.gamma),
            "abhp_bound": str(abhp_bound(a.n, a.alpha, a.gamma))}


def cmd_lp(a):
    if a.action == "probe":
        stats = desk_check_thresholds(a.r, a.n, a.trials, seed=a.seed, min_out=a.min_out)
        return stats.to_dict()
    d = _load(a.graph, Digraph)
    f = build_copy_hypergraph(d, a.r)
    if a.action == "solve":
        fm = solve_fractional_matching(f)
        return {"value": str(fm.value), "perfect": fm.perfect, "copies": len(f.edges),
                "weights": [[list(e), str(w)] for e, w in zip(f.edges, fm.weights) if w]}
    if solve_fractional_matching(f).perfect:
        raise SystemExit("digraph has a perfect fractional tiling; no certificate exists")
    cert = farkas_certificate(f)
    if not verify_certificate(f, cert.omega).ok:
        raise SystemExit("internal error: certificate failed verification")
    return rtio.Certificate(cert.omega)


def cmd_closed(a):
    if a.action == "weak":
        return weak_closure(_load(a.graph, Digraph), a.smax).to_dict()
    g = _load(a.graph, EdgeColouredGraph)
    if a.x is not None and a.y is not None:
        sets = connectors(g, a.x, a.y, a.r, a.s)
        return {"x": a.x, "y": a.y, "count": len(sets), "connectors": [list(s) for s in sets]}
    rep = closedness_report(g, a.r, a.s)
    return {**rep.to_dict(), "rows": [{"x": x, "y": y, "count": c} for (x, y), c in sorted(rep.counts.items())]}


def cmd_probe(a):
    rows = harness.probe_conjecture(a.r, a.n, a.trials, a.seed, a.budget)
    return {"r": a.r, "n": a.n, "bound": harness.conjecture_bound(a.r, a.n),
            "threshold": harness.threshold_formula(a.r),
            "potential_counterexamples": sum(r.potential_counterexample for r in rows),
            "rows": [r.to_dict() for r in rows]}


def cmd_experiment(a):
    path = harness.run_experiment(a.config, a.out, a.workers)
    return {"results": str(path), "summary": str(path.with_name("summary.csv"))}


def cmd_threshold(a):
    return harness.threshold_formula(a.r)


def cmd_roundtrip(a):
    obj = rtio.io_roundtrip(a.file)
    return {"file": a.file, "type": type(obj).__name__, "ok": True}


# ---------------------------------------------------------------- output

def _render(obj, fmt):
    if isinstance(obj, (EdgeColouredGraph, Digraph, rtio.Certificate)):
        return rtio.to_json(obj) + "\n" if fmt == "json" else rtio.dumps(obj)
    if fmt == "csv":
        buf = io.StringIO()
        rows = obj.get("rows") if isinstance(obj, dict) else None
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
        else:
            w = csv.writer(buf)
            w.writerow(["key", "value"])
            for k, v in obj.items():
                w.writerow([k, v if isinstance(v, (str, int, bool)) or v is None else json.dumps(v)])
        return buf.getvalue()
    return json.dumps(obj, indent=2, default=str) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["json", "csv", "text"], default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output into this directory")

    p = argparse.ArgumentParser(prog="rainbowtile", description="Rainbow clique tiling toolkit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", choices=["json", "csv", "text"], default=None)
    p.add_argument("--out", default=None)
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    c = verb("construct", cmd_construct, help="build an extremal or random edge-coloured graph")
    c.add_argument("kind", choices=["prop15", "prop16", "bipartite", "rainbow", "random"])
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--p", type=float, default=0.5)
    c.add_argument("--q", type=int, default=3)

    r = verb("rainbow", cmd_rainbow, help="rainbow clique search and triangle verdict")
    r.add_argument("action", choices=["find", "thm13"])
    r.add_argument("graph")
    r.add_argument("--r", type=int, default=3)

    cv = verb("convert", cmd_convert, help="convert an edge-coloured graph to a digraph")
    cv.add_argument("graph")
    cv.add_argument("--verify", action="store_true", help="report the guarantees instead of the digraph")

    sr = verb("sample-reduced", cmd_sample, help="sample a reduced digraph from a density matrix")
    sr.add_argument("--matrix", required=True)
    sr.add_argument("--strict", action="store_true")

    t = verb("tiling", cmd_tiling, help="exact tiling solvers")
    t.add_argument("action", choices=["max", "perfect", "family"])
    t.add_argument("graph")
    t.add_argument("--r", type=int, default=3)
    t.add_argument("--s", type=int, default=1)
    t.add_argument("--star", action="store_true", help="drop the complete-base requirement")
    t.add_argument("--perfect", action="store_true", help="family: decide a perfect tiling")

    b = verb("bound", cmd_bound, help="closed-form extremal bounds")
    b.add_argument("kind", choices=["eg", "abhp"])
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--e", type=int)
    b.add_argument("--alpha", type=_frac)
    b.add_argument("--gamma", type=_frac, default=Fraction(0))

    lp = verb("lp", cmd_lp, help="fractional tiling LP and its certificates")
    lp.add_argument("action", choices=["solve", "certificate", "probe"])
    lp.add_argument("graph", nargs="?")
    lp.add_argument("--r", type=int, default=3)
    lp.add_argument("--n", type=int, default=12)
    lp.add_argument("--trials", type=int, default=100)
    lp.add_argument("--min-out", type=int, default=None)

    cl = verb("closed", cmd_closed, help="connector counts and weak closure")
    cl.add_argument("action", choices=["connectors", "weak"])
    cl.add_argument("graph")
    cl.add_argument("--r", type=int, default=3)
    cl.add_argument("--s", type=int, default=1)
    cl.add_argument("--x", type=int)
    cl.add_argument("--y", type=int)
    cl.add_argument("--smax", type=int, default=8)

    pr = verb("probe", cmd_probe, help="probe the conjectured colour-degree bound")
    pr.add_argument("--r", type=int, default=3)
    pr.add_argument("--n", type=int, default=12)
    pr.add_argument("--trials", type=int, default=20)

    ex = verb("experiment", cmd_experiment, help="run a JSON experiment config")
    ex.add_argument("config")
    ex.add_argument("--workers", type=int, default=None)

    th = verb("threshold", cmd_threshold, help="threshold coefficients for r")
    th.add_argument("--r", type=int, required=True)

    rt = verb("roundtrip", cmd_roundtrip, help="parse and re-serialise a file")
    rt.add_argument("file")
    return p


def _check_args(a):
    need = {("construct", "prop15"): ("n", "k"), ("construct", "prop16"): ("r", "m"),
            ("construct", "bipartite"): ("n",), ("construct", "rainbow"): ("n",),
            ("construct", "random"): ("n",), ("bound", "eg"): ("e",), ("bound", "abhp"): ("alpha",)}
    key = (a.verb, getattr(a, "kind", None))
    missing = [f"--{x}" for x in need.get(key, ()) if getattr(a, x) is None]
    if a.verb == "lp" and a.action != "probe" and not a.graph:
        missing.append("<digraphfile>")
    return missing


def main(argv=None) -> int:
    parser = build_parser()
    a, extra = parser.parse_known_args(argv)
    # an optional positional after option flags is left over by argparse
    if a.verb == "lp" and a.graph is None and len(extra) == 1 and not extra[0].startswith("-"):
        a.graph = extra.pop()
    if extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    missing = _check_args(a)
    if missing:
        parser.error(f"{a.verb}: missing {', '.join(missing)}")
    try:
        result = a.fn(a)
    except (rtio.ParseError, ValueError, AmbiguousBranch, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    fmt = a.format or ("text" if isinstance(result, (EdgeColouredGraph, Digraph, rtio.Certificate)) else "json")
    if fmt == "text" and isinstance(result, dict):
        fmt = "json"
    text = _render(result, fmt)
    if a.out and a.verb != "experiment":
        out = Path(a.out)
        out.mkdir(parents=True, exist_ok=True)
        ext = {"json": "json", "csv": "csv"}.get(fmt, "txt")
        path = out / f"{a.verb.replace('-', '_')}.{ext}"
        path.write_text(text)
        print(path)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
