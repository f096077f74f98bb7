"""Text and JSON serialisation for every object the package reads or writes.

Text formats (``#`` starts a comment, blank lines ignored)::

    ecg <n>            dg <n>            pdm <k>
    e <u> <v> <c>      a <u> <v>         d <i> <j> <p/q>
                                         dpm <i> <j> <p/q>
    w <v> <p/q>        (certificate: one line per vertex)
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .convert import PairDensityMatrix
from .graph import Digraph, EdgeColouredGraph


class ParseError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


@dataclass
class Certificate:
    omega: list[Fraction]

    def __eq__(self, other):
        return isinstance(other, Certificate) and self.omega == other.omega


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok, no):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer, got {tok!r}", no) from None


def _frac(tok, no):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected rational p/q, got {tok!r}", no) from None


def dumps_ecg(g: EdgeColouredGraph) -> str:
    return "".join([f"ecg {g.n}\n"] + [f"e {u} {v} {c}\n" for u, v, c in g.coloured_edges()])


def dumps_dg(d: Digraph) -> str:
    return "".join([f"dg {d.n}\n"] + [f"a {u} {v}\n" for u, v in sorted(d.arcs)])


def dumps_pdm(m: PairDensityMatrix) -> str:
    out = [f"pdm {m.k}\n"]
    out += [f"d {i} {j} {x}\n" for (i, j), x in sorted(m.density.items())]
    out += [f"dpm {i} {j} {x}\n" for (i, j), x in sorted(m.double.items())]
    return "".join(out)


def dumps_certificate(omega) -> str:
    return "".join(f"w {v} {Fraction(x)}\n" for v, x in enumerate(omega))


def dumps(obj) -> str:
    if isinstance(obj, EdgeColouredGraph):
        return dumps_ecg(obj)
    if isinstance(obj, Digraph):
        return dumps_dg(obj)
    if isinstance(obj, PairDensityMatrix):
        return dumps_pdm(obj)
    if isinstance(obj, Certificate):
        return dumps_certificate(obj.omega)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _wrap(no, fn, *args):
    try:
        return fn(*args)
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e), no) from None


def loads(text: str):
    """Parse any of the text formats, or the JSON mirrors."""
    if text.lstrip().startswith("{"):
        return loads_json(text)
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input")
    no, head = lines[0]
    kind = head[0]
    if kind == "w":
        return _parse_certificate(lines)
    if len(head) != 2:
        raise ParseError("header must be '<kind> <count>'", no)
    n = _int(head[1], no)
    body = lines[1:]
    if kind == "ecg":
        edges = []
        seen = {}
        for no, toks in body:
            if toks[0] != "e" or len(toks) != 4:
                raise ParseError("expected 'e <u> <v> <colour>'", no)
            u, v, c = (_int(t, no) for t in toks[1:])
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"duplicate edge {key} (first on line {seen[key]})", no)
            seen[key] = no
            _wrap(no, EdgeColouredGraph, n, [(u, v, c)])
            edges.append((u, v, c))
        return EdgeColouredGraph(n, edges)
    if kind == "dg":
        arcs = []
        seen = {}
        for no, toks in body:
            if toks[0] != "a" or len(toks) != 3:
                raise ParseError("expected 'a <u> <v>'", no)
            u, v = (_int(t, no) for t in toks[1:])
            if (u, v) in seen:
                raise ParseError(f"duplicate arc ({u},{v})", no)
            seen[(u, v)] = no
            _wrap(no, Digraph, n, [(u, v)])
            arcs.append((u, v))
        return Digraph(n, arcs)
    if kind == "pdm":
        m = PairDensityMatrix(n)
        for no, toks in body:
            if toks[0] not in ("d", "dpm") or len(toks) != 4:
                raise ParseError("expected 'd <i> <j> <p/q>' or 'dpm <i> <j> <p/q>'", no)
            i, j = _int(toks[1], no), _int(toks[2], no)
            x = _frac(toks[3], no)
            if toks[0] == "d":
                m.density[(i, j)] = x
            else:
                m.double[(min(i, j), max(i, j))] = x
        _wrap(None, m.validate)
        return m
    raise ParseError(f"unknown format header {kind!r}", no)


def _parse_certificate(lines):
    vals = {}
    for no, toks in lines:
        if toks[0] != "w" or len(toks) != 3:
            raise ParseError("expected 'w <v> <p/q>'", no)
        v = _int(toks[1], no)
        if v in vals:
            raise ParseError(f"vertex {v} weighted twice", no)
        vals[v] = _frac(toks[2], no)
    n = len(vals)
    if sorted(vals) != list(range(n)):
        raise ParseError("certificate must weight vertices 0..n-1 exactly once")
    return Certificate([vals[v] for v in range(n)])


def to_json(obj) -> str:
    if isinstance(obj, EdgeColouredGraph):
        data = {"n": obj.n, "edges": [list(e) for e in obj.coloured_edges()]}
    elif isinstance(obj, Digraph):
        data = {"n": obj.n, "arcs": [list(a) for a in sorted(obj.arcs)]}
    elif isinstance(obj, Certificate):
        data = {"omega": [str(x) for x in obj.omega]}
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
    return json.dumps(data)


def loads_json(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno) from None
    try:
        if "edges" in data:
            edges = [tuple(e) for e in data["edges"]]
            if any(len(e) != 3 for e in edges):
                raise ParseError("edges must be [u, v, colour] triples")
            return EdgeColouredGraph(data["n"], edges)
        if "arcs" in data:
            return Digraph(data["n"], [tuple(a) for a in data["arcs"]])
        if "omega" in data:
            return Certificate([Fraction(x) for x in data["omega"]])
    except (TypeError, KeyError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e)) from None
    raise ParseError("unrecognised JSON object")


def load(path):
    return loads(Path(path).read_text())


def save(obj, path, fmt: str = "text"):
    Path(path).write_text(to_json(obj) + "\n" if fmt == "json" else dumps(obj))


def io_roundtrip(path):
    """Parse, serialise, parse again; the two parses must agree."""
    first = load(path)
    text = Path(path).read_text()
    again = loads(to_json(first)) if text.lstrip().startswith("{") else loads(dumps(first))
    if again != first:
        raise AssertionError(f"round trip changed the object read from {path}")
    return first
