"""Edge-coloured graphs and digraphs with their elementary operations.

Vertices are dense integer indices ``0..n-1``.  Colours are arbitrary
non-negative integers.  Both graph types are immutable once built.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

MAX_VERTICES = 100_000


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class EdgeColouredGraph:
    """Simple undirected graph with one colour on every edge."""

    __slots__ = ("n", "_colour", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]] | Mapping = ()):
        if n < 0:
            raise ValueError(f"negative vertex count {n}")
        if isinstance(edges, Mapping):
            edges = ((u, v, c) for (u, v), c in edges.items())
        colour: dict[tuple[int, int], int] = {}
        adj: list[dict[int, int]] = [{} for _ in range(n)]
        for u, v, c in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if c < 0:
                raise ValueError(f"negative colour {c} on edge ({u},{v})")
            e = _pair(u, v)
            if e in colour:
                raise ValueError(f"duplicate edge {e}")
            colour[e] = c
            adj[u][v] = c
            adj[v][u] = c
        self.n = n
        self._colour = colour
        self._adj = adj

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._colour)

    def coloured_edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, self._colour[(u, v)]) for u, v in sorted(self._colour)]

    def colour(self, u: int, v: int) -> int:
        return self._colour[_pair(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbours(self, v: int) -> dict[int, int]:
        """Map neighbour -> colour of the joining edge (do not mutate)."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def colour_degree(self, v: int) -> int:
        return len(set(self._adj[v].values()))

    def num_edges(self) -> int:
        return len(self._colour)

    def colours(self) -> set[int]:
        return set(self._colour.values())

    def induced(self, vertices: Iterable[int]) -> "EdgeColouredGraph":
        """Induced subgraph, relabelled to ``0..k-1`` in ascending order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        es = [(index[u], index[v], c) for (u, v), c in self._colour.items()
              if u in index and v in index]
        return EdgeColouredGraph(len(vs), es)

    def __eq__(self, other):
        return (isinstance(other, EdgeColouredGraph) and self.n == other.n
                and self._colour == other._colour)

    def __hash__(self):
        return hash((self.n, frozenset(self._colour.items())))

    def __repr__(self):
        return f"EdgeColouredGraph(n={self.n}, m={len(self._colour)})"


class Digraph:
    """Loop-free digraph; antiparallel arc pairs (double edges) are allowed."""

    __slots__ = ("n", "arcs", "out", "inn")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"negative vertex count {n}")
        out: list[set[int]] = [set() for _ in range(n)]
        inn: list[set[int]] = [set() for _ in range(n)]
        seen = set()
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u},{v})")
            seen.add((u, v))
            out[u].add(v)
            inn[v].add(u)
        self.n = n
        self.arcs = frozenset(seen)
        self.out = tuple(frozenset(s) for s in out)
        self.inn = tuple(frozenset(s) for s in inn)

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out[u]

    def adjacent(self, u: int, v: int) -> bool:
        """True if u and v are joined in the base graph."""
        return v in self.out[u] or u in self.out[v]

    def min_out_degree(self) -> int:
        return min((len(s) for s in self.out), default=0)

    def base_edges(self) -> set[tuple[int, int]]:
        return {_pair(u, v) for u, v in self.arcs}

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        return Digraph(len(vs), [(index[u], index[v]) for u, v in self.arcs
                                 if u in index and v in index])

    def with_arc(self, u: int, v: int) -> "Digraph":
        if (u, v) in self.arcs:
            return self
        return Digraph(self.n, self.arcs | {(u, v)})

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


class Graph:
    """Plain undirected simple graph (no colours)."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        adj: list[set[int]] = [set() for _ in range(n)]
        es = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge ({u},{v}) for n={n}")
            e = _pair(u, v)
            if e in es:
                raise ValueError(f"duplicate edge {e}")
            es.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(es)
        self.adj = tuple(frozenset(a) for a in adj)

    def num_edges(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


def underlying(g: EdgeColouredGraph) -> Graph:
    return Graph(g.n, g.edges)


@dataclass(frozen=True)
class DegreeProfile:
    colour_degree: tuple[int, ...]
    degree: tuple[int, ...]
    min_colour_degree: int
    max_degree: int


def degree_profile(g: EdgeColouredGraph) -> DegreeProfile:
    dc = tuple(g.colour_degree(v) for v in range(g.n))
    d = tuple(g.degree(v) for v in range(g.n))
    return DegreeProfile(dc, d, min(dc, default=0), max(d, default=0))


def min_colour_degree(g: EdgeColouredGraph) -> int:
    return min((g.colour_degree(v) for v in range(g.n)), default=0)


@dataclass(frozen=True)
class InducedCheck:
    complete: bool
    rainbow: bool
    proper: bool

    @property
    def kind(self) -> str:
        if self.rainbow:
            return "rainbow"
        return "proper" if self.proper else "neither"


def induced_check(g: EdgeColouredGraph, vertices: Iterable[int]) -> InducedCheck:
    """Classify the colouring of ``g[S]``.

    A rainbow graph is in particular proper; ``kind`` reports the
    strongest label that applies.
    """
    s = sorted(set(vertices))
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    complete = True
    cols = []
    at_vertex: dict[int, set[int]] = {v: set() for v in s}
    proper = True
    for u, v in combinations(s, 2):
        c = g.neighbours(u).get(v)
        if c is None:
            complete = False
            continue
        cols.append(c)
        for w in (u, v):
            if c in at_vertex[w]:
                proper = False
            at_vertex[w].add(c)
    rainbow = len(cols) == len(set(cols))
    return InducedCheck(complete, rainbow, proper)


def is_rainbow_clique(g: EdgeColouredGraph, vertices: Iterable[int]) -> bool:
    seen = set()
    vs = list(vertices)
    for u, v in combinations(vs, 2):
        c = g.neighbours(u).get(v)
        if c is None or c in seen:
            return False
        seen.add(c)
    return True


def is_properly_coloured(g: EdgeColouredGraph) -> bool:
    return all(g.colour_degree(v) == g.degree(v) for v in range(g.n))


def critical_subgraph(g: EdgeColouredGraph) -> EdgeColouredGraph:
    """Spanning subgraph with the same minimum colour degree, edge-minimal.

    Edges are tried for deletion in lexicographic order, rescanning until
    a full pass deletes nothing.
    """
    delta = min_colour_degree(g)
    count = [dict() for _ in range(g.n)]  # vertex -> colour -> multiplicity
    for (u, v), c in g._colour.items():
        count[u][c] = count[u].get(c, 0) + 1
        count[v][c] = count[v].get(c, 0) + 1
    alive = dict(g._colour)

    def removable(w, c):
        return count[w][c] > 1 or len(count[w]) > delta

    changed = True
    while changed:
        changed = False
        for e in sorted(alive):
            c = alive[e]
            u, v = e
            if removable(u, c) and removable(v, c):
                del alive[e]
                for w in e:
                    count[w][c] -= 1
                    if count[w][c] == 0:
                        del count[w][c]
                changed = True
    return EdgeColouredGraph(g.n, alive)


def blowup(g, t: int, limit: int = MAX_VERTICES):
    """Replace each vertex v by the class ``{v*t, ..., v*t + t - 1}``.

    Copies of an edge inherit its colour, so the blowup of a rainbow graph
    is not rainbow.  No edges are placed inside a class.
    """
    if t < 1:
        raise ValueError("blowup factor must be positive")
    if g.n * t > limit:
        raise OverflowError(f"blowup would have {g.n * t} vertices (limit {limit})")
    if isinstance(g, Digraph):
        return Digraph(g.n * t, [(u * t + i, v * t + j) for u, v in g.arcs
                                 for i in range(t) for j in range(t)])
    return EdgeColouredGraph(g.n * t, [(u * t + i, v * t + j, c)
                                       for u, v, c in g.coloured_edges()
                                       for i in range(t) for j in range(t)])


def double_edge_graph(d: Digraph) -> Graph:
    """Graph of double edges: {x,y} is an edge iff both xy and yx are arcs."""
    return Graph(d.n, [(u, v) for u, v in d.arcs if u < v and (v, u) in d.arcs])
