"""Rainbow clique search and the rainbow-triangle verdict procedures."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .graph import Digraph, EdgeColouredGraph, is_properly_coloured, min_colour_degree


def iter_rainbow_cliques(g: EdgeColouredGraph, r: int) -> Iterator[tuple[int, ...]]:
    """All rainbow r-cliques as ascending tuples, in lexicographic order."""
    if r < 1:
        return
    if r == 1:
        yield from ((v,) for v in range(g.n))
        return
    up = [sorted(w for w in g.neighbours(v) if w > v) for v in range(g.n)]

    def extend(clique, cand, used):
        if len(clique) == r:
            yield tuple(clique)
            return
        for w in cand:
            nbrs = g.neighbours(w)
            new = []
            for u in clique:
                c = nbrs[u]
                if c in used or c in new:
                    break
                new.append(c)
            else:
                clique.append(w)
                used.update(new)
                yield from extend(clique, [x for x in cand if x > w and x in nbrs], used)
                used.difference_update(new)
                clique.pop()

    for v in range(g.n):
        yield from extend([v], up[v], set())


def find_rainbow_clique(g: EdgeColouredGraph, r: int) -> tuple[int, ...] | None:
    """Lexicographically least rainbow K_r, or None."""
    if r < 2:
        raise ValueError("r must be at least 2")
    return next(iter_rainbow_cliques(g, r), None)


def brute_force_rainbow_triangles(g: EdgeColouredGraph) -> list[tuple[int, int, int]]:
    """Plain scan over all triples; kept independent of the clique search."""
    out = []
    for a, b, c in combinations(range(g.n), 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            if len({g.colour(a, b), g.colour(a, c), g.colour(b, c)}) == 3:
                out.append((a, b, c))
    return out


def _balanced_complete_bipartite(g: EdgeColouredGraph) -> bool:
    n = g.n
    if n % 2 or g.num_edges() != (n // 2) ** 2:
        return False
    side = [-1] * n
    for s in range(n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbours(u):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return False
    return side.count(0) == n // 2


@dataclass(frozen=True)
class Verdict:
    kind: str  # hypothesis_not_met | exceptional | rainbow_triangle | counterexample
    detail: str = ""
    triangle: tuple[int, int, int] | None = None

    def to_dict(self):
        return {"kind": self.kind, "detail": self.detail,
                "triangle": list(self.triangle) if self.triangle else None}


def exceptional_kind(g: EdgeColouredGraph) -> str | None:
    n = g.n
    if _balanced_complete_bipartite(g) and is_properly_coloured(g):
        return f"K_{{{n // 2},{n // 2}}}"
    if n == 4:
        if g.num_edges() == 6:
            return "K_4"
        if g.num_edges() == 5:
            return "K_4-e"
    return None


def theorem13_verdict(g: EdgeColouredGraph) -> Verdict:
    """Classify g against the rainbow-triangle theorem for colour degree n/2."""
    if g.n < 3:
        raise ValueError("need at least 3 vertices")
    if 2 * min_colour_degree(g) < g.n:
        return Verdict("hypothesis_not_met")
    kind = exceptional_kind(g)
    if kind is not None:
        return Verdict("exceptional", kind)
    tri = find_rainbow_clique(g, 3)
    if tri is None:
        return Verdict("counterexample")
    return Verdict("rainbow_triangle", triangle=tri)


class PreconditionError(ValueError):
    pass


class SearchFailure(RuntimeError):
    pass


def rainbow_transversal(g: EdgeColouredGraph, parts: list[list[int]],
                        check_size: bool = True) -> tuple[int, ...]:
    """Rainbow K_r with one vertex in each part of a properly coloured
    complete r-partite graph.  Depth-first search, parts in the given
    order, vertices in ascending order."""
    r = len(parts)
    where = {}
    for i, p in enumerate(parts):
        for v in p:
            if v in where:
                raise PreconditionError(f"vertex {v} in two parts")
            where[v] = i
    if len(where) != g.n:
        raise PreconditionError("parts must cover every vertex")
    if check_size and any(len(p) < r ** 3 for p in parts):
        raise PreconditionError(f"every part needs at least r^3 = {r ** 3} vertices")
    for u, v in combinations(range(g.n), 2):
        if (where[u] != where[v]) != g.has_edge(u, v):
            raise PreconditionError("graph is not complete r-partite on the given parts")
    if not is_properly_coloured(g):
        raise PreconditionError("colouring is not proper")

    chosen: list[int] = []
    used: set[int] = set()

    def search(i):
        if i == r:
            return True
        for v in sorted(parts[i]):
            nbrs = g.neighbours(v)
            new = [nbrs[u] for u in chosen]
            if len(set(new)) < len(new) or used.intersection(new):
                continue
            chosen.append(v)
            used.update(new)
            if search(i + 1):
                return True
            used.difference_update(new)
            chosen.pop()
        return False

    if not search(0):
        raise SearchFailure("no rainbow transversal found")
    return tuple(chosen)


def brute_force_transversals(g: EdgeColouredGraph, parts) -> Iterator[tuple[int, ...]]:
    for t in product(*parts):
        cols = [g.colour(u, v) for u, v in combinations(t, 2)]
        if len(set(cols)) == len(cols):
            yield t


def in_k31(d: Digraph, a: int, b: int, c: int) -> bool:
    """Complete base graph on {a,b,c} and every vertex has an out-arc inside."""
    o = d.out
    if not (d.adjacent(a, b) and d.adjacent(a, c) and d.adjacent(b, c)):
        return False
    return ((b in o[a] or c in o[a]) and (a in o[b] or c in o[b])
            and (a in o[c] or b in o[c]))


def find_directed_triangle(d: Digraph) -> tuple[int, int, int] | None:
    for t in combinations(range(d.n), 3):
        if in_k31(d, *t):
            return t
    return None
