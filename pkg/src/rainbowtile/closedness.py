"""Connector counting for rainbow tilings and weak connectivity of digraphs.

Weak connectivity: x and x' are weakly s-connected when a vertex multiset W
of size 3s-1 exists such that both {x}+W and {x'}+W split into s triples,
each inducing a member of K_{3,1} (complete base, every vertex with an
out-neighbour inside the triple).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .graph import Digraph, EdgeColouredGraph
from .rainbow import in_k31, iter_rainbow_cliques
from .tiling import max_set_packing


def count_connectors(g: EdgeColouredGraph, x: int, y: int, r: int, s: int) -> int:
    """Number of (rs-1)-sets S avoiding x, y with g[S+x] and g[S+y] both
    perfectly tileable by rainbow K_r."""
    if s not in (1, 2):
        raise ValueError(f"connector length {s} unsupported (only 1 or 2)")
    if x == y:
        raise ValueError("x and y must differ")
    cliques = set(iter_rainbow_cliques(g, r))
    rest = [v for v in range(g.n) if v not in (x, y)]
    total = 0
    for S in combinations(rest, r * s - 1):
        if _tileable(S + (x,), cliques, r) and _tileable(S + (y,), cliques, r):
            total += 1
    return total


def _tileable(vertices, cliques, r) -> bool:
    vs = tuple(sorted(vertices))
    if len(vs) == r:
        return vs in cliques
    inside = set(vs)
    index = {v: i for i, v in enumerate(vs)}
    local = [tuple(index[v] for v in c) for c in cliques if inside.issuperset(c)]
    res = max_set_packing(len(vs), local, target=len(vs) // r, perfect=True, lp_depth=-1)
    return res.size == len(vs) // r


def connectors(g, x, y, r, s):
    """The connector sets themselves (same enumeration as count_connectors)."""
    cliques = set(iter_rainbow_cliques(g, r))
    rest = [v for v in range(g.n) if v not in (x, y)]
    return [S for S in combinations(rest, r * s - 1)
            if _tileable(S + (x,), cliques, r) and _tileable(S + (y,), cliques, r)]


@dataclass
class ClosednessReport:
    min_count: int
    eta: Fraction
    worst_pair: tuple[int, int] | None
    counts: dict[tuple[int, int], int]

    def to_dict(self):
        return {"min_count": self.min_count, "eta": str(self.eta),
                "worst_pair": list(self.worst_pair) if self.worst_pair else None}


def closedness_report(g: EdgeColouredGraph, r: int, s: int) -> ClosednessReport:
    """Minimum connector count over all pairs, normalised by n^(rs-1)."""
    counts = {(x, y): count_connectors(g, x, y, r, s) for x, y in combinations(range(g.n), 2)}
    if not counts:
        return ClosednessReport(0, Fraction(0), None, counts)
    worst = min(counts, key=lambda p: (counts[p], p))
    m = counts[worst]
    return ClosednessReport(m, Fraction(m, g.n ** (r * s - 1)), worst, counts)


def k31_triples(d: Digraph) -> list[tuple[int, int, int]]:
    return [t for t in combinations(range(d.n), 3) if in_k31(d, *t)]


def _links(d: Digraph, triples):
    link = [set() for _ in range(d.n)]
    for t in triples:
        for v in t:
            link[v].add(tuple(u for u in t if u != v))
    return link


@dataclass
class WeakClosure:
    n: int
    s_max: int
    pair_cost: dict[tuple[int, int], int]
    self_cost: dict[int, int]
    classes: list[list[int]] = field(default_factory=list)

    def cost(self, x: int, y: int) -> int | None:
        if x == y:
            return self.self_cost.get(x)
        return self.pair_cost.get((min(x, y), max(x, y)))

    def all_pairs_certified(self) -> bool:
        return len(self.pair_cost) == self.n * (self.n - 1) // 2

    def to_dict(self):
        return {"n": self.n, "s_max": self.s_max,
                "pairs": [[x, y, s] for (x, y), s in sorted(self.pair_cost.items())],
                "classes": self.classes}


def weak_closure(d: Digraph, s_max: int = 8) -> WeakClosure:
    """Certified upper bounds on the weak-connectivity length of every pair.

    Seeds are the weakly 1-connected pairs.  The relation is then closed
    under three composition rules, each with a witness multiset built from
    the witnesses of its premises:

    * overlap: x~y (s1), y~z (s2)  =>  x~z (s1+s2);
    * two triples: {x,y,z}, {x',y',z'} in K_{3,1}, y~y' (s1), z~z' (s2)
      =>  x~x' (s1+s2+1);
    * extension: {x,u,u'}, {a,b,c} in K_{3,1}, u~b, u'~c, w~a
      =>  x~w (sum+1).

    With equal premises these cost 2s, 2s+1 and 3s+1, never more than the
    stated costs of the corresponding closure rules.  A vertex lying in a
    K_{3,1} triple counts as 1-connected to itself.  Costs above ``s_max``
    are discarded.
    """
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    n = d.n
    triples = k31_triples(d)
    link = _links(d, triples)
    INF = s_max + 1
    cost = [[INF] * n for _ in range(n)]
    for v in range(n):
        if link[v]:
            cost[v][v] = 1
    for x, y in combinations(range(n), 2):
        if link[x] & link[y]:
            cost[x][y] = cost[y][x] = 1
    ordered = [[p for (a, b) in link[v] for p in ((a, b), (b, a))] for v in range(n)]
    perms = [(t[i], t[j], t[k]) for t in triples
             for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))]

    def improve(x, y, c):
        if c < cost[x][y]:
            cost[x][y] = cost[y][x] = c
            return True
        return False

    changed = True
    while changed:
        changed = False
        # overlap
        for y in range(n):
            for x in range(n):
                cxy = cost[x][y]
                if cxy >= INF or x == y:
                    continue
                for z in range(x + 1, n):
                    if z != y and cost[y][z] < INF and improve(x, z, cxy + cost[y][z]):
                        changed = True
        # two triples
        for x, x2 in combinations(range(n), 2):
            best = cost[x][x2]
            for y, z in ordered[x]:
                for y2, z2 in ordered[x2]:
                    c = cost[y][y2] + cost[z][z2] + 1
                    if c < best:
                        best = c
            if improve(x, x2, best):
                changed = True
        # extension through a triple
        ext = {}
        for u in range(n):
            for u2 in range(n):
                row = [INF] * n
                for a, b, c in perms:
                    v = cost[u][b] + cost[u2][c]
                    if v < row[a]:
                        row[a] = v
                ext[(u, u2)] = row
        for x in range(n):
            for w in range(n):
                if w == x:
                    continue
                best = cost[x][w]
                for u, u2 in ordered[x]:
                    row = ext[(u, u2)]
                    for a in range(n):
                        c = row[a] + cost[w][a] + 1
                        if c < best:
                            best = c
                if improve(x, w, best):
                    changed = True

    pair_cost = {(x, y): cost[x][y] for x, y in combinations(range(n), 2) if cost[x][y] <= s_max}
    self_cost = {v: cost[v][v] for v in range(n) if cost[v][v] <= s_max}
    return WeakClosure(n, s_max, pair_cost, self_cost, _classes(n, pair_cost))


def _classes(n, pairs) -> list[list[int]]:
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, y in pairs:
        parent[find(x)] = find(y)
    groups: dict[int, list[int]] = {}
    touched = {v for p in pairs for v in p}
    for v in sorted(touched):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def _splits_into_triples(multiset, is_member) -> bool:
    items = sorted(multiset)
    if not items:
        return True
    first = items[0]
    rest = items[1:]
    for i, j in combinations(range(len(rest)), 2):
        t = (first, rest[i], rest[j])
        if len(set(t)) < 3 or not is_member(t):
            continue
        remaining = [v for k, v in enumerate(rest) if k not in (i, j)]
        if _splits_into_triples(remaining, is_member):
            return True
    return False


def verify_weak_pair(d: Digraph, x: int, x2: int, s: int) -> tuple[int, ...] | None:
    """Direct search for a witness multiset of size 3s-1 (s in {1, 2}).

    Every multiset over V is tried, including ones containing x or x'.
    """
    if s not in (1, 2):
        raise ValueError(f"weak connectivity length {s} unsupported (only 1 or 2)")
    memo = {}

    def member(t):
        key = tuple(sorted(t))
        if key not in memo:
            memo[key] = in_k31(d, *key)
        return memo[key]

    for w in combinations_with_replacement(range(d.n), 3 * s - 1):
        if _splits_into_triples(w + (x,), member) and _splits_into_triples(w + (x2,), member):
            return w
    return None


def witness_multiset_ok(d: Digraph, x: int, x2: int, w) -> bool:
    """Check a claimed witness multiset directly."""
    def member(t):
        return in_k31(d, *sorted(t))
    return (len(w) % 3 == 2 and _splits_into_triples(tuple(w) + (x,), member)
            and _splits_into_triples(tuple(w) + (x2,), member))


def multiset_str(w) -> str:
    return " ".join(f"{v}x{k}" if k > 1 else str(v) for v, k in sorted(Counter(w).items()))
