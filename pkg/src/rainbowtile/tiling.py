"""Exact tiling solvers: maximum set packing by branch and bound over an
explicit copy list, plus matchings and the closed-form extremal bounds."""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, floor

from .convert import is_family_member
from .graph import Digraph, EdgeColouredGraph, Graph, is_rainbow_clique
from .rainbow import iter_rainbow_cliques
from .simplex import simplex_max

DEFAULT_MAX_COPIES = 10**6
DEFAULT_BUDGET = 200_000


def max_copies() -> int:
    return int(os.environ.get("RT_MAX_COPIES", DEFAULT_MAX_COPIES))


class CopyLimitExceeded(RuntimeError):
    pass


def _capped(it, cap):
    out = []
    for x in it:
        out.append(x)
        if len(out) > cap:
            raise CopyLimitExceeded(f"more than {cap} copies")
    return out


def rainbow_copies(g: EdgeColouredGraph, r: int, cap: int | None = None) -> list[tuple[int, ...]]:
    return _capped(iter_rainbow_cliques(g, r), cap or max_copies())


def family_copies(d: Digraph, r: int, s: int, complete_base: bool = True,
                  cap: int | None = None) -> list[tuple[int, ...]]:
    it = (t for t in combinations(range(d.n), r) if is_family_member(d, t, s, complete_base))
    return _capped(it, cap or max_copies())


def clique_copies(g: Graph, q: int, cap: int | None = None) -> list[tuple[int, ...]]:
    def extend(cl, cand):
        if len(cl) == q:
            yield tuple(cl)
            return
        for w in cand:
            yield from extend(cl + [w], [x for x in cand if x > w and x in g.adj[w]])

    it = (c for v in range(g.n) for c in extend([v], sorted(x for x in g.adj[v] if x > v)))
    return _capped(it, cap or max_copies())


@dataclass
class TilingWitness:
    parts: list[tuple[int, ...]]
    kind: str  # rainbow-clique | family(r,s,star) | clique

    @property
    def cover(self) -> int:
        return sum(len(p) for p in self.parts)

    def to_dict(self):
        return {"kind": self.kind, "parts": [list(p) for p in self.parts], "cover": self.cover}


@dataclass
class PackingResult:
    size: int
    parts: list[tuple[int, ...]]
    optimal: bool
    nodes: int
    upper_bound: int | None = None


def lp_packing_bound(n: int, sets: list[tuple[int, ...]]) -> Fraction:
    """Optimum of the fractional packing LP over ``sets``."""
    if not sets:
        return Fraction(0)
    verts = sorted({v for s in sets for v in s})
    row = {v: i for i, v in enumerate(verts)}
    A = [[0] * len(sets) for _ in verts]
    for j, s in enumerate(sets):
        for v in s:
            A[row[v]][j] = 1
    return simplex_max(A, [1] * len(verts), [1] * len(sets)).value


def max_set_packing(n: int, sets: list[tuple[int, ...]], budget: int = DEFAULT_BUDGET,
                    target: int | None = None, perfect: bool = False,
                    lp_depth: int = 0) -> PackingResult:
    """Maximum number of pairwise disjoint sets (all of equal size).

    Branches on the lowest-index free vertex: each usable set through it,
    then (unless ``perfect``) leaving it uncovered.  Nodes are pruned by the
    count of still coverable vertices and, at depth <= ``lp_depth``, by the
    fractional packing LP.  ``target`` stops the search once reached.
    """
    if not sets:
        return PackingResult(0, [], True, 0, 0)
    r = len(sets[0])
    sets = sorted(set(tuple(sorted(s)) for s in sets))
    masks = [sum(1 << v for v in s) for s in sets]
    through = [[] for _ in range(n)]
    for i, s in enumerate(sets):
        for v in s:
            through[v].append(i)
    if target is None:
        target = n // r

    # greedy incumbent
    used = 0
    best: list[int] = []
    for i, mk in enumerate(masks):
        if not used & mk:
            best.append(i)
            used |= mk
    best_size = len(best)
    nodes = 0
    aborted = False
    full = (1 << n) - 1
    root_bound = None

    def bound(blocked, chosen, depth):
        cover = 0
        usable = []
        for i, mk in enumerate(masks):
            if not mk & blocked:
                cover |= mk
                usable.append(i)
        ub = chosen + bin(cover).count("1") // r
        if depth <= lp_depth and ub > best_size and usable:
            ub = min(ub, chosen + floor(lp_packing_bound(n, [sets[i] for i in usable])))
        return ub, cover

    def search(blocked, chosen, depth):
        nonlocal best, best_size, nodes, aborted, root_bound
        nodes += 1
        if nodes > budget:
            aborted = True
            return
        ub, cover = bound(blocked, len(chosen), depth)
        if depth == 0:
            root_bound = ub
        if len(chosen) > best_size:
            best, best_size = list(chosen), len(chosen)
        if ub <= best_size or best_size >= target:
            return
        free = full & ~blocked
        if perfect and free & ~cover:
            return
        free &= cover
        if not free:
            return
        v = (free & -free).bit_length() - 1
        for i in through[v]:
            mk = masks[i]
            if mk & blocked:
                continue
            chosen.append(i)
            search(blocked | mk, chosen, depth + 1)
            chosen.pop()
            if aborted or best_size >= target:
                return
        if not perfect:
            search(blocked | (1 << v), chosen, depth + 1)

    search(0, [], 0)
    optimal = not aborted
    if perfect and best_size < target and not aborted:
        optimal = True
    return PackingResult(best_size, [sets[i] for i in best], optimal, nodes, root_bound)


def brute_force_packing(sets: list[tuple[int, ...]]) -> int:
    """Exhaustive optimum by memoised recursion over the set of used
    vertices: the lowest unused vertex is either skipped or covered by one
    of its sets.  No bounds or incumbents; for small oracle checks."""
    masks = sorted({sum(1 << v for v in s) for s in sets})
    if not masks:
        return 0
    top = max(masks).bit_length()
    through = [[mk for mk in masks if mk >> v & 1] for v in range(top)]
    memo: dict[int, int] = {}

    def rec(used):
        if used in memo:
            return memo[used]
        free = ~used & ((1 << top) - 1)
        if not free:
            return 0
        v = (free & -free).bit_length() - 1
        best = rec(used | (1 << v))
        for mk in through[v]:
            if not mk & used:
                best = max(best, 1 + rec(used | mk))
        memo[used] = best
        return best

    return rec(0)


@dataclass
class TilingResult:
    size: int
    witness: TilingWitness
    optimal: bool
    nodes: int = 0
    status: str = "ok"  # ok | budget | copy-limit

    def to_dict(self):
        return {"size": self.size, "optimal": self.optimal, "nodes": self.nodes,
                "status": self.status, "witness": self.witness.to_dict()}


@dataclass
class PerfectResult:
    status: str  # yes | no | unknown
    witness: TilingWitness | None = None
    nodes: int = 0
    reason: str = ""

    def to_dict(self):
        return {"status": self.status, "nodes": self.nodes, "reason": self.reason,
                "witness": self.witness.to_dict() if self.witness else None}


def _max_tiling(n, copies_fn, kind, budget, lp_depth=1):
    try:
        copies = copies_fn()
    except CopyLimitExceeded:
        return TilingResult(0, TilingWitness([], kind), False, 0, "copy-limit")
    res = max_set_packing(n, copies, budget, lp_depth=lp_depth)
    return TilingResult(res.size, TilingWitness(res.parts, kind), res.optimal, res.nodes,
                        "ok" if res.optimal else "budget")


def _perfect_tiling(n, r, copies_fn, kind, budget):
    if r <= 0 or n % r:
        raise ValueError(f"vertex count {n} is not divisible by r={r}")
    try:
        copies = copies_fn()
    except CopyLimitExceeded as e:
        return PerfectResult("unknown", reason=str(e))
    target = n // r
    if target == 0:
        return PerfectResult("yes", TilingWitness([], kind))
    res = max_set_packing(n, copies, budget, target=target, perfect=True, lp_depth=1)
    if res.size == target:
        return PerfectResult("yes", TilingWitness(res.parts, kind), res.nodes)
    if res.optimal:
        return PerfectResult("no", nodes=res.nodes, reason="search exhausted")
    return PerfectResult("unknown", nodes=res.nodes, reason="node budget exhausted")


def max_rainbow_tiling(g: EdgeColouredGraph, r: int, budget: int = DEFAULT_BUDGET) -> TilingResult:
    if r < 2:
        raise ValueError("r must be at least 2")
    return _max_tiling(g.n, lambda: rainbow_copies(g, r), "rainbow-clique", budget)


def has_perfect_rainbow_tiling(g: EdgeColouredGraph, r: int, budget: int = DEFAULT_BUDGET) -> PerfectResult:
    return _perfect_tiling(g.n, r, lambda: rainbow_copies(g, r), "rainbow-clique", budget)


def _family_kind(r, s, star):
    return f"family({r},{s},{'star' if star else 'complete'})"


def perfect_family_tiling(d: Digraph, r: int, s: int, star: bool = False,
                          budget: int = DEFAULT_BUDGET) -> PerfectResult:
    """Perfect tiling by members of K_{r,s} (or K*_{r,s} with ``star``)."""
    return _perfect_tiling(d.n, r, lambda: family_copies(d, r, s, not star),
                           _family_kind(r, s, star), budget)


def max_family_tiling(d: Digraph, r: int, s: int, star: bool = False,
                      budget: int = DEFAULT_BUDGET) -> TilingResult:
    return _max_tiling(d.n, lambda: family_copies(d, r, s, not star),
                       _family_kind(r, s, star), budget)


def max_clique_tiling(g: Graph, q: int, budget: int = DEFAULT_BUDGET) -> TilingResult:
    if q < 2:
        raise ValueError("q must be at least 2")
    return _max_tiling(g.n, lambda: clique_copies(g, q), "clique", budget)


def certify_witness(w: TilingWitness, host) -> bool:
    """Independent check: disjoint parts, each passing its kind's test."""
    seen = set()
    for p in w.parts:
        if seen.intersection(p) or len(set(p)) != len(p):
            return False
        seen.update(p)
    if w.kind == "rainbow-clique":
        return all(is_rainbow_clique(host, p) for p in w.parts)
    if w.kind == "clique":
        return all(b in host.adj[a] for p in w.parts for a, b in combinations(p, 2))
    if w.kind.startswith("family("):
        r, s, mode = w.kind[7:-1].split(",")
        return all(len(p) == int(r) and is_family_member(host, p, int(s), mode == "complete")
                   for p in w.parts)
    raise ValueError(f"unknown witness kind {w.kind}")


def max_matching(g: Graph) -> tuple[int, list[tuple[int, int]]]:
    """Maximum cardinality matching (Edmonds' blossom algorithm)."""
    n = g.n
    adj = [sorted(a) for a in g.adj]
    match = [-1] * n

    def find_path(root):
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v, b, child, blossom):
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    q.append(match[to])
        return -1, parent

    for v in range(n):
        if match[v] != -1:
            continue
        end, parent = find_path(v)
        while end != -1:
            pv = parent[end]
            nxt = match[pv]
            match[end] = pv
            match[pv] = end
            end = nxt
    pairs = [(v, match[v]) for v in range(n) if match[v] > v]
    return len(pairs), pairs


def brute_force_matching(g: Graph) -> int:
    return brute_force_packing(sorted(g.edges))


def eg_bound(n: int, e: int) -> int:
    """Largest t with e > max(C(2t-1,2), C(n,2) - C(n-t+1,2)), else 0."""
    if not 0 <= e <= comb(n, 2):
        raise ValueError(f"edge count {e} outside [0, C({n},2)]")
    t = 0
    while True:
        s = t + 1
        if 2 * s - 1 > n:
            return t
        if e > max(comb(2 * s - 1, 2), comb(n, 2) - comb(n - s + 1, 2)):
            t = s
        else:
            return t


def abhp_terms(alpha) -> list[Fraction]:
    a = Fraction(alpha)
    return [(1 + 2 * a - a * a) / 4, Fraction(1, 4) + 2 * a * a, 2 * a * (1 - a),
            Fraction(1, 2) - 3 * a + 9 * a * a]


def abhp_bound(n: int, alpha, gamma) -> Fraction:
    """Edge count above which a graph has alpha*n disjoint triangles."""
    a, g = Fraction(alpha), Fraction(gamma)
    if not 0 < a <= Fraction(1, 3):
        raise ValueError("alpha must lie in (0, 1/3]")
    if g < 0:
        raise ValueError("gamma must be non-negative")
    return max(abhp_terms(a)) * n * n + g * n * n
