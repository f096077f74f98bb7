"""Extremal edge-coloured graphs and random instances.

Every construction allocates colours from a running counter, so the
palettes of different components are disjoint by construction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, count
from math import comb

from .graph import Digraph, EdgeColouredGraph


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class Parts:
    """Vertex ranges of the three parts X, Y, Z (half-open intervals)."""
    x: range
    y: range
    z: range
    x_classes: tuple[range, ...]


def prop15_parts(n: int, k: int) -> Parts:
    if not 9 * k >= n:
        raise ConstructionError(f"need n/9 <= k, got n={n}, k={k}")
    if not 3 * k <= n:
        raise ConstructionError(f"need k <= n/3, got n={n}, k={k}")
    if (n - 2 * k) % 7:
        raise ConstructionError(f"need n = 2k (mod 7), got n={n}, k={k}")
    half = 3 * (n - 2 * k) // 7
    nx = 2 * half
    ny = (18 * k - 2 * n) // 7 - 1
    nz = half + 1
    if half <= 0:
        raise ConstructionError(f"|X| = {nx} must be positive")
    if ny <= 0:
        raise ConstructionError(f"|Y| = (18k-2n)/7-1 = {ny} must be positive")
    assert nx + ny + nz == n
    x = range(0, nx)
    return Parts(x, range(nx, nx + ny), range(nx + ny, n),
                 (range(0, half), range(half, nx)))


def prop16_parts(r: int, m: int) -> Parts:
    if r < 3:
        raise ConstructionError(f"need r >= 3, got r={r}")
    if m <= 0 or m % r:
        raise ConstructionError(f"need m a positive multiple of r, got m={m}, r={r}")
    nx = (r - 1) * m
    ny = (r - 1) ** 2 * m - 1
    nz = (r - 2) * m + 1
    n = nx + ny + nz
    assert n == (r * r - 2) * m
    classes = tuple(range(i * m, (i + 1) * m) for i in range(r - 1))
    return Parts(range(0, nx), range(nx, nx + ny), range(nx + ny, n), classes)


def _three_part_graph(parts: Parts) -> EdgeColouredGraph:
    fresh = count()
    edges = []
    # X: rainbow complete multipartite on the given classes
    for a, b in combinations(parts.x_classes, 2):
        for u in a:
            for v in b:
                edges.append((u, v, next(fresh)))
    yz = list(parts.y) + list(parts.z)
    for u, v in combinations(yz, 2):
        edges.append((u, v, next(fresh)))
    for y in parts.y:
        c = next(fresh)
        for x in parts.x:
            edges.append((x, y, c))
    return EdgeColouredGraph(parts.z.stop, edges)


def build_prop15(n: int, k: int) -> EdgeColouredGraph:
    """Graph with minimum colour degree (n+12k)/7 - 1 and no rainbow
    triangle tiling of size k."""
    return _three_part_graph(prop15_parts(n, k))


def prop15_colour_degree(n: int, k: int) -> int:
    return (n + 12 * k) // 7 - 1


def valid_prop15_params(n_max: int) -> list[tuple[int, int]]:
    out = []
    for n in range(1, n_max + 1):
        for k in range(1, n // 3 + 1):
            try:
                prop15_parts(n, k)
            except ConstructionError:
                continue
            out.append((n, k))
    return out


def build_prop16(r: int, m: int) -> EdgeColouredGraph:
    """Graph on (r^2-2)m vertices with minimum colour degree
    (r^2-r-1)m - 1 and no perfect rainbow K_r tiling."""
    return _three_part_graph(prop16_parts(r, m))


def prop16_colour_degree(r: int, m: int) -> int:
    return (r * r - r - 1) * m - 1


def round_robin_colour(i: int, j: int, m: int) -> int:
    """Colour of edge ij in the round-robin 1-factorisation of K_m (m even)."""
    last = m - 1
    if i == last:
        return (2 * j) % last
    if j == last:
        return (2 * i) % last
    return (i + j) % last


def build_proper_bipartite(n: int) -> EdgeColouredGraph:
    """Properly coloured K_{n/2,n/2}; colour of a_i b_j is (i + j) mod n/2."""
    if n < 2 or n % 2:
        raise ConstructionError(f"need even n >= 2, got {n}")
    h = n // 2
    return EdgeColouredGraph(n, [(i, h + j, (i + j) % h) for i in range(h) for j in range(h)])


def build_rainbow_complete(n: int) -> EdgeColouredGraph:
    return EdgeColouredGraph(n, [(u, v, c) for c, (u, v) in enumerate(combinations(range(n), 2))])


def build_monochromatic_complete(n: int, colour: int = 0) -> EdgeColouredGraph:
    return EdgeColouredGraph(n, [(u, v, colour) for u, v in combinations(range(n), 2)])


def build_proper_multipartite(r: int, size: int) -> EdgeColouredGraph:
    """Complete r-partite graph, parts ``[i*size, (i+1)*size)``, coloured by
    restricting the round-robin factorisation of K_{r*size} (palettes are
    shared between part pairs)."""
    n = r * size
    m = n + (n % 2)
    edges = [(u, v, round_robin_colour(u, v, m)) for u, v in combinations(range(n), 2)
             if u // size != v // size]
    return EdgeColouredGraph(n, edges)


def random_coloured(n: int, p: float, q: int, seed, injective: bool = False) -> EdgeColouredGraph:
    """Each pair kept with probability p; colours uniform in ``range(q)``.

    With ``injective`` the kept edges get distinct colours drawn without
    replacement (requires q >= number of pairs).
    """
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    if q < 1:
        raise ValueError("palette must be non-empty")
    rng = random.Random(seed)
    pairs = [e for e in combinations(range(n), 2) if rng.random() < p]
    if injective:
        if q < comb(n, 2):
            raise ValueError("injective mode needs q >= C(n,2)")
        cols = rng.sample(range(q), len(pairs))
    else:
        cols = [rng.randrange(q) for _ in pairs]
    return EdgeColouredGraph(n, [(u, v, c) for (u, v), c in zip(pairs, cols)])


def random_digraph(n: int, p: float, seed, min_out: int = 0) -> Digraph:
    """Arcs independently with probability p, then repaired: every vertex
    below ``min_out`` receives uniformly random extra out-arcs.

    The repair order is drawn independently of ``min_out``, so for a fixed
    seed raising ``min_out`` only adds arcs."""
    if min_out > n - 1:
        raise ValueError(f"min out-degree {min_out} impossible on {n} vertices")
    rng = random.Random(seed)
    out = [{v for v in range(n) if v != u and rng.random() < p} for u in range(n)]
    for u in range(n):
        missing = [v for v in range(n) if v != u and v not in out[u]]
        rng.shuffle(missing)
        need = min_out - len(out[u])
        if need > 0:
            out[u].update(missing[:need])
    return Digraph(n, [(u, v) for u in range(n) for v in sorted(out[u])])


def random_tournament(n: int, seed) -> Digraph:
    rng = random.Random(seed)
    return Digraph(n, [(u, v) if rng.random() < 0.5 else (v, u)
                       for u, v in combinations(range(n), 2)])


def complete_digraph(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def transitive_tournament(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u, v in combinations(range(n), 2)])
