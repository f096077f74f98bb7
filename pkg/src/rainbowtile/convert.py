"""Conversion of edge-coloured graphs to digraphs, with the checks and the
reduced-digraph sampler built on top of it."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .graph import Digraph, EdgeColouredGraph, critical_subgraph, min_colour_degree
from .rainbow import in_k31


@dataclass(frozen=True)
class Star:
    colour: int
    centre: int
    leaves: tuple[int, ...]


@dataclass
class ConversionResult:
    digraph: Digraph
    stars: dict[int, list[Star]]
    critical: EdgeColouredGraph
    guarantees: dict[str, bool] = field(default_factory=dict)


def monochromatic_stars(g: EdgeColouredGraph) -> dict[int, list[Star]]:
    """Split each colour class of an edge-critical graph into its stars.

    A single-edge star gets its smaller endpoint as centre.  Raises if some
    colour class is not a disjoint union of stars.
    """
    by_colour: dict[int, list[tuple[int, int]]] = {}
    for u, v, c in g.coloured_edges():
        by_colour.setdefault(c, []).append((u, v))
    stars: dict[int, list[Star]] = {}
    for c, es in sorted(by_colour.items()):
        deg: dict[int, int] = {}
        for u, v in es:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        centres = {w for w, d in deg.items() if d > 1}
        out = []
        taken = set()
        for w in sorted(centres):
            leaves = tuple(sorted(x for e in es if w in e for x in e if x != w))
            if any(x in centres for x in leaves):
                raise ValueError(f"colour {c} contains a monochromatic path on 4 vertices or a triangle")
            out.append(Star(c, w, leaves))
            taken.update(leaves)
            taken.add(w)
        for u, v in es:
            if u not in taken and v not in taken:
                out.append(Star(c, u, (v,)))
        stars[c] = out
    return stars


def convert(g: EdgeColouredGraph) -> ConversionResult:
    """Orient the critical subgraph leaf -> centre; stars with at most
    sqrt(n) leaves also get one arc centre -> smallest leaf."""
    crit = critical_subgraph(g)
    stars = monochromatic_stars(crit)
    arcs = set()
    n = g.n
    for ss in stars.values():
        for st in ss:
            for leaf in st.leaves:
                arcs.add((leaf, st.centre))
            if len(st.leaves) ** 2 <= n:
                arcs.add((st.centre, st.leaves[0]))
    h = Digraph(n, sorted(arcs))
    result = ConversionResult(h, stars, crit)
    result.guarantees = verify_conversion(g, result).as_flags()
    return result


@dataclass
class ConversionReport:
    min_out_degree: int
    min_colour_degree: int
    out_degree_ok: bool
    base_subgraph_ok: bool
    rainbow_out_ok: bool
    in_colour_ok: bool
    colour_path_ok: bool
    worst_in_colour: int
    worst_colour_path: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_flags(self) -> dict[str, bool]:
        return {"out_degree": self.out_degree_ok, "base_subgraph": self.base_subgraph_ok,
                "rainbow_out_neighbourhood": self.rainbow_out_ok,
                "same_colour_in_neighbours": self.in_colour_ok,
                "colour_path_pairs": self.colour_path_ok}


def verify_conversion(g: EdgeColouredGraph, result: ConversionResult | Digraph) -> ConversionReport:
    """Recheck every conversion guarantee from g and the digraph alone.

    Comparisons with sqrt(n) are done on squares so they stay exact.
    """
    h = result.digraph if isinstance(result, ConversionResult) else result
    n = g.n
    viol = []
    base_ok = all(g.has_edge(u, v) for u, v in h.arcs)
    if not base_ok:
        viol.append("base graph of H is not a subgraph of G")
    dc = min_colour_degree(g)
    dp = h.min_out_degree() if n else 0
    gap = dc - dp
    out_ok = gap <= 0 or gap * gap <= n
    if not out_ok:
        viol.append(f"min out-degree {dp} < {dc} - sqrt({n})")
    rainbow_ok = True
    if base_ok:
        for u in range(n):
            cols = [g.colour(u, w) for w in h.out[u]]
            if len(cols) != len(set(cols)):
                rainbow_ok = False
                viol.append(f"out-neighbourhood of {u} is not rainbow")
                break
    worst_in = 0
    worst_path = 0
    if base_ok:
        for u, v in h.arcs:
            c = g.colour(u, v)
            k = sum(1 for w in h.inn[u] if g.colour(u, w) == c)
            worst_in = max(worst_in, k)
        for v in range(n):
            k = sum(1 for x in h.inn[v] for y in h.out[v]
                    if x != y and g.colour(x, v) == g.colour(v, y))
            worst_path = max(worst_path, k)
    in_ok = worst_in * worst_in <= n
    path_ok = worst_path <= n
    if not in_ok:
        viol.append(f"{worst_in} same-colour in-neighbours exceeds sqrt({n})")
    if not path_ok:
        viol.append(f"{worst_path} colour-path pairs exceeds n={n}")
    return ConversionReport(dp, dc, out_ok, base_ok, rainbow_ok, in_ok, path_ok,
                            worst_in, worst_path, viol)


def count_bad_triples(g: EdgeColouredGraph, h: Digraph, v: int | None = None) -> int:
    """Triples inducing a K_{3,1} member in h whose colouring in g is not rainbow."""
    total = 0
    for s in combinations(range(g.n), 3):
        if v is not None and v not in s:
            continue
        if not in_k31(h, *s):
            continue
        a, b, c = s
        if len({g.colour(a, b), g.colour(a, c), g.colour(b, c)}) < 3:
            total += 1
    return total


def bad_triple_counts(g: EdgeColouredGraph, h: Digraph) -> tuple[int, list[int]]:
    """Total bad-triple count and the per-vertex counts in one pass."""
    total = 0
    per = [0] * g.n
    for s in combinations(range(g.n), 3):
        if not in_k31(h, *s):
            continue
        a, b, c = s
        if len({g.colour(a, b), g.colour(a, c), g.colour(b, c)}) < 3:
            total += 1
            for x in s:
                per[x] += 1
    return total, per


def bad_triple_bounds_ok(n: int, total: int, per_vertex_max: int) -> bool:
    """total <= 3n^2 and every per-vertex count <= 3n^(3/2) (squared form)."""
    return total <= 3 * n * n and per_vertex_max ** 2 <= 9 * n ** 3


C3_ARCS = frozenset({(0, 1), (1, 2), (2, 0)})
J3_ARCS = frozenset({(0, 1), (0, 2), (1, 2), (2, 1)})


def _contains_pattern(d: Digraph, s, pattern) -> bool:
    for perm in permutations(s):
        if all(d.has_arc(perm[a], perm[b]) for a, b in pattern):
            return True
    return False


@dataclass(frozen=True)
class FamilyMembership:
    member: bool
    complete_base: bool
    min_out: int
    contains_c3: bool | None = None
    contains_j3: bool | None = None


def classify_family(d: Digraph, s_set, r: int, s: int, require_complete_base: bool = True) -> FamilyMembership:
    """Membership of d[S] in K_{r,s} (complete base) or K*_{r,s} (flag off)."""
    vs = tuple(s_set)
    if len(set(vs)) != r:
        raise ValueError(f"expected {r} distinct vertices, got {vs}")
    if not 0 <= s < r:
        raise ValueError(f"need 0 <= s < r, got s={s}, r={r}")
    inside = set(vs)
    min_out = min(len(d.out[v] & inside) for v in vs)
    complete = all(d.adjacent(a, b) for a, b in combinations(vs, 2))
    member = min_out >= s and (complete or not require_complete_base)
    c3 = j3 = None
    if r == 3:
        c3 = _contains_pattern(d, vs, C3_ARCS)
        j3 = _contains_pattern(d, vs, J3_ARCS)
    return FamilyMembership(member, complete, min_out, c3, j3)


def is_family_member(d: Digraph, vs, s: int, require_complete_base: bool = True) -> bool:
    inside = set(vs)
    if any(len(d.out[v] & inside) < s for v in vs):
        return False
    if require_complete_base:
        return all(d.adjacent(a, b) for a, b in combinations(vs, 2))
    return True


@dataclass
class PairDensityMatrix:
    """Ordered-pair densities d(i,j) and double-edge densities d±(i,j)."""
    k: int
    density: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    double: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def d(self, i, j) -> Fraction:
        return self.density.get((i, j), Fraction(0))

    def dpm(self, i, j) -> Fraction:
        return self.double.get((min(i, j), max(i, j)), Fraction(0))

    def validate(self):
        for (i, j), x in list(self.density.items()) + list(self.double.items()):
            if not (0 <= i < self.k and 0 <= j < self.k) or i == j:
                raise ValueError(f"bad cluster pair ({i},{j})")
            if not 0 <= x <= 1:
                raise ValueError(f"density {x} outside [0,1] at ({i},{j})")
        for (i, j), x in self.double.items():
            if x > min(self.d(i, j), self.d(j, i)):
                raise ValueError(f"double density {x} exceeds min(d({i},{j}), d({j},{i}))")


class AmbiguousBranch(RuntimeError):
    pass


def sample_reduced_digraph(m: PairDensityMatrix, seed, strict: bool = False) -> Digraph:
    """Random reduced digraph: pairs with positive double density get both
    arcs; otherwise one arc i->j with probability d(i,j)/(d(i,j)+d(j,i)),
    else j->i; pairs with zero density in both directions get nothing.

    Coin flips compare ``randrange(denominator)`` with the numerator, so
    the probabilities are exact.  ``strict`` refuses the single-arc branch,
    whose guard is stated with a diagonal density in the source argument.
    """
    m.validate()
    rng = random.Random(seed)
    arcs = []
    for i, j in combinations(range(m.k), 2):
        if m.dpm(i, j) > 0:
            arcs += [(i, j), (j, i)]
            continue
        tot = m.d(i, j) + m.d(j, i)
        if tot == 0:
            continue
        if strict:
            raise AmbiguousBranch(f"single-arc branch reached for pair ({i},{j})")
        p = m.d(i, j) / tot
        if rng.randrange(p.denominator) < p.numerator:
            arcs.append((i, j))
        else:
            arcs.append((j, i))
    return Digraph(m.k, arcs)


def arc_probability(m: PairDensityMatrix, i: int, j: int) -> Fraction:
    """Exact probability that the sampler emits arc i->j."""
    if m.dpm(i, j) > 0:
        return Fraction(1)
    tot = m.d(i, j) + m.d(j, i)
    return m.d(i, j) / tot if tot else Fraction(0)
