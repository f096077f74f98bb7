"""Perfect fractional (r, r-2)-tilings, vertex-weight dual certificates and
the link-graph matching inequality.  Exact rational arithmetic only."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .constructions import random_digraph
from .convert import is_family_member
from .graph import Digraph, Graph
from .simplex import simplex_max
from .thresholds import min_out_degree_threshold
from .tiling import CopyLimitExceeded, max_copies, max_matching


@dataclass(frozen=True)
class CopyHypergraph:
    n: int
    r: int
    edges: tuple[tuple[int, ...], ...]


def build_copy_hypergraph(d: Digraph, r: int, cap: int | None = None) -> CopyHypergraph:
    """r-graph whose edges are the r-sets inducing a member of K_{r,r-2}."""
    if r < 3:
        raise ValueError("r must be at least 3")
    cap = cap or max_copies()
    edges = []
    for s in combinations(range(d.n), r):
        if is_family_member(d, s, r - 2):
            edges.append(s)
            if len(edges) > cap:
                raise CopyLimitExceeded(f"more than {cap} copies")
    return CopyHypergraph(d.n, r, tuple(edges))


def _incidence(f: CopyHypergraph):
    A = [[0] * len(f.edges) for _ in range(f.n)]
    for j, e in enumerate(f.edges):
        for v in e:
            A[v][j] = 1
    return A


@dataclass
class FractionalMatching:
    value: Fraction
    weights: list[Fraction]
    perfect: bool
    dual: list[Fraction]  # optimal fractional vertex cover

    def loads(self, f: CopyHypergraph) -> list[Fraction]:
        load = [Fraction(0)] * f.n
        for w, e in zip(self.weights, f.edges):
            for v in e:
                load[v] += w
        return load


def solve_fractional_matching(f: CopyHypergraph) -> FractionalMatching:
    """Maximum fractional matching; perfect iff the optimum equals n/r."""
    if f.n == 0:
        return FractionalMatching(Fraction(0), [], True, [])
    if not f.edges:
        return FractionalMatching(Fraction(0), [], False, [Fraction(0)] * f.n)
    sol = simplex_max(_incidence(f), [1] * f.n, [1] * len(f.edges))
    return FractionalMatching(sol.value, sol.x, sol.value == Fraction(f.n, f.r), sol.y)


class ContractViolation(ValueError):
    pass


@dataclass
class DualCertificate:
    omega: list[Fraction]
    raw: list[Fraction] = field(default_factory=list)


def farkas_raw_weighting(f: CopyHypergraph) -> list[Fraction]:
    """Vertex weighting with every edge sum >= 0 and negative total.

    Phase one for ``A^T w + a = 1`` minimises sum(a) = n - r*sum(w), so it
    is the packing LP with profit r per edge and the slacks as artificials.
    Its optimal dual y covers every edge with weight >= r; y - 1 is then a
    Farkas vector whenever the phase-one optimum is positive.
    """
    if f.edges:
        sol = simplex_max(_incidence(f), [1] * f.n, [f.r] * len(f.edges))
        if sol.value == f.n:
            raise ContractViolation("hypergraph has a perfect fractional matching")
        y = sol.y
    else:
        if f.n == 0:
            raise ContractViolation("empty vertex set is trivially perfect")
        y = [Fraction(0)] * f.n
    return [yi - 1 for yi in y]


def normalise_weighting(raw: list[Fraction], r: int) -> list[Fraction]:
    """Scale so the minimum is -1, cap at r-1, then map w -> (w+1)/r."""
    low = min(raw)
    if low >= 0:
        raise ValueError("raw weighting must have a negative entry")
    scaled = [w / -low for w in raw]
    capped = [min(w, Fraction(r - 1)) for w in scaled]
    return [(w + 1) / r for w in capped]


def farkas_certificate(f: CopyHypergraph) -> DualCertificate:
    raw = farkas_raw_weighting(f)
    if sum(raw) >= 0 or any(sum(raw[v] for v in e) < 0 for e in f.edges):
        raise AssertionError("phase-one dual is not a Farkas vector")
    return DualCertificate(normalise_weighting(raw, f.r), raw)


def link_graph(f: CopyHypergraph, v: int) -> Graph:
    if f.r != 3:
        raise ValueError("link graphs are defined here for 3-graphs only")
    return Graph(f.n, [tuple(x for x in e if x != v) for e in f.edges if v in e])


@dataclass
class LinkCheck:
    vertex: int
    matching: int
    total: Fraction
    required: Fraction

    @property
    def ok(self) -> bool:
        return self.total >= self.required


def certificate_link_inequality(f: CopyHypergraph, omega, v: int) -> LinkCheck:
    """sum(omega) >= nu * (1 - omega(v)), nu = matching number of the link of v."""
    nu, _ = max_matching(link_graph(f, v))
    return LinkCheck(v, nu, sum(omega, Fraction(0)), nu * (1 - Fraction(omega[v])))


@dataclass
class CertificateReport:
    in_unit_interval: bool
    edges_covered: bool
    min_zero: bool
    total_below: bool
    link_checks: list[LinkCheck]
    failing_edge: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return (self.in_unit_interval and self.edges_covered and self.min_zero
                and self.total_below and all(c.ok for c in self.link_checks))


def verify_certificate(f: CopyHypergraph, omega) -> CertificateReport:
    omega = [Fraction(w) for w in omega]
    if len(omega) != f.n:
        raise ValueError(f"weighting has {len(omega)} entries for {f.n} vertices")
    bad = next((e for e in f.edges if sum(omega[v] for v in e) < 1), None)
    links = []
    if f.r == 3:
        links = [certificate_link_inequality(f, omega, v) for v in range(f.n)]
    return CertificateReport(
        in_unit_interval=all(0 <= w <= 1 for w in omega),
        edges_covered=bad is None,
        min_zero=f.n > 0 and min(omega) == 0,
        total_below=sum(omega) < Fraction(f.n, f.r),
        link_checks=links,
        failing_edge=bad,
    )


def verify_perfect(f: CopyHypergraph, weights) -> bool:
    load = [Fraction(0)] * f.n
    for w, e in zip(weights, f.edges):
        if w < 0:
            return False
        for v in e:
            load[v] += w
    return all(x == 1 for x in load)


@dataclass
class ProbeStats:
    r: int
    n: int
    min_out: int
    trials: int
    perfect: int
    failures: list[dict]

    @property
    def rate(self) -> Fraction:
        return Fraction(self.perfect, self.trials) if self.trials else Fraction(0)

    def to_dict(self):
        return {"r": self.r, "n": self.n, "min_out": self.min_out, "trials": self.trials,
                "perfect": self.perfect, "rate": str(self.rate), "failures": self.failures}


def desk_check_thresholds(r: int, n: int, trials: int, margin: int = 0, seed=0,
                          min_out: int | None = None, p: float | None = None) -> ProbeStats:
    """Sample digraphs with prescribed minimum out-degree and count those
    with a perfect fractional (r, r-2)-tiling.

    ``min_out`` defaults to the smallest integer at or above the threshold
    coefficient times n, plus ``margin``.  Infeasible samples are returned
    with their certificates.
    """
    if n % r:
        raise ValueError(f"n={n} is not divisible by r={r}")
    if min_out is None:
        min_out = min_out_degree_threshold(r, n) + margin
    min_out = min(min_out, n - 1)
    rng = random.Random(seed)
    perfect = 0
    failures = []
    for t in range(trials):
        s = rng.getrandbits(64)
        prob = p if p is not None else rng.random()
        d = random_digraph(n, prob, s, min_out)
        f = build_copy_hypergraph(d, r)
        fm = solve_fractional_matching(f)
        if fm.perfect:
            perfect += 1
        else:
            cert = farkas_certificate(f)
            failures.append({"trial": t, "seed": s, "p": prob,
                             "arcs": sorted(d.arcs),
                             "certificate": [str(w) for w in cert.omega]})
    return ProbeStats(r, n, min_out, trials, perfect, failures)
