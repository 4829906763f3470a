"""Graphs on {1..m} whose edge sets are families of 2-subsets.

The degree square sum Sigma(G) = sum of deg(v)^2 links straight back to the
intersection machinery: Sigma = 2*K + 2r for a graph with r edges, where K
is the pairwise intersection sum of the edge family.  Maximizing Sigma over
r-edge graphs is therefore the ell = 2 case of the K_r problem, and this
module keeps an independent, degree-based exhaustion to cross-check that
route.  Exhaustion is over labeled edge subsets, never isomorphism classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from heapq import nlargest

from .combinat import SubsetIndexer
from .families import (
    BudgetError,
    DEFAULT_FAMILY_BUDGET,
    SubsetFamily,
    k_lambda,
    k_r_value,
)

_SWEEP_CAP = 1 << 22


@dataclass(frozen=True)
class Graph:
    """Simple graph: ground set {1..m} plus an edge family with ell = 2."""

    m: int
    edges: SubsetFamily

    def __post_init__(self):
        if self.edges.ell != 2:
            raise ValueError(f"edge family must have ell=2, got {self.edges.ell}")
        if self.edges.m != self.m:
            raise ValueError("edge family lives on a different ground set")

    @classmethod
    def from_edges(cls, m: int, pairs) -> "Graph":
        return cls(m, SubsetFamily.from_sets(2, m, pairs))

    @property
    def r(self) -> int:
        return self.edges.size

    @property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.m
        for mask in self.edges.members:
            u = (mask & -mask).bit_length() - 1
            v = mask.bit_length() - 1
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def complement(self) -> "Graph":
        have = set(self.edges.members)
        rest = tuple(a for a in SubsetIndexer(2, self.m).masks if a not in have)
        return Graph(self.m, SubsetFamily(2, self.m, rest))

    @property
    def edge_pairs(self) -> tuple[tuple[int, int], ...]:
        return self.edges.sets


def sigma(g: Graph) -> int:
    """Sum of squared vertex degrees."""
    return sum(d * d for d in g.degrees)


def sigma_from_k(fam: SubsetFamily) -> int:
    """Sigma computed from the edge family alone: 2*K + 2r."""
    if fam.ell != 2:
        raise ValueError(f"needs an edge family (ell=2), got ell={fam.ell}")
    return 2 * k_lambda(fam) + 2 * fam.size


def is_star(g: Graph) -> bool:
    """One center of degree r, r leaves of degree 1, the rest isolated."""
    r = g.r
    if g.m < r + 1:
        return False
    expected = [r] + [1] * r + [0] * (g.m - r - 1)
    return sorted(g.degrees, reverse=True) == sorted(expected, reverse=True)


def is_triangle(g: Graph) -> bool:
    """Three mutually incident edges; the only non-star whose edges
    pairwise intersect."""
    if g.r != 3 or g.m < 3:
        return False
    expected = [2, 2, 2] + [0] * (g.m - 3)
    return sorted(g.degrees, reverse=True) == expected


@dataclass(frozen=True)
class ThresholdCertificate:
    """Outcome of threshold recognition.

    When the graph is threshold, build_sequence lists (tag, vertex) steps
    that reconstruct it from nothing: each step adds the vertex either with
    no edges ("isolated") or joined to everything added before ("universal").
    """

    is_threshold: bool
    build_sequence: tuple[tuple[str, int], ...] | None = None


def is_threshold(g: Graph) -> ThresholdCertificate:
    """Greedy peeling: repeatedly delete an isolated or universal vertex.

    A graph empties under this peeling exactly when it is threshold, and
    deleting any eligible vertex first is safe, so the smallest label wins
    for determinism.
    """
    adj = [0] * g.m
    for mask in g.edges.members:
        u = (mask & -mask).bit_length() - 1
        v = mask.bit_length() - 1
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    alive = (1 << g.m) - 1
    n = g.m
    peel: list[tuple[str, int]] = []
    while n:
        pick = None
        rest = alive
        while rest:
            bit = rest & -rest
            v = bit.bit_length() - 1
            d = (adj[v] & alive).bit_count()
            if d == 0:
                pick = ("isolated", v)
                break
            if d == n - 1:
                pick = ("universal", v)
                break
            rest ^= bit
        if pick is None:
            return ThresholdCertificate(False)
        tag, v = pick
        peel.append((tag, v + 1))
        alive ^= 1 << v
        n -= 1
    return ThresholdCertificate(True, tuple(reversed(peel)))


def de_caen_bound(m: int, r: int) -> Fraction:
    """Upper bound r*(2r/(m-1) + m - 2) on Sigma over r-edge graphs, exact."""
    if m < 2:
        raise ValueError(f"bound needs m >= 2, got m={m}")
    if r < 0:
        raise ValueError(f"negative edge count r={r}")
    return Fraction(2 * r * r, m - 1) + r * (m - 2)


def _edge_ends(masks) -> list[tuple[int, int]]:
    return [((a & -a).bit_length() - 1, a.bit_length() - 1) for a in masks]


def _sigma_prefix(ends, r: int, m: int) -> int:
    deg = [0] * m
    total = 0
    for u, v in ends[:r]:
        total += 2 * (deg[u] + deg[v]) + 2
        deg[u] += 1
        deg[v] += 1
    return total


def _sigma_search_best(ends, k: int, m: int, r: int, prune: bool) -> int:
    """Exact max Sigma over r-edge graphs, branch and bound on degrees.

    Bound: a candidate edge tied to the chosen part gains exactly
    2*(deg(u)+deg(v)) + 2 now; two undecided edges share at most one
    endpoint.  Summing the top s exact gains plus 2*C(s,2) + 2s never
    underestimates a completion.
    """
    deg = [0] * m
    best = _sigma_prefix(ends, r, m)

    def go(start: int, t: int, cur: int) -> None:
        nonlocal best
        s = r - t
        if s == 0:
            if cur > best:
                best = cur
            return
        gains = [2 * (deg[u] + deg[v]) + 2 for u, v in ends[start:]]
        if prune:
            ub = cur + sum(nlargest(s, gains)) + 2 * s * (s - 1) // 2
            if ub <= best:
                return
        if s == 1:
            top = cur + max(gains)
            if top > best:
                best = top
            return
        for off in range(k - s + 1 - start):
            u, v = ends[start + off]
            deg[u] += 1
            deg[v] += 1
            go(start + off + 1, t + 1, cur + gains[off])
            deg[u] -= 1
            deg[v] -= 1

    if r == 0:
        return 0
    go(0, 0, 0)
    return best


def _sigma_collect(ends, k: int, m: int, r: int, target: int, limit=None):
    """Edge index tuples of all r-edge graphs attaining target, colex order."""
    deg = [0] * m
    chosen: list[int] = []
    out: list[tuple[int, ...]] = []

    def go(start: int, cur: int) -> bool:
        s = r - len(chosen)
        if s == 0:
            if cur == target:
                out.append(tuple(chosen))
                return limit is not None and len(out) >= limit
            return False
        gains = [2 * (deg[u] + deg[v]) + 2 for u, v in ends[start:]]
        if cur + sum(nlargest(s, gains)) + 2 * s * (s - 1) // 2 < target:
            return False
        for off in range(k - s + 1 - start):
            u, v = ends[start + off]
            chosen.append(start + off)
            deg[u] += 1
            deg[v] += 1
            stop = go(start + off + 1, cur + gains[off])
            deg[u] -= 1
            deg[v] -= 1
            chosen.pop()
            if stop:
                return True
        return False

    if r == 0:
        return [()]
    go(0, 0)
    return out


class _SigmaSweep:
    """Per-r maxima of Sigma from one walk over all edge subsets."""

    def __init__(self, m: int, budget: int):
        idx = SubsetIndexer(2, m)
        k = idx.size
        if 1 << k > budget:
            raise BudgetError(
                f"{1 << k} edge subsets for m={m} exceed budget {budget}"
            )
        masks = idx.masks
        ends = _edge_ends(masks)
        best = [-1] * (k + 1)
        attainers: list[list[tuple[int, ...]]] = [[] for _ in range(k + 1)]
        deg = [0] * m
        chosen: list[int] = []

        def go(start: int, cur: int) -> None:
            t = len(chosen)
            if cur > best[t]:
                best[t] = cur
                attainers[t] = [tuple(chosen)]
            elif cur == best[t]:
                attainers[t].append(tuple(chosen))
            for j in range(start, k):
                u, v = ends[j]
                gain = 2 * (deg[u] + deg[v]) + 2
                chosen.append(j)
                deg[u] += 1
                deg[v] += 1
                go(j + 1, cur + gain)
                deg[u] -= 1
                deg[v] -= 1
                chosen.pop()

        go(0, 0)
        self.m = m
        self.masks = masks
        self.best = best
        self.attainers = attainers

    def graph(self, r: int, which: int = 0) -> Graph:
        idxs = self.attainers[r][which]
        fam = SubsetFamily(2, self.m, tuple(self.masks[i] for i in idxs))
        return Graph(self.m, fam)


_sigma_sweep_cache: dict[int, _SigmaSweep] = {}


def _sigma_sweep(m: int, budget: int) -> _SigmaSweep:
    hit = _sigma_sweep_cache.get(m)
    if hit is None:
        hit = _SigmaSweep(m, budget)
        _sigma_sweep_cache[m] = hit
    return hit


def sigma_exhaustive(
    m: int, r: int, *, budget: int = DEFAULT_FAMILY_BUDGET
) -> tuple[int, Graph]:
    """Max Sigma over all r-edge graphs on {1..m} plus the colex-least
    maximizer, by direct enumeration of edge subsets."""
    idx = SubsetIndexer(2, m)
    k = idx.size
    if not 0 <= r <= k:
        raise ValueError(f"r={r} outside 0..{k} for m={m}")
    if 1 << k <= min(_SWEEP_CAP, budget):
        sweep = _sigma_sweep(m, budget)
        return sweep.best[r], sweep.graph(r)
    if math.comb(k, r) > budget:
        raise BudgetError(
            f"{math.comb(k, r)} candidate graphs for (m={m}, r={r}) "
            f"exceed budget {budget}"
        )
    masks = idx.masks
    ends = _edge_ends(masks)
    value = _sigma_search_best(ends, k, m, r, True)
    first = _sigma_collect(ends, k, m, r, value, limit=1)[0]
    fam = SubsetFamily(2, m, tuple(masks[i] for i in first))
    return value, Graph(m, fam)


def sigma_maximizers(
    m: int, r: int, *, budget: int = DEFAULT_FAMILY_BUDGET
) -> tuple[Graph, ...]:
    """Every r-edge graph attaining the Sigma maximum, in colex order."""
    idx = SubsetIndexer(2, m)
    k = idx.size
    if not 0 <= r <= k:
        raise ValueError(f"r={r} outside 0..{k} for m={m}")
    if 1 << k <= min(_SWEEP_CAP, budget):
        sweep = _sigma_sweep(m, budget)
        return tuple(sweep.graph(r, i) for i in range(len(sweep.attainers[r])))
    if math.comb(k, r) > budget:
        raise BudgetError(
            f"{math.comb(k, r)} candidate graphs for (m={m}, r={r}) "
            f"exceed budget {budget}"
        )
    masks = idx.masks
    ends = _edge_ends(masks)
    value = _sigma_search_best(ends, k, m, r, True)
    return tuple(
        Graph(m, SubsetFamily(2, m, tuple(masks[i] for i in chosen)))
        for chosen in _sigma_collect(ends, k, m, r, value)
    )


@dataclass(frozen=True)
class SigmaRecord:
    """Maximum Sigma for (m, r) with witness and the applicable bounds."""

    m: int
    r: int
    sigma_max: int
    maximizer: Graph
    de_caen_bound: Fraction
    trivial_bound: int | None
    dual_bound: int | None


def dual_bound_value(m: int, r: int) -> int:
    """Upper bound on Sigma for dense graphs, C(m-1,2) <= r <= C(m,2)."""
    k = math.comb(m, 2)
    if not math.comb(m - 1, 2) <= r <= k:
        raise ValueError(f"r={r} outside the dense range for m={m}")
    c = k - r
    return m * (m - 1) * (m - 2) + c * (c - 1) - 4 * c * (m - 2) + 2 * r


def optimal_graphs(
    m: int, r: int, *, budget: int = DEFAULT_FAMILY_BUDGET
) -> SigmaRecord:
    """Maximum Sigma computed two independent ways, which must agree.

    Direct route: exhaustive max over edge subsets on the degree side.
    Family route: 2*K_r(2, m) + 2r through the intersection machinery.
    Disagreement means a bug in one of them and raises ArithmeticError.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got m={m}")
    direct, maximizer = sigma_exhaustive(m, r, budget=budget)
    via_k = 2 * k_r_value(2, m, r, budget=budget) + 2 * r
    if direct != via_k:
        raise ArithmeticError(
            f"degree-side exhaustion gives {direct} but the intersection-sum "
            f"route gives {via_k} for (m={m}, r={r})"
        )
    trivial = r * (r + 1) if (m >= 4 and r <= m - 1) else None
    k = math.comb(m, 2)
    dual = dual_bound_value(m, r) if math.comb(m - 1, 2) <= r <= k else None
    return SigmaRecord(m, r, direct, maximizer, de_caen_bound(m, r), trivial, dual)


@dataclass(frozen=True)
class TrivialBoundReport:
    """Exhaustive audit of the sparse-range bound Sigma <= r*(r+1)."""

    m: int
    r: int
    bound: int
    sigma_max: int
    attained: bool
    maximizers: tuple[Graph, ...]
    all_stars: bool
    gap_identity_ok: bool
    gap_positive: bool | None


def trivial_bound_check(
    m: int, r: int, *, budget: int = DEFAULT_FAMILY_BUDGET
) -> TrivialBoundReport:
    """Check Sigma <= r*(r+1) for r <= m-1, m >= 4, equality only at stars.

    Also confirms the exact gap to the de Caen bound,
    de_caen - r*(r+1) = r*(m-3)*(m-1-r)/(m-1), strictly positive for
    1 <= r < m-1.
    """
    if m < 4:
        raise ValueError(f"sparse-range bound needs m >= 4, got m={m}")
    if not 0 <= r <= m - 1:
        raise ValueError(f"sparse-range bound needs r <= m-1, got r={r}")
    bound = r * (r + 1)
    maxs = sigma_maximizers(m, r, budget=budget)
    sigma_max = sigma(maxs[0])
    gap = de_caen_bound(m, r) - bound
    gap_ok = gap == Fraction(r * (m - 3) * (m - 1 - r), m - 1)
    gap_pos = gap > 0 if 1 <= r < m - 1 else None
    return TrivialBoundReport(
        m,
        r,
        bound,
        sigma_max,
        sigma_max == bound,
        maxs,
        all(is_star(g) for g in maxs),
        gap_ok,
        gap_pos,
    )


def complement_sigma_check(g: Graph) -> bool:
    """Sigma of the complement from Sigma of the graph:
    Sigma(comp) = m*(m-1)^2 - 4*r*(m-1) + Sigma(g)."""
    m, r = g.m, g.r
    return sigma(g.complement()) == m * (m - 1) ** 2 - 4 * r * (m - 1) + sigma(g)


@dataclass(frozen=True)
class DualBoundReport:
    """Exhaustive audit of the dense-range bound."""

    m: int
    r: int
    bound: int
    sigma_max: int
    tight: bool


def dual_bound_check(
    m: int, r: int, *, budget: int = DEFAULT_FAMILY_BUDGET
) -> DualBoundReport:
    """Check the dense-range bound by exhaustion over all (m, r)-graphs."""
    bound = dual_bound_value(m, r)
    sigma_max, _ = sigma_exhaustive(m, r, budget=budget)
    if sigma_max > bound:
        raise AssertionError(
            f"dense-range bound violated at (m={m}, r={r}): {sigma_max} > {bound}"
        )
    return DualBoundReport(m, r, bound, sigma_max, sigma_max == bound)
