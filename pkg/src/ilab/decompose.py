"""Edge-partition pipeline bounding interval thickness from above.

The route: split the edges of a graph into equal-part bipartite *layers* by
the lowest differing bit of the endpoint ids (after padding the vertex count
to a power of two); inside each layer, repeatedly extract a k-regular
subgraph while the density is at least N^{-gamma} and colour it by peeling
perfect matchings (matching j gets colour j, so every covered vertex sees
{1..k}); once a layer is sparse, partition the remainder into forests
first-fit and colour each forest directly. Every part produced is interval
colourable by construction, so the number of parts upper-bounds the interval
thickness.

The k-regular extraction works by density increment. For an equal-part
bipartite graph with part size n and density d, either a k-factor exists for
k = max(1, floor(d*n/100)), or the subset criterion

    k*n + e(X, Y) >= k|X| + k|Y|   for all X in one class, Y in the other

fails; the violating pair is read off the min cut of the flow network
(source -> left with capacity k, edges with capacity 1, right -> sink with
capacity k). From a violation (A, B) with |A| <= |B|, writing C and D for the
complements of B and A in their classes, at least one of two escapes holds
(when k <= d*n/100; see DensityIncrementStuck for the clamped regime):

    e(A, C) >= d |A| |C|^{1-delta} n^{delta}        (pair A x C)
    e(D, F) >= d |D|^{1-delta} n^{1+delta}          (pair D x F, F = B's class)

and trimming the larger side to the top-degree vertices yields an equal-part
restriction whose density ratio satisfies d'/d >= (n/n')^delta. The potential
d_i * n_i^delta never decreases along the trace, and part sizes strictly
shrink, so the loop terminates in a factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .colouring import EdgeColouring, colour_forest
from .flows import Dinic, hopcroft_karp
from .graphs import BipartiteGraph, Edge, EdgePartition, Graph, canonical_edge


class DensityIncrementStuck(Exception):
    """Neither escape held while the k >= 1 clamp was active.

    Only reachable when d*n < 100 forces k = 1 (the dichotomy is a theorem
    for k <= d*n/100); callers treat the current subgraph as sparse.
    """


class DichotomyBug(RuntimeError):
    """Neither escape held although k <= d*n/100 — an implementation bug."""


@dataclass(frozen=True)
class PipelineConfig:
    delta: float = 0.25
    stopping_constant: float = 200.0  # factor-size guarantee d^{1/delta} n^2 / this

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")

    @property
    def gamma(self) -> float:
        """Sparsity threshold exponent, 2/9 at delta = 1/4."""
        return 1.0 / (0.5 + 1.0 / self.delta)

    @property
    def gamma_as_printed(self) -> float:
        """The (inconsistent) alternative 1/(1/2 + delta/2), reported alongside."""
        return 1.0 / (0.5 + self.delta / 2.0)

    def k_for(self, density: float, part_size: int) -> int:
        return max(1, math.floor(density * part_size / 100.0))


# ---------------------------------------------------------------------------
# bit split
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BitLayer:
    bit: int
    graph: BipartiteGraph


def bit_split(g: Graph) -> list[BitLayer]:
    """Partition edges by the lowest differing bit of their endpoint ids.

    Vertex ids are implicitly padded to 2^s (s = ceil(log2 n)); layer i is an
    equal-part bipartite graph between {bit i = 0} and {bit i = 1} over all
    padded ids. Only layers that carry edges are returned (ascending bit).
    """
    if g.edge_count == 0:
        return []
    s = max(1, math.ceil(math.log2(g.vertex_count)))
    full = 1 << s
    by_bit: dict[int, list[tuple[int, int]]] = {}
    for u, v in g.edges:
        bit = ((u ^ v) & -(u ^ v)).bit_length() - 1
        lo_side, hi_side = (u, v) if not (u >> bit) & 1 else (v, u)
        by_bit.setdefault(bit, []).append((lo_side, hi_side))
    layers = []
    for bit in sorted(by_bit):
        left = tuple(v for v in range(full) if not (v >> bit) & 1)
        right = tuple(v for v in range(full) if (v >> bit) & 1)
        layers.append(BitLayer(bit, BipartiteGraph(left, right, tuple(by_bit[bit]))))
    return layers


# ---------------------------------------------------------------------------
# k-factors via max flow
# ---------------------------------------------------------------------------

@dataclass
class KFactorWitness:
    """Either a k-factor or a violating subset pair (X from left, Y from right)."""

    k: int
    factor: BipartiteGraph | None
    violation: tuple[tuple[int, ...], tuple[int, ...]] | None

    @property
    def is_factor(self) -> bool:
        return self.factor is not None


def subset_criterion_value(b: BipartiteGraph, k: int, xs, ys) -> int:
    """k*n + e(X, Y) - k|X| - k|Y| (negative iff (X, Y) violates)."""
    xset, yset = set(xs), set(ys)
    e_xy = sum(1 for u, v in b.edges if u in xset and v in yset)
    return k * len(b.left) + e_xy - k * len(xset) - k * len(yset)


def find_k_factor(b: BipartiteGraph, k: int) -> KFactorWitness:
    """Spanning k-regular subgraph of an equal-part bipartite graph, or a
    violating subset pair extracted from the min cut."""
    n = len(b.left)
    if n != len(b.right):
        raise ValueError(f"parts differ in size: {n} vs {len(b.right)}")
    if k < 0 or k > n:
        raise ValueError(f"k={k} out of range for part size {n}")
    if k == 0:
        return KFactorWitness(0, BipartiteGraph(b.left, b.right, ()), None)
    lpos = {u: i for i, u in enumerate(b.left)}
    rpos = {v: i for i, v in enumerate(b.right)}
    source, sink = 2 * n, 2 * n + 1
    net = Dinic(2 * n + 2)
    for i in range(n):
        net.add_edge(source, i, k)
        net.add_edge(n + i, sink, k)
    mid = {}
    for u, v in b.edges:
        mid[(u, v)] = net.add_edge(lpos[u], n + rpos[v], 1)
    flow = net.max_flow(source, sink)
    if flow == k * n:
        chosen = tuple(e for e, idx in mid.items() if net.flow_on(idx) == 1)
        return KFactorWitness(k, BipartiteGraph(b.left, b.right, chosen), None)
    side = net.min_cut_source_side(source)
    xs = tuple(u for u in b.left if lpos[u] in side)
    ys = tuple(v for v in b.right if (n + rpos[v]) not in side)
    witness = KFactorWitness(k, None, (xs, ys))
    # cut capacity = k(n-|X|) + k(n-|Y|) + e(X,Y) = flow < kn, hence strict
    slack = subset_criterion_value(b, k, xs, ys)
    if slack >= 0:
        raise DichotomyBug(f"min cut produced a non-violating pair (slack {slack})")
    return witness


# ---------------------------------------------------------------------------
# density increment
# ---------------------------------------------------------------------------

@dataclass
class IncrementStep:
    kind: str  # "factor" or "restriction"
    k: int | None = None
    factor: BipartiteGraph | None = None
    restriction: BipartiteGraph | None = None
    escape: str | None = None  # "dense-pair" or "complement-side"
    violation: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def _top_by_degree(
    b: BipartiteGraph, candidates: tuple[int, ...], into: set[int], count: int, side: str
) -> tuple[int, ...]:
    """The `count` candidates with most edges into `into` (ties by label)."""
    adj = b.left_adjacency if side == "left" else b.right_adjacency
    scored = sorted(
        candidates, key=lambda x: (-sum(1 for y in adj[x] if y in into), x)
    )
    return tuple(sorted(scored[:count]))


def _edges_between(b: BipartiteGraph, lefts: set[int], rights: set[int]) -> int:
    return sum(1 for u, v in b.edges if u in lefts and v in rights)


def density_increment_step(b: BipartiteGraph, cfg: PipelineConfig) -> IncrementStep:
    """One step of the increment: a k-factor or a denser equal-part restriction."""
    n = len(b.left)
    if n != len(b.right):
        raise ValueError("parts must have equal size")
    d = b.density
    if d == 0:
        raise ValueError("density is zero")
    delta = cfg.delta
    k = cfg.k_for(d, n)
    w = find_k_factor(b, k)
    if w.is_factor:
        return IncrementStep(kind="factor", k=k, factor=w.factor)

    xs, ys = w.violation
    # Relabel so |A| <= |B|; A's class supplies D, B's class supplies C/F.
    if len(xs) <= len(ys):
        a, bb, a_side = xs, ys, "left"
    else:
        a, bb, a_side = ys, xs, "right"
    a_class = b.left if a_side == "left" else b.right
    b_class = b.right if a_side == "left" else b.left
    c = tuple(v for v in b_class if v not in set(bb))
    dd = tuple(v for v in a_class if v not in set(a))

    def pair_edges(from_a_side: tuple[int, ...], other: tuple[int, ...]) -> int:
        if a_side == "left":
            return _edges_between(b, set(from_a_side), set(other))
        return _edges_between(b, set(other), set(from_a_side))

    candidates: list[tuple[float, str, tuple[int, ...], tuple[int, ...]]] = []
    if c:
        e_ac = pair_edges(a, c)
        if e_ac >= d * len(a) * len(c) ** (1 - delta) * n**delta:
            trimmed = _top_by_degree(
                b, a, set(c), len(c), "left" if a_side == "left" else "right"
            )
            e_restr = pair_edges(trimmed, c)
            size = len(c)
            candidates.append(
                (e_restr / (size * size) * size**delta, "dense-pair", trimmed, c)
            )
    if dd:
        e_df = pair_edges(dd, b_class)
        if e_df >= d * len(dd) ** (1 - delta) * n ** (1 + delta):
            trimmed = _top_by_degree(
                b, b_class, set(dd), len(dd), "right" if a_side == "left" else "left"
            )
            e_restr = pair_edges(dd, trimmed)
            size = len(dd)
            candidates.append(
                (e_restr / (size * size) * size**delta, "complement-side", dd, trimmed)
            )
    if not candidates:
        if k > d * n / 100.0:
            raise DensityIncrementStuck(
                f"k=1 clamp active (d*n = {d * n:.3f} < 100) and neither escape holds"
            )
        raise DichotomyBug(
            f"violation admitted no escape at k={k} <= d*n/100 = {d * n / 100:.3f}"
        )
    # prefer the restriction with the larger potential d' * size^delta
    candidates.sort(key=lambda t: (-t[0], t[1] != "dense-pair"))
    _, escape, side_a, side_b = candidates[0]
    if a_side == "left":
        new_left, new_right = side_a, side_b
    else:
        new_left, new_right = side_b, side_a
    restriction = b.restrict(new_left, new_right)
    return IncrementStep(
        kind="restriction",
        k=k,
        restriction=restriction,
        escape=escape,
        violation=(xs, ys),
    )


def restriction_ratio_holds(
    m_before: int, n_before: int, m_after: int, n_after: int
) -> bool:
    """Exact check of d'/d >= (n/n')^{1/4} in integers (delta = 1/4 only)."""
    # d'/d = (m' n^2) / (m n'^2); raise both sides to the 4th power.
    lhs = Fraction(m_after * n_before**2, m_before * n_after**2) ** 4
    return lhs >= Fraction(n_before, n_after)


@dataclass
class TraceEntry:
    part_size: int
    density: float
    escape: str | None = None  # escape that produced this state (None for start)

    @property
    def potential(self) -> float:
        return self.density * self.part_size**0.25


def large_regular_subgraph(
    b: BipartiteGraph, cfg: PipelineConfig | None = None
) -> tuple[int, BipartiteGraph, list[TraceEntry]]:
    """Iterate the increment until a factor appears.

    Returns ``(k, factor, trace)``; the factor is k-regular on the final
    restricted pair, and the trace's potential d_i * n_i^delta is
    non-decreasing. Part sizes strictly shrink, so termination is structural.
    Raises DensityIncrementStuck if the clamped k = 1 regime dead-ends.
    """
    cfg = cfg or PipelineConfig()
    cur = b
    trace = [TraceEntry(len(cur.left), cur.density)]
    while True:
        step = density_increment_step(cur, cfg)
        if step.kind == "factor":
            factor = step.factor
            for u in factor.left:
                if len(factor.left_adjacency[u]) != step.k:
                    raise DichotomyBug(f"factor degree mismatch at {u}")
            for v in factor.right:
                if len(factor.right_adjacency[v]) != step.k:
                    raise DichotomyBug(f"factor degree mismatch at {v}")
            return step.k, factor, trace
        cur = step.restriction
        trace.append(TraceEntry(len(cur.left), cur.density, step.escape))


# ---------------------------------------------------------------------------
# colouring regular bipartite graphs by peeling matchings
# ---------------------------------------------------------------------------

def matching_decomposition(h: BipartiteGraph) -> list[list[tuple[int, int]]]:
    """Split a k-regular equal-part bipartite graph into k perfect matchings."""
    n = len(h.left)
    if n != len(h.right):
        raise ValueError("parts must have equal size")
    if n == 0:
        return []
    degrees = {x: h.degree(x) for x in h.left + h.right}
    k = degrees[h.left[0]]
    bad = next((x for x, dx in degrees.items() if dx != k), None)
    if bad is not None:
        raise ValueError(f"not regular: vertex {bad} has degree {degrees[bad]} != {k}")
    lpos = {u: i for i, u in enumerate(h.left)}
    rpos = {v: i for i, v in enumerate(h.right)}
    remaining = set(h.edges)
    matchings = []
    for _ in range(k):
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(remaining):
            adj[lpos[u]].append(rpos[v])
        match = hopcroft_karp(n, n, adj)
        if len(match) != n:
            # cannot happen for a regular graph (Hall), so this is a bug trap
            raise DichotomyBug("regular graph yielded a non-perfect matching")
        matched = [(h.left[i], h.right[j]) for i, j in match.items()]
        matchings.append(sorted(matched))
        remaining -= set(matched)
    return matchings


def colour_regular_bipartite(h: BipartiteGraph) -> EdgeColouring:
    """Colour matching j with colour j (1-based): every vertex sees {1..k}."""
    colours: dict[Edge, int] = {}
    for j, matching in enumerate(matching_decomposition(h), start=1):
        for u, v in matching:
            colours[canonical_edge(u, v)] = j
    return EdgeColouring(h.to_graph(), colours)


# ---------------------------------------------------------------------------
# forests
# ---------------------------------------------------------------------------

class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


def forest_partition(g: Graph) -> list[Graph]:
    """First-fit partition of the edges into forests (canonical edge order)."""
    forests: list[list[Edge]] = []
    finders: list[_UnionFind] = []
    for e in g.edges:
        for bucket, uf in zip(forests, finders):
            if uf.find(e[0]) != uf.find(e[1]):
                uf.union(*e)
                bucket.append(e)
                break
        else:
            uf = _UnionFind(g.vertex_count)
            uf.union(*e)
            forests.append([e])
            finders.append(uf)
    return [Graph(g.vertex_count, tuple(es)) for es in forests]


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------

@dataclass
class FactorPart:
    index: int
    layer_bit: int
    k: int
    subgraph: BipartiteGraph
    colouring: EdgeColouring
    trace: list[TraceEntry]


@dataclass
class ForestPart:
    index: int
    layer_bit: int
    forest: Graph
    colouring: EdgeColouring


@dataclass
class DecompositionReport:
    graph: Graph
    partition: EdgePartition
    factors: list[FactorPart]
    forest_parts: list[ForestPart]
    layers: list[BitLayer]
    config: PipelineConfig
    stuck_layers: list[int] = field(default_factory=list)

    @property
    def part_count(self) -> int:
        return self.partition.part_count

    def part_colourings(self) -> list[EdgeColouring]:
        """Colourings in part-index order (factors and forests interleave)."""
        parts = sorted(self.factors + self.forest_parts, key=lambda p: p.index)
        return [p.colouring for p in parts]


def decompose_theta(g: Graph, cfg: PipelineConfig | None = None) -> DecompositionReport:
    """Partition E(g) into interval-colourable parts via the layer pipeline."""
    cfg = cfg or PipelineConfig()
    layers = bit_split(g)
    factors: list[FactorPart] = []
    forest_parts: list[ForestPart] = []
    part_of: dict[Edge, int] = {}
    next_part = 0
    stuck: list[int] = []

    for layer in layers:
        half = len(layer.graph.left)
        total = 2 * half
        threshold = total ** (-cfg.gamma)
        remaining = set(layer.graph.edges)
        while remaining and len(remaining) / (half * half) >= threshold:
            cur = BipartiteGraph(layer.graph.left, layer.graph.right, tuple(remaining))
            try:
                k, factor, trace = large_regular_subgraph(cur, cfg)
            except DensityIncrementStuck:
                stuck.append(layer.bit)
                break
            colouring = EdgeColouring(
                Graph(
                    g.vertex_count,
                    tuple(canonical_edge(u, v) for u, v in factor.edges),
                ),
                {
                    canonical_edge(u, v): col
                    for (u, v), col in colour_regular_bipartite(factor).colours.items()
                },
            )
            factors.append(FactorPart(next_part, layer.bit, k, factor, colouring, trace))
            for u, v in factor.edges:
                part_of[canonical_edge(u, v)] = next_part
            next_part += 1
            remaining -= set(factor.edges)
        if remaining:
            rem_graph = Graph(
                g.vertex_count, tuple(canonical_edge(u, v) for u, v in remaining)
            )
            for forest in forest_partition(rem_graph):
                forest_parts.append(
                    ForestPart(next_part, layer.bit, forest, colour_forest(forest))
                )
                for e in forest.edges:
                    part_of[e] = next_part
                next_part += 1

    partition = EdgePartition(g, part_of, next_part)
    return DecompositionReport(
        graph=g,
        partition=partition,
        factors=factors,
        forest_parts=forest_parts,
        layers=layers,
        config=cfg,
        stuck_layers=stuck,
    )


# ---------------------------------------------------------------------------
# escape-dichotomy objective
# ---------------------------------------------------------------------------

@dataclass
class ObjectiveReport:
    delta: float
    grid_step: float
    max_value: float
    argmax: tuple[float, float]
    boundary_x0_value: float  # sup over the excluded x = 0 edge (exactly 1)

    @property
    def bounded_below_one(self) -> bool:
        return self.max_value < 1.0


def objective_check(delta: float, grid_step: float = 0.01) -> ObjectiveReport:
    """Grid maximum of (x-y)/100 + (1-x)^{1-delta} + x y^{1-delta}.

    Evaluated over {(x, y): 0 <= y <= min(x, 1/2), 0 <= x <= 1} excluding the
    x = 0 edge, where the function is identically ~1 (its value there is
    reported separately). A maximum strictly below 1 is what makes the escape
    dichotomy sound.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if not 0 < grid_step <= 0.5:
        raise ValueError("grid_step must lie in (0, 0.5]")
    steps = int(round(1.0 / grid_step))
    xs = np.linspace(0.0, 1.0, steps + 1)
    best = -np.inf
    arg = (0.0, 0.0)
    for x in xs[1:]:  # x = 0 excluded
        y_hi = min(x, 0.5)
        ys = xs[: int(np.floor(y_hi / grid_step + 1e-9)) + 1]
        vals = (x - ys) / 100.0 + (1.0 - x) ** (1.0 - delta) + x * ys ** (1.0 - delta)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best = float(vals[i])
            arg = (float(x), float(ys[i]))
    return ObjectiveReport(
        delta=delta,
        grid_step=grid_step,
        max_value=best,
        argmax=arg,
        boundary_x0_value=1.0,
    )
