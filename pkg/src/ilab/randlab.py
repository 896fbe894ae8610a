"""Layered random bipartite graphs and the probe for thickness lower bounds.

The construction stacks r independent random bipartite layers over a common
ground side B of n vertices: layer i has its own side A_i of about n*delta^i
vertices and edge probability eps * delta^{-i}, so later layers are smaller
but denser. Vertex ids are consecutive (B first, then A_1, A_2, ...), and
layer i draws from ``numpy.random.default_rng([seed, i])`` so layers can be
regenerated independently.

Against an adversary who partitions the edges into parts (claiming each part
interval colourable in some ambient graph of bounded degree), the probe
walks the layers: at stage k it finds a dense single-part subgraph K_k on
the surviving ground vertices using layer-k edges, remembers the part used,
and deletes the edges of previously used parts before the next stage. Two
things can go wrong for the adversary: a ground vertex of a later layer may
carry so many edges of an already-used part into an earlier K_i that any
interval colouring of that part would exceed the diameter spread cap (a
`SpreadWitness`, checkable in isolation), or the deletions may leave a stage
with nothing fresh, forcing a part repeat. Either outcome refutes the
partition; a clean r-stage trace is consistent with thickness > r - 1 ...
for that adversary only.

Budgets: stage k flags a pivot vertex a in A_k when it sends more than
``8 * eps * delta^{-i} * n`` layer-k edges of part f_i into K_i's ground
side. A flagged overrun is *certified* as a witness only when it clears the
sound threshold N - 1 > (diam + 3) * (Delta - 1); overruns below that are
recorded but prove nothing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .colouring import spread_cap
from .graphs import (
    BipartiteGraph,
    Edge,
    EdgePartition,
    Graph,
    canonical_edge,
    diameter,
)


@dataclass(frozen=True)
class LowerBoundParams:
    r: int
    n: int
    delta: float
    epsilon: float
    seed: int = 0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("need at least one layer")
        if self.n < 1:
            raise ValueError("ground side must be non-empty")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        worst = self.p(self.r)
        if worst > 1:
            raise ValueError(
                f"edge probability eps*delta^-{self.r} = {worst:.3g} exceeds 1"
            )

    @classmethod
    def preset(cls, r: int, n: int = 1000, seed: int = 0) -> "LowerBoundParams":
        """delta = 1/(1000 r), eps = delta^{r+2} (the regime of the analysis)."""
        delta = 1.0 / (1000.0 * r)
        return cls(r=r, n=n, delta=delta, epsilon=delta ** (r + 2), seed=seed)

    def p(self, i: int) -> float:
        """Edge probability of layer i (1-based)."""
        return self.epsilon * self.delta ** (-i)

    def layer_size(self, i: int) -> int:
        return max(1, round(self.n * self.delta**i))

    def layer_stats(self, i: int) -> tuple[float, float]:
        """(mean, standard deviation) of the layer-i edge count."""
        trials = self.layer_size(i) * self.n
        p = self.p(i)
        return trials * p, math.sqrt(trials * p * (1 - p))


@dataclass(frozen=True)
class LayeredBipartite:
    params: LowerBoundParams
    a_layers: tuple[tuple[int, ...], ...]  # a_layers[i-1] = ids of A_i
    layer_graphs: tuple[BipartiteGraph, ...]  # left side is always B

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def ground(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    @property
    def vertex_count(self) -> int:
        return self.n + sum(len(a) for a in self.a_layers)

    def layer_of(self, vertex: int) -> int | None:
        """1-based layer index of an A-side vertex, None for ground vertices."""
        if vertex < self.n:
            return None
        for i, layer in enumerate(self.a_layers, start=1):
            if layer and layer[0] <= vertex <= layer[-1]:
                return i
        raise ValueError(f"vertex {vertex} out of range")

    def all_edges(self) -> tuple[Edge, ...]:
        out = []
        for lg in self.layer_graphs:
            out.extend(canonical_edge(u, v) for u, v in lg.edges)
        return tuple(sorted(out))

    def to_graph(self) -> Graph:
        return Graph(self.vertex_count, self.all_edges())

    def ambient_degree(self, vertex: int) -> int:
        total = 0
        for lg in self.layer_graphs:
            if vertex in lg.left_adjacency:
                total += len(lg.left_adjacency[vertex])
            elif vertex in lg.right_adjacency:
                total += len(lg.right_adjacency[vertex])
        return total


def serialize_layered_json(lb: LayeredBipartite) -> str:
    """JSON form with layer tags on edges; deterministic byte-for-byte."""
    p = lb.params
    edges = []
    for i, lg in enumerate(lb.layer_graphs, start=1):
        edges.extend([b, a, i] for b, a in lg.edges)
    doc = {
        "kind": "layered-bipartite",
        "r": p.r,
        "n": p.n,
        "delta": p.delta,
        "epsilon": p.epsilon,
        "seed": p.seed,
        "a_layers": [list(layer) for layer in lb.a_layers],
        "edges": sorted(edges, key=lambda e: (e[2], e[0], e[1])),
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def parse_layered_json(text: str) -> LayeredBipartite:
    doc = json.loads(text)
    if doc.get("kind") != "layered-bipartite":
        raise ValueError("not a layered-bipartite JSON document")
    params = LowerBoundParams(
        r=doc["r"],
        n=doc["n"],
        delta=doc["delta"],
        epsilon=doc["epsilon"],
        seed=doc["seed"],
    )
    a_layers = tuple(tuple(layer) for layer in doc["a_layers"])
    if len(a_layers) != params.r:
        raise ValueError(f"expected {params.r} layers, found {len(a_layers)}")
    ground = tuple(range(params.n))
    by_layer: dict[int, list[tuple[int, int]]] = {i: [] for i in range(1, params.r + 1)}
    for b, a, i in doc["edges"]:
        if i not in by_layer:
            raise ValueError(f"edge ({b},{a}) tagged with unknown layer {i}")
        by_layer[i].append((b, a))
    graphs = tuple(
        BipartiteGraph(ground, a_layers[i - 1], tuple(by_layer[i]))
        for i in range(1, params.r + 1)
    )
    return LayeredBipartite(params, a_layers, graphs)


def generate(params: LowerBoundParams) -> LayeredBipartite:
    """Sample the layered graph; layer i uses rng stream [seed, i]."""
    a_layers = []
    graphs = []
    next_id = params.n
    for i in range(1, params.r + 1):
        size = params.layer_size(i)
        layer = tuple(range(next_id, next_id + size))
        next_id += size
        rng = np.random.default_rng([params.seed, i])
        hit = rng.random((size, params.n)) < params.p(i)
        a_idx, b_idx = np.nonzero(hit)
        edges = tuple((int(b), layer[int(a)]) for a, b in zip(a_idx, b_idx))
        a_layers.append(layer)
        graphs.append(BipartiteGraph(tuple(range(params.n)), layer, edges))
    return LayeredBipartite(params, tuple(a_layers), tuple(graphs))


# ---------------------------------------------------------------------------
# hypothesis checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensePartHypothesis:
    p: float
    r: int
    gamma: float = 0.1  # tolerated deleted-edge proportion

    def __post_init__(self):
        if not 0 <= self.gamma <= 0.1:
            raise ValueError("gamma must lie in [0, 0.1]")

    @property
    def alpha(self) -> float:
        """Smallest subset fraction the pseudorandomness condition covers."""
        return self.p * self.p / (2.0 * self.r * self.r)


def check_biregular(b: BipartiteGraph, p: float) -> tuple[bool, int | None]:
    """Are all degrees within [0.9, 1.1] times the expected p * |other side|?

    Returns the first offending vertex (left side scanned first) on failure.
    """
    lo_l, hi_l = 0.9 * p * len(b.right), 1.1 * p * len(b.right)
    lo_r, hi_r = 0.9 * p * len(b.left), 1.1 * p * len(b.left)
    for u in b.left:
        if not lo_l <= b.degree(u) <= hi_l:
            return False, u
    for v in b.right:
        if not lo_r <= b.degree(v) <= hi_r:
            return False, v
    return True, None


@dataclass(frozen=True)
class PseudoReport:
    ok: bool
    worst_ratio: float  # max |e(U,V) - p|U||V|| / (|U||V|)^0.85 seen
    pairs_tested: int
    exhaustive: bool


def check_pseudorandom(
    b: BipartiteGraph,
    alpha: float,
    p: float,
    trials: int = 200,
    seed: int = 0,
) -> PseudoReport:
    """|e(U, V) - p |U||V|| <= (|U||V|)^0.85 over qualifying subset pairs.

    Qualifying means |U| >= alpha |C| and |V| >= alpha |D|. Exhaustive when
    both sides have at most 12 vertices; otherwise `trials` uniformly random
    pairs (sizes uniform over the allowed range) drawn from a generator
    seeded with `seed`.
    """
    nc, nd = len(b.left), len(b.right)
    if nc == 0 or nd == 0:
        return PseudoReport(True, 0.0, 0, True)
    min_u = max(1, math.ceil(alpha * nc))
    min_v = max(1, math.ceil(alpha * nd))
    lpos = {u: i for i, u in enumerate(b.left)}
    rpos = {v: i for i, v in enumerate(b.right)}
    m = np.zeros((nc, nd), dtype=np.float64)
    for u, v in b.edges:
        m[lpos[u], rpos[v]] = 1.0

    if nc <= 12 and nd <= 12:
        u_masks = [x for x in range(1, 1 << nc) if x.bit_count() >= min_u]
        v_masks = [y for y in range(1, 1 << nd) if y.bit_count() >= min_v]
        mu = np.array([[(x >> i) & 1 for i in range(nc)] for x in u_masks], float)
        mv = np.array([[(y >> j) & 1 for j in range(nd)] for y in v_masks], float)
        counts = mu @ m @ mv.T
        sizes = np.outer(mu.sum(axis=1), mv.sum(axis=1))
        ratios = np.abs(counts - p * sizes) / sizes**0.85
        worst = float(ratios.max())
        return PseudoReport(worst <= 1.0, worst, ratios.size, True)

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        su = int(rng.integers(min_u, nc + 1))
        sv = int(rng.integers(min_v, nd + 1))
        iu = rng.choice(nc, size=su, replace=False)
        iv = rng.choice(nd, size=sv, replace=False)
        count = float(m[np.ix_(iu, iv)].sum())
        worst = max(worst, abs(count - p * su * sv) / (su * sv) ** 0.85)
    return PseudoReport(worst <= 1.0, worst, trials, False)


# ---------------------------------------------------------------------------
# dense monochromatic subgraphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DenseSubgraphReport:
    part: int
    x0: int
    middle: tuple[int, ...]  # the part-neighbourhood of x0 (other side)
    far: tuple[int, ...]  # second neighbourhood, back on x0's side
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]  # part-coloured edges inside the subgraph
    diameter: int
    ground_size: int  # |C|, size of the side x0 was drawn from

    @property
    def ground_hits(self) -> int:
        """|K intersect C| = |{x0} union far|."""
        return len(set(self.far) | {self.x0})


def _part_lookup(partition: EdgePartition | Mapping[Edge, int]) -> Mapping[Edge, int]:
    if isinstance(partition, EdgePartition):
        return partition.part_of
    return partition


def find_dense_monochromatic(
    b: BipartiteGraph,
    partition: EdgePartition | Mapping[Edge, int],
    hyp: DensePartHypothesis | None = None,
) -> DenseSubgraphReport:
    """Second-neighbourhood subgraph of the busiest part.

    Picks the part with the most edges in `b` (lowest index on ties), then
    the left vertex x0 maximising the number of part walks of length two
    starting at it (lowest id on ties), and returns K on x0, its part
    neighbourhood, and the part neighbourhood of that. K is connected with
    diameter at most 4, and when `b` satisfies the hypotheses in `hyp` its
    left portion captures at least |C| / (2 r^2) vertices — the hypotheses
    are the caller's to check, this function only does the construction.
    """
    part_of = _part_lookup(partition)
    if not b.edges:
        raise ValueError("graph has no edges")
    counts: dict[int, int] = {}
    for u, v in b.edges:
        counts[part_of[canonical_edge(u, v)]] = (
            counts.get(part_of[canonical_edge(u, v)], 0) + 1
        )
    best = max(counts.values())
    part = min(p for p, c in counts.items() if c == best)

    adj_l: dict[int, list[int]] = {}
    adj_r: dict[int, list[int]] = {}
    for u, v in b.edges:
        if part_of[canonical_edge(u, v)] == part:
            adj_l.setdefault(u, []).append(v)
            adj_r.setdefault(v, []).append(u)
    x0, x0_score = -1, -1
    for u in b.left:
        score = sum(len(adj_r[v]) for v in adj_l.get(u, ()))
        if score > x0_score:
            x0, x0_score = u, score
    middle = tuple(sorted(adj_l[x0]))
    far = tuple(sorted({u for v in middle for u in adj_r[v]}))
    vertex_set = {x0, *middle, *far}
    edges = tuple(
        sorted(
            canonical_edge(u, v)
            for v in middle
            for u in adj_r[v]
            if u in vertex_set
        )
    )
    # relabel for the diameter computation
    labels = sorted(vertex_set)
    pos = {x: i for i, x in enumerate(labels)}
    local = Graph(
        len(labels), tuple(sorted(canonical_edge(pos[u], pos[v]) for u, v in edges))
    )
    diam = diameter(local)
    if not math.isfinite(diam) or diam > 4:
        raise AssertionError("second neighbourhood must be connected with diameter <= 4")
    return DenseSubgraphReport(
        part=part,
        x0=x0,
        middle=middle,
        far=far,
        vertices=tuple(labels),
        edges=edges,
        diameter=int(diam),
        ground_size=len(b.left),
    )


# ---------------------------------------------------------------------------
# spread witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpreadWitness:
    """A pivot with so many one-part edges into a small-diameter piece that
    the part cannot be interval coloured in any ambient graph of max degree
    `delta_cap` containing it."""

    part: int
    h_vertices: tuple[int, ...]
    pivot: int
    edge_count: int  # N: edges of `part` from pivot into h_vertices
    diameter: int
    delta_cap: int

    @property
    def forced_spread(self) -> int:
        return self.edge_count - 1 - 2 * (self.delta_cap - 1)

    @property
    def cap(self) -> int:
        return spread_cap(self.diameter, self.delta_cap)

    @property
    def certified(self) -> bool:
        return self.forced_spread > self.cap


def validate_spread_witness(
    lb: LayeredBipartite,
    partition: EdgePartition | Mapping[Edge, int],
    w: SpreadWitness,
) -> tuple[bool, str]:
    """Recompute a witness from scratch and decide whether it certifies.

    All quantities are rebuilt from the layered graph: the part's subgraph on
    `h_vertices` (all layers), its connectivity and diameter, the pivot's
    edge count into it, and the true ambient max degree over the piece. The
    pivot's neighbours must each carry an internal part edge so the spread
    transfers.
    """
    part_of = _part_lookup(partition)
    hset = set(w.h_vertices)
    if w.pivot in hset:
        return False, "pivot lies inside the piece"
    h_edges = [
        canonical_edge(u, v)
        for u, v in lb.all_edges()
        if u in hset and v in hset and part_of.get(canonical_edge(u, v)) == w.part
    ]
    if not h_edges:
        return False, "piece carries no edges of the part"
    labels = sorted(hset)
    pos = {x: i for i, x in enumerate(labels)}
    local = Graph(
        len(labels),
        tuple(sorted(canonical_edge(pos[u], pos[v]) for u, v in h_edges)),
    )
    # only vertices touched by part edges matter for connectivity
    touched = {x for e in h_edges for x in e}
    if len([c for c in local.components() if len(c) > 1]) != 1 or touched != hset:
        return False, "part edges do not connect the piece"
    diam = diameter(local)
    h_degree = {x: 0 for x in hset}
    for u, v in h_edges:
        h_degree[u] += 1
        h_degree[v] += 1
    pivot_hits = [
        v if u == w.pivot else u
        for u, v in lb.all_edges()
        if w.pivot in (u, v)
        and (v if u == w.pivot else u) in hset
        and part_of.get(canonical_edge(u, v)) == w.part
    ]
    n_edges = len(pivot_hits)
    if n_edges != w.edge_count:
        return False, f"pivot edge count is {n_edges}, witness says {w.edge_count}"
    if any(h_degree[y] == 0 for y in pivot_hits):
        return False, "a pivot neighbour has no internal part edge"
    delta = max(max(lb.ambient_degree(x) for x in hset), 1)
    if delta > w.delta_cap:
        return False, f"ambient degree {delta} exceeds claimed cap {w.delta_cap}"
    forced = n_edges - 1 - 2 * (w.delta_cap - 1)
    cap = spread_cap(int(diam), w.delta_cap)
    if forced <= cap:
        return False, f"forced spread {forced} does not beat cap {cap}"
    return True, "certified"


# ---------------------------------------------------------------------------
# the adversarial probe
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Overrun:
    """A budget overrun that did not clear the certification threshold."""

    stage: int
    prior_stage: int
    pivot: int
    edge_count: int
    budget: float


@dataclass(frozen=True)
class StageHypotheses:
    biregular: bool
    biregular_offender: int | None
    pseudorandom: bool
    worst_ratio: float


@dataclass
class ProbeStage:
    k: int
    part: int | None
    report: DenseSubgraphReport | None
    ground_before: int  # |B_{k-1}|
    ground_after: int  # |B_k|
    deletion_proportion: float
    hypotheses: StageHypotheses | None
    forced_repeat: bool = False


@dataclass
class ProbeTrace:
    params: LowerBoundParams
    budget_scale: float
    stages: list[ProbeStage] = field(default_factory=list)
    witnesses: list[SpreadWitness] = field(default_factory=list)
    overruns: list[Overrun] = field(default_factory=list)
    contradiction: bool = False  # a stage was forced to reuse a part

    @property
    def refuted(self) -> bool:
        return self.contradiction or bool(self.witnesses)

    @property
    def used_parts(self) -> list[int]:
        return [s.part for s in self.stages if s.part is not None]


def probe_budget(params: LowerBoundParams, prior_stage: int, scale: float = 1.0) -> float:
    """Edge budget for a pivot into the stage-i piece: 8 eps delta^{-i} n."""
    return 8.0 * params.p(prior_stage) * params.n * scale


def adversarial_probe(
    lb: LayeredBipartite,
    partition: EdgePartition | Mapping[Edge, int],
    budget_scale: float = 1.0,
) -> ProbeTrace:
    """Walk the layers against an adversary's edge partition.

    Stage k: scan A_k for pivots overrunning the budget into any earlier
    piece (certified overruns become witnesses and end the probe), delete
    layer-k edges of already-used parts, find a dense single-part subgraph on
    the survivors, and descend into its ground side. An empty survivor graph
    forces a rerun on the undeleted restriction; the part found there is
    necessarily a repeat, which is the contradiction flag. Hypothesis checks
    on each stage's restriction are recorded, not enforced; the deletion
    proportion reported per stage is the worst fraction of any single A_k
    vertex's edges into the surviving ground that the deletion removed.
    """
    part_of = _part_lookup(partition)
    params = lb.params
    trace = ProbeTrace(params=params, budget_scale=budget_scale)
    ground: set[int] = set(lb.ground)
    used: list[tuple[int, DenseSubgraphReport, set[int]]] = []  # (part, K_i, B_i)

    for k in range(1, params.r + 1):
        layer = lb.layer_graphs[k - 1]
        # -- witness scan against every earlier piece
        for i, (f_i, report_i, b_i) in enumerate(used, start=1):
            budget = probe_budget(params, i, budget_scale)
            for a in lb.a_layers[k - 1]:
                hits = [
                    b
                    for b in layer.right_adjacency.get(a, ())
                    if b in b_i and part_of[canonical_edge(b, a)] == f_i
                ]
                if len(hits) <= budget:
                    continue
                delta_cap = max(
                    max(lb.ambient_degree(x) for x in report_i.vertices), 1
                )
                w = SpreadWitness(
                    part=f_i,
                    h_vertices=report_i.vertices,
                    pivot=a,
                    edge_count=len(hits),
                    diameter=report_i.diameter,
                    delta_cap=delta_cap,
                )
                if w.certified:
                    trace.witnesses.append(w)
                else:
                    trace.overruns.append(
                        Overrun(k, i, a, len(hits), budget)
                    )
        if trace.witnesses:
            return trace

        # -- restriction of layer k to the surviving ground vertices
        ground_sorted = tuple(sorted(ground))
        restricted = layer.restrict(ground_sorted, lb.a_layers[k - 1])
        if not restricted.edges:
            trace.stages.append(
                ProbeStage(k, None, None, len(ground), len(ground), 0.0, None)
            )
            return trace
        used_parts = {f for f, _, _ in used}
        fresh_edges = tuple(
            (u, v)
            for u, v in restricted.edges
            if part_of[canonical_edge(u, v)] not in used_parts
        )
        proportion = 0.0
        for a in lb.a_layers[k - 1]:
            deg_a = len(restricted.right_adjacency.get(a, ()))
            if deg_a == 0:
                continue
            deleted_a = sum(
                1
                for b in restricted.right_adjacency[a]
                if part_of[canonical_edge(b, a)] in used_parts
            )
            proportion = max(proportion, deleted_a / deg_a)

        p_k = params.p(k)
        ok_b, offender = check_biregular(restricted, p_k)
        pseudo = check_pseudorandom(
            restricted,
            DensePartHypothesis(p_k, params.r).alpha,
            p_k,
            trials=100,
            seed=abs(params.seed * 100_003 + k),
        )
        hyp = StageHypotheses(ok_b, offender, pseudo.ok, pseudo.worst_ratio)

        forced = not fresh_edges
        search_graph = (
            restricted
            if forced
            else BipartiteGraph(restricted.left, restricted.right, fresh_edges)
        )
        report = find_dense_monochromatic(search_graph, part_of)
        new_ground = {x for x in report.vertices if x in ground}
        stage = ProbeStage(
            k=k,
            part=report.part,
            report=report,
            ground_before=len(ground),
            ground_after=len(new_ground),
            deletion_proportion=proportion,
            hypotheses=hyp,
            forced_repeat=forced,
        )
        trace.stages.append(stage)
        if forced:
            trace.contradiction = True
            return trace
        used.append((report.part, report, new_ground))
        ground = new_ground
    return trace
