"""Exhaustive search: interval colourability, maximum palettes, thickness.

The search is organised around per-vertex windows. In an interval colouring
the colours at a vertex ``v`` are ``deg(v)`` distinct integers spanning
exactly ``deg(v) - 1``, so during an edge-by-edge assignment it is necessary
and sufficient to keep, at every vertex, all assigned colours distinct and
within a window of width ``deg(v) - 1``; once every incident edge is coloured
the set is forced to be contiguous. Edges are assigned in a connected order
(every edge after the first of its component touches an already-coloured
vertex), which keeps candidate sets small.

Soundness of "none": for a connected graph the union of the per-vertex
intervals is itself contiguous (adjacent intervals share the connecting
edge's colour), so the number of distinct colours equals the total span.
Distinct colours are bounded by both the edge count and twice the vertex
count, hence pinning one edge of each component to colour 0 and searching the
window ``[-(W-1), W-1]`` with ``W = min(2 * n_comp, m_comp)`` is exhaustive.

Thickness enumerates edge-to-part assignments in restricted-growth order
(edge 0 in part 0; a new part index may appear only after all smaller ones),
which kills part-permutation symmetry; per-subset colourability is memoised.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .colouring import EdgeColouring
from .graphs import Edge, EdgePartition, Graph, canonical_edge, induced_subgraph


class SearchBudgetExceeded(Exception):
    """Raised when a search cannot reach a sound conclusion within budget."""


@dataclass
class SearchBudget:
    """Resource limits for the exact searches.

    ``max_colours`` caps the number of distinct colours per component; the
    default (None) is the sound window min(2 * n_comp, m_comp). An explicit
    value below a component's max degree is rejected outright, and a value
    below the sound window turns exhaustion into SearchBudgetExceeded instead
    of an (unsound) "none".
    """

    max_colours: int | None = None
    node_limit: int | None = 5_000_000
    time_limit: float | None = None

    def __post_init__(self):
        if self.max_colours is not None and self.max_colours < 1:
            raise ValueError("max_colours must be >= 1")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be >= 1")


class _Meter:
    """Shared node/time accounting across sub-searches."""

    __slots__ = ("nodes", "node_limit", "deadline")

    def __init__(self, budget: SearchBudget):
        self.nodes = 0
        self.node_limit = budget.node_limit
        self.deadline = (
            time.monotonic() + budget.time_limit if budget.time_limit else None
        )

    def tick(self):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise SearchBudgetExceeded(f"node limit {self.node_limit} exceeded")
        if self.deadline is not None and (self.nodes & 0x3FF) == 0:
            if time.monotonic() > self.deadline:
                raise SearchBudgetExceeded("time limit exceeded")


def _connected_edge_order(edges: list[Edge]) -> list[Edge]:
    """Order edges so each one after the first shares a vertex with the prefix."""
    if not edges:
        return []
    remaining = sorted(edges)
    order = [remaining.pop(0)]
    covered = set(order[0])
    while remaining:
        for i, e in enumerate(remaining):
            if e[0] in covered or e[1] in covered:
                order.append(remaining.pop(i))
                covered.update(e)
                break
        else:  # disconnected input: start a fresh component
            order.append(remaining.pop(0))
            covered.update(order[-1])
    return order


def _search_component(
    edges: list[Edge],
    deg: dict[int, int],
    lo: int,
    hi: int,
    meter: _Meter,
    pin_first: int | None = None,
    first_cap: int | None = None,
    need: tuple[int, int] | None = None,
) -> dict[Edge, int] | None:
    """DFS over one connected edge list with per-vertex window constraints.

    ``pin_first`` fixes the first edge's colour; ``first_cap`` upper-bounds it
    (reflection symmetry break); ``need`` demands both listed colours appear
    in a completed assignment.
    """
    m = len(edges)
    used: dict[int, set[int]] = {v: set() for e in edges for v in e}
    vmin: dict[int, int] = {}
    vmax: dict[int, int] = {}
    sol: dict[Edge, int] = {}
    need_a, need_b = need if need else (None, None)
    cnt = {need_a: 0, need_b: 0} if need else None

    def window(x: int) -> tuple[int, int]:
        if x in vmin:
            return max(lo, vmax[x] - (deg[x] - 1)), min(hi, vmin[x] + deg[x] - 1)
        return lo, hi

    def attainable(colour: int, start: int) -> bool:
        # can some uncoloured edge still take `colour`?
        for j in range(start, m):
            u, v = edges[j]
            if colour in used[u] or colour in used[v]:
                continue
            lu, hu = window(u)
            if not lu <= colour <= hu:
                continue
            lv, hv = window(v)
            if lv <= colour <= hv:
                return True
        return False

    def assign(e: Edge, col: int) -> list[tuple[int, int | None, int | None]]:
        trail = []
        for x in e:
            trail.append((x, vmin.get(x), vmax.get(x)))
            used[x].add(col)
            vmin[x] = col if x not in vmin else min(vmin[x], col)
            vmax[x] = col if trail[-1][2] is None else max(vmax[x], col)
        sol[e] = col
        if cnt is not None and col in cnt:
            cnt[col] += 1
        return trail

    def unassign(e: Edge, col: int, trail) -> None:
        for x, mn, mx in trail:
            used[x].discard(col)
            if mn is None:
                del vmin[x], vmax[x]
            else:
                vmin[x], vmax[x] = mn, mx
        del sol[e]
        if cnt is not None and col in cnt:
            cnt[col] -= 1

    def dfs(i: int) -> bool:
        if i == m:
            return cnt is None or (cnt[need_a] > 0 and cnt[need_b] > 0)
        e = edges[i]
        u, v = e
        lu, hu = window(u)
        lv, hv = window(v)
        lo_i, hi_i = max(lu, lv), min(hu, hv)
        if i == 0:
            if pin_first is not None:
                lo_i, hi_i = max(lo_i, pin_first), min(hi_i, pin_first)
            if first_cap is not None:
                hi_i = min(hi_i, first_cap)
        for col in range(lo_i, hi_i + 1):
            if col in used[u] or col in used[v]:
                continue
            meter.tick()
            trail = assign(e, col)
            ok = True
            if cnt is not None:
                if cnt[need_a] == 0 and not attainable(need_a, i + 1):
                    ok = False
                if ok and cnt[need_b] == 0 and not attainable(need_b, i + 1):
                    ok = False
            if ok and dfs(i + 1):
                return True
            unassign(e, col, trail)
        return False

    return dict(sol) if dfs(0) else None


def _component_pieces(g: Graph) -> list[tuple[list[Edge], dict[int, int]]]:
    """Per component: connected edge order plus degree table (original ids)."""
    pieces = []
    for comp in g.components():
        comp_set = set(comp)
        comp_edges = [e for e in g.edges if e[0] in comp_set]
        if not comp_edges:
            continue
        deg = {v: g.degree(v) for v in comp}
        pieces.append((_connected_edge_order(comp_edges), deg))
    return pieces


def _sound_window(n_comp_vertices: int, m_comp: int) -> int:
    return min(2 * n_comp_vertices, m_comp)


def find_interval_colouring(
    g: Graph, budget: SearchBudget | None = None
) -> EdgeColouring | None:
    """An interval colouring of ``g``, or None if there is none.

    None is only returned after an exhaustive search of the sound palette
    window for every component; budget limits that bite first raise
    SearchBudgetExceeded.
    """
    budget = budget or SearchBudget()
    if budget.max_colours is not None and budget.max_colours < g.max_degree:
        raise ValueError(
            f"max_colours={budget.max_colours} below max degree {g.max_degree}"
        )
    meter = _Meter(budget)
    colours: dict[Edge, int] = {}
    for edges, deg in _component_pieces(g):
        wsound = _sound_window(len(deg), len(edges))
        w = wsound if budget.max_colours is None else min(budget.max_colours, wsound)
        sol = _search_component(
            edges, deg, lo=-(w - 1), hi=w - 1, meter=meter, pin_first=0
        )
        if sol is None:
            if w < wsound:
                raise SearchBudgetExceeded(
                    f"palette budget {w} below sound window {wsound}; "
                    "search exhausted inconclusively"
                )
            return None
        colours.update(sol)
    return EdgeColouring(g, colours)


def max_colours(
    g: Graph, budget: SearchBudget | None = None
) -> tuple[int, EdgeColouring] | None:
    """Maximum number of distinct colours over interval colourings of ``g``.

    Returns ``(t, witness)`` or None if ``g`` is not interval colourable.
    Components are maximised independently and translated apart, so the
    returned witness attains the sum.
    """
    budget = budget or SearchBudget()
    if budget.max_colours is not None and budget.max_colours < g.max_degree:
        raise ValueError(
            f"max_colours={budget.max_colours} below max degree {g.max_degree}"
        )
    meter = _Meter(budget)
    total = 0
    combined: dict[Edge, int] = {}
    offset = 0
    for edges, deg in _component_pieces(g):
        wsound = _sound_window(len(deg), len(edges))
        w = wsound if budget.max_colours is None else min(budget.max_colours, wsound)
        base = _search_component(
            edges, deg, lo=-(w - 1), hi=w - 1, meter=meter, pin_first=0
        )
        if base is None:
            if w < wsound:
                raise SearchBudgetExceeded(
                    f"palette budget {w} below sound window {wsound}"
                )
            return None
        best_t = len(set(base.values()))
        best = base
        for t_try in range(best_t + 1, w + 1):
            sol = _search_component(
                edges,
                deg,
                lo=0,
                hi=t_try - 1,
                meter=meter,
                first_cap=(t_try - 1) // 2,
                need=(0, t_try - 1),
            )
            if sol is not None:
                best_t, best = t_try, sol
        if w < wsound:
            raise SearchBudgetExceeded(
                f"palette budget {w} below sound window {wsound}; "
                "maximum not certified"
            )
        shift = offset - min(best.values())
        combined.update({e: c + shift for e, c in best.items()})
        offset += best_t
        total += best_t
    return total, EdgeColouring(g, combined)


# ---------------------------------------------------------------------------
# thickness
# ---------------------------------------------------------------------------

@dataclass
class ThicknessResult:
    theta: int
    partition: EdgePartition
    colourings: list[EdgeColouring]  # one per part, aligned with part indices
    exhausted: bool  # True if theta is only an upper bound (a smaller k was
    # abandoned on budget rather than refuted)
    nodes: int = 0


class _Memo:
    def __init__(self):
        self.table: dict[frozenset, bool] = {}


def _subset_colourable(
    g: Graph, edge_subset: tuple[Edge, ...], meter: _Meter, memo: _Memo
) -> EdgeColouring | None:
    key = frozenset(edge_subset)
    sub = Graph(g.vertex_count, edge_subset)
    known = memo.table.get(key)
    if known is False:
        return None
    colours: dict[Edge, int] = {}
    for edges, deg in _component_pieces(sub):
        w = _sound_window(len(deg), len(edges))
        sol = _search_component(
            edges, deg, lo=-(w - 1), hi=w - 1, meter=meter, pin_first=0
        )
        if sol is None:
            memo.table[key] = False
            return None
        colours.update(sol)
    memo.table[key] = True
    return EdgeColouring(sub, colours)


def exact_thickness(
    g: Graph, k_max: int = 4, budget: SearchBudget | None = None
) -> ThicknessResult | None:
    """Minimum number of interval-colourable parts partitioning E(g).

    Returns None when every k <= k_max is exhaustively refuted ("exceeds
    k_max"); raises SearchBudgetExceeded if the budget dies first. The
    ``exhausted`` flag marks an uncertified minimum (a smaller k was abandoned
    on budget while a larger one succeeded) — it cannot currently arise
    because budget exhaustion aborts the whole call, but the field keeps the
    report format stable.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    budget = budget or SearchBudget()
    meter = _Meter(budget)
    m = g.edge_count
    if m == 0:
        empty = EdgePartition(g, {}, 0)
        return ThicknessResult(0, empty, [], False, meter.nodes)
    memo = _Memo()
    edges = list(g.edges)

    for k in range(1, k_max + 1):
        assignment = [0] * m
        found: list[list[Edge]] | None = None

        def dfs(i: int, used_parts: int) -> bool:
            nonlocal found
            if i == m:
                parts: list[list[Edge]] = [[] for _ in range(used_parts)]
                for j, e in enumerate(edges):
                    parts[assignment[j]].append(e)
                for part in parts:
                    meter.tick()
                    if _subset_colourable(g, tuple(part), meter, memo) is None:
                        return False
                found = parts
                return True
            cap = min(used_parts, k - 1)
            for p in range(cap + 1):
                meter.tick()
                assignment[i] = p
                if dfs(i + 1, max(used_parts, p + 1)):
                    return True
            return False

        if dfs(1 if m else 0, 1):
            assert found is not None
            part_of = {}
            colourings = []
            for idx, part in enumerate(found):
                for e in part:
                    part_of[e] = idx
                col = _subset_colourable(g, tuple(part), meter, memo)
                assert col is not None
                colourings.append(col)
            partition = EdgePartition(g, part_of, len(found))
            return ThicknessResult(len(found), partition, colourings, False, meter.nodes)
    return None


def peel_sequence(
    g: Graph, budget: SearchBudget | None = None
) -> list[tuple[int | None, int]]:
    """Thickness trace under removing vertices in ascending id order.

    The first entry is ``(None, theta(g))``; each following entry is
    ``(removed_vertex, theta_after_removal)``. Peeling stops once the next
    removal would leave an edgeless graph, so the last entry still has edges
    (for any input, that final graph is a star: every surviving edge meets
    the next vertex in order).
    """
    budget = budget or SearchBudget()
    m = g.edge_count
    if m == 0:
        return [(None, 0)]
    k_cap = max(2, int(math.isqrt(m)) + 2)

    def theta_of(h: Graph) -> int:
        res = exact_thickness(h, k_max=k_cap, budget=budget)
        if res is None:  # cannot happen below sqrt(m/2)+2, but stay honest
            raise SearchBudgetExceeded(f"thickness exceeds k_max={k_cap}")
        return res.theta

    out: list[tuple[int | None, int]] = [(None, theta_of(g))]
    survivors = list(range(g.vertex_count))
    for v in range(g.vertex_count):
        survivors.remove(v)
        sub, _table = induced_subgraph(g, survivors)
        if sub.edge_count == 0:
            break
        out.append((v, theta_of(sub)))
    return out
