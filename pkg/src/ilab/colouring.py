"""Interval edge colourings: verification, spread bounds, forests.

An edge colouring ``c: E -> Z`` is *proper* if edges sharing a vertex get
distinct colours, and *interval* if additionally the set of colours at every
vertex is a contiguous run of integers. Distinctness plus a span of exactly
``deg(v) - 1`` at every vertex is equivalent to interval-ness, which is what
the verifier checks.

The spread bound: if ``H`` is a connected subgraph of diameter ``d`` whose
vertices all have degree at most ``delta_cap`` in the ambient graph, then in
any interval colouring of any supergraph of ``H`` the colours of two edges of
``H`` differ by at most ``(d+1) * (delta_cap - 1)`` — walking between the two
edges changes the colour by at most ``delta_cap - 1`` per shared vertex.
``spread_check`` tests exactly this, so a ``False`` return certifies that the
colouring is not an interval colouring of any supergraph of ``H``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import (
    Edge,
    FormatError,
    Graph,
    canonical_edge,
    diameter,
    induced_subgraph,
)


@dataclass(frozen=True)
class EdgeColouring:
    """A total assignment of integer colours to a graph's edges."""

    graph: Graph
    colours: dict[Edge, int]

    def __post_init__(self):
        if set(self.colours) != set(self.graph.edges):
            missing = sorted(set(self.graph.edges) - set(self.colours))[:3]
            extra = sorted(set(self.colours) - set(self.graph.edges))[:3]
            raise ValueError(f"colour domain mismatch (missing {missing}, extra {extra})")
        for e, c in self.colours.items():
            if not isinstance(c, int):
                raise ValueError(f"colour of {e} is not an int: {c!r}")

    def colour(self, u: int, v: int) -> int:
        return self.colours[canonical_edge(u, v)]

    def vertex_colours(self, v: int) -> list[int]:
        return sorted(self.colours[canonical_edge(v, w)] for w in self.graph.adjacency[v])

    def translated(self, offset: int) -> "EdgeColouring":
        return EdgeColouring(self.graph, {e: c + offset for e, c in self.colours.items()})

    def normalised(self) -> "EdgeColouring":
        """Shift so the minimum colour is 0 (identity on empty graphs)."""
        if not self.colours:
            return self
        return self.translated(-min(self.colours.values()))


@dataclass
class ColouringReport:
    proper: bool
    interval: bool
    distinct_colours: int
    min_colour: int | None
    max_colour: int | None
    first_violation: tuple[int, str] | None  # (vertex, reason)


def verify(c: EdgeColouring) -> ColouringReport:
    """Check properness and interval-ness vertex by vertex.

    The first violation (lowest vertex id, properness before interval-ness)
    is reported; an empty graph verifies trivially.
    """
    g = c.graph
    violation = None
    proper = True
    interval = True
    for v in range(g.vertex_count):
        cols = c.vertex_colours(v)
        if not cols:
            continue
        distinct = len(set(cols))
        if distinct != len(cols):
            proper = False
            interval = False
            if violation is None:
                violation = (v, f"repeated colour at vertex {v}: {cols}")
            continue
        if cols[-1] - cols[0] != len(cols) - 1:
            interval = False
            if violation is None:
                violation = (
                    v,
                    f"colours at vertex {v} not contiguous: {cols}",
                )
    values = list(c.colours.values())
    return ColouringReport(
        proper=proper,
        interval=interval,
        distinct_colours=len(set(values)),
        min_colour=min(values) if values else None,
        max_colour=max(values) if values else None,
        first_violation=violation,
    )


def count_colours(c: EdgeColouring) -> int:
    return len(set(c.colours.values()))


def span_bounded(c: EdgeColouring, bound_factor: int) -> bool:
    """True iff max(C_v) - min(C_v) <= bound_factor * deg(v) at every vertex.

    ``bound_factor < 1`` is rejected; with a proper colouring the factor-1
    case is implied by (and weaker than) interval-ness.
    """
    if bound_factor < 1:
        raise ValueError("bound_factor must be >= 1")
    g = c.graph
    for v in range(g.vertex_count):
        cols = c.vertex_colours(v)
        if cols and cols[-1] - cols[0] > bound_factor * len(cols):
            return False
    return True


def spread_cap(diam: int, delta_cap: int) -> int:
    """Max colour difference between edges of a diameter-``diam`` subgraph."""
    return (diam + 1) * (delta_cap - 1)


def spread_check(
    g: Graph,
    h_vertices: Sequence[int],
    c: EdgeColouring | dict[Edge, int],
    delta_cap: int,
) -> tuple[bool, tuple[Edge, Edge] | None]:
    """Test the spread bound on the subgraph induced by ``h_vertices``.

    ``c`` must colour at least the induced edges (it may colour a supergraph);
    ``delta_cap`` must dominate the ambient degree of every listed vertex.
    Returns ``(True, None)`` or ``(False, (e_min, e_max))`` with an extremal
    violating pair. A ``False`` certifies that ``c`` is not an interval
    colouring of any supergraph of the induced subgraph.
    """
    colours = c.colours if isinstance(c, EdgeColouring) else c
    sub, table = induced_subgraph(g, h_vertices)
    if sub.vertex_count == 0:
        raise ValueError("empty vertex set")
    d = diameter(sub)
    if d == float("inf"):
        raise ValueError("induced subgraph is disconnected")
    actual_max = max(g.degree(v) for v in table)
    if delta_cap < actual_max:
        raise ValueError(
            f"delta_cap={delta_cap} below actual max degree {actual_max}"
        )
    h_edges = [canonical_edge(table[u], table[v]) for u, v in sub.edges]
    if not h_edges:
        return True, None
    for e in h_edges:
        if e not in colours:
            raise ValueError(f"colouring does not cover induced edge {e}")
    e_min = min(h_edges, key=lambda e: (colours[e], e))
    e_max = max(h_edges, key=lambda e: (colours[e], e))
    if colours[e_max] - colours[e_min] > spread_cap(int(d), delta_cap):
        return False, (e_min, e_max)
    return True, None


# ---------------------------------------------------------------------------
# forests
# ---------------------------------------------------------------------------

def colour_forest(f: Graph) -> EdgeColouring:
    """Interval-colour a forest.

    Each tree is rooted at its smallest vertex; the root's edges get colours
    ``1..deg`` in neighbour order, and below that a vertex whose parent edge
    has colour ``p`` gives its child edges ``p+1, p+2, ...`` so every vertex
    sees ``[p, p + deg - 1]``.
    """
    colours: dict[Edge, int] = {}
    seen = [False] * f.vertex_count
    for root in range(f.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        # (vertex, parent, colour of parent edge)
        stack = [(root, -1, 0)]
        while stack:
            v, parent, pcol = stack.pop()
            nxt = pcol + 1
            for w in f.adjacency[v]:
                if w == parent:
                    continue
                if seen[w]:
                    raise ValueError(f"input contains a cycle through ({v}, {w})")
                seen[w] = True
                colours[canonical_edge(v, w)] = nxt
                stack.append((w, v, nxt))
                nxt += 1
    return EdgeColouring(f, colours)


# ---------------------------------------------------------------------------
# colouring files: graph text plus a third colour column, or a JSON mirror
# ---------------------------------------------------------------------------

def serialize_colouring_text(c: EdgeColouring) -> str:
    g = c.graph
    out = [f"{g.vertex_count} {g.edge_count}"]
    out.extend(f"{u} {v} {c.colours[(u, v)]}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def parse_colouring_text(text: str) -> EdgeColouring:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("line 1: empty input")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"line 1: expected '<n> <m>', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError(f"line 1: non-integer header {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise FormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    colours = {}
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"line {i}: expected '<u> <v> <colour>', got {ln!r}")
        try:
            u, v, col = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise FormatError(f"line {i}: non-integer field in {ln!r}") from None
        edges.append((u, v))
        colours[canonical_edge(u, v)] = col
    try:
        g = Graph(n, tuple(edges))
        return EdgeColouring(g, colours)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_colouring_json(c: EdgeColouring) -> str:
    g = c.graph
    return json.dumps(
        {
            "n": g.vertex_count,
            "edges": [[u, v] for u, v in g.edges],
            "colours": [c.colours[e] for e in g.edges],
        },
        separators=(",", ":"),
    ) + "\n"


def parse_colouring_json(text: str) -> EdgeColouring:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    for key in ("n", "edges", "colours"):
        if not isinstance(obj, dict) or key not in obj:
            raise FormatError(f'expected an object with "{key}"')
    if len(obj["edges"]) != len(obj["colours"]):
        raise FormatError("edges and colours arrays differ in length")
    try:
        g = Graph(int(obj["n"]), tuple((int(u), int(v)) for u, v in obj["edges"]))
        colours = {
            canonical_edge(int(u), int(v)): int(col)
            for (u, v), col in zip(obj["edges"], obj["colours"])
        }
        return EdgeColouring(g, colours)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from None


def load_colouring(path: str) -> EdgeColouring:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        return parse_colouring_json(text)
    return parse_colouring_text(text)
