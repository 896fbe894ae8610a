"""Core graph containers and file formats.

Conventions used throughout the package:

* vertices of a ``Graph`` are ``0 .. n-1``; an edge is the ordered pair
  ``(u, v)`` with ``u < v`` and graphs are simple (no loops, no multi-edges);
* a ``BipartiteGraph`` keeps explicit vertex *labels* for both sides (labels
  are arbitrary ints, typically ids of some ambient ``Graph``) and stores each
  edge as ``(left_label, right_label)``;
* the text format is ``"<n> <m>"`` on the first line followed by ``m`` lines
  ``"<u> <v>"``; serialisation emits edges sorted lexicographically, parsing
  accepts any order but rejects duplicates, loops and out-of-range ids;
* the JSON format is ``{"n": n, "edges": [[u, v], ...]}`` with the same
  validation rules.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    """Return the (min, max) form of an edge, rejecting loops."""
    if u == v:
        raise ValueError(f"loop edge ({u}, {v}) not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices 0..n-1."""

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        seen = set()
        norm = []
        for u, v in self.edges:
            e = canonical_edge(u, v)
            if not (0 <= e[0] < self.vertex_count and e[1] < self.vertex_count):
                raise ValueError(f"edge {e} out of range for n={self.vertex_count}")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(vertex_count, tuple(edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        if self.vertex_count == 0:
            return 0
        return max(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, in order of smallest vertex."""
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            q = deque([s])
            while q:
                x = q.popleft()
                for y in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        q.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or len(self.components()) == 1


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph, re-indexed to 0..k-1.

    Returns ``(subgraph, table)`` where ``table[i]`` is the original id of the
    subgraph's vertex ``i``. Vertices are kept in sorted order, so the mapping
    is deterministic.
    """
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(vs)}
    sub_edges = [
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    ]
    return Graph(len(vs), tuple(sub_edges)), vs


def diameter(g: Graph) -> float:
    """Largest BFS eccentricity; ``math.inf`` if disconnected, 0 if n <= 1."""
    if g.vertex_count <= 1:
        return 0
    best = 0
    for s in range(g.vertex_count):
        dist = [-1] * g.vertex_count
        dist[s] = 0
        q = deque([s])
        reached = 1
        while q:
            x = q.popleft()
            for y in g.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    reached += 1
                    q.append(y)
        if reached < g.vertex_count:
            return math.inf
        best = max(best, max(dist))
    return best


# ---------------------------------------------------------------------------
# bipartite graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with explicit vertex labels for each side.

    ``left`` and ``right`` are disjoint ordered label lists; each edge is a
    ``(left_label, right_label)`` pair. Labels typically refer to vertices of
    an ambient :class:`Graph`, which keeps subgraph bookkeeping trivial.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ls, rs = set(self.left), set(self.right)
        if len(ls) != len(self.left) or len(rs) != len(self.right):
            raise ValueError("duplicate labels within a side")
        if ls & rs:
            raise ValueError(f"sides share labels: {sorted(ls & rs)[:5]}")
        seen = set()
        for u, v in self.edges:
            if u not in ls or v not in rs:
                raise ValueError(f"edge ({u}, {v}) does not go left->right")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def density(self) -> float:
        if not self.left or not self.right:
            return 0.0
        return len(self.edges) / (len(self.left) * len(self.right))

    @cached_property
    def left_adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {u: [] for u in self.left}
        for u, v in self.edges:
            adj[u].append(v)
        return {u: tuple(sorted(a)) for u, a in adj.items()}

    @cached_property
    def right_adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.right}
        for u, v in self.edges:
            adj[v].append(u)
        return {v: tuple(sorted(a)) for v, a in adj.items()}

    def degree(self, label: int) -> int:
        if label in self.left_adjacency:
            return len(self.left_adjacency[label])
        return len(self.right_adjacency[label])

    def restrict(self, left: Iterable[int], right: Iterable[int]) -> "BipartiteGraph":
        """Sub-pair induced on the given label subsets (order preserved from self)."""
        lset, rset = set(left), set(right)
        keep_l = tuple(u for u in self.left if u in lset)
        keep_r = tuple(v for v in self.right if v in rset)
        keep_e = tuple((u, v) for u, v in self.edges if u in lset and v in rset)
        return BipartiteGraph(keep_l, keep_r, keep_e)

    def to_graph(self, vertex_count: int | None = None) -> Graph:
        """View as a plain Graph on the ambient id space."""
        n = vertex_count
        if n is None:
            n = max(self.left + self.right) + 1 if (self.left or self.right) else 0
        return Graph(n, tuple(canonical_edge(u, v) for u, v in self.edges))


# ---------------------------------------------------------------------------
# edge partitions
# ---------------------------------------------------------------------------

@dataclass
class EdgePartition:
    """Partition of a graph's edge set into indexed parts."""

    graph: Graph
    part_of: dict[Edge, int]
    part_count: int

    def __post_init__(self):
        if self.part_count < 0:
            raise ValueError("part_count must be non-negative")
        keys = set(self.part_of)
        edges = set(self.graph.edges)
        if keys != edges:
            missing = sorted(edges - keys)[:3]
            extra = sorted(keys - edges)[:3]
            raise ValueError(
                f"partition domain mismatch (missing {missing}, extra {extra})"
            )
        for e, p in self.part_of.items():
            if not 0 <= p < self.part_count:
                raise ValueError(f"edge {e} assigned to invalid part {p}")

    def parts(self) -> list[list[Edge]]:
        out: list[list[Edge]] = [[] for _ in range(self.part_count)]
        for e in self.graph.edges:  # canonical order
            out[self.part_of[e]].append(e)
        return out

    def part_sizes(self) -> list[int]:
        return [len(p) for p in self.parts()]


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

class FormatError(ValueError):
    """Raised for malformed graph/colouring files; message carries a line number."""


def parse_graph_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines()]
    idx = 0

    def next_content_line():
        nonlocal idx
        while idx < len(lines):
            ln = lines[idx].strip()
            idx += 1
            if ln:
                return ln, idx
        return None, idx

    header, lineno = next_content_line()
    if header is None:
        raise FormatError("line 1: empty input")
    head = header.split()
    if len(head) != 2:
        raise FormatError(f"line {lineno}: expected '<n> <m>', got {header!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer header {header!r}") from None
    edges = []
    for _ in range(m):
        ln, lineno = next_content_line()
        if ln is None:
            raise FormatError(f"line {lineno}: expected {m} edges, file ended early")
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<u> <v>', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer edge {ln!r}") from None
        edges.append((u, v))
    trailing, lineno = next_content_line()
    if trailing is not None:
        raise FormatError(f"line {lineno}: unexpected trailing content {trailing!r}")
    try:
        return Graph(n, tuple(edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_graph_text(g: Graph) -> str:
    out = [f"{g.vertex_count} {g.edge_count}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def parse_graph_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise FormatError('expected an object with "n" and "edges"')
    try:
        return Graph(int(obj["n"]), tuple((int(u), int(v)) for u, v in obj["edges"]))
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from None


def serialize_graph_json(g: Graph) -> str:
    return json.dumps(
        {"n": g.vertex_count, "edges": [[u, v] for u, v in g.edges]},
        indent=None,
        separators=(",", ":"),
    ) + "\n"


def load_graph(path: str) -> Graph:
    """Load a graph from a path, dispatching on the .json suffix."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        return parse_graph_json(text)
    return parse_graph_text(text)
