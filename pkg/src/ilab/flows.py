"""Small flow/matching cores used by the decomposition pipeline.

Both are index-based: callers translate vertex labels to 0..n-1 first.
"""

from __future__ import annotations

from collections import deque


class Dinic:
    """Max flow on a small directed network with integer capacities."""

    def __init__(self, n: int):
        self.n = n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> int:
        """Add u->v with capacity cap; returns the edge index (reverse is +1)."""
        idx = len(self.to)
        self.to.append(v)
        self.cap.append(cap)
        self.adj[u].append(idx)
        self.to.append(u)
        self.cap.append(0)
        self.adj[v].append(idx + 1)
        return idx

    def _bfs(self, s: int, t: int) -> bool:
        self.level = [-1] * self.n
        self.level[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for idx in self.adj[x]:
                if self.cap[idx] > 0 and self.level[self.to[idx]] < 0:
                    self.level[self.to[idx]] = self.level[x] + 1
                    q.append(self.to[idx])
        return self.level[t] >= 0

    def _dfs(self, x: int, t: int, pushed: int) -> int:
        if x == t:
            return pushed
        while self.it[x] < len(self.adj[x]):
            idx = self.adj[x][self.it[x]]
            y = self.to[idx]
            if self.cap[idx] > 0 and self.level[y] == self.level[x] + 1:
                got = self._dfs(y, t, min(pushed, self.cap[idx]))
                if got > 0:
                    self.cap[idx] -= got
                    self.cap[idx ^ 1] += got
                    return got
            self.it[x] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while self._bfs(s, t):
            self.it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, 1 << 60)
                if pushed == 0:
                    break
                flow += pushed
        return flow

    def min_cut_source_side(self, s: int) -> set[int]:
        """Vertices reachable from s in the residual graph (call after max_flow)."""
        seen = {s}
        q = deque([s])
        while q:
            x = q.popleft()
            for idx in self.adj[x]:
                y = self.to[idx]
                if self.cap[idx] > 0 and y not in seen:
                    seen.add(y)
                    q.append(y)
        return seen

    def flow_on(self, idx: int) -> int:
        """Flow currently carried by edge idx (its reverse edge's capacity)."""
        return self.cap[idx ^ 1]


def hopcroft_karp(
    n_left: int, n_right: int, adjacency: list[list[int]]
) -> dict[int, int]:
    """Maximum matching of a bipartite graph given left-side adjacency.

    Returns a dict mapping matched left indices to right indices.
    """
    INF = float("inf")
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0.0] * n_left

    def bfs() -> bool:
        q = deque()
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adjacency[u]:
                w = match_r[v]
                if w < 0:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adjacency[u]:
            w = match_r[v]
            if w < 0 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] < 0:
                dfs(u)
    return {u: v for u, v in enumerate(match_l) if v >= 0}
