import itertools
import random

from ilab.flows import Dinic, hopcroft_karp


def brute_max_matching(n_left, adjacency):
    """Largest matching by trying all subsets of edges (tiny inputs)."""
    edges = [(u, v) for u in range(n_left) for v in adjacency[u]]
    best = 0
    for r in range(len(edges), 0, -1):
        if r <= best:
            break
        for combo in itertools.combinations(edges, r):
            ls = [u for u, _ in combo]
            rs = [v for _, v in combo]
            if len(set(ls)) == r and len(set(rs)) == r:
                best = r
                break
    return best


def matching_flow(n_left, n_right, adjacency):
    d = Dinic(n_left + n_right + 2)
    s, t = n_left + n_right, n_left + n_right + 1
    for u in range(n_left):
        d.add_edge(s, u, 1)
    for v in range(n_right):
        d.add_edge(n_left + v, t, 1)
    mid = {}
    for u in range(n_left):
        for v in adjacency[u]:
            mid[(u, v)] = d.add_edge(u, n_left + v, 1)
    return d, d.max_flow(s, t), mid


def test_three_routes_agree_on_small_instances():
    rng = random.Random(42)
    for trial in range(60):
        nl, nr = rng.randint(1, 5), rng.randint(1, 5)
        adjacency = [
            sorted({rng.randrange(nr) for _ in range(rng.randint(0, nr))})
            for _ in range(nl)
        ]
        want = brute_max_matching(nl, adjacency)
        match = hopcroft_karp(nl, nr, adjacency)
        assert len(match) == want, (trial, adjacency)
        _, flow, _ = matching_flow(nl, nr, adjacency)
        assert flow == want, (trial, adjacency)


def test_hopcroft_karp_returns_a_valid_matching():
    rng = random.Random(7)
    nl = nr = 30
    adjacency = [sorted(rng.sample(range(nr), 6)) for _ in range(nl)]
    match = hopcroft_karp(nl, nr, adjacency)
    assert len(set(match.values())) == len(match)
    for u, v in match.items():
        assert v in adjacency[u]


def test_perfect_matching_on_regular_graph():
    # 3-regular bipartite graphs always have one (Hall / König)
    nl = nr = 9
    adjacency = [sorted((u + k) % nr for k in range(3)) for u in range(nl)]
    assert len(hopcroft_karp(nl, nr, adjacency)) == nl


def test_min_cut_separates_and_matches_flow_value():
    d = Dinic(4)
    d.add_edge(0, 1, 3)
    d.add_edge(0, 2, 2)
    d.add_edge(1, 3, 2)
    d.add_edge(2, 3, 3)
    assert d.max_flow(0, 3) == 4
    side = d.min_cut_source_side(0)
    assert 0 in side and 3 not in side
    crossing = 0
    for u, v, cap in ((0, 1, 3), (0, 2, 2), (1, 3, 2), (2, 3, 3)):
        if u in side and v not in side:
            crossing += cap
    assert crossing == 4


def test_flow_on_reports_per_edge_units():
    d, flow, mid = matching_flow(2, 2, [[0, 1], [0]])
    assert flow == 2
    used = sorted(pair for pair, idx in mid.items() if d.flow_on(idx) == 1)
    # left 1 only reaches right 0, so the assignment is forced
    assert used == [(0, 1), (1, 0)]
