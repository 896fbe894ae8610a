import random

import pytest
from hypothesis import given, strategies as st

from ilab import EdgeColouring, Graph, colour_forest, count_colours, spread_cap, spread_check, verify
from ilab.colouring import (
    parse_colouring_json,
    parse_colouring_text,
    serialize_colouring_json,
    serialize_colouring_text,
    span_bounded,
)
from ilab.graphs import FormatError


def colouring(n, coloured_edges):
    g = Graph(n, tuple(e for e, _ in coloured_edges))
    return EdgeColouring(g, {e: c for e, c in coloured_edges})


def test_verify_accepts_path():
    c = colouring(3, [((0, 1), 0), ((1, 2), 1)])
    rep = verify(c)
    assert rep.proper and rep.interval
    assert (rep.distinct_colours, rep.min_colour, rep.max_colour) == (2, 0, 1)
    assert rep.first_violation is None


def test_verify_flags_improper_before_gaps():
    c = colouring(3, [((0, 1), 2), ((1, 2), 2)])
    rep = verify(c)
    assert not rep.proper and not rep.interval
    v, reason = rep.first_violation
    assert v == 1 and "repeat" in reason


def test_verify_flags_gap_with_vertex():
    c = colouring(3, [((0, 1), 0), ((1, 2), 2)])
    rep = verify(c)
    assert rep.proper and not rep.interval
    v, reason = rep.first_violation
    assert v == 1 and "not contiguous" in reason


def test_negative_colours_are_legal():
    c = colouring(3, [((0, 1), -5), ((1, 2), -4)])
    assert verify(c).interval


def test_empty_graph_is_interval():
    c = EdgeColouring(Graph(4, ()), {})
    rep = verify(c)
    assert rep.interval and rep.distinct_colours == 0


@given(st.integers(-40, 40))
def test_translation_preserves_everything(offset):
    c = colouring(4, [((0, 1), 3), ((1, 2), 4), ((2, 3), 3)])
    t = c.translated(offset)
    r0, r1 = verify(c), verify(t)
    assert (r0.proper, r0.interval, r0.distinct_colours) == (r1.proper, r1.interval, r1.distinct_colours)
    assert r1.min_colour == r0.min_colour + offset
    assert t.normalised().colours == c.normalised().colours


def test_count_colours_distinct_not_span():
    c = colouring(5, [((0, 1), 0), ((2, 3), 7), ((3, 4), 8)])
    assert count_colours(c) == 3


def test_span_bounded_uses_degree_window():
    star = colouring(4, [((0, 1), 0), ((0, 2), 1), ((0, 3), 2)])
    assert span_bounded(star, 1)
    stretched = colouring(4, [((0, 1), 0), ((0, 2), 1), ((0, 3), 5)])
    assert not span_bounded(stretched, 1)
    assert span_bounded(stretched, 2)


class TestSpread:
    def test_cap_formula(self):
        assert spread_cap(4, 11) == 50
        assert spread_cap(0, 3) == 2

    def test_path_within_cap(self):
        g = Graph(4, ((0, 1), (1, 2), (2, 3)))
        c = {(0, 1): 0, (1, 2): 1, (2, 3): 2}
        ok, pair = spread_check(g, [0, 1, 2, 3], c, 2)
        assert ok and pair is None

    def test_violation_reports_extremal_pair(self):
        g = Graph(3, ((0, 1), (1, 2)))
        c = {(0, 1): 0, (1, 2): 99}
        ok, pair = spread_check(g, [0, 1, 2], c, 2)
        assert not ok
        assert pair == ((0, 1), (1, 2))

    def test_rejects_disconnected_piece(self):
        g = Graph(4, ((0, 1), (2, 3)))
        with pytest.raises(ValueError):
            spread_check(g, [0, 1, 2, 3], {(0, 1): 0, (2, 3): 0}, 1)

    def test_rejects_understated_degree_cap(self):
        g = Graph(3, ((0, 1), (0, 2)))
        with pytest.raises(ValueError):
            spread_check(g, [0, 1], {(0, 1): 0, (0, 2): 1}, 1)

    def test_every_interval_colouring_passes_on_samples(self):
        # the spread bound is a theorem about interval colourings, so any
        # verified colouring must pass it on every connected piece
        from conftest import grow_connected_subgraph

        rng = random.Random(0)
        g = Graph(6, ((0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)))
        from ilab import find_interval_colouring

        c = find_interval_colouring(g)
        assert verify(c).interval
        for _ in range(50):
            hv = grow_connected_subgraph(g, rng, 5)
            cap = max(g.degree(v) for v in hv)
            ok, _pair = spread_check(g, hv, c, cap)
            assert ok


@st.composite
def forests(draw):
    n = draw(st.integers(1, 40))
    edges = []
    for v in range(1, n):
        if draw(st.booleans()):
            edges.append((draw(st.integers(0, v - 1)), v))
    return Graph(n, tuple(edges))


@given(forests())
def test_colour_forest_output_is_interval(f):
    c = colour_forest(f)
    assert verify(c).interval
    assert set(c.colours) == set(f.edges)


def test_colour_forest_rejects_cycles():
    with pytest.raises(ValueError):
        colour_forest(Graph(3, ((0, 1), (1, 2), (0, 2))))


@given(forests())
def test_colouring_text_round_trip(f):
    c = colour_forest(f)
    back = parse_colouring_text(serialize_colouring_text(c))
    assert back.colours == c.colours
    assert back.graph.vertex_count == f.vertex_count


@given(forests())
def test_colouring_json_round_trip(f):
    c = colour_forest(f)
    back = parse_colouring_json(serialize_colouring_json(c))
    assert back.colours == c.colours


@pytest.mark.parametrize(
    "text",
    ["", "1 1\n", "2 1\n0 1\n", "2 1\n0 1 x\n", "2 2\n0 1 0\n0 1 1\n"],
)
def test_colouring_parse_errors(text):
    with pytest.raises(FormatError):
        parse_colouring_text(text)


def test_domain_mismatch_rejected():
    g = Graph(3, ((0, 1), (1, 2)))
    with pytest.raises(ValueError):
        EdgeColouring(g, {(0, 1): 0})
    with pytest.raises(ValueError):
        EdgeColouring(g, {(0, 1): 0, (1, 2): 1, (0, 2): 2})
