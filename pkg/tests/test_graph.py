import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DATA, graphs
from kedkit.graph import (
    Graph,
    GraphError,
    GraphParseError,
    complete_graph,
    cut_edges,
    cycle_graph,
    delete_edges,
    edge,
    is_independent,
    is_vertex_cover,
    neighbors,
    parse_graph,
    read_graph_file,
    star_graph,
    write_graph,
)


def test_parse_triangle():
    g = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert g == complete_graph(3)


def test_parse_isolated_vertices():
    g = parse_graph("p edge 4 0\n")
    assert g.n == 4 and g.edges == frozenset()


@pytest.mark.parametrize(
    "text, kind",
    [
        ("p edge 2 1\ne 1 1\n", "self-loop"),
        ("p edge 2 1\ne 1 3\n", "range"),
        ("p edge 3 2\ne 1 2\ne 2 1\n", "duplicate"),
        ("e 1 2\n", "header"),
        ("p edge 3 2\ne 1 2\n", "header"),
        ("p edge 3 1\ne 1 x\n", "syntax"),
    ],
)
def test_parse_errors(text, kind):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.kind == kind


def test_parse_error_reports_line():
    with pytest.raises(GraphParseError) as info:
        parse_graph("c comment\np edge 2 1\ne 2 2\n")
    assert info.value.line == 3


def test_comments_and_optional_lines():
    gf = read_graph_file("c hello\np edge 3 2\ne 1 2\ne 2 3\nm 1 2\nk 4\n")
    assert gf.matching == frozenset({(1, 2)}) and gf.k == 4


def test_matching_line_must_be_edge():
    with pytest.raises(GraphParseError):
        read_graph_file("p edge 3 1\ne 1 2\nm 2 3\n")


@pytest.mark.parametrize("path", sorted(DATA.glob("*.gr")), ids=lambda p: p.name)
def test_fixture_round_trip_is_bit_exact(path):
    text = path.read_text()
    gf = read_graph_file(text)
    assert write_graph(gf.graph, gf.matching, gf.k) == text


@given(graphs())
def test_round_trip(g):
    assert parse_graph(write_graph(g)) == g


def test_delete_edges_examples():
    assert delete_edges(complete_graph(3), {(1, 2)}).edges == {(1, 3), (2, 3)}
    assert delete_edges(cycle_graph(4), set()) == cycle_graph(4)
    with pytest.raises(GraphError):
        delete_edges(cycle_graph(4), {(1, 3)})


def test_delete_counterexample_matching_edges(counterexample):
    g = delete_edges(counterexample.graph, {(3, 4), (5, 6)})
    assert g.n == 14 and g.m == 15
    assert neighbors(g, 4) == frozenset() and neighbors(g, 6) == frozenset()


def test_cut_edges_examples():
    c4 = cycle_graph(4)
    assert cut_edges(c4, {1, 3}, {2, 4}) == c4.edges
    assert cut_edges(complete_graph(3), {1}, {1}) == frozenset()
    assert cut_edges(complete_graph(3), {1, 2}, {1, 2}) == {(1, 2)}


def test_neighbors_examples():
    assert neighbors(complete_graph(3), 1) == {2, 3}
    assert neighbors(star_graph(3), 1) == {2, 3, 4}
    assert neighbors(Graph(3, frozenset()), 1) == frozenset()


@given(graphs(max_n=7), st.data())
def test_cut_partitions_edges(g, data):
    a = frozenset(data.draw(st.sets(st.sampled_from(list(g.vertices)))) if g.n else ())
    b = frozenset(g.vertices) - a
    parts = [cut_edges(g, a, b), g.induced(a).edges, g.induced(b).edges]
    assert sum(len(p) for p in parts) == g.m
    assert frozenset().union(*parts) == g.edges


@given(graphs(max_n=7), st.data())
def test_delete_removes_exactly(g, data):
    f = data.draw(st.sets(st.sampled_from(sorted(g.edges)))) if g.m else set()
    h = delete_edges(g, f)
    assert h.n == g.n and h.edges == g.edges - f


def test_edge_normalizes():
    assert edge(5, 2) == (2, 5)
    with pytest.raises(GraphError):
        Graph(3, frozenset({(3, 3)}))


@given(graphs(max_n=7))
def test_cover_and_independent_are_complementary(g):
    for r in range(g.n + 1):
        for s in itertools.combinations(g.vertices, r):
            s = frozenset(s)
            assert is_vertex_cover(g, s) == is_independent(g, frozenset(g.vertices) - s)
