import io
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from navtime.errors import EdgeListParseError, EmptyGraphError, SamplingExhaustedError, UsageError
from navtime.graph import (
    CandidateEdge,
    Graph,
    Partition,
    candidate_edges,
    connected_components,
    is_connected,
    largest_component,
    load_edge_list,
    sample_partition,
)
from navtime.harness import karate_path


def test_two_edge_path():
    g = load_edge_list("a b\nb c")
    assert (g.N, g.M) == (3, 2)
    assert g.node_labels == ("a", "b", "c")


def test_duplicates_and_self_loops_dropped():
    g = load_edge_list("a b\nb a\na a")
    assert (g.N, g.M) == (2, 1)


def test_accepts_bytes_stream_commas_and_comments():
    text = b"% konect header\n# comment\nx,y\n\ny\tz\n"
    g = load_edge_list(io.BytesIO(text))
    assert g.node_labels == ("x", "y", "z")
    assert g.edges() == [(0, 1), (1, 2)]


def test_karate_counts():
    with open(karate_path(), "rb") as fh:
        g = load_edge_list(fh)
    assert (g.N, g.M) == (34, 78)
    assert g.degrees().sum() == 2 * g.M


@pytest.mark.parametrize("text, lineno", [("a b\na b c\n", 2), ("a\n", 1), ("# c\n\nx y\nz\n", 4)])
def test_malformed_line_reports_number(text, lineno):
    with pytest.raises(EdgeListParseError) as info:
        load_edge_list(text)
    assert info.value.lineno == lineno


@pytest.mark.parametrize("text", ["", "# only comments\n", "a a\n"])
def test_empty_graph(text):
    with pytest.raises(EmptyGraphError):
        load_edge_list(text)


def test_largest_component_identity(path4):
    g, _ = path4
    assert largest_component(g) == g


def test_largest_component_picks_bigger():
    g = load_edge_list("p q\nx y\ny z\n")
    lcc = largest_component(g)
    assert lcc.node_labels == ("x", "y", "z")
    assert lcc.M == 2


def test_largest_component_tie_goes_to_smallest_id():
    g = load_edge_list("c d\na b\n")
    lcc = largest_component(g)
    assert lcc.node_labels == ("c", "d")


def test_sample_partition_path_single_target(path4):
    g, _ = path4
    seen = {sample_partition(g, 1, np.random.default_rng(s)).C for s in range(200)}
    assert seen == {(0,), (3,)}


def test_sample_partition_path_two_targets(path4):
    g, _ = path4
    seen = {sample_partition(g, 2, np.random.default_rng(s)).C for s in range(300)}
    assert seen == {(0, 1), (2, 3), (0, 3)}


def test_sample_partition_deterministic(path4):
    g, _ = path4
    a = sample_partition(g, 2, np.random.default_rng(7))
    b = sample_partition(g, 2, np.random.default_rng(7))
    assert a == b


def test_sample_partition_exhausted():
    path = Graph.from_edges([(i, i + 1) for i in range(19)], 20)
    # only 11 of the C(20, 10) subsets leave a contiguous Q
    with pytest.raises(SamplingExhaustedError):
        sample_partition(path, 10, np.random.default_rng(0), max_attempts=5)
    with pytest.raises(UsageError):
        sample_partition(path, 20, np.random.default_rng(0))


def test_candidates_path(path4):
    g, p = path4
    assert candidate_edges(g, p) == [CandidateEdge(0, 3), CandidateEdge(1, 3)]


def test_candidates_complete_graph():
    g = Graph.from_edges(itertools.combinations(range(5), 2), 5)
    assert candidate_edges(g, Partition((0, 1, 2), (3, 4))) == []


def test_candidates_star_centre_in_c():
    g = Graph.from_edges([(0, i) for i in range(1, 5)], 5)
    assert candidate_edges(g, Partition((1, 2, 3, 4), (0,))) == []


edge_lists = st.lists(st.tuples(st.integers(0, 14), st.integers(0, 14)), min_size=1, max_size=60)


@given(edge_lists)
def test_graph_invariants(pairs):
    text = "\n".join(f"n{u} n{v}" for u, v in pairs)
    if all(u == v for u, v in pairs):
        with pytest.raises(EmptyGraphError):
            load_edge_list(text)
        return
    g = load_edge_list(text)
    assert g.degrees().sum() == 2 * g.M
    for i, adj in enumerate(g.adjacency):
        assert i not in adj
        assert list(adj) == sorted(set(adj))
        for j in adj:
            assert i in g.adjacency[j]
    lcc = largest_component(g)
    assert is_connected(lcc)
    assert lcc.N == max(len(c) for c in connected_components(g))
    assert min(lcc.degrees()) >= 1


@settings(max_examples=50)
@given(edge_lists, st.integers(0, 2**32 - 1), st.data())
def test_partition_and_candidate_invariants(pairs, seed, data):
    pairs = [(u, v) for u, v in pairs if u != v]
    if not pairs:
        return
    g = largest_component(Graph.from_edges(pairs, 15))
    if g.N < 2:
        return
    c_size = data.draw(st.integers(1, g.N - 1))
    try:
        p = sample_partition(g, c_size, np.random.default_rng(seed), max_attempts=500)
    except SamplingExhaustedError:
        return
    assert set(p.Q).isdisjoint(p.C)
    assert set(p.Q) | set(p.C) == set(range(g.N))
    assert is_connected(g, p.Q)
    cross = sum(1 for u, v in g.edges() if (u in p.C) != (v in p.C))
    cands = candidate_edges(g, p)
    assert len(cands) == len(p.Q) * len(p.C) - cross
    assert all(not g.has_edge(q, c) for q, c in cands)
