from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from perfdiv.errors import CapExceeded, VertexError
from perfdiv.graph import (
    Graph,
    adjacency_queries,
    bits,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    find_homogeneous_sets,
    induced_subgraph,
    is_anticomplete_to,
    is_complete_to,
    mask_of,
    path_graph,
    petersen_graph,
    set_neighbors,
    substitute,
)

from conftest import graphs_up_to
from test_graph6 import graphs


def edge_set(g):
    return {frozenset(e) for e in g.edges()}


def test_graph_rejects_bad_rows():
    with pytest.raises(VertexError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(VertexError):
        Graph(1, (0b1,))  # loop
    with pytest.raises(VertexError):
        Graph(2, (0b100, 0))  # bit beyond n


def test_induced_subgraph_examples():
    c5 = cycle_graph(5)
    sub, index = induced_subgraph(c5, c5.full)
    assert sub == c5 and index == (0, 1, 2, 3, 4)
    sub, index = induced_subgraph(c5, 0b01111)
    assert sub == path_graph(4)
    with pytest.raises(VertexError):
        induced_subgraph(c5, 1 << 5)


def test_petersen_outer_cycle():
    p = petersen_graph()
    outer = [0, 1, 2, 3, 4]
    sub, index = induced_subgraph(p, mask_of(outer))
    # brute-force adjacency check against the original
    for i, j in combinations(range(5), 2):
        assert sub.has_edge(i, j) == p.has_edge(index[i], index[j])
    assert sub == cycle_graph(5)


def test_complement_examples():
    assert complement(complete_graph(3)) == empty_graph(3)
    c5 = cycle_graph(5)
    co = complement(c5)
    assert co.edge_count() == 5
    assert all(co.has_edge(2 * u % 5, 2 * v % 5) for u, v in c5.edges())
    co7 = complement(cycle_graph(7))
    for u, v in combinations(range(7), 2):
        assert co7.has_edge(u, v) == ((v - u) % 7 not in (1, 6))


@given(graphs(max_n=12), st.data())
def test_complement_involution_and_commutes_with_induced(g, data):
    assert complement(complement(g)) == g
    s = data.draw(st.integers(0, g.full))
    assert complement(induced_subgraph(g, s)[0]) == induced_subgraph(complement(g), s)[0]


def test_adjacency_queries():
    c5 = cycle_graph(5)
    assert bits(set_neighbors(c5, 0b1)) == [1, 4]
    assert bits(set_neighbors(c5, 0b101)) == [1, 3, 4]
    k4 = complete_graph(4)
    assert all(is_complete_to(k4, 1 << v, k4.full & ~(1 << v)) for v in range(4))
    report = adjacency_queries(c5, 0, 0b101, 0b10)
    assert report.neighbors_of_vertex == 0b10010
    assert report.complete and not report.anticomplete
    assert is_anticomplete_to(c5, 0b1, 0b1100)
    with pytest.raises(VertexError):
        adjacency_queries(c5, 5, 0, 0)


def test_substitute_p3_center_gives_diamond():
    p3 = path_graph(3)
    out, rec = substitute(p3, 1, complete_graph(2))
    assert out.n == 4
    # a=0, c=1 survive; b1=2, b2=3 appended
    assert rec.carry == {0: 0, 2: 1}
    assert rec.inserted == 0b1100
    assert edge_set(out) == {frozenset(e) for e in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]}


def test_substitute_k2_into_c5():
    out, rec = substitute(cycle_graph(5), 0, complete_graph(2))
    assert out.n == 6
    pair = bits(rec.inserted)
    assert out.has_edge(*pair)
    near = {rec.carry[1], rec.carry[4]}
    far = {rec.carry[2], rec.carry[3]}
    for p in pair:
        assert all(out.has_edge(p, v) for v in near)
        assert not any(out.has_edge(p, v) for v in far)


@given(graphs(max_n=10), graphs(max_n=5), st.data())
@settings(max_examples=200)
def test_substitution_conditions(g, h2, data):
    if g.n == 0 or h2.n == 0:
        return
    x = data.draw(st.integers(0, g.n - 1))
    out, rec = substitute(g, x, h2)
    assert out.n == g.n - 1 + h2.n
    inserted = bits(rec.inserted)
    inv = rec.inverse()
    # H[V(H2)] = H2
    for i, j in combinations(range(h2.n), 2):
        assert out.has_edge(inserted[i], inserted[j]) == h2.has_edge(i, j)
    # H[V(H1) - v] = H1 - v
    for u, v in combinations(sorted(rec.carry), 2):
        assert out.has_edge(rec.carry[u], rec.carry[v]) == g.has_edge(u, v)
    # cross edges follow adjacency to x
    for u in rec.carry:
        for w in inserted:
            assert out.has_edge(rec.carry[u], w) == g.has_edge(u, x)
    assert set(inv) | set(inserted) == set(range(out.n))
    if h2.n == 1:
        relabel = {v: rec.carry.get(v, inserted[0]) for v in range(g.n)}
        assert {frozenset((relabel[u], relabel[v])) for u, v in g.edges()} == edge_set(out)
    if h2.n >= 2 and g.n >= 2:
        assert rec.inserted in find_homogeneous_sets(out)


def test_substitute_errors():
    with pytest.raises(VertexError):
        substitute(cycle_graph(5), 5, complete_graph(2))
    with pytest.raises(VertexError):
        substitute(cycle_graph(5), 0, empty_graph(0))


def homogeneous_oracle(g):
    """Straight from the definition, with explicit Python sets."""
    nbrs = {v: set(bits(g.adj[v])) for v in range(g.n)}
    found = []
    for size in range(2, g.n):
        for xs in combinations(range(g.n), size):
            xs = set(xs)
            if all(xs <= nbrs[v] or not xs & nbrs[v] for v in set(range(g.n)) - xs):
                found.append(mask_of(xs))
    return sorted(found, key=lambda m: (len(bits(m)), m))


def test_homogeneous_examples():
    assert find_homogeneous_sets(cycle_graph(5)) == []
    diamond, _ = substitute(path_graph(3), 1, complete_graph(2))
    sets = find_homogeneous_sets(diamond)
    assert 0b0011 in sets and 0b1100 in sets
    k4 = find_homogeneous_sets(complete_graph(4))
    assert sorted(k4) == sorted(m for m in range(16) if 2 <= len(bits(m)) <= 3)
    with pytest.raises(CapExceeded):
        find_homogeneous_sets(empty_graph(17))


def test_homogeneous_sets_match_oracle_up_to_7():
    for g in graphs_up_to(7):
        assert find_homogeneous_sets(g) == homogeneous_oracle(g)
