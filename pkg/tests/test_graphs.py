import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srgrep.exactlin import psd_rank
from srgrep.graphs import (
    Degenerate,
    Graph,
    MalformedHeader,
    MarkedCycle,
    NotDegreeTwo,
    NotDistanceTwo,
    NotRegular,
    NotStronglyRegular,
    TrailingGarbage,
    TruncatedBitVector,
    complete,
    load_graph,
    mu_marks,
    neighborhood_cycles,
    parse_graph6,
    parse_json_graph,
    representation_gram,
    verify_srg,
    write_graph6,
)
from srgrep.params import SrgParams


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def _nx_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(_to_nx(g), header=False).decode().strip()


def test_fixtures_against_networkx():
    for text in ("@", "A_", "Bw"):
        ref = nx.from_graph6_bytes(text.encode())
        g = parse_graph6(text)
        assert g.n == ref.number_of_nodes()
        assert sorted(g.edges()) == sorted(tuple(sorted(e)) for e in ref.edges())
    assert parse_graph6("@") == Graph(1, (frozenset(),))
    assert parse_graph6("A_") == complete(2)
    assert parse_graph6("Bw") == complete(3)
    assert write_graph6(complete(3)) == "Bw"
    assert write_graph6(Graph(1, (frozenset(),))) == "@"


def test_write_matches_networkx_on_random_graphs():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 20)
        g = Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < 0.4])
        assert write_graph6(g) == _nx_graph6(g)
        assert parse_graph6(write_graph6(g)) == g


def test_long_header_roundtrip():
    g = Graph.from_edges(70, [(i, i + 1) for i in range(69)])
    text = write_graph6(g)
    assert text.startswith("~")
    assert text == _nx_graph6(g)
    assert parse_graph6(text) == g


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 62).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0)))))
))
def test_roundtrip_property(data):
    n, pairs = data
    g = Graph.from_edges(n, [(i, j) for i, j in pairs if i != j])
    assert parse_graph6(write_graph6(g)) == g


def test_graph6_errors():
    with pytest.raises(MalformedHeader):
        parse_graph6("")
    with pytest.raises(MalformedHeader):
        parse_graph6("~?")
    with pytest.raises(MalformedHeader):
        parse_graph6("B w")
    with pytest.raises(TruncatedBitVector):
        parse_graph6("C")
    with pytest.raises(TrailingGarbage):
        parse_graph6("Bww")


def test_header_and_newline_tolerated():
    assert parse_graph6(">>graph6<<Bw\n") == complete(3)


def test_json_adjacency():
    g = parse_json_graph('{"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}')
    assert g == complete(3)
    assert load_graph('{"n": 3, "edges": [[0,1],[1,2],[2,0]]}') == g
    assert load_graph("Bw\n") == g


def test_verify_examples(petersen, paley13, rook3):
    assert verify_srg(petersen) == SrgParams(10, 3, 0, 1)
    assert verify_srg(paley13) == SrgParams(13, 6, 2, 3)
    assert verify_srg(rook3) == SrgParams(9, 4, 1, 2)
    with pytest.raises(NotRegular):
        verify_srg(Graph.from_edges(3, [(0, 1), (1, 2)]))
    with pytest.raises(Degenerate):
        verify_srg(complete(4))
    with pytest.raises(Degenerate):
        verify_srg(Graph.from_edges(4, []))
    with pytest.raises(Degenerate):  # two disjoint triangles, mu = 0
        verify_srg(Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))


def test_not_strongly_regular_has_witness():
    # 6-cycle: regular, adjacent pairs share 0 but non-adjacent pairs share 2 or 0
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    with pytest.raises(NotStronglyRegular) as exc:
        verify_srg(c6)
    i, j = exc.value.witness
    assert not c6.has_edge(i, j)


def test_verify_agrees_with_brute_force_pair_counts(petersen):
    a = petersen.adjacency_matrix()
    n = len(a)
    lam_set = {sum(a[i][x] * a[j][x] for x in range(n)) for i in range(n) for j in range(n) if a[i][j]}
    mu_set = {sum(a[i][x] * a[j][x] for x in range(n)) for i in range(n) for j in range(n) if i != j and not a[i][j]}
    assert lam_set == {0} and mu_set == {1}
    p = verify_srg(petersen)
    assert (p.lam, p.mu) == (0, 1)


@pytest.mark.parametrize("theta, rank", [(-2, 4), (1, 5)])
def test_petersen_representation(petersen, theta, rank):
    g = representation_gram(petersen, theta)
    assert all(g[i, i] == 1 for i in range(10))
    assert psd_rank(g) == (True, rank)


@pytest.mark.parametrize("theta, rank", [(1, 4), (-2, 4)])
def test_rook_representation(rook3, theta, rank):
    assert psd_rank(representation_gram(rook3, theta)) == (True, rank)


def test_complement_parameters(petersen, rook3):
    for g in (petersen, rook3):
        assert verify_srg(g.complement()) == verify_srg(g).complement()


def test_neighborhood_examples(paley13):
    assert neighborhood_cycles(complete(4), 0).cycles == ((1, 2, 3),)
    dec = neighborhood_cycles(paley13, 0)
    assert dec.cycles == ((1, 4, 3, 12, 9, 10),)


def test_neighborhood_invariants(paley13):
    for u in range(13):
        dec = neighborhood_cycles(paley13, u)
        assert sum(dec.lengths) == 6
        for cyc in dec.cycles:
            t = len(cyc)
            for a in range(t):
                for b in range(a + 1, t):
                    consecutive = (b - a) % t in (1, t - 1)
                    assert paley13.has_edge(cyc[a], cyc[b]) == consecutive


def test_neighborhood_rejects_petersen(petersen):
    with pytest.raises(NotDegreeTwo) as exc:
        neighborhood_cycles(petersen, 0)
    assert exc.value.degree == 0


def test_mu_marks(paley13):
    for w in range(1, 13):
        if paley13.has_edge(0, w):
            continue
        marks = mu_marks(paley13, 0, w)
        assert [m.t for m in marks] == [6]
        assert sum(m.s for m in marks) == 3
    with pytest.raises(NotDistanceTwo):
        mu_marks(complete(4), 0, 1)


def test_marked_cycle_reduces_positions():
    assert MarkedCycle(6, (7, 0, 6)).marks == (0, 1)
