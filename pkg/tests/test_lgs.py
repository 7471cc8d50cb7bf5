import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_language

from lgtextile import catalog
from lgtextile.errors import InvalidSystemError, NotLeftResolvingError
from lgtextile.lgs import (
    Edge, LabeledGraph, LambdaGraphSystem, Layer, PhiMap, check_essential, check_left_resolving,
    check_local_property, enumerate_paths, enumerate_words, higher_block_lgs, higher_block_with_paths,
    lgs_from_labeled_graph, lgs_from_sms, sms_from_lgs, validate_lgs)
from lgtextile.sms import SymbolicMatrixSystem, language, validate_sms
from lgtextile.symbolic import BitMatrix, SymbolicMatrix

SYSTEMS = [catalog.full_shift, catalog.golden_mean, catalog.iota_swap_full_shift, catalog.two_point_system]


@pytest.mark.parametrize("make", SYSTEMS)
def test_round_trip_through_graphs(make):
    sys = make()
    g = lgs_from_sms(sys)
    assert validate_lgs(g)
    back = sms_from_lgs(g)
    assert back.blocks == sys.blocks and back.stationary == sys.stationary


def test_labeled_graph_matches_matrix():
    G = LabeledGraph(("v", "w"), (("v", "v", "a"), ("v", "w", "a"), ("w", "v", "b")))
    g = lgs_from_labeled_graph(G)
    assert sms_from_lgs(g).M(0) == catalog.golden_mean().M(0)


def test_dangling_vertex_rejected():
    G = LabeledGraph(("v", "w"), (("v", "v", "a"), ("v", "w", "b")))
    with pytest.raises(InvalidSystemError) as exc:
        lgs_from_labeled_graph(G)
    assert exc.value.witness == {"vertex": "w"}


def test_invalid_sms_rejected():
    bad = SymbolicMatrixSystem.from_stationary(catalog.golden_mean().M(0), BitMatrix.of([[0, 1], [1, 0]]))
    with pytest.raises(InvalidSystemError):
        lgs_from_sms(bad)


def test_duplicate_edges_are_not_essential():
    s = SymbolicMatrixSystem.from_stationary(SymbolicMatrix.of([["a+a"]]))
    v = check_essential(lgs_from_sms(s))
    assert not v and v.first().detail["edges"] == [0, 1]


def test_non_lr_witness():
    v = check_left_resolving(lgs_from_sms(catalog.non_lr_golden_mean()))
    assert v.first().detail == {"edges": [0, 2], "sources": [0, 1], "tgt": 0, "label": "a"}


def test_local_property_failure():
    # two levels, the upper layer drops the b-edge that the lower one sees
    lower = Layer(1, 1, (Edge(0, 0, ("a",)), Edge(0, 0, ("b",))), (0,))
    upper = Layer(1, 1, (Edge(0, 0, ("a",)),), (0,))
    g = LambdaGraphSystem((lower, upper))
    v = check_local_property(g)
    assert not v and v.first().detail == {"u": 0, "v": 0, "upper": ["a"], "lower": ["a", "b"]}


@pytest.mark.parametrize("make", SYSTEMS)
def test_phi_preserves_labels_and_commutes_with_iota(make):
    g = lgs_from_sms(make())
    phi = PhiMap(g)
    for l in g.check_pairs():
        up, lo = g.layer(l), g.layer(l - 1)
        images = [phi(l, e) for e in range(len(up.edges))]
        assert sorted(set(images)) == list(range(len(lo.edges)))
        for e, f in zip(up.edges, images):
            assert lo.edges[f].label == e.label
            assert lo.edges[f].src == lo.iota[e.src]
            assert lo.edges[f].tgt == up.iota[e.tgt]


@pytest.mark.parametrize("make", SYSTEMS)
@pytest.mark.parametrize("m", range(1, 4))
def test_words_agree_with_brute_force(make, m):
    sys = make()
    g = lgs_from_sms(sys)
    l0 = 0 if sys.stationary else sys.n_levels - m
    assert enumerate_words(g, l0, m) == brute_language(sys, m, l0)


def test_paths_are_sorted_and_connected():
    g = lgs_from_sms(catalog.golden_mean())
    paths = enumerate_paths(g, 0, 4)
    # adjacency [[1,1],[1,0]]: A^4 = [[5,3],[3,2]] sums to 13
    assert paths == sorted(paths) and len(paths) == 13
    for p in paths:
        for a, b in zip(p, p[1:]):
            assert g.edges(0)[a].tgt == g.edges(0)[b].src


@pytest.mark.parametrize("N", [2, 3])
def test_higher_block_lgs_words(N):
    g = lgs_from_sms(catalog.golden_mean())
    H = higher_block_lgs(g, N)
    assert validate_lgs(H) and check_left_resolving(H)
    # every N-block label is an admissible word, and distinct words give distinct labels
    labels = {e.label for e in H.edges(0)}
    assert labels == {sum(w, ()) for w in language(catalog.golden_mean(), N)}


def test_higher_block_path_bookkeeping():
    g = lgs_from_sms(catalog.iota_swap_full_shift())
    hb = higher_block_with_paths(g, 2)
    assert len(hb.edge_paths.paths(0)) == len(hb.system.edges(0))
    assert validate_sms(sms_from_lgs(hb.system))


def test_higher_block_needs_left_resolving():
    with pytest.raises(NotLeftResolvingError):
        higher_block_lgs(lgs_from_sms(catalog.non_lr_golden_mean()), 2)


@given(st.lists(st.sampled_from("ab"), min_size=1, max_size=8))
def test_golden_mean_admits_exactly_the_words_without_bb(word):
    w = tuple((x,) for x in word)
    admitted = w in enumerate_words(lgs_from_sms(catalog.golden_mean()), 0, len(w))
    assert admitted == ("bb" not in "".join(word))
