from math import comb

import pytest

from efl.auxgraph import (
    AuxGraph,
    build_aux,
    default_spanning_trees,
    enumerate_spanning_tree_choices,
    expected_total_degree,
    prufer_trees,
)
from efl.hypergraph import HypergraphError, generate, parse_hypergraph


def test_default_trees_tri3(H3):
    trees = default_spanning_trees(H3)
    a = H3.vertices.index("a")
    assert trees[a] == (((0, 0), (1, 0)),)
    assert H3.vertices.index("c") not in trees


def test_default_trees_are_paths_not_stars():
    H = parse_hypergraph("v a b c\nd e f g\nv h i j\nv k l m")
    trees = default_spanning_trees(H)
    assert trees[0] == (((0, 0), (2, 0)), ((2, 0), (3, 0)))


@pytest.mark.parametrize("k", range(1, 7))
def test_prufer_count_matches_cayley(k):
    trees = list(prufer_trees(list(range(k))))
    assert len(trees) == max(1, k ** (k - 2)) if k >= 2 else len(trees) == 1
    assert len(set(trees)) == len(trees)
    for t in trees:
        assert len(t) == max(k - 1, 0)


def test_tree_choice_counts(H3, pencil3):
    assert len(list(enumerate_spanning_tree_choices(H3))) == 1
    assert len(list(enumerate_spanning_tree_choices(pencil3))) == 3
    assert len(list(enumerate_spanning_tree_choices(pencil3, limit=2))) == 2
    fano = generate("truncated_projective_plane", q=2)
    choices = list(enumerate_spanning_tree_choices(fano, limit=5))
    assert len(choices) == 5
    assert choices == list(enumerate_spanning_tree_choices(fano, limit=5))


def test_build_g1_tri3(H3):
    aux = build_aux(H3, kind="G1")
    assert len(aux.identifier_edges) == 3
    assert all(m == 2 for _, _, m in aux.identifier_edges)
    assert aux.edge_count() == 15
    # endpoints of a G1 bundle carry the same label
    assert all(aux.label(u) == aux.label(v) for u, v, _ in aux.identifier_edges)


def test_build_g2_tri3_star(H3):
    aux = build_aux(H3, kind="G2")
    assert len(aux.identifier_edges) == 6
    star_a = [(u, v) for u, v, _ in aux.identifier_edges if u == (0, 0)]
    names = [H3.vertices[aux.label(v)] for _, v in star_a]
    assert names == ["d", "e"]
    assert aux.edge_count() == 15


def test_disjoint_has_no_identifier_edges(disjoint3):
    for kind in ("G1", "G2"):
        aux = build_aux(disjoint3, kind=kind)
        assert aux.identifier_edges == ()
        assert aux.edge_count() == 3 * comb(3, 2)


def test_expected_total_degree(H3, disjoint3):
    assert expected_total_degree(H3) == 15
    assert expected_total_degree(disjoint3) == 9
    assert expected_total_degree(generate("near_pencil", n=3)) == 13


def test_invariants_over_random_instances():
    for n in range(2, 7):
        for seed in range(20):
            H = generate("random", n=n, seed=seed)
            for trees in enumerate_spanning_tree_choices(H, 3):
                for kind in ("G1", "G2"):
                    aux = build_aux(H, trees, kind)
                    assert aux.edge_count() == expected_total_degree(H)
                    assert all(u[0] < v[0] for u, v, _ in aux.identifier_edges)
                    assert aux == build_aux(H, trees, kind)
                    if kind == "G2":
                        centres = {u for u, _ in aux.tree_edges}
                        assert {u for u, _, _ in aux.identifier_edges} <= centres


def test_bad_trees_rejected(H3):
    with pytest.raises(HypergraphError):
        build_aux(H3, {0: (((0, 0), (2, 1)),)})
    with pytest.raises(HypergraphError):
        build_aux(H3, {})
    with pytest.raises(HypergraphError):
        build_aux(parse_hypergraph("a b\nc"))


def test_json_round_trip(H3):
    for kind in ("G1", "G2"):
        aux = build_aux(H3, kind=kind)
        assert AuxGraph.from_json(aux.to_json()) == aux
