import itertools
import random

import pytest

from csf_forge.perms import Permutation, invert, identity
from csf_forge.trees import (
    GraphFormatError, LabeledGraph, LabeledTree, canonical_code, connected_components,
    format_graph, gen_free_trees, isomorphisms, labeled_trees, leaf_count, parse_graph,
    parse_tree, path_graph, relabel, star_graph, tree_isomorphism,
)


from helpers import prufer_classes


def test_gen_small_orders(path4, star4):
    assert len(list(gen_free_trees(1))) == 1
    assert list(gen_free_trees(1))[0].edges == frozenset()
    four = list(gen_free_trees(4))
    assert len(four) == 2
    assert {canonical_code(t) for t in four} == {canonical_code(path4), canonical_code(star4)}
    with pytest.raises(ValueError):
        list(gen_free_trees(0))


@pytest.mark.parametrize("n", range(1, 9))
def test_gen_matches_prufer_oracle(n):
    gen = list(gen_free_trees(n))
    codes = [canonical_code(t) for t in gen]
    assert len(set(codes)) == len(codes)
    assert set(codes) == prufer_classes(n)
    assert all(t.is_tree() and len(t.edges) == n - 1 for t in gen)


def test_gen_seven_is_eleven():
    assert len(list(gen_free_trees(7))) == len(prufer_classes(7)) == 11


@pytest.mark.parametrize("n", range(9, 13))
def test_gen_distinct_beyond_oracle(n):
    codes = [canonical_code(t) for t in gen_free_trees(n)]
    assert len(set(codes)) == len(codes)


def test_cayley_count_and_two_classes_at_4():
    trees = list(labeled_trees(4))
    assert len(trees) == 16
    assert len({canonical_code(t) for t in trees}) == 2


def test_canonical_code_examples(path3, path4, star4):
    assert canonical_code(path3) == canonical_code(parse_tree("n=3:1-2,1-3"))
    assert canonical_code(path4) != canonical_code(star4)


@pytest.mark.parametrize("n", range(1, 7))
def test_code_equality_iff_isomorphism(n):
    trees = list(labeled_trees(n))
    rng = random.Random(n)
    sample = trees if len(trees) <= 200 else rng.sample(trees, 200)
    for a, b in itertools.combinations(sample, 2):
        iso = tree_isomorphism(a, b)
        assert (iso is not None) == (canonical_code(a) == canonical_code(b))
        if iso is not None:
            assert relabel(a, iso).edges == b.edges


def test_isomorphism_examples(path3, path4, star4):
    swap = tree_isomorphism(path3, parse_tree("n=3:1-2,1-3"))
    assert relabel(path3, swap).edges == frozenset({(1, 2), (1, 3)})
    assert set(isomorphisms(path3, parse_tree("n=3:1-2,1-3"))) == {Permutation((2, 1, 3)), Permutation((3, 1, 2))}
    assert relabel(star4, tree_isomorphism(star4, star4)).edges == star4.edges
    assert tree_isomorphism(path4, star4) is None


def test_automorphism_counts(star4):
    assert sum(1 for _ in isomorphisms(star4, star4)) == 6
    assert sum(1 for _ in isomorphisms(star_graph(6), star_graph(6))) == 120
    assert sum(1 for _ in isomorphisms(path_graph(5), path_graph(5))) == 2


def test_forest_isomorphisms():
    # P3 + P2 must not be confused with structures that merely look alike
    a = parse_graph("n=5:1-2,2-3,4-5")
    b = parse_graph("n=5:1-2,3-4,4-5")
    isos = list(isomorphisms(a, b))
    assert isos and all(relabel(a, s).edges == b.edges for s in isos)
    assert len(isos) == 4  # Aut(P3) x Aut(P2)
    assert canonical_code(parse_graph("n=5:1-2,2-3,4-5")) != canonical_code(parse_graph("n=5:1-2,1-3,1-4"))


def test_relabel(path3):
    s = Permutation((2, 1, 3))
    assert relabel(path3, s) == parse_tree("n=3:1-2,1-3")
    assert relabel(path3, identity(3)) == path3
    t = parse_tree("n=6:1-2,2-3,2-4,4-5,4-6")
    s = Permutation((3, 5, 1, 6, 2, 4))
    assert relabel(relabel(t, s), invert(s)) == t
    with pytest.raises(ValueError):
        relabel(path3, (1, 1, 2))


def test_connected_components(star4):
    assert connected_components(parse_graph("n=4:1-2,3-4")) == [frozenset({1, 2}), frozenset({3, 4})]
    assert connected_components(star4) == [frozenset({1, 2, 3, 4})]
    assert connected_components(parse_graph("n=3:")) == [frozenset({1}), frozenset({2}), frozenset({3})]


def test_leaf_count_relabel_invariant():
    rng = random.Random(3)
    for t in gen_free_trees(8):
        images = list(range(1, 9))
        rng.shuffle(images)
        assert leaf_count(relabel(t, Permutation(tuple(images)))) == leaf_count(t)


def test_parse_tree():
    assert parse_tree("n=2:1-2").edges == frozenset({(1, 2)})
    assert parse_tree("n=4:1-2,1-3,1-4") == star_graph(4)
    with pytest.raises(GraphFormatError, match="cycle"):
        parse_tree("n=3:1-2,2-3,1-3")
    with pytest.raises(GraphFormatError, match="disconnected"):
        parse_tree("n=4:1-2,3-4")
    with pytest.raises(GraphFormatError, match="'1-x'"):
        parse_tree("n=3:1-2,1-x")
    with pytest.raises(GraphFormatError):
        parse_tree("n=3:1-4,1-2")
    with pytest.raises(GraphFormatError):
        parse_tree("1-2")


def test_format_round_trip():
    for n in range(1, 11):
        for t in gen_free_trees(n):
            assert parse_tree(format_graph(t)) == t


def test_tree_type_validation():
    with pytest.raises(GraphFormatError):
        LabeledTree(3, frozenset({(1, 2)}))
    with pytest.raises(GraphFormatError):
        LabeledGraph(3, frozenset({(1, 1)}))
