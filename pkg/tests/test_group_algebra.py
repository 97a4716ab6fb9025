import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from csf_forge.group_algebra import (
    EdgeOrdering, GroupAlgebraElement as GA, conjugate_element, factor, ga_add, ga_mul,
    k_function, k_function_naive, parse_ordering,
)
from csf_forge.perms import DegreeMismatch, Permutation, compose, identity, transposition
from csf_forge.trees import GraphFormatError, LabeledGraph, parse_graph, parse_tree, relabel

from helpers import free_trees_upto, perms


def P(text):
    return Permutation.parse(text)


def elements(n, max_terms=5):
    return st.lists(st.tuples(st.integers(-3, 3), perms(n)), min_size=1, max_size=max_terms).map(
        lambda pairs: GA(n, _merge(pairs)))


def _merge(pairs):
    out = {}
    for c, p in pairs:
        out[p] = out.get(p, 0) + c
    return out


def test_add_cancellation_and_merge():
    e = identity(3)
    t12, t23 = transposition(1, 2, 3), transposition(2, 3, 3)
    assert ga_add(GA.of((1, e)), GA.of((-1, e))) == GA.zero(3)
    assert len(ga_add(GA.of((1, e)), GA.of((-1, e)))) == 0
    assert ga_add(GA.of((1, t12)), GA.of((1, t12))) == GA.of((2, t12))
    assert ga_add(GA.of((1, e), (1, t12)), GA.of((1, t23))) == GA.of((1, e), (1, t12), (1, t23))


def test_mul_involution():
    t = transposition(1, 2, 3)
    assert ga_mul(GA.of((1, t)), GA.of((1, t))) == GA.one(3)


def test_mul_two_factors_by_hand():
    got = ga_mul(factor(1, 2, 3), factor(2, 3, 3))
    want = GA.of((1, identity(3)), (-1, P("n=3:(1 2)")), (-1, P("n=3:(2 3)")), (1, P("n=3:(1 2 3)")))
    assert got == want


def test_mul_noncommutative_path3():
    assert ga_mul(factor(1, 2, 3), factor(2, 3, 3)) != ga_mul(factor(2, 3, 3), factor(1, 2, 3))


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        ga_mul(GA.one(3), GA.one(4))
    with pytest.raises(DegreeMismatch):
        ga_add(GA.one(3), GA.one(4))


def test_overflow_detected():
    big = GA.of((2**62, identity(2)))
    with pytest.raises(OverflowError):
        ga_add(big, big)


# (1-(12))(1-(13))(1-(14)) on the star, unscaled. The 4-cycle is (1 4 3 2) under
# right-to-left composition; (1 3 4 2) would be the product in the order (12)(14)(13).
STAR4_TERMS = {
    "()": 1, "(1 3)": -1, "(1 2)": -1, "(1 3 2)": 1,
    "(1 4)": -1, "(1 4 3)": 1, "(1 4 2)": 1, "(1 4 3 2)": -1,
}


def test_k_function_star4(star4):
    k = k_function(star4, [(1, 2), (1, 3), (1, 4)])
    assert {p.cycle_notation(): c for p, c in k.terms.items()} == STAR4_TERMS
    assert k.scaled().coefficient(identity(4)) == 24


def test_k_function_single_edge(edge):
    assert k_function(edge) == GA.of((1, identity(2)), (-1, transposition(1, 2, 2)))


def test_k_function_single_vertex():
    assert k_function(parse_tree("n=1:")) == GA.one(1)


def test_k_function_ordering_matters(path3):
    a = k_function(path3, [(1, 2), (2, 3)])
    b = k_function(path3, [(2, 3), (1, 2)])
    assert a != b


def test_k_function_errors(path3):
    with pytest.raises(GraphFormatError):
        k_function(path3, [(1, 2), (1, 2)])
    with pytest.raises(GraphFormatError):
        k_function(path3, [(1, 2)])
    cyc = parse_graph("n=3:1-2,2-3,1-3", acyclic=False)
    with pytest.raises(GraphFormatError):
        k_function(cyc)


def test_dump_is_sorted_and_round_trips(star4):
    k = k_function(star4)
    text = k.dump()
    assert text.splitlines()[0] == "1 * ()"
    assert GA.parse_dump(text, 4) == k


@pytest.mark.parametrize("t", free_trees_upto(7), ids=str)
def test_k_function_forest_shape(t):
    edges = t.sorted_edges()
    k = k_function(t, edges)
    assert len(k) == 2 ** len(edges)
    # each edge subset, multiplied in order, gives its own term with sign (-1)^|S|
    for r in range(len(edges) + 1):
        for subset in itertools.combinations(edges, r):
            p = identity(t.n)
            for i, j in subset:
                p = compose(p, transposition(i, j, t.n))
            assert k.coefficient(p) == (-1) ** r


def test_k_function_matches_naive_product():
    rng = random.Random(5)
    for t in free_trees_upto(7):
        pi = t.sorted_edges()
        rng.shuffle(pi)
        assert k_function(t, pi) == k_function_naive(t, pi)


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_distributivity(abc):
    a, b, c = abc
    assert ga_mul(a, ga_add(b, c)) == ga_add(ga_mul(a, b), ga_mul(a, c))
    assert ga_mul(ga_add(a, b), c) == ga_add(ga_mul(a, c), ga_mul(b, c))


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(perms(n), elements(n), elements(n))))
def test_conjugation_is_ring_automorphism(sab):
    s, a, b = sab
    assert conjugate_element(s, ga_mul(a, b)) == ga_mul(conjugate_element(s, a), conjugate_element(s, b))


def test_conjugate_element_trivial_cases(star4):
    k = k_function(star4)
    assert conjugate_element(identity(4), k) == k
    assert conjugate_element(P("n=4:(1 3 4)"), GA.one(4)) == GA.one(4)


def test_conjugate_element_example3():
    # 2--1--3 has edges (1,2),(1,3); conjugating by (12) yields the path 1--2--3
    k = k_function(parse_tree("n=3:1-2,1-3"), [(1, 2), (1, 3)])
    s = transposition(1, 2, 3)
    assert conjugate_element(s, k) == k_function(parse_tree("n=3:1-2,2-3"), [(1, 2), (2, 3)])


def test_conjugation_is_relabeling_exhaustive_n5():
    for t in free_trees_upto(5):
        orderings = list(itertools.permutations(t.sorted_edges()))
        for images in itertools.permutations(range(1, t.n + 1)):
            s = Permutation(images)
            for pi in orderings[:3]:
                pi = EdgeOrdering(pi)
                got = conjugate_element(s, k_function(t, pi))
                assert got == k_function(relabel(t, s), pi.conjugated(s))


def test_parse_ordering():
    assert parse_ordering("1-2, 3-2").edges == ((1, 2), (2, 3))
    with pytest.raises(GraphFormatError):
        parse_ordering("1-2,x")
