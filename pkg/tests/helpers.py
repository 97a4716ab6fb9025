"""Shared test utilities."""

import functools

from hypothesis import strategies as st

from csf_forge.perms import Permutation
from csf_forge.trees import gen_free_trees, parse_tree, path_graph, star_graph


@functools.lru_cache(maxsize=None)
def free_trees(n):
    return tuple(gen_free_trees(n))


def free_trees_upto(n_max, n_min=1):
    return [t for n in range(n_min, n_max + 1) for t in free_trees(n)]


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(lambda xs: Permutation(tuple(xs)))


@functools.lru_cache(maxsize=None)
def prufer_classes(n):
    """Canonical codes of all labeled trees on {1..n}, enumerated by Prufer sequence."""
    from csf_forge.trees import canonical_code, labeled_trees
    return frozenset(canonical_code(t) for t in labeled_trees(n))
