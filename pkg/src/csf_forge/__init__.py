"""Chromatic symmetric functions of trees through the group algebra of S_n."""

from .perms import Partition, Permutation, compose, conjugate, cycle_type, invert, transposition
from .group_algebra import (
    EdgeOrdering, GroupAlgebraElement, conjugate_element, ga_add, ga_mul, k_function,
)
from .symfunc import (
    Basis, SymmetricFunction, coefficient, frobenius_ch, monomial, p_mul, p_to_m, power_sum,
)
from .trees import (
    LabeledGraph, LabeledTree, canonical_code, connected_components, gen_free_trees,
    format_graph, parse_graph, parse_tree, path_graph, relabel, star_graph, tree_isomorphism,
)
from .csf import (
    csf, csf_coloring_oracle, csf_group_algebra, csf_subset_oracle, is_connected_from_csf,
    leaf_count_from_csf, matching_poly_direct, matching_poly_from_csf,
    subtree_counts_direct, subtree_counts_from_csf,
)

from .conjugacy import find_conjugator, reformulation_probe
from .distinguisher import fingerprint, verify_order, verify_range

__version__ = "0.1.0"
