"""
Edge products under relabeling: S-sets, edge recovery, conjugator search and
the conjugation probe for pairs of trees.

Conjugating K_pi(T) by s gives K of the s-relabeled tree with every edge of pi
relabeled. Two products are conjugate only if their edge sets are isomorphic,
so :func:`find_conjugator` walks the isomorphisms between the recovered edge
sets and checks each candidate against the full ordered product.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from .csf import csf
from .group_algebra import EdgeOrdering, GroupAlgebraElement, k_function
from .perms import Permutation, conjugate
from .symfunc import frobenius_ch
from .trees import (
    Edge, GraphFormatError, LabeledGraph, LabeledTree, canonical_code,
    format_graph, isomorphisms, labeled_trees, normalize_edge, relabel,
)

__all__ = [
    "KRecord", "ProbeReport", "ConjugatorSearchInconclusive", "SearchGuardExceeded",
    "k_products", "k_records", "s_set", "s_sets_intersect", "extract_edges",
    "ordering_consistent", "find_conjugator", "reformulation_probe",
    "equal_product_violations", "s_set_separation_violations",
]

MAX_S_SET_ORDER = 6
MAX_PROBE_ORDER = 8
MAX_EXHAUSTIVE_PROBE_ORDER = 5
DEFAULT_CONJUGATOR_CAP = 10_000


class ConjugatorSearchInconclusive(RuntimeError):
    """The isomorphism walk hit its cap before finding or ruling out a conjugator."""


class SearchGuardExceeded(ValueError):
    pass


@dataclass(frozen=True)
class KRecord:
    """One member of S_T together with how it was produced."""
    element: GroupAlgebraElement
    labeling: Permutation
    ordering: EdgeOrdering
    source_code: str


def _orderings(edges: Iterable[Edge]) -> Iterator[EdgeOrdering]:
    for perm in itertools.permutations(sorted(edges)):
        yield EdgeOrdering(perm)


def k_products(t: LabeledGraph) -> list[GroupAlgebraElement]:
    """K_pi(t) for every ordering pi of the edges of ``t`` as labeled, deduplicated."""
    seen: dict[tuple, GroupAlgebraElement] = {}
    for pi in _orderings(t.edges):
        k = k_function(t, pi)
        seen.setdefault(k.key(), k)
    return list(seen.values())


def _guard_s_set(t: LabeledGraph) -> None:
    if t.n > MAX_S_SET_ORDER:
        raise SearchGuardExceeded(f"S-set enumeration is limited to n <= {MAX_S_SET_ORDER}")


def k_records(t: LabeledTree) -> Iterator[KRecord]:
    """Every (labeling, ordering) pair of ``t``, without deduplication."""
    _guard_s_set(t)
    code = canonical_code(t)
    for images in itertools.permutations(range(1, t.n + 1)):
        s = Permutation(images)
        relabeled = relabel(t, s)
        for pi in _orderings(relabeled.edges):
            yield KRecord(k_function(relabeled, pi), s, pi, code)


def s_set(t: LabeledTree) -> frozenset[GroupAlgebraElement]:
    """All distinct K_{L,pi}(t) over every labeling L and every edge ordering pi."""
    _guard_s_set(t)
    seen: dict[tuple, GroupAlgebraElement] = {}
    relabelings = {relabel(t, Permutation(images))
                   for images in itertools.permutations(range(1, t.n + 1))}
    for g in relabelings:
        for k in k_products(g):
            seen.setdefault(k.key(), k)
    return frozenset(seen.values())


def s_sets_intersect(t1: LabeledTree, t2: LabeledTree) -> bool:
    if t1.n != t2.n:
        return False
    return not s_set(t1).isdisjoint(s_set(t2))


def _is_transposition(p: Permutation) -> bool:
    moved = [i for i, v in enumerate(p.images, 1) if v != i]
    return len(moved) == 2


def extract_edges(k: GroupAlgebraElement) -> frozenset[Edge]:
    """Edges (i, j) whose transposition appears in ``k`` with coefficient -1."""
    edges = []
    for p, c in k.terms.items():
        if _is_transposition(p):
            if c != -1:
                raise ValueError(f"transposition {p.cycle_notation()} has coefficient {c}; "
                                 "not the K product of a forest")
            i, j = (x for x, v in enumerate(p.images, 1) if v != x)
            edges.append(normalize_edge(i, j))
    return frozenset(edges)


def ordering_consistent(pi1: EdgeOrdering, pi2: EdgeOrdering) -> bool:
    """True iff every two edges sharing an endpoint appear in the same order in both."""
    if set(pi1.edges) != set(pi2.edges) or len(pi1) != len(pi2):
        raise ValueError("orderings list different edge sets")
    pos1 = {e: i for i, e in enumerate(pi1.edges)}
    pos2 = {e: i for i, e in enumerate(pi2.edges)}
    for e, f in itertools.combinations(pi1.edges, 2):
        if set(e) & set(f):
            if (pos1[e] < pos1[f]) != (pos2[e] < pos2[f]):
                return False
    return True


def _conjugates_to(s: Permutation, k1: GroupAlgebraElement, k2: GroupAlgebraElement) -> bool:
    target = k2.terms
    for p, c in k1.terms.items():
        if target.get(conjugate(s, p)) != c:
            return False
    return True


def _forest_of(k: GroupAlgebraElement) -> LabeledGraph:
    try:
        g = LabeledGraph(k.n, extract_edges(k))
    except GraphFormatError as exc:
        raise ValueError(f"malformed K product: {exc}") from None
    if not g.is_acyclic() or len(k) != 2 ** len(g.edges):
        raise ValueError("element is not the K product of a forest")
    return g


def find_conjugator(k1: GroupAlgebraElement, k2: GroupAlgebraElement,
                    cap: int = DEFAULT_CONJUGATOR_CAP) -> Permutation | None:
    """A permutation s with s k1 s^-1 == k2, or None if there is none.

    Raises :class:`ConjugatorSearchInconclusive` after ``cap`` rejected
    candidates when more remain.
    """
    if k1.n != k2.n or len(k1) != len(k2):
        return None
    g1, g2 = _forest_of(k1), _forest_of(k2)
    if frobenius_ch(k1) != frobenius_ch(k2):
        return None
    tried = 0
    for s in isomorphisms(g1, g2):
        if _conjugates_to(s, k1, k2):
            return s
        tried += 1
        if tried >= cap:
            raise ConjugatorSearchInconclusive(
                f"no conjugator among the first {cap} edge-set isomorphisms")
    return None


@dataclass(frozen=True)
class ProbeReport:
    n: int
    tree1: str
    tree2: str
    csf_equal: bool
    witness: tuple[Permutation, EdgeOrdering, EdgeOrdering] | None
    mode: str
    seed: int | None
    orderings_sampled: int
    inconclusive: int = 0

    def to_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            sigma, pi1, pi2 = self.witness
            witness = {"sigma": str(sigma), "pi1": str(pi1), "pi2": str(pi2)}
        return {
            "n": self.n,
            "tree1": self.tree1,
            "tree2": self.tree2,
            "csf_equal": self.csf_equal,
            "witness": witness,
            "search": {"mode": self.mode, "seed": self.seed,
                       "orderings_sampled": self.orderings_sampled},
        }


def reformulation_probe(t1: LabeledTree, t2: LabeledTree, *, samples: int = 1000,
                        seed: int = 0, exhaustive: bool = False,
                        cap: int = DEFAULT_CONJUGATOR_CAP) -> ProbeReport:
    """Compare the CSFs of two trees and search for conjugate K products.

    A witness (s, pi1, pi2) satisfies s K_pi1(t1) s^-1 == K_pi2(t2). Finding one
    forces equal CSFs; the converse is open and only recorded.
    """
    if t1.n != t2.n:
        raise ValueError("trees must have the same order")
    n = t1.n
    if n > MAX_PROBE_ORDER:
        raise SearchGuardExceeded(f"probe is limited to n <= {MAX_PROBE_ORDER}")
    if exhaustive and n > MAX_EXHAUSTIVE_PROBE_ORDER:
        raise SearchGuardExceeded(f"exhaustive probe is limited to n <= {MAX_EXHAUSTIVE_PROBE_ORDER}")
    csf_equal = csf(t1) == csf(t2)

    cache: dict[EdgeOrdering, GroupAlgebraElement] = {}

    def product(t, pi):
        k = cache.get(pi)
        if k is None:
            k = cache[pi] = k_function(t, pi)
        return k

    if exhaustive:
        pairs = itertools.product(list(_orderings(t1.edges)), list(_orderings(t2.edges)))
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        e1, e2 = t1.sorted_edges(), t2.sorted_edges()

        def sampled():
            for _ in range(samples):
                yield (EdgeOrdering(tuple(rng.sample(e1, len(e1)))),
                       EdgeOrdering(tuple(rng.sample(e2, len(e2)))))
        pairs = sampled()
        mode = "sampled"

    witness = None
    count = inconclusive = 0
    for pi1, pi2 in pairs:
        count += 1
        try:
            s = find_conjugator(product(t1, pi1), product(t2, pi2), cap=cap)
        except ConjugatorSearchInconclusive:
            inconclusive += 1
            continue
        if s is not None:
            witness = (s, pi1, pi2)
            break
    if witness is not None and not csf_equal:
        raise AssertionError("conjugate K products with different CSFs")
    return ProbeReport(n, format_graph(t1), format_graph(t2), csf_equal, witness,
                       mode, None if exhaustive else seed, count, inconclusive)


def equal_product_violations(n: int) -> tuple[int, list[tuple]]:
    """Compare K products over all labeled trees on {1..n} and all orderings.

    Returns the number of equal pairs examined and every pair whose trees or
    shared-endpoint orderings differ.
    """
    buckets: dict[tuple, list[tuple[LabeledTree, EdgeOrdering]]] = defaultdict(list)
    for t in labeled_trees(n):
        for pi in _orderings(t.edges):
            buckets[k_function(t, pi).key()].append((t, pi))
    pairs = 0
    bad = []
    for group in buckets.values():
        for (ta, pa), (tb, pb) in itertools.combinations(group, 2):
            pairs += 1
            if ta.edges != tb.edges or not ordering_consistent(pa, pb):
                bad.append((ta, pa, tb, pb))
    return pairs, bad


def s_set_separation_violations(trees: list[LabeledTree]) -> list[tuple[LabeledTree, LabeledTree]]:
    """Pairs where S-set intersection disagrees with isomorphism."""
    sets = [s_set(t) for t in trees]
    codes = [canonical_code(t) for t in trees]
    bad = []
    for a, b in itertools.combinations_with_replacement(range(len(trees)), 2):
        if (not sets[a].isdisjoint(sets[b])) != (codes[a] == codes[b]):
            bad.append((trees[a], trees[b]))
    return bad


def s_set_size_bound(n: int) -> int:
    return math.factorial(n) * math.factorial(n - 1)
