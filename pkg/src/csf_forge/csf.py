"""
Chromatic symmetric functions of forests and the invariants read off them.

Three independent routes produce the power-sum expansion of X_G:

* :func:`csf` sums (-1)^|S| p_lambda(S) over all edge subsets S, vectorised
  over bitmasks with numpy (the production path);
* :func:`csf_subset_oracle` does the same sum one subset at a time with a
  union-find, in plain Python;
* :func:`csf_group_algebra` applies the character map to the K product.

:func:`csf_coloring_oracle` enumerates proper colourings and yields the
monomial expansion.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .group_algebra import EdgeOrdering, k_function
from .perms import Partition
from .symfunc import Basis, SymmetricFunction, coefficient, frobenius_ch, p_mul
from .trees import GraphFormatError, LabeledGraph, connected_components

__all__ = [
    "MatchingPolynomial", "SubtreeCounts", "csf", "csf_group_algebra",
    "csf_subset_oracle", "csf_coloring_oracle", "matching_poly_from_csf",
    "matching_poly_direct", "subtree_counts_from_csf", "subtree_counts_direct",
    "leaf_count_from_csf", "is_connected_from_csf", "csf_disjoint_union",
    "disjoint_union", "SignPatternError",
]

MAX_VECTOR_EDGES = 24
MAX_ORACLE_EDGES = 30
MAX_MATCHING_EDGES = 25
MAX_SUBTREE_ORDER = 15
MAX_COLORING_ORDER = 8


class SignPatternError(ValueError):
    """Coefficients do not have the signs of a forest CSF."""


def _require_acyclic(g: LabeledGraph) -> None:
    if not g.is_acyclic():
        raise GraphFormatError("cycle detected: only acyclic graphs are supported")


def _from_counts(n: int, counts: dict[tuple[int, ...], int]) -> SymmetricFunction:
    return SymmetricFunction(n, Basis.POWER_SUM, {Partition(k): v for k, v in counts.items()})


def csf(g: LabeledGraph) -> SymmetricFunction:
    """Power-sum expansion of X_G for an acyclic graph G.

    Each edge subset S contributes (-1)^|S| p_lambda, lambda the component
    sizes of (V, S). Components are accumulated leaf-to-root along a spanning
    BFS order, for all 2^|E| subsets at once.
    """
    _require_acyclic(g)
    n, m = g.n, len(g.edges)
    if m > MAX_VECTOR_EDGES:
        raise ValueError(f"{m} edges exceeds the vectorised limit of {MAX_VECTOR_EDGES}")

    # mixed radix over (count of size-1 parts, count of size-2 parts, ...)
    bases = [n // k + 1 for k in range(1, n + 1)]
    radix = np.ones(n + 1, dtype=np.int64)
    acc = 1
    for k in range(1, n + 1):
        radix[k] = acc
        acc *= bases[k - 1]
    if acc >= 2**62:
        raise ValueError(f"order {n} is too large for the packed partition key")

    adj = g.adjacency()
    edge_index = {e: idx for idx, e in enumerate(g.sorted_edges())}
    masks = np.arange(1 << m, dtype=np.int64)
    size = {v: np.ones(1 << m, dtype=np.int64) for v in range(1, n + 1)}
    key = np.zeros(1 << m, dtype=np.int64)

    for comp in connected_components(g):
        root = min(comp)
        order, parent = [root], {root: None}
        for v in order:
            for w in adj[v]:
                if w not in parent:
                    parent[w] = v
                    order.append(w)
        for v in reversed(order[1:]):
            p = parent[v]
            bit = (masks >> edge_index[(min(v, p), max(v, p))]) & 1
            sv = size.pop(v)
            size[p] += sv * bit
            key += radix[sv] * (1 - bit)
        key += radix[size.pop(root)]

    keys, counts = np.unique(key, return_counts=True)
    out = {}
    for k, c in zip(keys.tolist(), counts.tolist()):
        parts = []
        for size_k in range(1, n + 1):
            k, mult = divmod(k, bases[size_k - 1])
            parts.extend([size_k] * mult)
        parts.sort(reverse=True)
        out[tuple(parts)] = c if (n - len(parts)) % 2 == 0 else -c
    return _from_counts(n, out)


def csf_group_algebra(g: LabeledGraph, ordering: EdgeOrdering | None = None) -> SymmetricFunction:
    """ch(K_pi(G)) computed literally in the group algebra."""
    return frobenius_ch(k_function(g, ordering))


def csf_subset_oracle(g: LabeledGraph) -> SymmetricFunction:
    """Subset expansion with one union-find per edge subset."""
    _require_acyclic(g)
    edges = g.sorted_edges()
    m = len(edges)
    if m > MAX_ORACLE_EDGES:
        raise ValueError(f"{m} edges exceeds the bitmask limit of {MAX_ORACLE_EDGES}")
    n = g.n
    tally: Counter = Counter()
    for mask in range(1 << m):
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        chosen = 0
        for idx in range(m):
            if mask >> idx & 1:
                i, j = edges[idx]
                parent[find(i)] = find(j)
                chosen += 1
        sizes = Counter(find(v) for v in range(1, n + 1))
        lam = tuple(sorted(sizes.values(), reverse=True))
        tally[lam] += -1 if chosen % 2 else 1
    return _from_counts(n, dict(tally))


def csf_coloring_oracle(g: LabeledGraph, max_colors: int | None = None) -> SymmetricFunction:
    """Monomial expansion of X_G by enumerating every proper colouring.

    The coefficient of m_mu is the number of proper colourings using colour j
    exactly mu_j times (and no other colours).
    """
    n = g.n
    k = n if max_colors is None else max_colors
    if n > MAX_COLORING_ORDER:
        raise ValueError(f"colouring oracle is limited to n <= {MAX_COLORING_ORDER}")
    if k < n:
        raise ValueError("max_colors must be at least the number of vertices")
    edges = g.sorted_edges()
    total = k ** n
    chunk = 1 << 18
    tally: Counter = Counter()
    powers = np.array([k ** v for v in range(n)], dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        colors = (idx[:, None] // powers[None, :]) % k
        proper = np.ones(len(idx), dtype=bool)
        for i, j in edges:
            proper &= colors[:, i - 1] != colors[:, j - 1]
        colors = colors[proper]
        counts = np.stack([(colors == c).sum(axis=1) for c in range(k)], axis=1)
        standard = np.all(counts[:, :-1] >= counts[:, 1:], axis=1)
        rows, freq = np.unique(counts[standard], axis=0, return_counts=True)
        for row, f in zip(rows.tolist(), freq.tolist()):
            tally[tuple(x for x in row if x)] += f
    return SymmetricFunction(n, Basis.MONOMIAL, {Partition(lam): c for lam, c in tally.items()})


@dataclass(frozen=True)
class MatchingPolynomial:
    """Coefficients m_0, m_1, ...; m_k counts k-matchings."""
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __str__(self):
        pieces = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            pieces.append(str(c) if k == 0 else (mono if c == 1 else f"{c}{mono}"))
        return " + ".join(pieces) or "0"

    def to_dict(self, n: int) -> dict:
        return {"n": n, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class SubtreeCounts:
    """Number of connected subtrees with k vertices, for 2 <= k <= n."""
    counts: dict[int, int]

    def to_dict(self, n: int) -> dict:
        return {"n": n, "counts": [self.counts.get(k, 0) for k in range(0, n + 1)]}


def _power_sum_input(x: SymmetricFunction) -> None:
    if x.basis != Basis.POWER_SUM:
        raise ValueError("expected a power-sum expansion")


def matching_poly_from_csf(x: SymmetricFunction) -> MatchingPolynomial:
    """m_k = |[p_(2^k, 1^(n-2k))] X|, checking the sign is (-1)^k."""
    _power_sum_input(x)
    n = x.n
    out = []
    for k in range(n // 2 + 1):
        c = coefficient(x, (2,) * k + (1,) * (n - 2 * k))
        if c and (c > 0) != (k % 2 == 0):
            raise SignPatternError(f"coefficient {c} of p_(2^{k},1^{n - 2 * k}) has the wrong sign")
        out.append(abs(c))
    if out[0] != 1:
        raise SignPatternError(f"coefficient of p_(1^{n}) is {out[0]}, expected 1")
    return MatchingPolynomial(tuple(out))


def matching_poly_direct(g: LabeledGraph) -> MatchingPolynomial:
    """Count pairwise vertex-disjoint edge subsets by size."""
    edges = g.sorted_edges()
    if len(edges) > MAX_MATCHING_EDGES:
        raise ValueError(f"direct matching count is limited to {MAX_MATCHING_EDGES} edges")
    counts = [0] * (g.n // 2 + 1)

    def rec(start: int, used: frozenset[int], k: int) -> None:
        counts[k] += 1
        for idx in range(start, len(edges)):
            i, j = edges[idx]
            if i not in used and j not in used:
                rec(idx + 1, used | {i, j}, k + 1)

    rec(0, frozenset(), 0)
    return MatchingPolynomial(tuple(counts))


def subtree_counts_from_csf(x: SymmetricFunction) -> SubtreeCounts:
    """counts[k] = |[p_(k, 1^(n-k))] X| for k >= 2."""
    _power_sum_input(x)
    n = x.n
    return SubtreeCounts({k: abs(coefficient(x, (k,) + (1,) * (n - k))) for k in range(2, n + 1)})


def subtree_counts_direct(g: LabeledGraph) -> SubtreeCounts:
    """Grow every connected vertex set from single vertices and count by size."""
    if g.n > MAX_SUBTREE_ORDER:
        raise ValueError(f"direct subtree enumeration is limited to n <= {MAX_SUBTREE_ORDER}")
    adj = g.adjacency()
    seen: set[frozenset[int]] = set()
    frontier = [frozenset({v}) for v in range(1, g.n + 1)]
    while frontier:
        nxt = []
        for s in frontier:
            for v in s:
                for w in adj[v]:
                    if w not in s:
                        t = s | {w}
                        if t not in seen:
                            seen.add(t)
                            nxt.append(t)
        frontier = nxt
    tally = Counter(len(s) for s in seen)
    return SubtreeCounts({k: tally.get(k, 0) for k in range(2, g.n + 1)})


def leaf_count_from_csf(x: SymmetricFunction) -> int:
    """|[p_(n-1, 1)] X_T|, the number of leaves of a tree with n >= 3."""
    _power_sum_input(x)
    if x.n < 3:
        raise ValueError("leaf count from the CSF needs n >= 3")
    return abs(coefficient(x, (x.n - 1, 1)))


def is_connected_from_csf(x: SymmetricFunction) -> bool:
    _power_sum_input(x)
    return coefficient(x, (x.n,)) != 0


def csf_disjoint_union(a: SymmetricFunction, b: SymmetricFunction) -> SymmetricFunction:
    """CSF of a disjoint union: the product of the component CSFs."""
    return p_mul(a, b)


def disjoint_union(g: LabeledGraph, h: LabeledGraph) -> LabeledGraph:
    """``g`` on {1..g.n} followed by ``h`` shifted to {g.n+1..g.n+h.n}."""
    shift = g.n
    return LabeledGraph(g.n + h.n, g.edges | frozenset((i + shift, j + shift) for i, j in h.edges))
