"""
Labeled forests on {1..n}, canonical forms, isomorphisms and free-tree generation.

Text format for graphs is ``"n=K:i-j,i-j,..."``; ``"n=1:"`` is the single vertex.

>>> t = parse_tree("n=4:1-2,1-3,1-4")
>>> canonical_code(t)
'(()()())'
>>> [format_graph(s) for s in gen_free_trees(4)]
['n=4:1-2,1-4,2-3', 'n=4:1-2,1-3,1-4']
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .perms import Permutation

__all__ = [
    "Edge", "LabeledGraph", "LabeledTree", "GraphFormatError",
    "normalize_edge", "parse_graph", "parse_tree", "format_graph",
    "relabel", "connected_components", "leaf_count", "canonical_code",
    "tree_isomorphism", "isomorphisms", "gen_free_trees", "count_free_trees",
    "labeled_trees", "prufer_decode", "path_graph", "star_graph",
]

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    pass


def normalize_edge(i: int, j: int) -> Edge:
    if i == j:
        raise GraphFormatError(f"self-loop at vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class LabeledGraph:
    """Simple graph on vertices {1..n} with unordered edges stored as (min, max)."""
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise GraphFormatError(f"vertex count must be a positive integer, got {self.n!r}")
        norm = []
        for e in self.edges:
            i, j = e
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise GraphFormatError(f"edge {i}-{j} has an endpoint outside 1..{self.n}")
            norm.append(normalize_edge(i, j))
        edges = frozenset(norm)
        if len(edges) != len(norm):
            raise GraphFormatError("duplicate edge")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]):
        edges = [tuple(e) for e in edges]
        norm = [normalize_edge(i, j) for i, j in edges]
        if len(set(norm)) != len(norm):
            dup = next(e for e in norm if norm.count(e) > 1)
            raise GraphFormatError(f"duplicate edge {dup[0]}-{dup[1]}")
        return cls(n, frozenset(norm))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def is_acyclic(self) -> bool:
        return len(self.edges) == self.n - len(connected_components(self))

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and len(connected_components(self)) == 1

    def __str__(self) -> str:
        return format_graph(self)


class LabeledTree(LabeledGraph):
    """Connected acyclic graph on {1..n}."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.edges) != self.n - 1:
            if len(self.edges) >= self.n:
                raise GraphFormatError("cycle detected: a tree on "
                                       f"{self.n} vertices has {self.n - 1} edges, got {len(self.edges)}")
            raise GraphFormatError("graph is disconnected")
        if len(connected_components(self)) != 1:
            raise GraphFormatError("cycle detected (and graph is disconnected)")


def _find_cycle_edge(n: int, edges: Iterable[Edge]) -> Edge | None:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            return (i, j)
        parent[ri] = rj
    return None


_GRAPH_RE = re.compile(r"\s*n\s*=\s*(\d+)\s*:(.*)", re.S)


def parse_graph(text: str, *, acyclic: bool = True) -> LabeledGraph:
    """Parse ``"n=K:i-j,..."``; rejects cycles unless ``acyclic=False``."""
    m = _GRAPH_RE.fullmatch(text)
    if m is None:
        raise GraphFormatError(f"expected 'n=K:i-j,...', got {text!r}")
    n = int(m.group(1))
    body = m.group(2).strip()
    edges = []
    if body:
        for token in body.split(","):
            token = token.strip()
            em = re.fullmatch(r"(\d+)\s*-\s*(\d+)", token)
            if em is None:
                raise GraphFormatError(f"malformed edge token {token!r}")
            i, j = int(em.group(1)), int(em.group(2))
            if i == j:
                raise GraphFormatError(f"self-loop in edge token {token!r}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphFormatError(f"edge token {token!r} out of range 1..{n}")
            edges.append((i, j))
    g = LabeledGraph.from_edges(n, edges)
    if acyclic:
        bad = _find_cycle_edge(n, g.sorted_edges())
        if bad is not None:
            raise GraphFormatError(f"cycle detected at edge {bad[0]}-{bad[1]}")
    return g


def parse_tree(text: str) -> LabeledTree:
    g = parse_graph(text)
    if len(connected_components(g)) != 1:
        raise GraphFormatError("graph is disconnected; a tree is required")
    return LabeledTree(g.n, g.edges)


def format_graph(g: LabeledGraph) -> str:
    return f"n={g.n}:" + ",".join(f"{i}-{j}" for i, j in g.sorted_edges())


def path_graph(n: int) -> LabeledTree:
    return LabeledTree(n, frozenset((i, i + 1) for i in range(1, n)))


def star_graph(n: int) -> LabeledTree:
    """Star with center 1."""
    return LabeledTree(n, frozenset((1, i) for i in range(2, n + 1)))


def relabel(g: LabeledGraph, s: Permutation) -> LabeledGraph:
    """Send every edge (i, j) to (s(i), s(j))."""
    if not isinstance(s, Permutation):
        s = Permutation(tuple(s))
    if s.n != g.n:
        raise ValueError(f"relabeling has degree {s.n}, graph has {g.n} vertices")
    return type(g)(g.n, frozenset(normalize_edge(s(i), s(j)) for i, j in g.edges))


def connected_components(g: LabeledGraph) -> list[frozenset[int]]:
    """Vertex sets of the components, ordered by smallest vertex."""
    adj = g.adjacency()
    seen: set[int] = set()
    comps = []
    for v in range(1, g.n + 1):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def leaf_count(g: LabeledGraph) -> int:
    deg = defaultdict(int)
    for i, j in g.edges:
        deg[i] += 1
        deg[j] += 1
    return sum(1 for v in range(1, g.n + 1) if deg[v] == 1)


# --- rooted canonical structure ---------------------------------------------
#
# Each component is rooted at its center. A bicentral component gets a virtual
# root (negative id) whose two children are the centers; virtual nodes are
# coded with square brackets so they never match real vertices. All component
# roots hang off the super-root 0.

class _Rooted:
    def __init__(self, g: LabeledGraph):
        adj = g.adjacency()
        self.children: dict[int, list[int]] = {0: []}
        next_virtual = -1
        for comp in connected_components(g):
            centers = _centers(adj, comp)
            if len(centers) == 1:
                root = centers[0]
                self._hang(adj, root, None)
            else:
                a, b = centers
                root = next_virtual
                next_virtual -= 1
                self.children[root] = [a, b]
                self._hang(adj, a, b)
                self._hang(adj, b, a)
            self.children[0].append(root)
        self.code: dict[int, str] = {}
        order = self._postorder(0)
        for v in order:
            inner = "".join(sorted(self.code[c] for c in self.children[v]))
            self.code[v] = ("[" + inner + "]") if v < 0 else ("(" + inner + ")")
        self.forest_code = "".join(sorted(self.code[r] for r in self.children[0]))

    def _hang(self, adj, root, blocked):
        stack = [(root, blocked)]
        while stack:
            v, parent = stack.pop()
            kids = [w for w in adj[v] if w != parent]
            self.children[v] = kids
            stack.extend((w, v) for w in kids)

    def _postorder(self, root):
        out, stack = [], [(root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                out.append(v)
                continue
            stack.append((v, True))
            stack.extend((c, False) for c in self.children[v])
        return out


def _centers(adj: dict[int, list[int]], comp: frozenset[int]) -> list[int]:
    if len(comp) <= 2:
        return sorted(comp)
    deg = {v: len(adj[v]) for v in comp}
    layer = [v for v in comp if deg[v] == 1]
    remaining = len(comp)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def canonical_code(g: LabeledGraph) -> str:
    """Balanced-parenthesis code, equal for two forests iff they are isomorphic."""
    return _Rooted(g).forest_code


def isomorphisms(a: LabeledGraph, b: LabeledGraph) -> Iterator[Permutation]:
    """Every bijection sending the edges of ``a`` onto the edges of ``b``.

    The iteration is lazy; stars on k leaves have k! of them.
    """
    if a.n != b.n or len(a.edges) != len(b.edges):
        return
    ra, rb = _Rooted(a), _Rooted(b)
    if ra.forest_code != rb.forest_code:
        return
    images = [0] * (a.n + 1)

    def child_pairings(u, v):
        groups_a: dict[str, list[int]] = defaultdict(list)
        groups_b: dict[str, list[int]] = defaultdict(list)
        for c in ra.children[u]:
            groups_a[ra.code[c]].append(c)
        for c in rb.children[v]:
            groups_b[rb.code[c]].append(c)
        groups = [(groups_a[k], groups_b[k]) for k in sorted(groups_a)]

        def rec(i):
            if i == len(groups):
                yield []
                return
            left, right = groups[i]
            for perm in itertools.permutations(right):
                for tail in rec(i + 1):
                    yield list(zip(left, perm)) + tail
        return rec(0)

    def walk(pending):
        if not pending:
            yield Permutation(tuple(images[1:]))
            return
        u, v = pending[-1]
        rest = pending[:-1]
        if u > 0:
            images[u] = v
        for pairs in child_pairings(u, v):
            yield from walk(rest + pairs)

    yield from walk([(0, 0)])


def tree_isomorphism(a: LabeledGraph, b: LabeledGraph) -> Permutation | None:
    return next(isomorphisms(a, b), None)


# --- free tree generation -----------------------------------------------------
#
# Level sequences in the successor order of Wright, Richmond, Odlyzko and McKay:
# every free tree appears once, rooted at its center, in constant amortized time.

def _next_rooted(levels: list[int], p: int | None = None) -> list[int] | None:
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = list(levels)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(levels: list[int]) -> tuple[list[int], list[int]]:
    # the first principal subtree and the remainder of the rooted tree
    m = len(levels)
    ones = [i for i, x in enumerate(levels) if x == 1]
    if len(ones) >= 2:
        m = ones[1]
    left = [x - 1 for x in levels[1:m]]
    rest = [0] + levels[m:]
    return left, rest


def _next_free(levels: list[int]) -> list[int]:
    left, rest = _split(levels)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return levels
    p = len(left)
    nxt = _next_rooted(levels, p)
    if levels[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail):] = tail
    return nxt


def _levels_to_tree(levels: list[int]) -> LabeledTree:
    edges = []
    stack: list[int] = []
    for i, lev in enumerate(levels):
        while stack and levels[stack[-1]] >= lev:
            stack.pop()
        if stack:
            edges.append((stack[-1] + 1, i + 1))
        stack.append(i)
    return LabeledTree(len(levels), frozenset(edges))


def gen_free_trees(n: int) -> Iterator[LabeledTree]:
    """One representative per isomorphism class of trees on n vertices."""
    if n < 1:
        raise ValueError("tree order must be at least 1")
    if n == 1:
        yield LabeledTree(1, frozenset())
        return
    if n == 2:
        yield LabeledTree(2, frozenset({(1, 2)}))
        return
    levels: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while levels is not None:
        levels = _next_free(levels)
        yield _levels_to_tree(levels)
        levels = _next_rooted(levels)


def count_free_trees(n: int) -> int:
    return sum(1 for _ in gen_free_trees(n))


# --- labeled trees (oracle) ---------------------------------------------------

def prufer_decode(seq: Sequence[int], n: int) -> LabeledTree:
    """Tree on {1..n} with Prufer sequence ``seq`` (length n-2)."""
    if len(seq) != n - 2:
        raise ValueError(f"Prufer sequence for n={n} must have length {n - 2}")
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (v for v in range(1, n + 1) if degree[v] == 1)
    edges.append((u, w))
    return LabeledTree(n, frozenset(normalize_edge(*e) for e in edges))


def labeled_trees(n: int) -> Iterator[LabeledTree]:
    """All n^(n-2) labeled trees on {1..n}."""
    if n == 1:
        yield LabeledTree(1, frozenset())
        return
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(seq, n)
