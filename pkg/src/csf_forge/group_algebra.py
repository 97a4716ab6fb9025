"""
Sparse integer combinations of permutations and the edge products K_{L,pi}.

The products are stored without the global n! factor; ``frobenius_ch`` in
:mod:`csf_forge.symfunc` drops the matching 1/n!, so ``ch(K)`` is the CSF with
integer coefficients. :meth:`GroupAlgebraElement.scaled` restores the factor.

Factors are multiplied left to right in the listed edge order, with
permutations composed as right-to-left maps (see :mod:`csf_forge.perms`).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .perms import DegreeMismatch, Permutation, _trusted, conjugate, identity, transposition
from .trees import Edge, GraphFormatError, LabeledGraph, normalize_edge

__all__ = [
    "GroupAlgebraElement", "EdgeOrdering", "ga_add", "ga_sub", "ga_mul", "ga_scale",
    "k_function", "k_function_naive", "factor", "conjugate_element", "parse_ordering",
]

INT64_MAX = 2**63 - 1


def _checked(c: int) -> int:
    if c > INT64_MAX or c < -INT64_MAX - 1:
        raise OverflowError(f"coefficient {c} does not fit in a signed 64-bit integer")
    return c


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    """Finite formal sum of permutations of {1..n} with nonzero integer coefficients."""
    n: int
    terms: Mapping[Permutation, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for p, c in self.terms.items():
            if p.n != self.n:
                raise DegreeMismatch(f"term of degree {p.n} in an element of degree {self.n}")
            if c:
                clean[p] = _checked(int(c))
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, n: int, terms: dict[Permutation, int]) -> "GroupAlgebraElement":
        # terms must already be canonical (nonzero, degree n)
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def of(cls, *pairs: tuple[int, Permutation]) -> "GroupAlgebraElement":
        """``of((1, id), (-1, t))`` is ``id - t``."""
        if not pairs:
            raise ValueError("need at least one term to infer the degree")
        n = pairs[0][1].n
        terms: dict[Permutation, int] = {}
        for c, p in pairs:
            terms[p] = terms.get(p, 0) + c
        return cls(n, terms)

    @classmethod
    def one(cls, n: int) -> "GroupAlgebraElement":
        return cls._raw(n, {identity(n): 1})

    @classmethod
    def zero(cls, n: int) -> "GroupAlgebraElement":
        return cls._raw(n, {})

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        return ga_add(self, other)

    def __sub__(self, other):
        return ga_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ga_scale(self, other)
        return ga_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return ga_scale(self, other)
        return NotImplemented

    def __neg__(self):
        return ga_scale(self, -1)

    def coefficient(self, p: Permutation) -> int:
        return self.terms.get(p, 0)

    def items(self) -> list[tuple[Permutation, int]]:
        """Terms sorted lexicographically by image sequence."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].images)

    def scaled(self) -> "GroupAlgebraElement":
        """The element multiplied by n!, matching the normalisation in the literature."""
        return ga_scale(self, math.factorial(self.n))

    def dump(self) -> str:
        """One ``coeff * cycles`` line per term, sorted by image sequence."""
        return "\n".join(f"{c} * {p.cycle_notation()}" for p, c in self.items())

    def key(self) -> tuple:
        """Hashable canonical form, used for deduplication."""
        return (self.n, tuple((p.images, c) for p, c in self.items()))

    def __repr__(self):
        body = " + ".join(f"{c}*{p.cycle_notation()}" for p, c in self.items()) or "0"
        return f"GroupAlgebraElement(n={self.n}: {body})"

    @classmethod
    def parse_dump(cls, text: str, n: int) -> "GroupAlgebraElement":
        terms: dict[Permutation, int] = {}
        for line in text.strip().splitlines():
            m = re.fullmatch(r"\s*(-?\d+)\s*\*\s*(.*?)\s*", line)
            if m is None:
                raise ValueError(f"malformed term line {line!r}")
            p = Permutation.parse(f"n={n}:{m.group(2)}")
            terms[p] = terms.get(p, 0) + int(m.group(1))
        return cls(n, terms)


def _same_degree(a: GroupAlgebraElement, b: GroupAlgebraElement) -> None:
    if a.n != b.n:
        raise DegreeMismatch(f"degree mismatch: {a.n} vs {b.n}")


def ga_add(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    _same_degree(a, b)
    out = dict(a.terms)
    for p, c in b.terms.items():
        v = out.get(p, 0) + c
        if v:
            out[p] = _checked(v)
        else:
            out.pop(p, None)
    return GroupAlgebraElement._raw(a.n, out)


def ga_scale(a: GroupAlgebraElement, k: int) -> GroupAlgebraElement:
    if k == 0:
        return GroupAlgebraElement.zero(a.n)
    return GroupAlgebraElement._raw(a.n, {p: _checked(c * k) for p, c in a.terms.items()})


def ga_sub(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    return ga_add(a, ga_scale(b, -1))


def ga_mul(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Bilinear extension of composition: (sum c_p p)(sum d_q q) = sum c_p d_q (p o q)."""
    _same_degree(a, b)
    out: dict[tuple[int, ...], int] = {}
    bt = [(q.images, d) for q, d in b.terms.items()]
    for p, c in a.terms.items():
        pi = p.images
        for qi, d in bt:
            key = tuple([pi[y - 1] for y in qi])
            out[key] = out.get(key, 0) + c * d
    return GroupAlgebraElement._raw(
        a.n, {_trusted(k): _checked(v) for k, v in out.items() if v})


def conjugate_element(s: Permutation, a: GroupAlgebraElement) -> GroupAlgebraElement:
    """Replace every term p by s p s^-1, keeping coefficients."""
    if s.n != a.n:
        raise DegreeMismatch(f"degree mismatch: {s.n} vs {a.n}")
    return GroupAlgebraElement._raw(a.n, {conjugate(s, p): c for p, c in a.terms.items()})


@dataclass(frozen=True)
class EdgeOrdering:
    """Sequence of distinct edges; the multiplication order of the factors (1 - (ij))."""
    edges: tuple[Edge, ...]

    def __post_init__(self):
        norm = tuple(normalize_edge(i, j) for i, j in self.edges)
        if len(set(norm)) != len(norm):
            raise GraphFormatError("duplicate edge in ordering")
        object.__setattr__(self, "edges", norm)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)

    def conjugated(self, s: Permutation) -> "EdgeOrdering":
        """The ordering with every edge (i, j) replaced by (s(i), s(j))."""
        return EdgeOrdering(tuple((s(i), s(j)) for i, j in self.edges))

    def __str__(self):
        return ",".join(f"{i}-{j}" for i, j in self.edges)


def parse_ordering(text: str) -> EdgeOrdering:
    edges = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        m = re.fullmatch(r"(\d+)\s*-\s*(\d+)", token)
        if m is None:
            raise GraphFormatError(f"malformed edge token {token!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    return EdgeOrdering(tuple(edges))


def k_function(graph: LabeledGraph,
               ordering: EdgeOrdering | Sequence[Edge] | None = None) -> GroupAlgebraElement:
    """The ordered product of (1 - (ij)) over the edges of an acyclic graph.

    ``ordering`` defaults to the sorted edge list. For a forest nothing
    cancels, so the result has exactly 2^|E| terms, each with coefficient +-1.
    """
    if ordering is None:
        ordering = EdgeOrdering(tuple(graph.sorted_edges()))
    elif not isinstance(ordering, EdgeOrdering):
        ordering = EdgeOrdering(tuple(ordering))
    if set(ordering.edges) != graph.edges:
        raise GraphFormatError("edge ordering does not list exactly the graph's edges")
    if not graph.is_acyclic():
        raise GraphFormatError("cycle detected: K products are defined for acyclic graphs only")
    n = graph.n
    terms: dict[tuple[int, ...], int] = {tuple(range(1, n + 1)): 1}
    for i, j in ordering:
        i0, j0 = i - 1, j - 1
        nxt = dict(terms)
        for img, c in terms.items():
            # right-multiplying by (i j) swaps the images of i and j
            swapped = list(img)
            swapped[i0], swapped[j0] = swapped[j0], swapped[i0]
            key = tuple(swapped)
            v = nxt.get(key, 0) - c
            if v:
                nxt[key] = v
            else:
                nxt.pop(key, None)
        terms = nxt
    return GroupAlgebraElement._raw(n, {_trusted(k): v for k, v in terms.items()})


def factor(i: int, j: int, n: int) -> GroupAlgebraElement:
    """The element 1 - (i j)."""
    return GroupAlgebraElement._raw(n, {identity(n): 1, transposition(i, j, n): -1})


def k_function_naive(graph: LabeledGraph, ordering: Iterable[Edge]) -> GroupAlgebraElement:
    """Reference product built with :func:`ga_mul` alone."""
    out = GroupAlgebraElement.one(graph.n)
    for i, j in ordering:
        out = ga_mul(out, factor(i, j, graph.n))
    return out
