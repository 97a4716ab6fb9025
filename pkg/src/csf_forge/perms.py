"""
Permutations of {1..n} and integer partitions.

Composition is right-to-left function application: ``compose(p, q)(x) ==
p(q(x))``. Under this convention ``compose((12), (13))`` is the 3-cycle
``(1 3 2)``.

>>> p = Permutation.parse("n=3:(1 2)")
>>> q = Permutation.parse("n=3:(2 3)")
>>> str(compose(p, q))
'n=3:(1 2 3)'
>>> cycle_type(compose(p, q))
Partition(parts=(3,))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Permutation", "Partition", "DegreeMismatch", "identity", "transposition", "compose",
    "invert", "conjugate", "cycle_type", "cycles", "partitions",
]


class DegreeMismatch(ValueError):
    """Two objects living in different symmetric groups were combined."""


@dataclass(frozen=True, slots=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(not isinstance(k, int) or k < 1 for k in parts):
            raise ValueError(f"partition parts must be positive integers: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __lt__(self, other: "Partition") -> bool:
        return self.parts < other.parts

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for k in self.parts:
            out[k] = out.get(k, 0) + 1
        return out


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order.

    >>> [str(p) for p in partitions(4)]
    ['(4)', '(3,1)', '(2,2)', '(2,1,1)', '(1,1,1,1)']
    """
    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, cap), 0, -1):
            for tail in rec(rest - k, k):
                yield (k,) + tail

    for parts in rec(n, n if max_part is None else max_part):
        yield Partition(parts)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, slots=True)
class Permutation:
    """Bijection on {1..n}; ``images[i-1]`` is the image of point ``i``."""
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a bijection on 1..{len(images)}: {images}")
        if not images:
            raise ValueError("degree must be positive")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    @classmethod
    def from_cycles(cls, cycle_list: Iterable[Iterable[int]], n: int) -> "Permutation":
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycle_list:
            cyc = list(cyc)
            for x in cyc:
                if not 1 <= x <= n:
                    raise ValueError(f"point {x} out of range 1..{n}")
                if x in seen:
                    raise ValueError(f"point {x} appears in more than one cycle")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"n=4:(1 2)(3 4)"``; ``"n=4:()"`` is the identity."""
        head, sep, body = text.strip().partition(":")
        m = re.fullmatch(r"\s*n\s*=\s*(\d+)\s*", head)
        if not sep or m is None:
            raise ValueError(f"expected 'n=K:<cycles>', got {text!r}")
        n = int(m.group(1))
        body = body.strip()
        if _CYCLE_RE.sub("", body).strip():
            raise ValueError(f"malformed cycle notation {body!r}")
        cycle_list = []
        for group in _CYCLE_RE.findall(body):
            tokens = group.replace(",", " ").split()
            try:
                cycle_list.append([int(t) for t in tokens])
            except ValueError:
                raise ValueError(f"non-integer point in cycle ({group})") from None
        return cls.from_cycles(cycle_list, n)

    def cycle_notation(self) -> str:
        """Cycles of length >= 2, each led by its smallest point; ``()`` for identity."""
        nontrivial = [c for c in cycles(self) if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)

    def __str__(self) -> str:
        return f"n={self.n}:{self.cycle_notation()}"


def _trusted(images: tuple[int, ...]) -> Permutation:
    # skips the bijection check; callers guarantee validity
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def transposition(i: int, j: int, n: int) -> Permutation:
    if i == j:
        raise ValueError(f"transposition needs two distinct points, got ({i} {j})")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"points ({i} {j}) out of range 1..{n}")
    images = list(range(1, n + 1))
    images[i - 1], images[j - 1] = j, i
    return Permutation(tuple(images))


def _check_degree(p: Permutation, q: Permutation) -> None:
    if p.n != q.n:
        raise DegreeMismatch(f"degree mismatch: {p.n} vs {q.n}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation ``x -> p(q(x))``."""
    _check_degree(p, q)
    pi = p.images
    return _trusted(tuple([pi[y - 1] for y in q.images]))


def invert(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for i, v in enumerate(p.images, 1):
        inv[v - 1] = i
    return _trusted(tuple(inv))


def conjugate(s: Permutation, p: Permutation) -> Permutation:
    """``s p s^-1``; it maps ``s(x)`` to ``s(p(x))``."""
    _check_degree(s, p)
    out = [0] * p.n
    si = s.images
    for x, px in enumerate(p.images, 1):
        out[si[x - 1] - 1] = si[px - 1]
    return _trusted(tuple(out))


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles including fixed points, ordered by smallest point."""
    seen = [False] * (p.n + 1)
    out = []
    for start in range(1, p.n + 1):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p.images[x - 1]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Permutation) -> Partition:
    return Partition.of(len(c) for c in cycles(p))
