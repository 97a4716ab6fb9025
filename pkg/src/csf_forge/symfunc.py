"""
Symmetric functions in the power-sum and monomial bases.

Coefficients are exact: Python ints, or :class:`fractions.Fraction` when not
integral. No floating point is used anywhere.
"""

from __future__ import annotations

import enum
import json
import math
import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from .group_algebra import GroupAlgebraElement
from .perms import Partition, cycle_type, partitions

__all__ = [
    "Basis", "SymmetricFunction", "frobenius_ch", "p_mul", "p_to_m",
    "coefficient", "evaluate_ones", "power_sum", "monomial", "BasisMismatch",
]

Number = Union[int, Fraction]


class Basis(enum.Enum):
    POWER_SUM = "p"
    MONOMIAL = "m"


class BasisMismatch(ValueError):
    pass


def _normalize(c) -> Number:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, str):
        return _normalize(Fraction(c))
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


@dataclass(frozen=True, eq=False)
class SymmetricFunction:
    """Sparse map from partitions to exact coefficients in a fixed basis.

    ``n`` is the degree; products of homogeneous pieces keep degree additive.
    """
    n: int
    basis: Basis
    coeffs: Mapping[Partition, Number] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for lam, c in self.coeffs.items():
            if not isinstance(lam, Partition):
                lam = Partition.of(lam)
            c = _normalize(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    @classmethod
    def zero(cls, n: int, basis: Basis = Basis.POWER_SUM) -> "SymmetricFunction":
        return cls(n, basis, {})

    def __eq__(self, other):
        if not isinstance(other, SymmetricFunction):
            return NotImplemented
        return (self.basis == other.basis and self.n == other.n
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.n, self.basis, frozenset(self.coeffs.items())))

    def __add__(self, other: "SymmetricFunction") -> "SymmetricFunction":
        if self.basis != other.basis:
            raise BasisMismatch("cannot add functions in different bases")
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + c
        return SymmetricFunction(max(self.n, other.n), self.basis, out)

    def __neg__(self):
        return SymmetricFunction(self.n, self.basis, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymmetricFunction(self.n, self.basis,
                                     {k: v * other for k, v in self.coeffs.items()})
        return p_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_homogeneous(self) -> bool:
        return all(lam.n == self.n for lam in self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs.values())

    def terms(self) -> list[tuple[Partition, Number]]:
        """Terms with partitions in lexicographically descending order."""
        return sorted(self.coeffs.items(), key=lambda kv: kv[0].parts, reverse=True)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "basis": self.basis.value,
            "terms": [{"partition": list(lam.parts), "coeff": str(c)} for lam, c in self.terms()],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "SymmetricFunction":
        coeffs: dict[Partition, Number] = {}
        for term in data["terms"]:
            lam = Partition.of(term["partition"])
            coeffs[lam] = coeffs.get(lam, 0) + _normalize(str(term["coeff"]))
        return cls(int(data["n"]), Basis(data["basis"]), coeffs)

    @classmethod
    def from_json(cls, text: str) -> "SymmetricFunction":
        return cls.from_dict(json.loads(text))

    def __str__(self):
        if not self.coeffs:
            return "0"
        b = self.basis.value
        pieces = []
        for lam, c in self.terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            pieces.append(f"{sign} {coef}{b}{lam}")
        s = " ".join(pieces)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__


def power_sum(*parts: int) -> SymmetricFunction:
    lam = Partition.of(parts)
    return SymmetricFunction(lam.n, Basis.POWER_SUM, {lam: 1})


def monomial(*parts: int) -> SymmetricFunction:
    lam = Partition.of(parts)
    return SymmetricFunction(lam.n, Basis.MONOMIAL, {lam: 1})


def frobenius_ch(a: GroupAlgebraElement) -> SymmetricFunction:
    """Linear map sending each permutation to the power sum of its cycle type.

    The 1/n! normalisation is omitted to match the unscaled K products.
    """
    out: Counter = Counter()
    for p, c in a.terms.items():
        out[cycle_type(p)] += c
    return SymmetricFunction(a.n, Basis.POWER_SUM, out)


def p_mul(f: SymmetricFunction, g: SymmetricFunction) -> SymmetricFunction:
    """Product in the power-sum basis: p_lambda * p_mu = p_(lambda union mu)."""
    if f.basis != Basis.POWER_SUM or g.basis != Basis.POWER_SUM:
        raise BasisMismatch("p_mul needs both factors in the power-sum basis")
    out: dict[Partition, Number] = {}
    for lam, a in f.coeffs.items():
        for mu, b in g.coeffs.items():
            key = Partition.of(lam.parts + mu.parts)
            out[key] = out.get(key, 0) + a * b
    return SymmetricFunction(f.n + g.n, Basis.POWER_SUM, out)


def coefficient(f: SymmetricFunction, lam: Partition | tuple[int, ...]) -> Number:
    if not isinstance(lam, Partition):
        lam = Partition.of(lam)
    return f.coeffs.get(lam, 0)


def _count_fillings(parts: tuple[int, ...], target: tuple[int, ...]) -> int:
    """Maps from the (labelled) parts onto the slots of ``target`` with exact slot sums."""
    @lru_cache(maxsize=None)
    def rec(i: int, remaining: tuple[int, ...]) -> int:
        if i == len(parts):
            return int(not any(remaining))
        total = 0
        for j, r in enumerate(remaining):
            if r >= parts[i]:
                total += rec(i + 1, remaining[:j] + (r - parts[i],) + remaining[j + 1:])
        return total
    return rec(0, target)


_transition_lock = threading.Lock()
_transitions: dict[int, dict[Partition, dict[Partition, int]]] = {}


def _p_to_m_table(n: int) -> dict[Partition, dict[Partition, int]]:
    table = _transitions.get(n)
    if table is not None:
        return table
    with _transition_lock:
        table = _transitions.get(n)
        if table is None:
            table = {}
            parts_list = list(partitions(n))
            for lam in parts_list:
                row = {}
                for mu in parts_list:
                    # p_lam expands only onto m_mu with mu coarser than lam
                    if len(mu) > len(lam):
                        continue
                    c = _count_fillings(lam.parts, mu.parts)
                    if c:
                        row[mu] = c
                table[lam] = row
            _transitions[n] = table
    return table


def p_to_m(f: SymmetricFunction) -> SymmetricFunction:
    """Re-express a homogeneous power-sum expansion in the monomial basis."""
    if f.basis != Basis.POWER_SUM:
        raise BasisMismatch("p_to_m expects a power-sum expansion")
    if not f.is_homogeneous():
        raise ValueError("p_to_m expects a homogeneous function")
    table = _p_to_m_table(f.n)
    out: dict[Partition, Number] = {}
    for lam, c in f.coeffs.items():
        for mu, r in table[lam].items():
            out[mu] = out.get(mu, 0) + c * r
    return SymmetricFunction(f.n, Basis.MONOMIAL, out)


def evaluate_ones(f: SymmetricFunction, k: int) -> Number:
    """Value at x_1 = ... = x_k = 1 and all other variables 0."""
    total: Number = 0
    for lam, c in f.coeffs.items():
        if f.basis == Basis.POWER_SUM:
            total += c * k ** len(lam)
        else:
            if len(lam) > k:
                continue
            arrangements = math.factorial(k) // math.factorial(k - len(lam))
            for m in lam.multiplicities().values():
                arrangements //= math.factorial(m)
            total += c * arrangements
    return _normalize(Fraction(total))
