import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from csf_forge.csf import csf
from csf_forge.group_algebra import GroupAlgebraElement as GA, conjugate_element, ga_add, k_function
from csf_forge.perms import Partition, Permutation
from csf_forge.symfunc import (
    Basis, BasisMismatch, SymmetricFunction, coefficient, evaluate_ones, frobenius_ch,
    monomial, p_mul, p_to_m, power_sum,
)

from helpers import free_trees_upto, perms


def test_frobenius_example1():
    assert frobenius_ch(GA.of((1, Permutation.parse("n=4:(1 2)(3)(4)")))) == power_sum(2, 1, 1)


def test_frobenius_zero():
    assert frobenius_ch(GA.zero(3)).is_zero()


def test_frobenius_star4(star4):
    want = power_sum(1, 1, 1, 1) + power_sum(3, 1) * 3 - power_sum(2, 1, 1) * 3 - power_sum(4)
    assert frobenius_ch(k_function(star4)) == want


def test_p_mul():
    assert p_mul(power_sum(2), power_sum(1, 1)) == power_sum(2, 1, 1)
    assert p_mul(power_sum(3), SymmetricFunction.zero(2)).is_zero()
    x_edge = power_sum(1, 1) - power_sum(2)
    # (p11 - p2)^2 = p1111 - 2 p211 + p22
    assert p_mul(x_edge, x_edge) == power_sum(1, 1, 1, 1) - power_sum(2, 1, 1) * 2 + power_sum(2, 2)
    assert p_mul(x_edge, x_edge).n == 4
    with pytest.raises(BasisMismatch):
        p_mul(monomial(2), power_sum(1))


def test_p_to_m_small():
    # (x1 + x2 + ...)^2 = sum x_i^2 + 2 sum_{i<j} x_i x_j
    assert p_to_m(power_sum(1, 1)) == monomial(2) + monomial(1, 1) * 2
    for n in range(1, 7):
        assert p_to_m(power_sum(n)) == monomial(n)


def test_p_to_m_star4(star4):
    want = monomial(1, 1, 1, 1) * 24 + monomial(2, 1, 1) * 6 + monomial(3, 1)
    assert p_to_m(csf(star4)) == want


def test_p_to_m_requires_homogeneous_power_sums():
    with pytest.raises(ValueError):
        p_to_m(SymmetricFunction(3, Basis.POWER_SUM, {Partition((3,)): 1, Partition((1,)): 1}))
    with pytest.raises(BasisMismatch):
        p_to_m(monomial(2))


def _brute_p_to_m(lam, n):
    """Coefficient of x_1^mu_1 ... x_l^mu_l in p_lam, by expanding the product over n variables."""
    out = {}
    for choice in itertools.product(range(n), repeat=len(lam)):
        exps = [0] * n
        for part, var in zip(lam, choice):
            exps[var] += part
        if all(exps[i] >= exps[i + 1] for i in range(n - 1)):
            mu = Partition(tuple(e for e in exps if e))
            out[mu] = out.get(mu, 0) + 1
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_p_to_m_transition_against_expansion(n):
    from csf_forge.perms import partitions
    for lam in partitions(n):
        assert p_to_m(power_sum(*lam.parts)).coeffs == _brute_p_to_m(lam.parts, n)


def test_coefficient(star4):
    x = csf(star4)
    assert coefficient(x, (3, 1)) == 3
    assert coefficient(x, (2, 2)) == 0
    assert coefficient(SymmetricFunction.zero(4), (4,)) == 0


def test_rational_coefficients_and_json_round_trip():
    f = SymmetricFunction(3, Basis.POWER_SUM, {Partition((2, 1)): Fraction(1, 3), Partition((3,)): -2})
    data = f.to_dict()
    assert data["terms"] == [{"partition": [3], "coeff": "-2"}, {"partition": [2, 1], "coeff": "1/3"}]
    assert SymmetricFunction.from_json(f.to_json()) == f
    assert not f.is_integral()


@settings(max_examples=50)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_ch_is_class_function_and_linear(sab):
    s, p, q = sab
    a = GA.of((1, p), (-2, q))
    b = GA.of((3, q))
    assert frobenius_ch(conjugate_element(s, a)) == frobenius_ch(a)
    assert frobenius_ch(ga_add(a, b)) == frobenius_ch(a) + frobenius_ch(b)


def test_ch_class_function_exhaustive_n4():
    ps = [Permutation(x) for x in itertools.permutations(range(1, 5))]
    for s in ps:
        for p in ps:
            assert frobenius_ch(conjugate_element(s, GA.of((1, p)))) == frobenius_ch(GA.of((1, p)))


@pytest.mark.parametrize("t", free_trees_upto(8), ids=str)
def test_p_to_m_preserves_chromatic_polynomial(t):
    x = csf(t)
    xm = p_to_m(x)
    for k in range(0, 5):
        # a tree has chromatic polynomial k (k-1)^(n-1)
        chi = k * (k - 1) ** (t.n - 1)
        assert evaluate_ones(x, k) == chi == evaluate_ones(xm, k)
