from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from hilbert49.cyclotomic import CycMatrix, CycNumber
from hilbert49.grouprep import (
    act_on_polynomial, element_order, gamma4, gamma7, group, invariant_basis, invariant_dimension,
    invariant_polynomials, is_invariant, minus_i_over_sqrt7, projective_image, projective_key,
)

MOLIEN = [1, 0, 0, 0, 1, 0, 1, 0, 3, 0, 2, 0, 5]

indices = st.integers(0, 335)


def test_generators():
    I = CycMatrix.identity(4)
    assert gamma4() * gamma4() == -I
    assert gamma7() ** 7 == I
    s = minus_i_over_sqrt7()
    assert s * s == CycNumber.from_rational(-1) / 7


def test_group_orders():
    g = group()
    assert len(g) == 336
    assert len(projective_image()) == 168
    assert -CycMatrix.identity(4) in set(g)


def test_element_order_statistics():
    orders = Counter(element_order(m) for m in group())
    # SL(2, F_7): one element each of order 1 and 2, 48 of order 7 and 48 of order 14
    assert orders[1] == 1 and orders[2] == 1
    assert orders[7] == 48 and orders[14] == 48
    assert sorted(orders) == [1, 2, 3, 4, 6, 7, 8, 14]


@given(indices, indices)
def test_closure(i, j):
    g = group()
    assert g[i] * g[j] in set(g)


@given(indices)
def test_projective_key_ignores_sign(i):
    m = group()[i]
    assert projective_key(m) == projective_key(-m)


def test_molien_series():
    assert [invariant_dimension(k) for k in range(13)] == MOLIEN


@pytest.mark.parametrize("k", [4, 6, 8])
def test_invariant_polynomials_match_molien(k):
    polys = invariant_polynomials(k)
    assert len(polys) == MOLIEN[k]
    for p in polys:
        assert is_invariant(p)


@settings(max_examples=15)
@given(indices)
def test_invariants_fixed_by_random_elements(i):
    m = group()[i]
    for p in invariant_polynomials(4) + invariant_polynomials(6):
        assert act_on_polynomial(m, p) == p


def test_invariant_basis_degree_eight():
    # F-invariants of degree 8, 6 and 4 times powers of E2
    assert len(invariant_basis(8)) == 6
