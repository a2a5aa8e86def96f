import pytest
from hypothesis import assume, given, strategies as st

from hilbert49.cubicfield import EPS1, EPS2, W, FieldElement, norm, totally_positive_of_trace
from hilbert49.ideals import (
    P7, count_cusps, cusp_orbits, divisor_sum_s, divisor_sum_s_brute, factor_element, primes_over,
    prime_generator, rho_LK, s_of_element, s_of_prime, s_product_formula, splits_in_L,
    unit_residue_group, valuation,
)

small = st.integers(-25, 25)
elements = st.builds(FieldElement, small, small, small).filter(lambda x: not x.is_zero())


def coprime_to_p(x):
    return x.mod_p() != 0


@given(elements)
def test_factorization_norm(x):
    assert factor_element(x).norm == abs(norm(x))


@given(elements, elements)
def test_factorization_multiplicative(x, y):
    assert factor_element(x * y) == factor_element(x) * factor_element(y)


@given(elements, st.integers(-3, 3), st.integers(-3, 3))
def test_factorization_ignores_units(x, m, n):
    u = EPS1**m * EPS2**n * W
    assert factor_element(u * x) == factor_element(x)


@given(elements)
def test_valuations_match_factors(x):
    fac = factor_element(x)
    for P, k in fac.factors:
        assert valuation(x, P) == k


@given(elements)
def test_s_routes_agree(x):
    assume(coprime_to_p(x))
    assert s_of_element(x) == s_product_formula(x)


@given(elements, elements)
def test_s_is_a_character(x, y):
    assume(coprime_to_p(x) and coprime_to_p(y))
    assert s_of_element(x * y) == s_of_element(x) * s_of_element(y)


@given(elements)
def test_s_is_frobenius_on_factors(x):
    assume(coprime_to_p(x))
    prod = 1
    for P, k in factor_element(x).factors:
        prod *= s_of_prime(P) ** k
    assert prod == s_of_element(x)


@given(elements)
def test_divisor_sum_fast_equals_brute(x):
    assume(abs(norm(x)) < 10**6)
    assert divisor_sum_s(x) == divisor_sum_s_brute(x)


@given(elements)
def test_divisor_sum_equals_rho(x):
    assert divisor_sum_s(x) == rho_LK(x)


def test_seven_is_totally_ramified():
    assert primes_over(7) == (P7,)
    assert valuation(FieldElement(7), P7) == 3
    assert splits_in_L(P7) == "ramified"


@pytest.mark.parametrize("q", [2, 3, 5, 11, 13, 29, 41, 43, 97, 113])
def test_prime_splitting_pattern(q):
    primes = primes_over(q)
    if q % 7 in (1, 6):
        assert len(primes) == 3 and all(P.f == 1 for P in primes)
    else:
        assert len(primes) == 1 and primes[0].f == 3
    for P in primes:
        g = prime_generator(P)
        assert abs(norm(g)) == P.norm and P.contains(g)


def test_small_values_frozen():
    # rho at 2: the inert prime (2) has norm 8 and s((2)) = +1
    assert divisor_sum_s(FieldElement(2)) == 2
    assert rho_LK(FieldElement(2)) == 2
    assert rho_LK(FieldElement(1)) == 1
    assert rho_LK(FieldElement(7)) == 1


def test_trace_fourteen_identity():
    for b in totally_positive_of_trace(14):
        assert divisor_sum_s(b) == rho_LK(b)


def test_cusps():
    assert unit_residue_group() == frozenset(range(1, 7))
    assert count_cusps() == 8
    assert len(cusp_orbits()) == 8
