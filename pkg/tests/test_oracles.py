"""Frozen reference values, each derived independently of the code under test."""
from fractions import Fraction

from hilbert49.cubicfield import FieldElement, PI, W, galois_conjugate, is_totally_positive, norm, \
    totally_positive_of_trace, trace
from hilbert49.eisenstein import build_F
from hilbert49.grouprep import act_on_polynomial, gamma4, gamma7, invariant_basis, invariant_dimension
from hilbert49.ideals import P7, divisor_sum_s, factor_element, primes_over, s_of_element, s_of_prime, \
    unit_residue_group
from hilbert49.relations import evaluate_on_series, reference_Q, sections_2K
from hilbert49 import toric


def test_field_values():
    assert norm(FieldElement(1, 1, 1)) == 7
    assert not is_totally_positive(W)
    assert totally_positive_of_trace(1) == []
    x = FieldElement(1, 2)
    assert trace(galois_conjugate(x, 1)) == trace(x) == 1
    assert W.mod_p() == 2


def test_factorization_of_2_times_pi():
    fac = factor_element(FieldElement(2) * PI)
    (two,) = primes_over(2)
    assert two.f == 3
    assert fac.as_dict() == {two: 1, P7: 1}


def test_character_values():
    (two,) = primes_over(2)
    assert s_of_prime(two) == 1
    assert all(s_of_prime(P) == -1 for P in primes_over(13))
    assert s_of_element(FieldElement(2)) == 1
    assert divisor_sum_s(PI * PI) == 1
    assert len(unit_residue_group()) == 6


def test_series_constants():
    f0 = build_F(0, 6)
    assert (f0 * f0).constant_term() == Fraction(1, 196)


def test_degree_eight_strata():
    assert sum(invariant_dimension(8 - 2 * j) for j in range(5)) == 6 == len(invariant_basis(8))


def test_octic_invariance():
    Q = reference_Q()
    assert act_on_polynomial(gamma4(), Q) == Q
    assert act_on_polynomial(gamma7(), Q) == Q


def test_first_section_constant_term():
    (s,) = evaluate_on_series(sections_2K()[:1], 8)
    assert Fraction(1, 14) ** 4 - (Fraction(6, 7) * Fraction(-1, 168)) ** 2 == 0
    assert s.constant_term() == 0


def test_hull_function_at_e_ray():
    sm = toric.build_cusp_fan("p", "sm")
    e = sm.rays[sm.e_coords[(0, 0)]]
    assert toric.hull_support(sm, e) == Fraction(3, 2)
