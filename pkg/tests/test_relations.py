from fractions import Fraction

import pytest

from hilbert49.grouprep import span_is_stable
from hilbert49.relations import (
    InsufficientRows, P4, check_vanishing, cusp_basis_weight2, derive_octic, evaluate_on_series,
    factorization_obstruction, find_relation, irreducibility_report, kernel_without, reference_P8,
    reference_Q, section_decomposition, sections_2K, weight2_space_dimension,
)


@pytest.fixture(scope="module")
def result():
    return find_relation(25)


def test_relation_is_unique_and_matches(result):
    assert result.kernel_dimension == 1
    assert result.relation == reference_P8()
    assert len(result.relation) == 42
    assert result.relation.is_homogeneous() and result.relation.degree == 8


def test_relation_normalization(result):
    assert result.relation.coefficient((0, 0, 0, 0, 4)) == Fraction(6, 7) ** 4


def test_relation_vanishes_beyond_search_bound():
    (z,) = evaluate_on_series([reference_P8()], 30)
    assert z.is_zero()


def test_every_basis_element_needed():
    assert [kernel_without(25, i) for i in range(3)] == [0, 0, 0]


def test_small_bound_is_reported():
    with pytest.raises(InsufficientRows):
        find_relation(10)


def test_octic():
    Q = derive_octic()
    assert Q == reference_Q() and len(Q) == 24
    assert Q.degree == 8 and all(m[4] == 0 for m in Q.terms)
    assert len(P4()) == 5 and P4().coefficient((4, 0, 0, 0, 0)) == 2


def test_irreducibility_inputs():
    rep = irreducibility_report()
    assert rep["invariant_dimension_2"] == 0
    assert rep["jacobian_nonzero"] and rep["jacobian_lowest_degree"] == 11
    coeffs = sorted({c for _, c in rep["jacobian_leading_terms"]})
    assert coeffs == [-2744, 5488]
    assert rep["factorization_ruled_out"]
    assert factorization_obstruction()["e2_linear_terms"] == 12


def test_weight_two_space():
    assert weight2_space_dimension() == 11


def test_cusp_quadrics():
    quad = cusp_basis_weight2()
    assert len(quad) == 3 and span_is_stable(quad)
    for c in check_vanishing(quad, 25):
        assert c.constant_term == 0 and c.certified
        assert all(v >= 1 for v in c.orders.values())


def test_sections_of_2k():
    secs = sections_2K()
    assert len(secs) == 8
    for c in check_vanishing(secs, 30):
        assert c.constant_term == 0 and c.certified
        assert all(v >= 2 for v in c.orders.values())
    dec = section_decomposition(secs)
    assert dec == {"span_stable": True, "first_invariant": True, "rest_stable": True,
                   "rest_commutant_dimension": 1, "span_rank": 8}
