from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from hilbert49.cubicfield import (
    EPS1, EPS2, ONE, PI, W, FieldElement, embeddings, format_element_pretty, galois_conjugate,
    is_totally_positive, is_unit, norm, norm_by_determinant, norm_polynomial, parse_element,
    totally_positive_of_trace, trace, trace_of_square_polynomial, unit_group_data, unit_from_exponents,
)

small = st.integers(-30, 30)
elements = st.builds(FieldElement, small, small, small)
nonzero = elements.filter(lambda x: not x.is_zero())


def test_minimal_polynomial():
    assert W**3 == -(W**2) + 2 * W + ONE


def test_prime_over_seven():
    assert norm(PI) == 7
    assert (PI**3).divides(FieldElement(7))
    assert (FieldElement(7) / PI**3).norm() in (1, -1)


@given(elements, elements)
def test_multiplication_commutes_and_norm_is_multiplicative(x, y):
    assert x * y == y * x
    assert norm(x * y) == norm(x) * norm(y)


@given(elements, elements, elements)
def test_distributive(x, y, z):
    assert x * (y + z) == x * y + x * z


@given(elements)
def test_norm_routes_agree(x):
    a, b, c = x.int_coords()
    assert norm(x) == norm_by_determinant(x) == norm_polynomial(a, b, c)


@given(elements)
def test_trace_and_residue_formulas(x):
    a, b, c = x.int_coords()
    assert trace(x) == 3 * a - b + 5 * c
    assert x.mod_p() == (a + 2 * b + 4 * c) % 7
    assert trace(x * x) == trace_of_square_polynomial(a, b, c)


@given(elements)
def test_galois_orbit(x):
    assert galois_conjugate(x, 3) == x
    conj = [galois_conjugate(x, k) for k in range(3)]
    assert conj[0] * conj[1] * conj[2] == FieldElement(norm(x))
    assert conj[0] + conj[1] + conj[2] == FieldElement(trace(x))


@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == ONE


@given(elements)
def test_embeddings_match_norm(x):
    with mpmath.workdps(40):
        e = embeddings(x, 40).values
        assert abs(e[0] * e[1] * e[2] - norm(x)) < mpmath.mpf(10) ** -25


@given(elements)
def test_format_parse_roundtrip(x):
    assert parse_element(format_element_pretty(x)) == x


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_totally_positive_units(m, n):
    u = unit_from_exponents(m, n)
    assert is_unit(u) and is_totally_positive(u) and norm(u) == 1


def test_unit_group_data():
    d = unit_group_data()
    assert d["U1_index"] == 3
    for u in d["U1_generators"]:
        assert (u - ONE).mod_p() == 0
    assert d["totally_positive_generators"] == (EPS1, EPS2)
    for u in d["full_generators"]:
        assert is_unit(u)


def test_trace_seven_table():
    got = sorted(totally_positive_of_trace(7))
    assert got == sorted(parse_element(s) for s in ("-w^2+4", "-w+2", "w^2+w+1"))


@pytest.mark.parametrize("t", range(1, 25))
def test_trace_slices_are_totally_positive_and_stable_under_units(t):
    elems = set(totally_positive_of_trace(t))
    assert all(is_totally_positive(x) and trace(x) == t for x in elems)
    # the Galois action preserves the trace slice
    assert {galois_conjugate(x) for x in elems} == elems


def test_trace_slice_counts_frozen():
    counts = [len(totally_positive_of_trace(t)) for t in range(1, 15)]
    assert counts[0] == 0 and counts[2] == 1 and counts[6] == 3 and counts[13] == 15


def test_parse_element_forms():
    assert parse_element("w^2+w+1") == FieldElement(1, 1, 1)
    assert parse_element("-w+2") == FieldElement(2, -1, 0)
    assert parse_element("3") == FieldElement(3)
    assert parse_element("1/2w") == FieldElement(0, Fraction(1, 2), 0)
    with pytest.raises(ValueError):
        parse_element("w^2+x")
