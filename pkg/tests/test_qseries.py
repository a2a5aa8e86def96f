from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hilbert49.cubicfield import FieldElement, trace
from hilbert49.qseries import (
    QExpansion, canonical_rotation, degree_of, element_of_exponents, exponents_by_traces, exponents_of,
    from_interchange, g7_translate, jacobian_det, pack, parse_symmetrized, restrict_diagonal, rotations,
    to_interchange, to_symmetrized, unpack,
)

T = 8
exps = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
series = st.lists(st.tuples(exps, coefs), max_size=8).map(lambda t: QExpansion.from_terms(t, T))
small = st.integers(-40, 40)


@given(small, small, small)
def test_exponent_map_routes_agree(a, b, c):
    x = FieldElement(a, b, c)
    n = exponents_of(x)
    assert n == (a - b + 2 * c, a + c, a + 2 * c)
    assert tuple(exponents_by_traces(x)) == n
    assert element_of_exponents(*n) == x
    assert sum(n) == trace(x)


@given(st.integers(0, 4000), st.integers(0, 4000), st.integers(0, 4000))
def test_pack_roundtrip(n1, n2, n3):
    k = pack(n1, n2, n3)
    assert unpack(k) == (n1, n2, n3)
    assert degree_of(k) == n1 + n2 + n3


@given(series, series, series)
def test_ring_laws(f, g, h):
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)


@given(series)
def test_inverse_of_unit_series(f):
    u = f + QExpansion.constant(Fraction(7), T) - QExpansion.constant(f.constant_term(), T)
    assert u * u.inverse() == QExpansion.constant(1, T)


@given(series)
def test_interchange_roundtrip(f):
    assert from_interchange(to_interchange(f)) == f


@given(series)
def test_symmetrized_roundtrip(f):
    sym = f + f.rotate() + f.rotate().rotate()
    assert sym.is_rotation_invariant()
    assert parse_symmetrized(to_symmetrized(sym), T) == sym


@given(series)
def test_rotation_has_order_three(f):
    assert f.rotate().rotate().rotate() == f


@given(series, series)
def test_g7_translate_is_multiplicative(f, g):
    assert g7_translate(f * g) == g7_translate(f) * g7_translate(g)


@given(series, st.integers(1, 3))
def test_theta_is_a_derivation(f, i):
    g = f + QExpansion.variable(i, T)
    assert (f * g).theta(i) == f.theta(i) * g + f * g.theta(i)


@given(series)
def test_diagonal_restriction_is_multiplicative(f):
    g = f + QExpansion.variable(1, T)
    assert restrict_diagonal(f * g) == restrict_diagonal(f) * restrict_diagonal(g)


def test_truncation_bound_enforced():
    f = QExpansion.variable(1, 4)
    with pytest.raises(ValueError):
        f.coefficient((5, 0, 0))
    assert (f**5).is_zero()


def test_rotations():
    assert rotations((1, 2, 3)) == [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
    assert canonical_rotation((3, 1, 11)) == (1, 11, 3)


def test_jacobian_of_coordinates():
    q = [QExpansion.variable(i, 6) for i in (1, 2, 3)]
    assert jacobian_det(*q) == QExpansion.constant(1, 3)


def test_symmetrized_parse_diagonal_orbit():
    f = parse_symmetrized("q(1,1,1) + 2q(1,2,3)", 10)
    assert f.coefficient((1, 1, 1)) == 1
    assert f.coefficient((2, 3, 1)) == 2
    assert f.coefficient((3, 2, 1)) == 0
