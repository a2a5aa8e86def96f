from fractions import Fraction

from hypothesis import given, strategies as st

from hilbert49.polynomial import WeightedPolynomial, monomials_of_degree, variables

mon = st.tuples(*[st.integers(0, 2)] * 5)
polys = st.dictionaries(mon, st.integers(-4, 4), max_size=6).map(WeightedPolynomial)
points = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=5, max_size=5)


@given(polys, polys, points)
def test_evaluation_is_a_ring_map(p, q, x):
    one = Fraction(1)
    assert (p * q).evaluate(x, one) == p.evaluate(x, one) * q.evaluate(x, one)
    assert (p + q).evaluate(x, one) == p.evaluate(x, one) + q.evaluate(x, one)


@given(polys, polys)
def test_partials_obey_leibniz(p, q):
    for name in ("F0", "E2"):
        assert (p * q).partial(name) == p.partial(name) * q + p * q.partial(name)


@given(polys)
def test_identity_substitution(p):
    F0, F1, F2, F4, _ = variables()
    assert p.substitute_linear([F0, F1, F2, F4]) == p


def test_monomial_counts():
    # F's have weight 1 and E2 weight 2
    assert len(monomials_of_degree(2)) == 11
    assert len(monomials_of_degree(2, with_e2=False)) == 10
    assert all(WeightedPolynomial.monomial(m).degree == 8 for m in monomials_of_degree(8))
