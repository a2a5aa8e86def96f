from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hilbert49 import toric
from hilbert49.cubicfield import FieldElement, is_totally_positive, unit_from_exponents

exps = st.integers(-3, 3)


@pytest.mark.parametrize("facet,form,mult,d", [
    (toric.FACET_T1, ((2, -1, 2), 2), FieldElement(9, -2, -3), 14),
    (toric.FACET_T2, ((1, -1, 2), 1), FieldElement(2, -1, 0), 7),
])
def test_hull_facets(facet, form, mult, d):
    r = toric.verify_hull_facet(facet)
    assert r.ok
    assert r.integer_form == form and r.multiplier == mult and r.trace_bound == d
    assert sorted(r.equality) == sorted(facet)


@given(exps, exps)
def test_unit_translates_of_facets(m, n):
    u = unit_from_exponents(m, n)
    for facet in (toric.FACET_T1, toric.FACET_T2):
        moved = tuple(u * v for v in facet)
        assert toric.supporting_functional(moved) == toric.supporting_functional(facet) / u


@pytest.mark.parametrize("m,n", [(1, 0), (0, 1), (-1, 2)])
def test_translated_facet_passes_full_check(m, n):
    u = unit_from_exponents(m, n)
    assert toric.verify_hull_facet(tuple(u * v for v in toric.FACET_T2)).ok


def test_non_facet_rejected():
    from hilbert49.cubicfield import EPS1, EPS2
    # the cone on 1, w^4, (w+1)^2 contains the hull vertex w^2 below its plane
    r = toric.verify_hull_facet((FieldElement(1), EPS1**2, EPS2))
    assert not r.ok
    assert EPS1 in r.candidates


@pytest.mark.parametrize("res", ["ch", "sm"])
def test_cone_indices(res):
    fan = toric.build_cusp_fan("p", res)
    idx = {}
    for c, kind in zip(fan.cones, fan.cone_types):
        idx.setdefault(kind, set()).add(fan.lattice_index(c))
    if res == "ch":
        assert idx == {"T1": {2}, "T2": {1}}
    else:
        assert set().union(*idx.values()) == {1}


def test_orbit_and_divisor_counts():
    assert toric.build_cusp_fan("p", "sm").orbit_counts() == {"D": 3, "E": 3}
    assert toric.build_cusp_fan("full", "sm").orbit_counts() == {"D": 1, "E": 1}
    assert toric.divisor_counts() == {"D_per_cusp": 3, "E_per_cusp": 3, "X_ch": 24, "E_total": 24, "X_sm": 48}


@pytest.mark.parametrize("res", ["ch", "sm"])
def test_star_stable_under_window_doubling(res):
    small = toric.build_cusp_fan("p", res, radius=3)
    big = toric.build_cusp_fan("p", res, radius=6)
    s1, i1 = toric.star_quotient(small, toric.d1_index(small))
    s2, i2 = toric.star_quotient(big, toric.d1_index(big))
    assert s1.rays == s2.rays and s1.labels == s2.labels
    assert toric.normal_bundle_values(small, toric.d1_index(small)) == \
        toric.normal_bundle_values(big, toric.d1_index(big))


def test_d1_stars():
    ch = toric.build_cusp_fan("p", "ch")
    f2, _ = toric.star_quotient(ch, toric.d1_index(ch))
    assert f2.cone_determinants() == [1, 2] * 3
    sm = toric.build_cusp_fan("p", "sm")
    g2, _ = toric.star_quotient(sm, toric.d1_index(sm))
    assert g2.is_smooth() and g2.self_intersections() == [-2, -1, -2] * 3


def test_normal_bundle_values():
    ch = toric.build_cusp_fan("p", "ch")
    assert toric.normal_bundle_values(ch, toric.d1_index(ch)) == [-2, -1, 0, 0, -3, -5]
    sm = toric.build_cusp_fan("p", "sm")
    vals = toric.normal_bundle_values(sm, toric.d1_index(sm))
    assert sorted(set(vals), reverse=True) == [0, -1, -2, -3, -4, -5]


def star_with_values():
    sm = toric.build_cusp_fan("p", "sm")
    return toric.restriction_to_D1(sm, Fraction(-3, 2), Fraction(-1))


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_self_intersection_invariant_under_principal_divisors(m1, m2):
    f2, vals = star_with_values()
    shifted = [v + m1 * r[0] + m2 * r[1] for v, r in zip(vals, f2.rays)]
    assert toric.pl_self_intersection(f2, shifted) == Fraction(5, 2)


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=6, max_size=6))
def test_self_intersection_invariant_under_refinement(vals):
    ch = toric.build_cusp_fan("p", "ch")
    f2, _ = toric.star_quotient(ch, toric.d1_index(ch))
    fine, fine_vals = toric.refine(f2, vals)
    assert fine.is_smooth()
    assert toric.pl_self_intersection(f2, vals) == toric.pl_self_intersection(fine, fine_vals)


def test_intersection_numbers():
    inter = toric.intersection_numbers()
    assert inter["L^3"] == 12
    assert inter["(K-E/2)^2 L"] == 48
    assert inter["(K-E/2)^2 D"] == 60
    assert inter["(2L-3/2E-D)^2 D1"] == Fraction(5, 2)
    assert inter["(K-E/2)^3"] == 36


def test_canonical_class_on_boundary_curves():
    k = toric.kch_on_d1()
    assert len(k) == 6 and set(k.values()) == {Fraction(1, 2)}


def test_e_component():
    rep = toric.e_component_report()
    assert rep == {"rays": 3, "is_P2": True, "normal_degree": -2, "K_minus_half_E_degree": 0}


def test_discrepancies():
    sm = toric.build_cusp_fan("p", "sm")
    for e in sm.e_coords.values():
        assert toric.discrepancy(sm, e) == Fraction(1, 2)
    for d in sm.unit_coords.values():
        assert toric.discrepancy(sm, d) == 0
    assert toric.discrepancy(sm, toric.d1_index(sm), relative_to="X") == -1


def test_rays_totally_positive():
    for fan in (toric.build_cusp_fan("p", "ch"), toric.build_cusp_fan("full", "sm")):
        assert all(is_totally_positive(r) for r in fan.rays)
