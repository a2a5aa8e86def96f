from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hilbert49 import dims


def test_volumes():
    v = dims.volume_constants()
    assert v["vol_SL2O"] == Fraction(1, 84)
    assert v["vol_Gamma_p"] == 2
    assert v["zeta_K_minus1"] == Fraction(-1, 21)


def test_gamma_p_small_weights():
    r = dims.dimension_gamma_p(2)
    assert (r.cusp, r.total, r.cusps) == (3, 11, 8)


@given(st.integers(3, 60))
def test_gamma_p_volume_formula(k):
    r = dims.dimension_gamma_p(k)
    assert r.cusp == 2 * (k - 1) ** 3 and r.total == r.cusp + 8
    assert r.cusp == dims.euler_characteristic(k)


def test_elliptic_terms_frozen():
    got = [dims.elliptic_contribution(k) for k in (2, 4, 6, 8, 10, 12)]
    assert got == [Fraction(-85, 84), Fraction(19, 28), Fraction(43, 84), Fraction(-1, 12),
                   Fraction(-19, 28), Fraction(13, 84)]


def test_gamma1_dimensions():
    assert [dims.dimension_gamma1(k).cusp for k in (4, 6, 8, 10, 12)] == [1, 2, 4, 8, 16]
    r = dims.dimension_gamma1(8)
    assert (r.cusp, r.total) == (4, 5)


def test_literal_exponent_reading_is_not_integral():
    cusp = dims.volume_constants()["vol_SL2O"] * 7**3 + dims.elliptic_contribution(8, literal=True)
    assert cusp == Fraction(82, 21)


def test_rotation_numbers_in_table():
    for cls in dims.ELLIPTIC_POINTS:
        assert all((a * cls.order).denominator == 1 for a in cls.rotation)


def test_poincare_series_frozen():
    assert [dims.poincare_invariant_ring(k) for k in range(13)] == \
        [1, 4, 11, 24, 46, 80, 130, 200, 294, 416, 570, 760, 990]


@pytest.mark.parametrize("k", range(4, 13))
def test_formulas_agree(k):
    p = dims.poincare_invariant_ring(k)
    assert p == dims.galois_invariant_formula(k) == dims.printed_display(k, "k^2")


def test_cubic_reading_of_display_fails():
    assert dims.printed_display(4, "k^3") == -50


def test_l_cubed_and_h():
    assert dims.L_cubed() == 12
    assert dims.h_values() == {2: Fraction(4, 3), 3: Fraction(32, 3)}
    assert dims.h_linear(2) == Fraction(4, 3) and dims.h_linear(3) == Fraction(32, 3)


def test_bad_weights():
    with pytest.raises(ValueError):
        dims.dimension_gamma1(5)
    with pytest.raises(ValueError):
        dims.dimension_gamma_p(-1)
