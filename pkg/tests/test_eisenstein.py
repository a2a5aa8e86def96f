from fractions import Fraction

import pytest

from hilbert49.cyclotomic import CycNumber
from hilbert49.eisenstein import (
    E2_CONSTANT, FRICKE_EXPECTED, build_E2, build_F, build_all, build_s, conic, diagonal_E2, diagonal_F,
    f0_bar_cubic, fricke_f0_bar,
)
from hilbert49.octic import transformation_residuals
from hilbert49.qseries import g7_translate, restrict_diagonal
from hilbert49.verify import EXPANSION_FULL_BOUND, compare_expansions

T = 20


@pytest.fixture(scope="module")
def series():
    return build_all(T)


def test_constant_terms(series):
    assert series["F0"].constant_term() == Fraction(1, 14)
    assert E2_CONSTANT == Fraction(-1, 168)
    assert series["E2"].constant_term() == Fraction(-1, 168)
    for name in ("F1", "F2", "F4"):
        assert series[name].constant_term() == 0


def test_leading_terms(series):
    assert series["F1"].lowest_degree_terms() == (3, [((1, 1, 1), 1)])
    assert series["F2"].coefficient((1, 2, 3)) == 1
    assert series["F4"].coefficient((1, 2, 2)) == 1


@pytest.mark.parametrize("name", ["F0", "F1", "F2", "F4", "E2"])
def test_rotation_invariant(series, name):
    assert series[name].is_rotation_invariant()


@pytest.mark.parametrize("i", [0, 1, 2, 4])
def test_support_degrees_and_eigenvalue(series, i):
    f = series[f"F{i}"]
    assert all(sum(n) % 7 == (3 * i) % 7 for n in f.support() if sum(n))
    assert g7_translate(f) == f.scale(CycNumber.zeta(3 * i))


def test_e2_support_on_multiples_of_seven(series):
    assert all(sum(n) % 7 == 0 for n in series["E2"].support())
    assert g7_translate(series["E2"]) == series["E2"]


def test_diagonal_shortcut_matches_full_restriction(series):
    for i in (0, 1, 2, 4):
        assert diagonal_F(i, T) == restrict_diagonal(series[f"F{i}"])
    assert diagonal_E2(T) == restrict_diagonal(series["E2"])


def test_truncation_consistency():
    assert build_F(1, 14) == build_F(1, 20).truncate(14)
    assert build_E2(14) == build_E2(21).truncate(14)


def test_printed_coefficients():
    low = compare_expansions(T)
    full = compare_expansions(EXPANSION_FULL_BOUND)
    assert low["mismatches"] == [] and full["mismatches"] == []
    assert full["skipped_above_T"] == 0 and low["checked"] > 0
    # the single known misprint resolves to the orbit of (3,7,11)
    assert full["misprints"] == [{"series": "E2", "printed": (3, 1, 11), "matches": (3, 7, 11)}]


def test_diagonal_cubic_and_conic():
    N = 30
    s = [build_s(a, N) for a in (1, 2, 3)]
    assert diagonal_F(0, 7 * N).in_units(1) == f0_bar_cubic(*s)
    assert all(c == 0 for c in conic(*s).as_list())


def test_fricke_list_and_sign():
    got = [x.to_fraction() if hasattr(x, "to_fraction") else x for x in fricke_f0_bar(14, 1).as_list()]
    assert got == list(FRICKE_EXPECTED)
    flipped = [x.to_fraction() if hasattr(x, "to_fraction") else x for x in fricke_f0_bar(14, -1).as_list()]
    assert flipped != list(FRICKE_EXPECTED)


def test_weight_one_constants():
    assert build_s(1, 3).coefficient(0) == Fraction(5, 14)
    assert build_s(3, 3).coefficient(0) == Fraction(1, 14)
    with pytest.raises(ValueError):
        build_s(4, 3)


Z = ("0.13+1.05j", "-0.21+0.93j", "0.07+1.12j")


def test_numeric_transformation_law():
    r = transformation_residuals(tuple(complex(x) for x in Z), T=60, sign=1, dps=40)
    assert max(r["F"]) < 1e-15
    assert r["E2"] < 1e-15


def test_numeric_transformation_sign_is_pinned():
    r = transformation_residuals(tuple(complex(x) for x in Z), T=40, sign=-1, dps=30)
    assert max(r["F"]) > 1e-3
