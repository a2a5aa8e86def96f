from fractions import Fraction

import mpmath
import sympy
from hypothesis import given, strategies as st

from hilbert49.cyclotomic import CycMatrix, CycNumber, cyclotomic_polynomial, euler_phi, gauss_sum
from hilbert49.linalg import echelon_rational, kernel, kernel_rational, rank_rational

coeff = st.integers(-6, 6)
cyc7 = st.lists(coeff, min_size=7, max_size=7).map(lambda c: CycNumber.from_powers(c))
nonzero7 = cyc7.filter(lambda x: not x.is_zero())


def test_cyclotomic_polynomials():
    x = sympy.symbols("x")
    for n in (1, 7, 12, 42):
        ours = cyclotomic_polynomial(n)
        ref = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert list(ours) == [int(c) for c in ref]
        assert len(ours) - 1 == euler_phi(n)


def test_gauss_sum_squares_to_minus_seven():
    g = gauss_sum()
    assert g * g == CycNumber.from_rational(-7)
    with mpmath.workdps(30):
        assert abs(g.to_complex(30) - mpmath.mpc(0, mpmath.sqrt(7))) < 1e-25


@given(cyc7, cyc7)
def test_ring_axioms(x, y):
    assert x * y == y * x
    assert (x + y) - y == x


@given(nonzero7)
def test_inverse_and_norm(x):
    assert x * x.inverse() == CycNumber.one()
    assert x.norm() > 0


@given(cyc7, st.integers(1, 6))
def test_galois_is_a_ring_map(x, t):
    y = CycNumber.zeta(2) + x
    assert (x * y).galois(t) == x.galois(t) * y.galois(t)


@given(cyc7)
def test_numeric_embedding_consistent(x):
    with mpmath.workdps(30):
        y = x * x
        assert abs(y.to_complex(30) - x.to_complex(30) ** 2) < 1e-20


def test_zeta_order_and_embedding():
    z = CycNumber.zeta(1, 42)
    assert z**42 == CycNumber.one(42)
    assert z**21 == -CycNumber.one(42)


def test_matrix_determinant_and_power():
    z = CycNumber.zeta(1)
    m = CycMatrix.diagonal([z, z**2, z**4])
    assert m.determinant() == CycNumber.one()
    assert m**7 == CycMatrix.identity(3)


rat_rows = st.lists(st.lists(st.integers(-5, 5), min_size=5, max_size=5), min_size=1, max_size=6)


@given(rat_rows)
def test_kernel_rational_against_sympy(rows):
    ker = kernel_rational(rows, 5)
    for v in ker:
        for r in rows:
            assert sum(Fraction(a) * b for a, b in zip(r, v)) == 0
    assert len(ker) == 5 - sympy.Matrix(rows).rank()
    assert rank_rational(rows) == sympy.Matrix(rows).rank()


@given(rat_rows)
def test_echelon_rows_are_primitive_integers(rows):
    ech, piv = echelon_rational(rows)
    assert len(ech) == len(piv)
    for r in ech:
        assert all(isinstance(a, int) for a in r)


def test_kernel_over_cyclotomics():
    z = CycNumber.zeta(1)
    one, zero = CycNumber.one(), CycNumber.zero()
    rows = [[one, z, z * z], [z, z * z, z**3]]
    ker = kernel(rows, 3, one, zero)
    assert len(ker) == 2
    for v in ker:
        for r in rows:
            acc = zero
            for a, b in zip(r, v):
                acc = acc + a * b
            assert acc.is_zero()
