"""Dimension formulas: volume constants, elliptic contributions for SL(2, O),
dimensions on Gamma(p) and the Poincare series of the invariant ring.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNumber

ZETA_K_MINUS_1 = Fraction(-1, 21)
SL2_F7_ORDER = 336
CUSPS_GAMMA_P = 8
CYCLOTOMIC_ORDER = 42


@dataclass(frozen=True)
class EllipticPointClass:
    order: int
    multiplicity: int
    rotation: tuple[Fraction, Fraction, Fraction]


ELLIPTIC_POINTS = (
    EllipticPointClass(2, 4, (Fraction(1, 2),) * 3),
    EllipticPointClass(3, 1, (Fraction(1, 3),) * 3),
    EllipticPointClass(3, 3, (Fraction(1, 3), Fraction(1, 3), Fraction(2, 3))),
    EllipticPointClass(7, 1, (Fraction(1, 7), Fraction(2, 7), Fraction(4, 7))),
    EllipticPointClass(7, 3, (Fraction(1, 7), Fraction(2, 7), Fraction(3, 7))),
)


@dataclass(frozen=True)
class DimensionReport:
    group: str
    k: int
    cusp: int
    total: int
    cusps: int

    def row(self) -> str:
        return f"{self.group:8s} k={self.k:<3d} cusp={self.cusp:<6d} total={self.total:<6d} cusps={self.cusps}"


def volume_constants() -> dict[str, Fraction]:
    """vol(SL(2,O)) = -zeta_K(-1)/4, and the Gamma(p) volume via the projective index."""
    vol1 = -ZETA_K_MINUS_1 / 4
    return {"vol_SL2O": vol1, "vol_Gamma_p": vol1 * SL2_F7_ORDER / 2, "zeta_K_minus1": ZETA_K_MINUS_1}


def _root(alpha: Fraction, j: int) -> CycNumber:
    """exp(2 pi i j alpha) in Q(zeta_42)."""
    e = alpha * j * CYCLOTOMIC_ORDER
    if e.denominator != 1:
        raise ValueError("rotation number outside (1/42)Z")
    return CycNumber.zeta(int(e) % CYCLOTOMIC_ORDER, CYCLOTOMIC_ORDER)


def point_contribution(cls: EllipticPointClass, k: int, literal: bool = False) -> CycNumber:
    """(1/N) sum_{j=1}^{N-1} prod_l lambda_l^(k/2) / (1 - lambda_l), lambda_l = exp(2 pi i j a_l).

    The rotation numbers describe the action on the tangent space, so a
    weight k form picks up the (k/2)-th power.  ``literal=True`` uses the
    exponent k j a_l instead; it gives non-integral dimensions.
    """
    one = CycNumber.one(CYCLOTOMIC_ORDER)
    tot = CycNumber.zero(CYCLOTOMIC_ORDER)
    half = Fraction(k) if literal else Fraction(k, 2)
    for j in range(1, cls.order):
        term = one
        for a in cls.rotation:
            term = term * _root(a * half, j) / (one - _root(a, j))
        tot = tot + term
    return tot * Fraction(1, cls.order)


def elliptic_contribution(k: int, literal: bool = False) -> Fraction:
    """Total elliptic term e(k) for SL(2, O); must be rational."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and at least 2")
    tot = CycNumber.zero(CYCLOTOMIC_ORDER)
    for cls in ELLIPTIC_POINTS:
        tot = tot + point_contribution(cls, k, literal) * cls.multiplicity
    if not tot.is_rational():
        raise ArithmeticError(f"elliptic contribution at k={k} is not rational: {tot}")
    return tot.to_fraction()


def dimension_gamma1(k: int) -> DimensionReport:
    """Parallel weight k for SL(2, O), k even >= 4: volume + elliptic term, one Eisenstein series."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and at least 4")
    cusp = volume_constants()["vol_SL2O"] * (k - 1) ** 3 + elliptic_contribution(k)
    if cusp.denominator != 1:
        raise ArithmeticError(f"non-integral cusp dimension {cusp}")
    return DimensionReport("gamma-1", k, int(cusp), int(cusp) + 1, 1)


def dimension_gamma_p(k: int) -> DimensionReport:
    """Weight (k,k,k) on Gamma(p): the trace formula has only the volume term."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k >= 3:
        cusp = volume_constants()["vol_Gamma_p"] * (k - 1) ** 3
        cusp = int(cusp)
        return DimensionReport("gamma-p", k, cusp, cusp + CUSPS_GAMMA_P, CUSPS_GAMMA_P)
    # small weights are not covered by the volume formula
    small = {0: (0, 1), 1: (0, 4), 2: (3, 11)}
    c, t = small[k]
    return DimensionReport("gamma-p", k, c, t, CUSPS_GAMMA_P)


def euler_characteristic(k: int) -> int:
    """chi(X_sm, kL) = 2(k-1)^3."""
    return 2 * (k - 1) ** 3


def L_cubed() -> Fraction:
    """L^3 from the leading coefficient of chi(kL) = L^3 k^3 / 6 + ..."""
    pts = [euler_characteristic(k) for k in range(4)]
    # the third finite difference of a cubic is 6 * leading coefficient = L^3
    return Fraction(pts[3] - 3 * pts[2] + 3 * pts[1] - pts[0])


def poincare_invariant_ring(k: int) -> int:
    """Coefficient of t^k in (1 + t^2 + t^4 + t^6)/(1 - t)^4."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum(math.comb(k - j + 3, 3) for j in (0, 2, 4, 6) if k >= j)


def h_linear(k: int) -> Fraction:
    return Fraction(28 * k - 52, 3)


def galois_invariant_formula(k: int) -> Fraction:
    """8 + (2/3)(k-1)^3 + h(k): Eisenstein series plus invariant cusp forms, k >= 4."""
    return 8 + Fraction(2, 3) * (k - 1) ** 3 + h_linear(k)


def printed_display(k: int, reading: str = "k^2") -> Fraction:
    """(2/3)k^3 - 2k^r + (34/3)k - 10 with r = 2 (consistent) or r = 3 (as printed)."""
    r = 2 if reading == "k^2" else 3
    return Fraction(2, 3) * k**3 - 2 * k**r + Fraction(34, 3) * k - 10


def h_values() -> dict[int, Fraction]:
    """h(2) from 3 cusp forms minus h^3 = 1, h(3) from chi(3L-D-E) = 16."""
    h2 = (3 - 1) - Fraction(2, 3) * (2 - 1) ** 3
    h3 = euler_characteristic(3) - Fraction(2, 3) * (3 - 1) ** 3
    return {2: h2, 3: h3}
