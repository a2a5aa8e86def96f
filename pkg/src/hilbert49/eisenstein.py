"""q-expansions of the weight (1,1,1) series F0, F1, F2, F4 of level p, the
level one weight (2,2,2) series E2, and the weight one series s1, s2, s3
for Gamma_1(7) together with their Fricke transforms.
"""
from __future__ import annotations

import threading
from fractions import Fraction

import numpy as np
import sympy

from .cubicfield import totally_positive_coords_of_trace
from .cyclotomic import CycMatrix, CycNumber, gauss_sum
from .ideals import P7, divisor_sum_s_ideal, factor_coords, sigma1_ideal
from .qseries import DiagonalSeries, QExpansion, exponents_of_coords, pack

RESIDUE_CLASSES = (0, 1, 2, 4)
CONSTANTS = {0: Fraction(1, 14), 1: Fraction(0), 2: Fraction(0), 4: Fraction(0)}
E2_CONSTANT = Fraction(-1, 168)


def _residues(arr: np.ndarray) -> np.ndarray:
    return (arr[:, 0] + 2 * arr[:, 1] + 4 * arr[:, 2]) % 7


class _SliceCache:
    """Per-trace lists of (packed exponent, coefficient) for each series."""

    def __init__(self):
        self.lock = threading.Lock()
        self.data: dict[tuple[str, int], list[tuple[int, int]]] = {}

    def get(self, tag: str, t: int, build):
        key = (tag, t)
        got = self.data.get(key)
        if got is None:
            got = build(t)
            with self.lock:
                self.data.setdefault(key, got)
        return got


_CACHE = _SliceCache()


def _slice_F(i: int):
    def build(t: int):
        arr = totally_positive_coords_of_trace(t)
        if len(arr) == 0:
            return []
        sel = arr[_residues(arr) == i]
        out = []
        for a, b, c in sel.tolist():
            v = divisor_sum_s_ideal(factor_coords(a, b, c))
            if v:
                out.append((pack(*exponents_of_coords(a, b, c)), v))
        return out
    return build


def _slice_E2(t: int):
    arr = totally_positive_coords_of_trace(t)
    if len(arr) == 0:
        return []
    sel = arr[_residues(arr) == 0]
    out = []
    for a, b, c in sel.tolist():
        I = factor_coords(a, b, c).divide(P7)
        out.append((pack(*exponents_of_coords(a, b, c)), sigma1_ideal(I)))
    return out


def build_F(i: int, T: int) -> QExpansion:
    """F_i = c_i + sum over a >> 0, a = i mod p, Tr(a) <= T of (sum_{(c)|(a)} s(c)) q^n(a)."""
    if i not in range(7):
        raise ValueError(f"residue class must be in 0..6, got {i}")
    if T < 1:
        raise ValueError("trace bound must be positive")
    c0 = CONSTANTS.get(i, Fraction(0))
    den = c0.denominator
    coeffs: dict[int, int] = {}
    if c0:
        coeffs[0] = c0.numerator
    build = _slice_F(i)
    for t in range(1, T + 1):
        for k, v in _CACHE.get(f"F{i}", t, build):
            coeffs[k] = v * den
    return QExpansion(coeffs, T, den)


def build_E2(T: int) -> QExpansion:
    """E2 on the lattice a' = 7a in p: coefficient sigma_1((a') p^-1)."""
    if T < 1:
        raise ValueError("trace bound must be positive")
    den = E2_CONSTANT.denominator
    coeffs = {0: E2_CONSTANT.numerator}
    for t in range(7, T + 1, 7):
        for k, v in _CACHE.get("E2", t, _slice_E2):
            coeffs[k] = v * den
    return QExpansion(coeffs, T, den)


def build_all(T: int) -> dict[str, QExpansion]:
    out = {f"F{i}": build_F(i, T) for i in RESIDUE_CLASSES}
    out["E2"] = build_E2(T)
    return out


def diagonal_F(i: int, T: int) -> DiagonalSeries:
    """Restriction of F_i to z = (tau, tau, tau), in powers of q^(1/7).

    Sums coefficients per trace slice, so no trivariate series is built;
    used for the long restriction identities.
    """
    out = {0: CONSTANTS.get(i, Fraction(0))}
    build = _slice_F(i)
    for t in range(1, T + 1):
        tot = sum(v for _, v in _CACHE.get(f"F{i}", t, build))
        if tot:
            out[t] = Fraction(tot)
    return DiagonalSeries(out, T, 7)


def diagonal_E2(T: int) -> DiagonalSeries:
    out = {0: E2_CONSTANT}
    for t in range(7, T + 1, 7):
        tot = sum(v for _, v in _CACHE.get("E2", t, _slice_E2))
        if tot:
            out[t] = Fraction(tot)
    return DiagonalSeries(out, T, 7)


# weight one forms on Gamma_1(7) ---------------------------------------------------

def build_s(a: int, N: int) -> DiagonalSeries:
    """s_a = 1/2 - a/7 + sum_n q^n sum_{d | n} ([d = a mod 7] - [d = -a mod 7])."""
    if a not in (1, 2, 3):
        raise ValueError("a must be 1, 2 or 3")
    coeffs = {0: Fraction(1, 2) - Fraction(a, 7)}
    for n in range(1, N + 1):
        tot = 0
        for d in sympy.divisors(n):
            if d % 7 == a:
                tot += 1
            elif d % 7 == 7 - a:
                tot -= 1
        if tot:
            coeffs[n] = Fraction(tot)
    return DiagonalSeries(coeffs, N, 1)


def fricke_s() -> CycMatrix:
    """M with -(1/tau) s_i(-1/(7 tau)) = sum_j M_ij s_j(tau), M_ij = zeta^(ij) - zeta^(-ij)."""
    rows = []
    for i in (1, 2, 3):
        rows.append([CycNumber.zeta(i * j) - CycNumber.zeta(-i * j) for j in (1, 2, 3)])
    return CycMatrix(rows)


def f0_bar_cubic(s1, s2, s3):
    """7 (s1 + s2 - s3)^3 - 147 s1 s2 s3."""
    u = s1 + s2 - s3
    return u * u * u * 7 - s1 * s2 * s3 * 147


def conic(s1, s2, s3):
    """7 (s1^2 + s2^2 + s3^2) - 5 (s1 + s2 - s3)^2; vanishes identically."""
    u = s1 + s2 - s3
    return (s1 * s1 + s2 * s2 + s3 * s3) * 7 - u * u * 5


def fricke_f0_bar(N: int, sign: int = 1) -> DiagonalSeries:
    """(1/tau^3) F0bar(-1/(7 tau)) / (49 g), g = sum_t (t/7) zeta^t, through q^N.

    With g = i sqrt 7 this is the normalization "49 i sqrt(7) (...)".  The
    result has coefficients in Q(zeta_7); ``sign = -1`` divides by -49 g
    instead, which is how the sign of the scalar -i/sqrt(7) gets pinned.
    """
    s = [build_s(a, N) for a in (1, 2, 3)]
    M = fricke_s()
    # S_i = (1/tau) s_i(-1/(7 tau)) = -sum_j M_ij s_j
    S = []
    for i in range(3):
        acc = DiagonalSeries({}, N)
        for j in range(3):
            acc = acc + s[j] * (-M[i, j])
        S.append(acc)
    R = f0_bar_cubic(*S)
    scalar = (gauss_sum() * (49 * sign)).inverse()
    return R * scalar


FRICKE_EXPECTED = (Fraction(1, 14), 0, 0, 1, 0, 3, 5, 3, 0, 0, 15, 0, 21, 21, 15)
