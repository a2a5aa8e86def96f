"""Exact linear algebra: kernels and ranks over Q and over Q(zeta_n).

Over Q the elimination is fraction-free: rows are scaled to primitive integer
vectors and combined with integer multipliers only.  Over Q(zeta_n) plain
Gauss-Jordan elimination is used (the systems are small).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycNumber


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _integer_row(row: Sequence) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return _primitive([int(x * den) for x in fr])


def echelon_rational(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free reduced echelon form of a rational matrix.

    Returns (echelon rows as primitive integer vectors, pivot columns); each
    pivot column is zero outside its own pivot row.
    """
    work = [_integer_row(r) for r in rows]
    work = [r for r in work if any(r)]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    basis: list[list[int]] = []
    for col in range(ncols):
        piv = None
        for idx, r in enumerate(work):
            if r[col]:
                if piv is None or abs(r[col]) < abs(work[piv][col]):
                    piv = idx
        if piv is None:
            continue
        prow = work.pop(piv)
        if prow[col] < 0:
            prow = [-x for x in prow]
        p = prow[col]
        new_work = []
        for r in work:
            c = r[col]
            if c:
                g = math.gcd(p, c)
                r = _primitive([x * (p // g) - y * (c // g) for x, y in zip(r, prow)])
            if any(r):
                new_work.append(r)
        work = new_work
        for k, b in enumerate(basis):
            c = b[col]
            if c:
                g = math.gcd(p, c)
                b = _primitive([x * (p // g) - y * (c // g) for x, y in zip(b, prow)])
                basis[k] = b
        basis.append(prow)
        pivots.append(col)
    return basis, pivots


def rank_rational(rows: Sequence[Sequence]) -> int:
    return len(echelon_rational(rows)[1])


def kernel_rational(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} over Q, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    basis, pivots = echelon_rational(rows)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(basis, pivots):
            v[pc] = Fraction(-row[f], row[pc])
        out.append(v)
    return out


# generic field version -------------------------------------------------------------

def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, CycNumber) else x == 0


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Gauss-Jordan over any exact field whose elements support + - * /."""
    a = [list(r) for r in rows]
    if not a:
        return [], []
    m, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if not _is_zero(a[i][col])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and not _is_zero(a[i][col]):
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def kernel(rows: Sequence[Sequence], ncols: int, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        out.append(v)
    return out
