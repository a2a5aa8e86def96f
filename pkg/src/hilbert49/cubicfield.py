"""Exact arithmetic in the cubic field K = Q(w), w^3 + w^2 - 2w - 1 = 0.

K is the maximal real subfield of Q(zeta_7) with w = zeta_7 + zeta_7^-1,
and its ring of integers is Z[w].  Elements are stored by their rational
coordinates in the basis {1, w, w^2}.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import mpmath
import numpy as np

DEFAULT_DPS = 64


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class FieldElement:
    """a + b*w + c*w^2 with rational a, b, c.  Immutable and hashable."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a=0, b=0, c=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "c", _frac(c))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def coerce(cls, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            return x
        return cls(x)

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def int_coords(self) -> tuple[int, int, int]:
        if not self.is_integral():
            raise ValueError(f"{self} is not in O")
        return (int(self.a), int(self.b), int(self.c))

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1 and self.c.denominator == 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    # ring operations -------------------------------------------------
    def __add__(self, other):
        other = FieldElement.coerce(other)
        return FieldElement(self.a + other.a, self.b + other.b, self.c + other.c)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, -self.c)

    def __sub__(self, other):
        return self + (-FieldElement.coerce(other))

    def __rsub__(self, other):
        return FieldElement.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            o = _frac(other)
            return FieldElement(self.a * o, self.b * o, self.c * o)
        a1, b1, c1 = self.a, self.b, self.c
        a2, b2, c2 = other.a, other.b, other.c
        # coefficients of 1, w, w^2, w^3, w^4 before reduction
        t0 = a1 * a2
        t1 = a1 * b2 + b1 * a2
        t2 = a1 * c2 + b1 * b2 + c1 * a2
        t3 = b1 * c2 + c1 * b2
        t4 = c1 * c2
        # w^3 = 1 + 2w - w^2,  w^4 = -1 - w + 3w^2
        return FieldElement(t0 + t3 - t4, t1 + 2 * t3 - t4, t2 - t3 + 3 * t4)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in K")
        # x * sigma(x) * sigma^2(x) = N(x)
        adj = galois_conjugate(self, 1) * galois_conjugate(self, 2)
        return adj * (1 / norm(self))

    def __truediv__(self, other):
        other = FieldElement.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldElement.coerce(other) * self.inverse()

    def divides(self, other) -> bool:
        """True if other/self lies in O (both assumed integral)."""
        return (FieldElement.coerce(other) / self).is_integral()

    # comparisons -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FieldElement(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        return format_element(self)

    # conveniences ------------------------------------------------------
    def norm(self) -> Fraction:
        return norm(self)

    def trace(self) -> Fraction:
        return trace(self)

    def mod_p(self) -> int:
        """Residue in F_7 = O/p, using w = 2 mod p (2 - w generates p)."""
        a, b, c = self.int_coords()
        return (a + 2 * b + 4 * c) % 7


ZERO = FieldElement(0)
ONE = FieldElement(1)
W = FieldElement(0, 1, 0)
W2 = FieldElement(0, 0, 1)
PI = FieldElement(2, -1, 0)  # generator of the prime over 7


def multiplication_matrix(x: FieldElement) -> list[list[Fraction]]:
    """Matrix of y -> x*y in the basis {1, w, w^2}; columns are x, x*w, x*w^2."""
    cols = [x, x * W, x * W2]
    return [[col.coords[i] for col in cols] for i in range(3)]


def _det3(m) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def norm_by_determinant(x: FieldElement) -> Fraction:
    return _det3(multiplication_matrix(x))


def norm_polynomial(a, b, c):
    """Closed-form norm of a + b*w + c*w^2; works on ints, Fractions, numpy arrays."""
    return (a**3 - a**2 * b + 5 * a**2 * c - 2 * a * b**2 - a * b * c + 6 * a * c**2
            + b**3 - b**2 * c - 2 * b * c**2 + c**3)


def trace_of_square_polynomial(a, b, c):
    return 3 * a**2 - 2 * a * b + 10 * a * c + 5 * b**2 - 8 * b * c + 13 * c**2


def norm(x: FieldElement) -> Fraction:
    x = FieldElement.coerce(x)
    return norm_polynomial(x.a, x.b, x.c)


def trace(x: FieldElement) -> Fraction:
    x = FieldElement.coerce(x)
    return 3 * x.a - x.b + 5 * x.c


def second_symmetric(x: FieldElement) -> Fraction:
    """e2 of the three conjugates: (Tr(x)^2 - Tr(x^2)) / 2."""
    t = trace(x)
    return (t * t - trace_of_square_polynomial(x.a, x.b, x.c)) / 2


def is_totally_positive(x: FieldElement) -> bool:
    """Exact test: all conjugates of x are positive iff e1, e2, e3 > 0.

    The minimal polynomial of x splits over R, so by Descartes' rule its
    roots are all positive exactly when its coefficients alternate in sign.
    """
    x = FieldElement.coerce(x)
    if x.is_zero():
        raise ValueError("total positivity is undefined for 0")
    return trace(x) > 0 and second_symmetric(x) > 0 and norm(x) > 0


def galois_conjugate(x: FieldElement, k: int = 1) -> FieldElement:
    """Apply the generator w -> w^2 - 2 of Gal(K/Q) k times."""
    x = FieldElement.coerce(x)
    k %= 3
    for _ in range(k):
        sw = FieldElement(-2, 0, 1)  # image of w
        x = x.a + x.b * sw + x.c * (sw * sw)
    return x


# embeddings -------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingTriple:
    """Images of an element under the three real embeddings.

    ``values[i]`` is the midpoint for w -> 2cos(2pi(i+1)/7); every value is
    certified to lie within ``radius`` of the true embedding.
    """

    values: tuple
    radius: object
    dps: int

    def signs(self) -> tuple[int, ...] | None:
        """Sign pattern, or None if some interval straddles zero."""
        out = []
        for v in self.values:
            if abs(v) <= self.radius:
                return None
            out.append(1 if v > 0 else -1)
        return tuple(out)


def embeddings(x: FieldElement, dps: int = DEFAULT_DPS) -> EmbeddingTriple:
    x = FieldElement.coerce(x)
    with mpmath.workdps(dps + 10):
        iv = mpmath.iv
        iv.dps = dps + 10
        mids, rad = [], mpmath.mpf(0)
        for k in (1, 2, 3):
            wk = 2 * iv.cos(2 * iv.pi * k / 7)
            val = (iv.mpf(x.a.numerator) / x.a.denominator
                   + iv.mpf(x.b.numerator) / x.b.denominator * wk
                   + iv.mpf(x.c.numerator) / x.c.denominator * wk * wk)
            mids.append(mpmath.mpf(val.mid))
            rad = max(rad, mpmath.mpf(val.delta) / 2)
    return EmbeddingTriple(tuple(mids), rad, dps)


@lru_cache(maxsize=None)
def real_embeddings_of_w() -> tuple[float, float, float]:
    return tuple(2 * np.cos(2 * np.pi * k / 7) for k in (1, 2, 3))


@lru_cache(maxsize=None)
def _coordinate_extremes() -> tuple[tuple[float, float], ...]:
    """Per coordinate of a+bw+cw^2: (min_i, max_i) of the inverse Vandermonde row.

    Over the simplex {x_i >= 0, sum x_i = t} the coordinate is linear in the
    embedding vector, so its range is t*[min, max] of the row.
    """
    with mpmath.workdps(40):
        ws = [2 * mpmath.cos(2 * mpmath.pi * k / 7) for k in (1, 2, 3)]
        vand = mpmath.matrix([[1, wk, wk * wk] for wk in ws])
        inv = vand ** -1
        return tuple((float(min(inv[j, i] for i in range(3))), float(max(inv[j, i] for i in range(3))))
                     for j in range(3))


def trace_slice_box(t: int, margin: int = 1) -> tuple[range, range]:
    """Ranges of (a, c) containing every totally positive element of trace t."""
    (amin, amax), _, (cmin, cmax) = _coordinate_extremes()
    a_rng = range(int(np.floor(t * amin)) - margin, int(np.ceil(t * amax)) + margin + 1)
    c_rng = range(int(np.floor(t * cmin)) - margin, int(np.ceil(t * cmax)) + margin + 1)
    return a_rng, c_rng


def totally_positive_coords_of_trace(t: int) -> np.ndarray:
    """Integer coordinates (rows a, b, c) of all x >> 0 in O with Tr(x) = t.

    Sorted lexicographically.  Decisions are exact integer arithmetic.
    """
    if t < 1:
        return np.zeros((0, 3), dtype=np.int64)
    a_rng, c_rng = trace_slice_box(t)
    a, c = np.meshgrid(np.arange(a_rng.start, a_rng.stop, dtype=np.int64),
                       np.arange(c_rng.start, c_rng.stop, dtype=np.int64), indexing="ij")
    a = a.ravel()
    c = c.ravel()
    b = 3 * a + 5 * c - t
    # int64 is exact far beyond the traces used here (|coords| ~ t)
    if t > 20000:
        raise ValueError("trace too large for int64 enumeration")
    e2x2 = t * t - trace_of_square_polynomial(a, b, c)
    nrm = norm_polynomial(a, b, c)
    keep = (e2x2 > 0) & (nrm > 0)
    out = np.stack([a[keep], b[keep], c[keep]], axis=1)
    order = np.lexsort((out[:, 2], out[:, 1], out[:, 0]))
    return out[order]


def totally_positive_of_trace(t: int) -> list[FieldElement]:
    return [FieldElement(int(a), int(b), int(c)) for a, b, c in totally_positive_coords_of_trace(t)]


def totally_positive_up_to_trace(bound: int) -> Iterator[tuple[int, np.ndarray]]:
    for t in range(1, bound + 1):
        yield t, totally_positive_coords_of_trace(t)


# units ---------------------------------------------------------------------

EPS1 = W2                       # w^2
EPS2 = FieldElement(1, 2, 1)    # (w+1)^2


def is_unit(x: FieldElement) -> bool:
    return x.is_integral() and abs(norm(x)) == 1


def unit_group_data() -> dict:
    """Generators of the unit groups used for the cusp.

    Returns the norm-one generators, the totally positive generators
    (w^2, (w+1)^2), and generators of U1 = {u >> 0 : u = 1 mod p} written
    as words in the totally positive ones.
    """
    u1 = (EPS1 * EPS2, EPS2 ** 3)
    for u in u1:
        if (u - ONE).mod_p() != 0:
            raise AssertionError(f"{u} is not 1 mod p")
    # U/U1 via the residue map to <2> in F_7^x (order 3)
    residues = {(EPS1 ** i * EPS2 ** j).mod_p() for i in range(3) for j in range(3)}
    return {
        "full_generators": (FieldElement(-1), W, FieldElement(-1, 0, 1)),
        "norm_one_generators": (W, FieldElement(-1, -1, 0)),
        "totally_positive_generators": (EPS1, EPS2),
        "U1_generators": u1,
        "U1_words": (((1, 1)), ((0, 3))),
        "U1_index": len(residues),
    }


def unit_from_exponents(m: int, n: int) -> FieldElement:
    """EPS1^m * EPS2^n."""
    return EPS1 ** m * EPS2 ** n


# text format -----------------------------------------------------------------

def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_element(x: FieldElement) -> str:
    """Interchange form "a+b*w+c*w^2" with exact rationals p/q."""
    parts = [f"{_fmt_q(x.a)}", f"{_fmt_q(x.b)}*w", f"{_fmt_q(x.c)}*w^2"]
    s = "+".join(parts)
    return s.replace("+-", "-")


def format_element_pretty(x: FieldElement) -> str:
    """Human form in the style of the trace tables, e.g. -w^2 + 4."""
    terms = []
    for coef, mono in ((x.c, "w^2"), (x.b, "w"), (x.a, "")):
        if coef == 0:
            continue
        mag = abs(coef)
        body = _fmt_q(mag) if (mono == "" or mag != 1) else ""
        body = body + mono
        terms.append(("-" if coef < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


_TERM = re.compile(r"([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*\*?\s*(w(?:\^([0-9]+))?)?")


def parse_element(text: str) -> FieldElement:
    """Parse "a+b*w+c*w^2" (any order, terms optional, rational coefficients)."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty element")
    coeffs = [Fraction(0)] * 3
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {s[pos:]!r}")
        sign, num, wpart, exp = m.groups()
        if num is None and wpart is None:
            raise ValueError(f"cannot parse {text!r}")
        coef = Fraction(num) if num else Fraction(1)
        if sign == "-":
            coef = -coef
        power = 0 if wpart is None else (int(exp) if exp else 1)
        if power > 2:
            term = W ** power * coef
            for i in range(3):
                coeffs[i] += term.coords[i]
        else:
            coeffs[power] += coef
        pos = m.end()
    return FieldElement(*coeffs)


def trace_table(traces=(7, 14)) -> str:
    """Totally positive elements of the given traces, three per row."""
    lines = []
    for t in traces:
        elts = [format_element_pretty(x) for x in totally_positive_of_trace(t)]
        rows = [elts[i:i + 3] for i in range(0, len(elts), 3)] or [[]]
        for r, row in enumerate(rows):
            label = f"Trace {t}" if r == 0 else ""
            lines.append(f"{label:<9}| " + " | ".join(f"{e:<16}" for e in row))
    return "\n".join(lines)
