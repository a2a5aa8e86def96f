"""Sparse truncated q-expansions in three variables q1, q2, q3.

A totally positive a in O contributes the monomial q1^n1 q2^n2 q3^n3 with
n_i = Tr(a v_i)/7, v = (2 - w, 4 - w^2, 1 + w + w^2).  The map a -> n is
unimodular on O:

    n1 = a - b + 2c,   n2 = a + c,   n3 = a + 2c,   n1 + n2 + n3 = Tr(a),

so the total degree of a monomial is the trace of its lattice element and
truncating at total degree T is the same as enumerating trace slices up to T.

Internally exponent triples are packed into one int (12 bits per slot) so
that multiplying monomials is a single integer addition.
"""
from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .cubicfield import FieldElement, trace
from .cyclotomic import CycNumber

_S = 12
_M = (1 << _S) - 1
MAX_BOUND = _M

V1 = FieldElement(2, -1, 0)
V2 = FieldElement(4, 0, -1)
V3 = FieldElement(1, 1, 1)
EXPONENT_VECTORS = (V1, V2, V3)


def pack(n1: int, n2: int, n3: int) -> int:
    return n1 | (n2 << _S) | (n3 << (2 * _S))


def unpack(k: int) -> tuple[int, int, int]:
    return (k & _M, (k >> _S) & _M, k >> (2 * _S))


def degree_of(k: int) -> int:
    return (k & _M) + ((k >> _S) & _M) + (k >> (2 * _S))


def exponents_of_coords(a: int, b: int, c: int) -> tuple[int, int, int]:
    return (a - b + 2 * c, a + c, a + 2 * c)


def exponents_of(x: FieldElement) -> tuple[int, int, int]:
    """(Tr(x v1)/7, Tr(x v2)/7, Tr(x v3)/7); raises if x is not in O."""
    return exponents_of_coords(*x.int_coords())


def exponents_by_traces(x: FieldElement) -> tuple[Fraction, Fraction, Fraction]:
    """The same triple straight from the trace definition (oracle for the formula)."""
    return tuple(trace(x * v) / 7 for v in EXPONENT_VECTORS)


def element_of_exponents(n1: int, n2: int, n3: int) -> FieldElement:
    """Inverse of the exponent map."""
    return FieldElement(2 * n2 - n3, n3 - n1, n3 - n2)


def rotations(n: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    n1, n2, n3 = n
    return [(n1, n2, n3), (n2, n3, n1), (n3, n1, n2)]


def canonical_rotation(n: tuple[int, int, int]) -> tuple[int, int, int]:
    return min(rotations(n))


def _is_zero(x) -> bool:
    if isinstance(x, CycNumber):
        return x.is_zero()
    return x == 0


class QExpansion:
    """Truncated series sum c_n q^n, complete for total degree <= T.

    Coefficients are ``value / den`` where values are ints (rational series)
    or CycNumbers (series over Q(zeta_7)) and den is a positive int.
    """

    __slots__ = ("_c", "den", "T")

    def __init__(self, coeffs: dict[int, object], T: int, den: int = 1, _clean: bool = False):
        if T > MAX_BOUND:
            raise ValueError(f"truncation bound above {MAX_BOUND}")
        if not _clean:
            coeffs = {k: v for k, v in coeffs.items() if degree_of(k) <= T and not _is_zero(v)}
            if coeffs and all(isinstance(v, int) for v in coeffs.values()):
                g = math.gcd(den, *coeffs.values())
                if g > 1:
                    coeffs = {k: v // g for k, v in coeffs.items()}
                    den //= g
            elif not coeffs:
                den = 1
        self._c = coeffs
        self.den = den
        self.T = T

    # construction ----------------------------------------------------------
    @classmethod
    def from_terms(cls, terms: Iterable[tuple[tuple[int, int, int], object]], T: int) -> "QExpansion":
        acc: dict[tuple[int, int, int], Fraction] = defaultdict(Fraction)
        cyc: dict[tuple[int, int, int], CycNumber] = {}
        for n, c in terms:
            if min(n) < 0:
                raise ValueError(f"negative exponent {n}")
            if isinstance(c, CycNumber):
                cyc[n] = cyc.get(n, CycNumber.zero(c.n)) + c
            else:
                acc[n] += Fraction(c)
        if cyc:
            for n, c in acc.items():
                cyc[n] = cyc.get(n, CycNumber.zero()) + c
            return cls({pack(*n): c for n, c in cyc.items()}, T)
        den = 1
        for c in acc.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        return cls({pack(*n): int(c * den) for n, c in acc.items()}, T, den)

    @classmethod
    def constant(cls, c, T: int) -> "QExpansion":
        return cls.from_terms([((0, 0, 0), c)], T)

    @classmethod
    def monomial(cls, n: tuple[int, int, int], T: int, c=1) -> "QExpansion":
        return cls.from_terms([(n, c)], T)

    @classmethod
    def variable(cls, i: int, T: int) -> "QExpansion":
        """q_i itself (i = 1, 2, 3)."""
        n = [0, 0, 0]
        n[i - 1] = 1
        return cls.monomial(tuple(n), T)

    # access --------------------------------------------------------------
    def items(self) -> Iterator[tuple[tuple[int, int, int], object]]:
        den = self.den
        for k in sorted(self._c, key=lambda k: (degree_of(k), unpack(k))):
            v = self._c[k]
            yield unpack(k), (Fraction(v, den) if isinstance(v, int) else v / den if den != 1 else v)

    def coefficient(self, n: tuple[int, int, int]):
        if sum(n) > self.T:
            raise ValueError(f"monomial {n} lies beyond the truncation bound {self.T}")
        v = self._c.get(pack(*n), 0)
        if isinstance(v, int):
            return Fraction(v, self.den)
        return v / self.den if self.den != 1 else v

    def support(self) -> list[tuple[int, int, int]]:
        return [n for n, _ in self.items()]

    def __len__(self):
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def is_rational(self) -> bool:
        return all(isinstance(v, int) for v in self._c.values())

    def constant_term(self):
        return self.coefficient((0, 0, 0))

    def truncate(self, T: int) -> "QExpansion":
        return QExpansion(dict(self._c), min(T, self.T), self.den)

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "QExpansion":
        if isinstance(other, QExpansion):
            return other
        return QExpansion.constant(other, self.T)

    def __add__(self, other):
        other = self._coerce(other)
        T = min(self.T, other.T)
        d = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = d // self.den, d // other.den
        out = {}
        for k, v in self._c.items():
            if degree_of(k) <= T:
                out[k] = v * fa
        for k, v in other._c.items():
            if degree_of(k) <= T:
                out[k] = out.get(k, 0) + v * fb
        return QExpansion(out, T, d)

    __radd__ = __add__

    def __neg__(self):
        return QExpansion({k: -v for k, v in self._c.items()}, self.T, self.den, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QExpansion":
        if isinstance(c, CycNumber):
            return QExpansion({k: (v * c) for k, v in self._c.items()}, self.T, self.den)
        c = Fraction(c)
        return QExpansion({k: v * c.numerator for k, v in self._c.items()}, self.T,
                          self.den * c.denominator)

    def _buckets(self, T: int) -> list[tuple[int, list[tuple[int, object]]]]:
        b: dict[int, list] = defaultdict(list)
        for k, v in self._c.items():
            d = degree_of(k)
            if d <= T:
                b[d].append((k, v))
        return sorted(b.items())

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return self.scale(other)
        T = min(self.T, other.T)
        fb = self._buckets(T)
        gb = other._buckets(T)
        out: dict[int, object] = {}
        get = out.get
        for dg, glist in gb:
            lim = T - dg
            for df, flist in fb:
                if df > lim:
                    break
                for kf, cf in flist:
                    for kg, cg in glist:
                        k = kf + kg
                        out[k] = get(k, 0) + cf * cg
        return QExpansion(out, T, self.den * other.den)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QExpansion.constant(1, self.T)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def inverse(self) -> "QExpansion":
        """1/f, requires a nonzero constant term."""
        c0 = self.constant_term()
        if _is_zero(c0):
            raise ZeroDivisionError("series with zero constant term is not invertible")
        u = self.scale(1 / c0) - 1        # f = c0 (1 + u), u without constant term
        out = QExpansion.constant(1, self.T)
        term = QExpansion.constant(1, self.T)
        low = min((degree_of(k) for k in u._c), default=self.T + 1)
        for _ in range(self.T // max(low, 1) + 1):
            term = -(term * u)
            if term.is_zero():
                break
            out = out + term
        return out.scale(1 / c0)

    def __truediv__(self, other):
        if isinstance(other, QExpansion):
            return self * other.inverse()
        return self.scale(1 / Fraction(other) if not isinstance(other, CycNumber) else other.inverse())

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        if self.T != other.T:
            return False
        diff = self - other
        return diff.is_zero()

    __hash__ = None

    def map_coefficients(self, fn: Callable[[tuple[int, int, int], object], object]) -> "QExpansion":
        """Apply fn((n1,n2,n3), coefficient) termwise."""
        return QExpansion.from_terms([(n, fn(n, c)) for n, c in self.items()], self.T)

    # operators from the modular side -------------------------------------------
    def theta(self, i: int) -> "QExpansion":
        """q_i d/dq_i."""
        shift = _S * (i - 1)
        return QExpansion({k: v * ((k >> shift) & _M) for k, v in self._c.items()}, self.T, self.den)

    def derivative(self, i: int) -> "QExpansion":
        """d/dq_i; the result is complete to degree T-1."""
        shift = _S * (i - 1)
        unit = 1 << shift
        out = {}
        for k, v in self._c.items():
            e = (k >> shift) & _M
            if e:
                out[k - unit] = v * e
        return QExpansion(out, self.T - 1, self.den)

    def rotate(self) -> "QExpansion":
        """(n1, n2, n3) -> (n2, n3, n1): the Galois action on exponents."""
        out = {}
        for k, v in self._c.items():
            n1, n2, n3 = unpack(k)
            out[pack(n3, n1, n2)] = v
        return QExpansion(out, self.T, self.den, _clean=True)

    def is_rotation_invariant(self) -> bool:
        return self.rotate() == self

    def lowest_degree_terms(self):
        if not self._c:
            return None, []
        d = min(degree_of(k) for k in self._c)
        return d, [(n, c) for n, c in self.items() if sum(n) == d]

    def __repr__(self):
        return f"QExpansion(T={self.T}, terms={len(self)})"


# translations, restriction, boundary order ----------------------------------------

def g7_translate(f: QExpansion) -> QExpansion:
    """z -> z + (1,1,1): the monomial of degree d picks up zeta_7^d."""
    zeta = [CycNumber.zeta(j) for j in range(7)]
    out = {}
    for k, v in f._c.items():
        z = zeta[degree_of(k) % 7]
        out[k] = z * v
    return QExpansion(out, f.T, f.den)


@dataclass
class DiagonalSeries:
    """sum_m c_m q^(m/scale), complete for m <= N."""

    coeffs: dict[int, object]
    N: int
    scale: int = 1

    def __post_init__(self):
        self.coeffs = {m: c for m, c in self.coeffs.items() if m <= self.N and not _is_zero(c)}

    @classmethod
    def from_list(cls, values, scale: int = 1) -> "DiagonalSeries":
        return cls({m: Fraction(c) if not isinstance(c, CycNumber) else c for m, c in enumerate(values)},
                   len(values) - 1, scale)

    @classmethod
    def constant(cls, c, N: int, scale: int = 1) -> "DiagonalSeries":
        return cls({0: Fraction(c)}, N, scale)

    def coefficient(self, m: int):
        if m > self.N:
            raise ValueError("beyond truncation")
        return self.coeffs.get(m, Fraction(0))

    def as_list(self) -> list:
        return [self.coefficient(m) for m in range(self.N + 1)]

    def _check(self, other: "DiagonalSeries"):
        if self.scale != other.scale:
            raise ValueError("series use different exponent units")

    def __add__(self, other):
        if not isinstance(other, DiagonalSeries):
            other = DiagonalSeries.constant(other, self.N, self.scale)
        self._check(other)
        N = min(self.N, other.N)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return DiagonalSeries(out, N, self.scale)

    __radd__ = __add__

    def __neg__(self):
        return DiagonalSeries({m: -c for m, c in self.coeffs.items()}, self.N, self.scale)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, DiagonalSeries):
            return DiagonalSeries({m: c * other for m, c in self.coeffs.items()}, self.N, self.scale)
        self._check(other)
        N = min(self.N, other.N)
        out: dict[int, object] = {}
        a = sorted(self.coeffs.items())
        b = sorted(other.coeffs.items())
        for m1, c1 in a:
            if m1 > N:
                break
            for m2, c2 in b:
                if m1 + m2 > N:
                    break
                out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
        return DiagonalSeries(out, N, self.scale)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = DiagonalSeries.constant(1, self.N, self.scale)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, DiagonalSeries):
            return NotImplemented
        return (self.N == other.N and self.scale == other.scale
                and (self - other).coeffs == {})

    __hash__ = None

    def in_units(self, scale: int) -> "DiagonalSeries":
        """Re-express with exponent unit q^(1/scale)."""
        if scale % self.scale == 0:
            f = scale // self.scale
            return DiagonalSeries({m * f: c for m, c in self.coeffs.items()}, self.N * f, scale)
        if self.scale % scale == 0:
            f = self.scale // scale
            if any(m % f for m in self.coeffs):
                raise ValueError("exponents are not multiples of the new unit")
            return DiagonalSeries({m // f: c for m, c in self.coeffs.items()}, self.N // f, scale)
        raise ValueError("incompatible exponent units")


def restrict_diagonal(f: QExpansion) -> DiagonalSeries:
    """z = (tau, tau, tau): q1^n1 q2^n2 q3^n3 -> q^((n1+n2+n3)/7)."""
    out: dict[int, object] = {}
    for n, c in f.items():
        d = sum(n)
        out[d] = out.get(d, 0) + c
    return DiagonalSeries(out, f.T, 7)


BOUNDARY_RAYS = {
    "1": FieldElement(1),
    "w^2": FieldElement(0, 0, 1),
    "(w+1)^2": FieldElement(1, 2, 1),
}


def boundary_functional(r: FieldElement) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (l1, l2, l3) with Tr(a (2-w) r)/7 = l1 n1 + l2 n2 + l3 n3."""
    out = []
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        a = element_of_exponents(*e)
        out.append(trace(a * V1 * r) / 7)
    return tuple(out)


@dataclass(frozen=True)
class BoundaryOrder:
    value: Fraction | None          # None: no nonzero term within the bound
    certified: bool                 # True if no unseen monomial could go lower
    witness: tuple[int, int, int] | None


def boundary_order(f: QExpansion, r: FieldElement, margin: int = 0) -> BoundaryOrder:
    """Order of f along the boundary divisor with ray (2 - w) r.

    The order of a monomial is Tr(a (2-w) r)/7; the constant term counts 0.
    For a totally positive unit r the pairing with any totally positive a
    of trace t is at least t * min_i r_i (2-w)_i / 7 > 0, so monomials
    missing beyond T can only lower the minimum if their pairing is small;
    the result is certified when the minimum found is below that bound.
    """
    lam = boundary_functional(r)
    best = None
    witness = None
    for n, _ in f.items():
        val = lam[0] * n[0] + lam[1] * n[1] + lam[2] * n[2]
        if best is None or val < best:
            best, witness = val, n
    # lower bound for unseen terms: Tr(a x)/7 >= Tr(a) * min embedding of x / 7
    from .cubicfield import embeddings
    emb = embeddings(V1 * r, dps=30)
    mn = min(float(v) for v in emb.values)
    bound_unseen = (f.T + 1) * mn / 7
    certified = best is not None and float(best) <= bound_unseen - margin
    return BoundaryOrder(best, certified, witness)


def jacobian_det(t1: QExpansion, t2: QExpansion, t3: QExpansion) -> QExpansion:
    """det(d t_j / d q_i), computed as det(theta_i t_j) / (q1 q2 q3).

    Every nonconstant monomial of the inputs here has all three exponents
    positive, so the division by q1 q2 q3 is exact; this is checked.
    """
    ts = (t1, t2, t3)
    m = [[ts[j].theta(i + 1) for j in range(3)] for i in range(3)]
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    shift = pack(1, 1, 1)
    out = {}
    for k, v in det._c.items():
        n = unpack(k)
        if min(n) < 1:
            raise ArithmeticError("theta-determinant not divisible by q1 q2 q3")
        out[k - shift] = v
    return QExpansion(out, det.T - 3, det.den)


# text formats ---------------------------------------------------------------------

def _fmt(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


def to_interchange(f: QExpansion) -> str:
    """Header "T=<bound>", then one monomial per line "p/q n1 n2 n3"."""
    lines = [f"T={f.T}"]
    for n, c in f.items():
        lines.append(f"{_fmt(c)} {n[0]} {n[1]} {n[2]}")
    return "\n".join(lines) + "\n"


def from_interchange(text: str) -> QExpansion:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("T="):
        raise ValueError("missing T=<bound> header")
    T = int(lines[0][2:])
    terms = []
    for ln in lines[1:]:
        c, n1, n2, n3 = ln.split()
        terms.append(((int(n1), int(n2), int(n3)), Fraction(c)))
    return QExpansion.from_terms(terms, T)


def symmetrized_terms(f: QExpansion) -> list[tuple[object, tuple[int, int, int]]]:
    """[(c, (a1,a2,a3))] with one entry per rotation orbit (smallest rotation).

    Raises if f is not invariant under rotation of the exponents.
    """
    seen = set()
    out = []
    for n, c in f.items():
        rep = canonical_rotation(n)
        if rep in seen:
            continue
        seen.add(rep)
        for r in rotations(n):
            if f.coefficient(r) != c:
                raise ValueError(f"series is not rotation invariant at {n}")
        out.append((c, rep))
    return out


def to_symmetrized(f: QExpansion) -> str:
    parts = []
    for c, n in symmetrized_terms(f):
        if n == (0, 0, 0):
            parts.append(_fmt(c))
            continue
        body = f"q({n[0]},{n[1]},{n[2]})"
        parts.append(body if c == 1 else f"{_fmt(c)}{body}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


_SYM_TERM = re.compile(r"^([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*q\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$")


def parse_symmetrized(text: str, T: int) -> QExpansion:
    """Inverse of to_symmetrized: "1/14 + q(2,2,3) + 2q(4,4,6)".

    q(a1,a2,a3) stands for delta * (sum of the three cyclic rotations),
    delta = 1/3 when a1 = a2 = a3, so every monomial of the orbit gets the
    printed coefficient.
    """
    text = text.replace("-", "+-").replace("++", "+")
    terms = []
    for chunk in (t.strip() for t in text.split("+")):
        if not chunk:
            continue
        m = _SYM_TERM.match(chunk)
        if m:
            c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(1) == "-":
                c = -c
            n = (int(m.group(3)), int(m.group(4)), int(m.group(5)))
            delta = Fraction(1, 3) if n[0] == n[1] == n[2] else Fraction(1)
            for r in rotations(n):
                terms.append((r, c * delta))
        else:
            terms.append(((0, 0, 0), Fraction(chunk)))
    return QExpansion.from_terms(terms, T)
